//! Simplicial complexes stored by their facets, independence complexes, and
//! face counting.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{parse_header, Graph};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A simplicial complex on the ambient vertex range `0..vertex_count`.
///
/// Vertices not covered by any facet are allowed; they are simply not faces.
/// Facets form an antichain and are kept in lexicographic order, so two
/// equal complexes compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Complex {
    vertex_count: usize,
    facets: Vec<VertexSet>,
}

impl Complex {
    /// The complex `{∅}`.
    pub fn void_face(vertex_count: usize) -> Self {
        Complex {
            vertex_count,
            facets: vec![VertexSet::EMPTY],
        }
    }

    pub fn simplex(vertex_count: usize, vertices: VertexSet) -> Result<Self> {
        Self::from_generators(vertex_count, [vertices])
    }

    /// Complex generated by arbitrary faces; non-maximal ones are dropped.
    pub fn from_generators<I>(vertex_count: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        check_vertex_count(vertex_count)?;
        let mut sets: Vec<VertexSet> = generators.into_iter().collect();
        check_range(vertex_count, sets.iter().copied())?;
        if sets.is_empty() {
            return Err(Error::InvalidComplex("no facets given".into()));
        }
        Ok(Complex {
            vertex_count,
            facets: maximal_elements(&mut sets),
        })
    }

    /// Complex from a facet list that must already be an antichain.
    pub fn from_facets(vertex_count: usize, facets: Vec<VertexSet>) -> Result<Self> {
        check_vertex_count(vertex_count)?;
        check_range(vertex_count, facets.iter().copied())?;
        if facets.is_empty() {
            return Err(Error::InvalidComplex("no facets given".into()));
        }
        for (i, a) in facets.iter().enumerate() {
            for (j, b) in facets.iter().enumerate() {
                if i != j && a.is_subset(*b) {
                    return Err(Error::InvalidComplex(format!("facet {a} is contained in facet {b}")));
                }
            }
        }
        let mut facets = facets;
        facets.sort_by(|a, b| a.lex_cmp(*b));
        Ok(Complex { vertex_count, facets })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Facets in lexicographic order.
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Union of all facets.
    pub fn covered_vertices(&self) -> VertexSet {
        self.facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f))
    }

    pub fn contains_face(&self, face: VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// `max |F| - 1`; `-1` for `{∅}`.
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.len() as i64).max().unwrap_or(0) - 1
    }

    pub fn is_pure(&self) -> bool {
        let first = self.facets[0].len();
        self.facets.iter().all(|f| f.len() == first)
    }

    /// A single facet, i.e. the full simplex on the covered vertices
    /// (including the empty simplex `{∅}`).
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    /// All faces, grouped by cardinality: `faces()[k]` holds the faces with
    /// `k` vertices, lexicographically ordered. `faces()[0] == [∅]`.
    pub fn faces(&self) -> Vec<Vec<VertexSet>> {
        let top = self.facets.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut seen: HashSet<VertexSet> = HashSet::new();
        for &facet in &self.facets {
            for sub in facet.subsets() {
                seen.insert(sub);
            }
        }
        let mut by_size = vec![Vec::new(); top + 1];
        for f in seen {
            by_size[f.len()].push(f);
        }
        for layer in &mut by_size {
            layer.sort_by(|a, b| a.lex_cmp(*b));
        }
        by_size
    }

    /// Canonical key for memoisation: covered vertices are renamed to
    /// `0..m` in increasing order and the facet bit patterns sorted.
    pub fn compressed_key(&self) -> Vec<u64> {
        let covered = self.covered_vertices();
        let mut position = [0usize; MAX_VERTICES];
        for (k, v) in covered.iter().enumerate() {
            position[v] = k;
        }
        let mut key: Vec<u64> = self
            .facets
            .iter()
            .map(|f| f.iter().fold(0u64, |acc, v| acc | 1 << position[v]))
            .collect();
        key.sort_unstable();
        key
    }

    /// "facets-v1": `n <count>`, then one facet per line (1-based,
    /// space-separated); the empty facet is an empty line.
    pub fn to_facets_v1(&self) -> String {
        let mut out = format!("n {}\n", self.vertex_count);
        for f in &self.facets {
            let line: Vec<String> = f.iter().map(|v| (v + 1).to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_facets_v1(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let n = parse_header(header, 1)?;
        check_vertex_count(n)?;
        let mut facets = Vec::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            let mut facet = VertexSet::EMPTY;
            for tok in line.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad vertex {tok:?}")))?;
                if v == 0 || v > n {
                    return Err(Error::parse(line_no, format!("vertex {v} outside 1..={n}")));
                }
                if facet.contains(v - 1) {
                    return Err(Error::parse(line_no, format!("vertex {v} repeated")));
                }
                facet = facet.with(v - 1);
            }
            facets.push(facet);
        }
        Complex::from_facets(n, facets)
    }
}

fn check_vertex_count(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    Ok(())
}

fn check_range(n: usize, sets: impl Iterator<Item = VertexSet>) -> Result<()> {
    let all = VertexSet::full(n);
    for s in sets {
        if let Some(v) = s.difference(all).first() {
            return Err(Error::VertexOutOfRange {
                vertex: v + 1,
                vertex_count: n,
            });
        }
    }
    Ok(())
}

/// Maximal elements of `sets` under inclusion, lexicographically sorted.
fn maximal_elements(sets: &mut [VertexSet]) -> Vec<VertexSet> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.bits().cmp(&b.bits())));
    let mut kept: Vec<VertexSet> = Vec::new();
    for &s in sets.iter() {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort_by(|a, b| a.lex_cmp(*b));
    kept
}

/// `Ind(G)`: facets are the maximal independent sets, found by
/// Bron–Kerbosch with pivoting on the complement graph.
pub fn independence_complex(g: &Graph) -> Complex {
    let n = g.vertex_count();
    let all = g.vertices();
    let non_nbrs: Vec<VertexSet> = (0..n).map(|v| all.difference(g.neighbors(v)).without(v)).collect();
    let mut facets = Vec::new();
    bron_kerbosch(&non_nbrs, VertexSet::EMPTY, all, VertexSet::EMPTY, &mut facets);
    facets.sort_by(|a, b| a.lex_cmp(*b));
    Complex {
        vertex_count: n,
        facets,
    }
}

fn bron_kerbosch(nbrs: &[VertexSet], r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(x)
        .iter()
        .max_by_key(|&u| p.intersection(nbrs[u]).len())
        .expect("p is non-empty");
    for v in p.difference(nbrs[pivot]).iter() {
        bron_kerbosch(nbrs, r.with(v), p.intersection(nbrs[v]), x.intersection(nbrs[v]), out);
        p = p.without(v);
        x = x.with(v);
    }
}

/// `link_Δ(F)`.
pub fn link(c: &Complex, face: VertexSet) -> Result<Complex> {
    check_range(c.vertex_count, std::iter::once(face))?;
    let mut sets: Vec<VertexSet> = c
        .facets
        .iter()
        .filter(|f| face.is_subset(**f))
        .map(|f| f.difference(face))
        .collect();
    if sets.is_empty() {
        return Err(Error::FaceNotInComplex(face));
    }
    Ok(Complex {
        vertex_count: c.vertex_count,
        facets: maximal_elements(&mut sets),
    })
}

/// `del_Δ({v})`.
pub fn deletion(c: &Complex, v: usize) -> Result<Complex> {
    if v >= c.vertex_count {
        return Err(Error::VertexOutOfRange {
            vertex: v + 1,
            vertex_count: c.vertex_count,
        });
    }
    let mut sets: Vec<VertexSet> = c.facets.iter().map(|f| f.without(v)).collect();
    Ok(Complex {
        vertex_count: c.vertex_count,
        facets: maximal_elements(&mut sets),
    })
}

/// `Δ|_W = {F ∈ Δ : F ⊆ W}`.
pub fn restrict(c: &Complex, w: VertexSet) -> Result<Complex> {
    check_range(c.vertex_count, std::iter::once(w))?;
    let mut sets: Vec<VertexSet> = c.facets.iter().map(|f| f.intersection(w)).collect();
    Ok(Complex {
        vertex_count: c.vertex_count,
        facets: maximal_elements(&mut sets),
    })
}

pub fn is_pure(c: &Complex) -> bool {
    c.is_pure()
}

pub fn dim(c: &Complex) -> i64 {
    c.dim()
}

/// Independence number.
pub fn alpha(g: &Graph) -> usize {
    (independence_complex(g).dim() + 1) as usize
}

pub fn is_well_covered(g: &Graph) -> bool {
    independence_complex(g).is_pure()
}

/// Face numbers and their h-transform.
///
/// `f[k]` is `f_{k-1}` (so `f[0] == 1`), and `h` has `dim + 2` entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FHVectors {
    pub dim: i64,
    pub f: Vec<i64>,
    pub h: Vec<i64>,
}

impl FHVectors {
    /// Computes `h` from `f = (f_{-1}, .., f_D)` with
    /// `h_k = Σ_{i≤k} (-1)^{k-i} C(D+1-i, k-i) f_{i-1}`.
    pub fn from_f(f: Vec<i64>) -> Result<Self> {
        if f.first() != Some(&1) {
            return Err(Error::Domain("f_{-1} must be 1".into()));
        }
        let len = f.len(); // D + 2
        let mut h = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = BigInt::zero();
            for (i, &fi) in f.iter().enumerate().take(k + 1) {
                let term = binomial(len - 1 - i, k - i) * BigInt::from(fi);
                if (k - i) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            h.push(to_i64(&acc)?);
        }
        Ok(FHVectors {
            dim: len as i64 - 2,
            f,
            h,
        })
    }

    pub fn h_nonnegative(&self) -> bool {
        self.h.iter().all(|&x| x >= 0)
    }

    /// `Σ_{i=-1}^{D} (-1)^i f_i`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f
            .iter()
            .enumerate()
            .map(|(k, &x)| if k % 2 == 1 { x } else { -x })
            .sum()
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Domain(format!("value {x} does not fit in 64 bits")))
}

/// f- and h-vectors by explicit face enumeration.
pub fn f_vector(c: &Complex) -> FHVectors {
    let f: Vec<i64> = c.faces().iter().map(|layer| layer.len() as i64).collect();
    FHVectors::from_f(f).expect("face counts fit in i64")
}

/// Closed-form f-vector of `Ind(C_n(1..d))`:
/// `f_{k-1} = n/(n-dk) · C(n-dk, k)` for `k = 0..=⌊n/(d+1)⌋`.
pub fn family_f_vector(n: usize, d: usize) -> Result<FHVectors> {
    if d == 0 || n < 2 * d {
        return Err(Error::Domain(format!("need n >= 2d >= 2, got n = {n}, d = {d}")));
    }
    let top = n / (d + 1); // D + 1
    let mut f = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let m = n - d * k;
        let numerator = BigInt::from(n) * binomial(m, k);
        let (q, r) = numerator.div_rem(&BigInt::from(m));
        if !r.is_zero() {
            return Err(Error::NonIntegral(format!("{n}/{m} * C({m},{k}) is not an integer")));
        }
        f.push(to_i64(&q)?);
    }
    FHVectors::from_f(f)
}

/// Orders complexes by facet lists; used to make outputs deterministic.
pub fn cmp_complexes(a: &Complex, b: &Complex) -> Ordering {
    a.vertex_count.cmp(&b.vertex_count).then_with(|| {
        a.facets
            .iter()
            .zip(&b.facets)
            .map(|(x, y)| x.lex_cmp(*y))
            .find(|o| o.is_ne())
            .unwrap_or(a.facets.len().cmp(&b.facets.len()))
    })
}

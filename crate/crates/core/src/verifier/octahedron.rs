//! Induced octahedra in `Ind(C_{4d+3}(1, …, d))` and the 2-cycles they
//! carry.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::complex::{binomial, independence_complex, restrict, Complex};
use crate::error::{Error, Result};
use crate::field::FieldChoice;
use crate::graph::{induced_subgraph, make_circulant, CirculantSpec, Graph};
use crate::homology::{build_chain_complex, reduced_betti, ChainComplexData};
use crate::linalg::kernel_rank_of;
use crate::vertex_set::VertexSet;

/// Default limit on `d` for the kernel-rank verification.
pub const KERNEL_RANK_D_LIMIT: usize = 5;
/// Default limit on `d` for the `H̃_2` experiment.
pub const H2_D_LIMIT: usize = 4;

/// `(i₁,i₂; j₁,j₂; k₁,k₂)`, 1-based labels, pairs `{i₁,i₂}`, `{j₁,j₂}`,
/// `{k₁,k₂}` being the three edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OctahedronTuple {
    pub i: [usize; 2],
    pub j: [usize; 2],
    pub k: [usize; 2],
}

impl OctahedronTuple {
    pub fn new(i1: usize, i2: usize, j1: usize, j2: usize, k1: usize, k2: usize) -> Self {
        OctahedronTuple {
            i: [i1, i2],
            j: [j1, j2],
            k: [k1, k2],
        }
    }

    pub fn as_array(&self) -> [usize; 6] {
        [self.i[0], self.i[1], self.j[0], self.j[1], self.k[0], self.k[1]]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::from_labels(self.as_array())
    }

    /// The face `{i₂, j₂, k₁}` used for the independence argument.
    pub fn distinguished_face(&self) -> VertexSet {
        VertexSet::from_labels([self.i[1], self.j[1], self.k[0]])
    }

    /// The eight triangles `{i_a, j_b, k_c}` with the sign of the
    /// fundamental cycle in the sorted-vertex orientation:
    /// `(-1)^{a+b+c}` times the parity of sorting `(i_a, j_b, k_c)`.
    pub fn signed_faces(&self) -> Vec<(VertexSet, i64)> {
        let mut out = Vec::with_capacity(8);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let triple = [self.i[a], self.j[b], self.k[c]];
                    let base = if (a + b + c) % 2 == 0 { 1 } else { -1 };
                    out.push((VertexSet::from_labels(triple), base * sort_parity(triple)));
                }
            }
        }
        out.sort_by(|x, y| x.0.lex_cmp(y.0));
        out
    }
}

impl fmt::Display for OctahedronTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{}; {},{}; {},{})",
            self.i[0], self.i[1], self.j[0], self.j[1], self.k[0], self.k[1]
        )
    }
}

fn sort_parity(t: [usize; 3]) -> i64 {
    let inversions = (t[0] > t[1]) as u32 + (t[0] > t[2]) as u32 + (t[1] > t[2]) as u32;
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OctahedronWitness {
    pub tuple: OctahedronTuple,
    /// Non-zero coordinates `(index, coefficient)` in the lex-ordered basis
    /// of 2-faces of the ambient complex.
    pub cycle: Vec<(usize, i64)>,
}

impl OctahedronWitness {
    pub fn dense(&self, len: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::from_integer(0.into()); len];
        for &(idx, c) in &self.cycle {
            v[idx] = BigRational::from_integer(c.into());
        }
        v
    }
}

fn validate(g: &Graph, tuple: &OctahedronTuple) -> Result<VertexSet> {
    let labels = tuple.as_array();
    for &v in &labels {
        if v == 0 || v > g.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: g.vertex_count(),
            });
        }
    }
    let w = tuple.vertices();
    if w.len() != 6 {
        return Err(Error::NotOctahedron(format!("{tuple}: vertices are not distinct")));
    }
    let pairs = [tuple.i, tuple.j, tuple.k];
    for p in pairs {
        if !g.is_edge(p[0] - 1, p[1] - 1) {
            return Err(Error::NotOctahedron(format!(
                "{tuple}: {{{},{}}} is not an edge",
                p[0], p[1]
            )));
        }
    }
    let induced = induced_subgraph(g, w)?;
    if induced.edge_count() != 3 {
        let extra: Vec<String> = g
            .edges()
            .into_iter()
            .filter(|&(a, b)| {
                w.contains(a) && w.contains(b) && !pairs.iter().any(|p| p.contains(&(a + 1)) && p.contains(&(b + 1)))
            })
            .map(|(a, b)| format!("{{{},{}}}", a + 1, b + 1))
            .collect();
        return Err(Error::NotOctahedron(format!(
            "{tuple}: induced subgraph has extra edges {}",
            extra.join(" ")
        )));
    }
    Ok(w)
}

fn witness_in(g: &Graph, cc: &ChainComplexData, tuple: OctahedronTuple) -> Result<OctahedronWitness> {
    validate(g, &tuple)?;
    let mut cycle: Vec<(usize, i64)> = tuple
        .signed_faces()
        .into_iter()
        .map(|(face, sign)| {
            let idx = cc.index_of(face).ok_or(Error::FaceNotInComplex(face))?;
            Ok((idx, sign))
        })
        .collect::<Result<_>>()?;
    cycle.sort_unstable();
    let boundary = cc
        .boundary(2)
        .ok_or_else(|| Error::InvalidComplex("complex has no 2-faces".into()))?;
    assert!(
        boundary.apply(&cycle).is_empty(),
        "octahedral chain {tuple} is not a cycle"
    );
    Ok(OctahedronWitness { tuple, cycle })
}

/// Validates that `W = {i₁,…,k₂}` induces exactly the three edges of the
/// tuple in `g` and returns the octahedral 2-cycle of `Ind(g)`.
pub fn octahedron_witness(g: &Graph, tuple: OctahedronTuple) -> Result<OctahedronWitness> {
    validate(g, &tuple)?;
    let cc = build_chain_complex(&independence_complex(g), FieldChoice::ExactRational);
    witness_in(g, &cc, tuple)
}

/// The restriction `Ind(g)|_W` of a valid tuple.
pub fn octahedron_restriction(g: &Graph, tuple: OctahedronTuple) -> Result<Complex> {
    let w = validate(g, &tuple)?;
    restrict(&independence_complex(g), w)
}

/// `Σ_{k=1}^{d-2} k(2d−k)`, which also equals `(4d+3)/3 · C(d−1, 2)`.
pub fn octahedron_count(d: usize) -> usize {
    (1..d.saturating_sub(1)).map(|k| k * (2 * d - k)).sum()
}

/// `(4d+3)/3 · C(d−1, 2)` evaluated exactly.
pub fn h2_formula(d: usize) -> u64 {
    let c: u64 = binomial(d.saturating_sub(1), 2).try_into().expect("small binomial");
    (4 * d as u64 + 3) * c / 3
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OctahedronList {
    pub d: usize,
    /// Lexicographically sorted as integer 6-tuples.
    pub tuples: Vec<OctahedronTuple>,
    /// Tuples whose `k₂` differs from the inline formula with threshold
    /// and modulus `4d−3` (the rotation uses `4d+3`).
    pub k2_formula_disagreements: Vec<OctahedronTuple>,
}

/// The octahedra obtained by rotating the base tuples
/// `(1,2; d+3,j₂; k₁,3d+3)`, `d+4 ≤ j₂ ≤ 2d+1`, `j₂+d+1 ≤ k₁ ≤ 3d+2`,
/// until `k₁ = 4d+3`.
pub fn build_octahedron_list(d: usize) -> Result<OctahedronList> {
    if d < 3 {
        return Err(Error::Domain(format!("octahedron list needs d >= 3, got {d}")));
    }
    let n = 4 * d + 3;
    let wrap = |x: usize| (x - 1) % n + 1;
    let mut tuples = Vec::new();
    for j2 in d + 4..=2 * d + 1 {
        for k1 in j2 + d + 1..=3 * d + 2 {
            for r in 0..=n - k1 {
                let t = [1, 2, d + 3, j2, k1, 3 * d + 3].map(|x| wrap(x + r));
                tuples.push(OctahedronTuple::new(t[0], t[1], t[2], t[3], t[4], t[5]));
            }
        }
    }
    tuples.sort_by_key(OctahedronTuple::as_array);

    let expected = octahedron_count(d);
    let closed_form = h2_formula(d) as usize;
    if tuples.len() != expected || expected != closed_form {
        return Err(Error::Construction(format!(
            "d = {d}: built {} octahedra, expected {expected} (closed form {closed_form})",
            tuples.len()
        )));
    }
    let first = OctahedronTuple::new(1, 2, d + 3, d + 4, 2 * d + 5, 3 * d + 3);
    let last = OctahedronTuple::new(2 * d - 1, 2 * d, 3 * d + 1, 3 * d + 2, n, d - 2);
    if tuples.first() != Some(&first) || tuples.last() != Some(&last) {
        return Err(Error::Construction(format!(
            "d = {d}: list runs from {} to {}, expected {first} to {last}",
            tuples[0],
            tuples[tuples.len() - 1]
        )));
    }

    let m = 4 * d - 3;
    let k2_formula_disagreements = tuples
        .iter()
        .copied()
        .filter(|t| {
            let raw = t.i[1] + 3 * d + 1;
            let literal = if raw <= m { raw } else { raw - m };
            literal != t.k[1]
        })
        .collect();
    Ok(OctahedronList {
        d,
        tuples,
        k2_formula_disagreements,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelRankReport {
    pub d: usize,
    pub field: FieldChoice,
    pub list_len: usize,
    pub rank: usize,
    /// Distinct distinguished faces, each new when first reached.
    pub novel_faces: usize,
    pub k2_formula_disagreements: usize,
}

pub fn verify_kernel_rank(d: usize, field: FieldChoice) -> Result<KernelRankReport> {
    verify_kernel_rank_with(d, field, false)
}

/// Builds every `O_W` for the list, checks `∂₂ O_W = 0`, the rank of the
/// family and the novelty of each distinguished face.
pub fn verify_kernel_rank_with(d: usize, field: FieldChoice, allow_large: bool) -> Result<KernelRankReport> {
    if d > KERNEL_RANK_D_LIMIT && !allow_large {
        return Err(Error::GuardExceeded {
            what: "d for the octahedral kernel rank",
            limit: KERNEL_RANK_D_LIMIT,
            actual: d,
        });
    }
    let list = build_octahedron_list(d)?;
    let g = make_circulant(&CirculantSpec::contiguous(4 * d + 3, d)?);
    let cc = build_chain_complex(&independence_complex(&g), field);
    let witnesses: Vec<OctahedronWitness> = list
        .tuples
        .iter()
        .map(|&t| witness_in(&g, &cc, t))
        .collect::<Result<_>>()?;

    let mut seen: HashSet<VertexSet> = HashSet::new();
    for w in &witnesses {
        let face = w.tuple.distinguished_face();
        if seen.contains(&face) {
            return Err(Error::Construction(format!(
                "d = {d}: distinguished face {face} of {} already covered",
                w.tuple
            )));
        }
        seen.extend(w.tuple.signed_faces().into_iter().map(|(f, _)| f));
    }
    let novel_faces = witnesses
        .iter()
        .map(|w| w.tuple.distinguished_face())
        .collect::<HashSet<_>>()
        .len();

    let f2 = cc.basis(2).len();
    let vectors: Vec<Vec<BigRational>> = witnesses.iter().map(|w| w.dense(f2)).collect();
    let rank = kernel_rank_of(&vectors, field)?;
    if rank != list.tuples.len() {
        return Err(Error::Construction(format!(
            "d = {d}: octahedral cycles span rank {rank}, expected {}",
            list.tuples.len()
        )));
    }
    Ok(KernelRankReport {
        d,
        field,
        list_len: list.tuples.len(),
        rank,
        novel_faces,
        k2_formula_disagreements: list.k2_formula_disagreements.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Record {
    pub d: usize,
    pub field: FieldChoice,
    pub computed: u64,
    pub formula: u64,
    pub equal: bool,
    pub h1: u64,
    /// `dim H̃₁ = dim H̃₂ − d(4d²−9d−1)/6`.
    pub euler_identity_holds: bool,
}

impl H2Record {
    /// The lower bound that is a theorem (equality is only conjectural).
    pub fn lower_bound_holds(&self) -> bool {
        self.computed >= self.formula
    }
}

pub fn h2_equality_experiment(d: usize, field: FieldChoice) -> Result<H2Record> {
    h2_equality_experiment_with(d, field, false)
}

/// Compares `dim H̃₂(Ind(C_{4d+3}(1..d)))` with `(4d+3)/3 · C(d−1, 2)`.
/// Equality is reported, never asserted.
pub fn h2_equality_experiment_with(d: usize, field: FieldChoice, allow_large: bool) -> Result<H2Record> {
    if d == 0 {
        return Err(Error::Domain("d must be positive".into()));
    }
    if d > H2_D_LIMIT && !allow_large {
        return Err(Error::GuardExceeded {
            what: "d for the H~2 experiment",
            limit: H2_D_LIMIT,
            actual: d,
        });
    }
    let g = make_circulant(&CirculantSpec::contiguous(4 * d + 3, d)?);
    let betti = reduced_betti(&independence_complex(&g), field);
    let computed = betti.get(2);
    let h1 = betti.get(1);
    let formula = h2_formula(d);
    let d = d as i64;
    let shift = d * (4 * d * d - 9 * d - 1) / 6;
    Ok(H2Record {
        d: d as usize,
        field,
        computed,
        formula,
        equal: computed == formula,
        h1,
        euler_identity_holds: h1 as i64 == computed as i64 - shift,
    })
}

/// Lexicographic order on tuples as integer sequences.
pub fn cmp_tuples(a: &OctahedronTuple, b: &OctahedronTuple) -> Ordering {
    a.as_array().cmp(&b.as_array())
}

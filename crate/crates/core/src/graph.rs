//! Circulant graphs and the derived graphs needed to analyse them.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Largest graph accepted by [`is_isomorphic_small`].
pub const ISOMORPHISM_LIMIT: usize = 12;

/// A circulant presentation `C_n(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CirculantSpec {
    n: usize,
    set: Vec<usize>,
}

impl CirculantSpec {
    /// Validates `n` and `set`. The connection set may be given in any order
    /// but may not repeat entries.
    pub fn new(n: usize, set: impl IntoIterator<Item = usize>) -> Result<Self> {
        let bad = |reason: String| Error::InvalidConnectionSet { n, reason };
        if n == 0 {
            return Err(bad("n must be at least 1".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut set: Vec<usize> = set.into_iter().collect();
        set.sort_unstable();
        if let Some(w) = set.windows(2).find(|w| w[0] == w[1]) {
            return Err(bad(format!("duplicate element {}", w[0])));
        }
        if let Some(&s) = set.iter().find(|&&s| s == 0 || s > n / 2) {
            return Err(bad(format!("element {s} outside 1..={}", n / 2)));
        }
        Ok(CirculantSpec { n, set })
    }

    /// `C_n(1, 2, .., d)`.
    pub fn contiguous(n: usize, d: usize) -> Result<Self> {
        Self::new(n, 1..=d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&self) -> &[usize] {
        &self.set
    }

    /// `d` when the connection set is exactly `{1, .., d}`.
    pub fn contiguous_d(&self) -> Option<usize> {
        self.set
            .iter()
            .enumerate()
            .all(|(k, &s)| s == k + 1)
            .then_some(self.set.len())
    }

    pub fn contains_distance(&self, i: usize, j: usize) -> bool {
        let diff = i.abs_diff(j) % self.n;
        let dist = diff.min(self.n - diff);
        self.set.binary_search(&dist).is_ok()
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}(", self.n)?;
        for (k, s) in self.set.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// A finite simple graph on at most 64 vertices.
///
/// Vertices are `0..vertex_count` internally. `labels[v]` is the 1-based
/// name of vertex `v` in the graph it was derived from (identity for freshly
/// built graphs).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    vertex_count: usize,
    adjacency: Vec<VertexSet>,
    origin: Option<CirculantSpec>,
    labels: Vec<usize>,
}

impl Graph {
    pub fn edgeless(vertex_count: usize) -> Result<Self> {
        if vertex_count > MAX_VERTICES {
            return Err(Error::TooManyVertices(vertex_count));
        }
        Ok(Graph {
            vertex_count,
            adjacency: vec![VertexSet::EMPTY; vertex_count],
            origin: None,
            labels: (1..=vertex_count).collect(),
        })
    }

    pub fn complete(vertex_count: usize) -> Result<Self> {
        let mut g = Self::edgeless(vertex_count)?;
        let all = VertexSet::full(vertex_count);
        for v in 0..vertex_count {
            g.adjacency[v] = all.without(v);
        }
        Ok(g)
    }

    /// Builds a graph from 1-based edges.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(vertex_count)?;
        for &(i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if i == j {
                return Err(Error::Domain(format!("loop at vertex {i}")));
            }
            g.add_edge(i - 1, j - 1);
        }
        Ok(g)
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.adjacency[a] = self.adjacency[a].with(b);
        self.adjacency[b] = self.adjacency[b].with(a);
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn origin(&self) -> Option<&CirculantSpec> {
        self.origin.as_ref()
    }

    /// 1-based labels of the vertices in the parent graph.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    #[inline]
    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges as 0-based pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count)
            .flat_map(|a| self.adjacency[a].iter().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.adjacency[v].is_disjoint(set))
    }

    /// Graph with the same vertices and the complementary edge set.
    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        Graph {
            vertex_count: self.vertex_count,
            adjacency: (0..self.vertex_count)
                .map(|v| all.difference(self.adjacency[v]).without(v))
                .collect(),
            origin: None,
            labels: self.labels.clone(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count <= 1 || self.reachable_from(0) == self.vertices()
    }

    fn reachable_from(&self, start: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.adjacency[v].difference(seen).iter() {
                seen = seen.with(w);
                queue.push_back(w);
            }
        }
        seen
    }

    /// "edges-v1": `n <count>` followed by sorted 1-based `i j` lines.
    pub fn to_edges_v1(&self) -> String {
        let mut out = format!("n {}\n", self.vertex_count);
        for (a, b) in self.edges() {
            out.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        out
    }

    pub fn from_edges_v1(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let n = parse_header(header, 1)?;
        let mut edges = Vec::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::parse(line_no, format!("bad integer {t:?}")))
                })
                .collect::<Result<_>>()?;
            match nums[..] {
                [i, j] if i < j => edges.push((i, j)),
                [_, _] => return Err(Error::parse(line_no, "expected i < j")),
                _ => return Err(Error::parse(line_no, "expected two vertices")),
            }
        }
        Graph::from_edges(n, &edges)
    }
}

pub(crate) fn parse_header(line: &str, line_no: usize) -> Result<usize> {
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some("n"), Some(v), None) => v
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad vertex count {v:?}"))),
        _ => Err(Error::parse(line_no, "expected `n <vertex_count>`")),
    }
}

/// Builds `C_n(S)`: `{i, j}` is an edge iff `min(|i-j|, n-|i-j|) ∈ S`.
pub fn make_circulant(spec: &CirculantSpec) -> Graph {
    let n = spec.n;
    let mut g = Graph::edgeless(n).expect("spec validated n");
    for i in 0..n {
        for &s in &spec.set {
            g.add_edge(i, (i + s) % n);
        }
    }
    g.origin = Some(spec.clone());
    g
}

/// Induced subgraph on `w` (0-based). The result is relabelled to
/// `0..|w|` in increasing order; `labels` keeps the original names.
pub fn induced_subgraph(g: &Graph, w: VertexSet) -> Result<Graph> {
    if let Some(v) = w.iter().find(|&v| v >= g.vertex_count) {
        return Err(Error::VertexOutOfRange {
            vertex: v + 1,
            vertex_count: g.vertex_count,
        });
    }
    let members: Vec<usize> = w.iter().collect();
    let mut position = [usize::MAX; MAX_VERTICES];
    for (k, &v) in members.iter().enumerate() {
        position[v] = k;
    }
    let adjacency = members
        .iter()
        .map(|&v| g.adjacency[v].intersection(w).iter().map(|u| position[u]).collect())
        .collect();
    Ok(Graph {
        vertex_count: members.len(),
        adjacency,
        origin: None,
        labels: members.iter().map(|&v| g.labels[v]).collect(),
    })
}

/// Connected components, ordered by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Graph> {
    let mut unseen = g.vertices();
    let mut out = Vec::new();
    while let Some(start) = unseen.first() {
        let comp = g.reachable_from(start);
        unseen = unseen.difference(comp);
        out.push(induced_subgraph(g, comp).expect("component vertices are in range"));
    }
    out
}

/// Lexicographic product `G[H]`. Vertex `(u, v)` (1-based) gets index
/// `(u - 1) * |V_H| + v`.
pub fn lex_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.vertex_count == 0 || h.vertex_count == 0 {
        return Err(Error::Domain("lexicographic product needs non-empty factors".into()));
    }
    let nh = h.vertex_count;
    let total = g.vertex_count * nh;
    let mut out = Graph::edgeless(total)?;
    let block = |u: usize| VertexSet::from_bits(VertexSet::full(nh).bits() << (u * nh));
    for u in 0..g.vertex_count {
        let across = g.adjacency[u]
            .iter()
            .fold(VertexSet::EMPTY, |acc, x| acc.union(block(x)));
        for v in 0..nh {
            let inside = VertexSet::from_bits(h.adjacency[v].bits() << (u * nh));
            out.adjacency[u * nh + v] = across.union(inside);
        }
    }
    Ok(out)
}

/// Disjoint union; vertices of `h` follow those of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let total = g.vertex_count + h.vertex_count;
    let mut out = Graph::edgeless(total)?;
    for (v, adj) in g.adjacency.iter().enumerate() {
        out.adjacency[v] = *adj;
    }
    let shift = g.vertex_count;
    for (v, adj) in h.adjacency.iter().enumerate() {
        out.adjacency[shift + v] = VertexSet::from_bits(adj.bits() << shift);
    }
    Ok(out)
}

/// Structure of the cubic circulant `C_{2n}(a, n)` as disjoint copies of a
/// smaller circulant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicDecomposition {
    pub t: usize,
    pub copies: usize,
    pub component_spec: CirculantSpec,
}

pub fn cubic_decompose(two_n: usize, a: usize) -> Result<CubicDecomposition> {
    if two_n == 0 || !two_n.is_multiple_of(2) {
        return Err(Error::Domain(format!("2n = {two_n} must be positive and even")));
    }
    if a == 0 || a >= two_n / 2 {
        return Err(Error::Domain(format!("a = {a} outside 1..{}", two_n / 2)));
    }
    let t = a.gcd(&two_n);
    let m = two_n / t;
    let (copies, component_spec) = if m.is_multiple_of(2) {
        (t, CirculantSpec::new(m, [1, m / 2])?)
    } else {
        (t / 2, CirculantSpec::new(2 * m, [2, m])?)
    };
    Ok(CubicDecomposition {
        t,
        copies,
        component_spec,
    })
}

/// Brute-force isomorphism test for graphs with at most
/// [`ISOMORPHISM_LIMIT`] vertices.
pub fn is_isomorphic_small(g: &Graph, h: &Graph) -> Result<bool> {
    for x in [g, h] {
        if x.vertex_count > ISOMORPHISM_LIMIT {
            return Err(Error::GuardExceeded {
                what: "isomorphism test vertex count",
                limit: ISOMORPHISM_LIMIT,
                actual: x.vertex_count,
            });
        }
    }
    if g.vertex_count != h.vertex_count || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let degrees = |x: &Graph| {
        let mut d: Vec<usize> = (0..x.vertex_count).map(|v| x.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degrees(g) != degrees(h) {
        return Ok(false);
    }

    // Visit g's vertices so that each one (after the first of its
    // component) has an already-mapped neighbour; this prunes early.
    let mut order = Vec::with_capacity(g.vertex_count);
    let mut placed = VertexSet::EMPTY;
    while order.len() < g.vertex_count {
        let frontier = (0..g.vertex_count)
            .filter(|&v| !placed.contains(v))
            .max_by_key(|&v| (g.adjacency[v].intersection(placed).len(), g.degree(v)))
            .expect("unplaced vertex exists");
        placed = placed.with(frontier);
        order.push(frontier);
    }

    let mut image = vec![usize::MAX; g.vertex_count];
    Ok(extend_isomorphism(g, h, &order, 0, &mut image, VertexSet::EMPTY))
}

fn extend_isomorphism(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: VertexSet,
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in h.vertices().difference(used).iter() {
        if h.degree(w) != g.degree(v) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.is_edge(u, v) == h.is_edge(image[u], w));
        if consistent {
            image[v] = w;
            if extend_isomorphism(g, h, order, depth + 1, image, used.with(w)) {
                return true;
            }
        }
    }
    image[v] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(n: usize, s: &[usize]) -> Graph {
        make_circulant(&CirculantSpec::new(n, s.iter().copied()).unwrap())
    }

    #[test]
    fn k4_from_circulant() {
        let g = circ(4, &[1, 2]);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert!((0..4).all(|v| g.degree(v) == 3));
        assert_eq!(g, {
            let mut k = Graph::complete(4).unwrap();
            k.origin = g.origin.clone();
            k
        });
    }

    #[test]
    fn c12_134_is_six_regular() {
        let g = circ(12, &[1, 3, 4]);
        assert_eq!(g.edge_count(), 36);
        assert!((0..12).all(|v| g.degree(v) == 6));
    }

    #[test]
    fn seven_cycle() {
        let g = circ(7, &[1]);
        let expected: Vec<_> = (0..7).map(|i| ((i).min((i + 1) % 7), i.max((i + 1) % 7))).collect();
        let mut expected = expected;
        expected.sort();
        assert_eq!(g.edges(), expected);
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(CirculantSpec::new(6, [4]).is_err());
        assert!(CirculantSpec::new(6, [0]).is_err());
        assert!(CirculantSpec::new(6, [2, 2]).is_err());
        assert!(CirculantSpec::new(0, []).is_err());
        assert!(CirculantSpec::new(65, []).is_err());
        // Empty connection sets are fine.
        assert_eq!(make_circulant(&CirculantSpec::new(3, []).unwrap()).edge_count(), 0);
    }

    #[test]
    fn degree_rule_including_diameter() {
        for n in 1..=16 {
            for bits in 0u32..(1 << (n / 2)) {
                let set: Vec<usize> = (1..=n / 2).filter(|s| bits >> (s - 1) & 1 == 1).collect();
                let g = circ(n, &set);
                let expected = 2 * set.len() - usize::from(n % 2 == 0 && set.contains(&(n / 2)));
                assert!((0..n).all(|v| g.degree(v) == expected), "C_{n}({set:?})");
            }
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let c7 = circ(7, &[1]);
        let s = induced_subgraph(&c7, VertexSet::from_labels([1, 3, 5])).unwrap();
        assert_eq!(s.edge_count(), 0);
        assert_eq!(s.labels(), &[1, 3, 5]);

        let empty = induced_subgraph(&c7, VertexSet::EMPTY).unwrap();
        assert_eq!(empty.vertex_count(), 0);

        let g = circ(15, &[1, 2, 3]);
        let w = VertexSet::from_labels([1, 2, 6, 7, 11, 12]);
        let s = induced_subgraph(&g, w).unwrap();
        let named: Vec<_> = s
            .edges()
            .into_iter()
            .map(|(a, b)| (s.labels()[a], s.labels()[b]))
            .collect();
        assert_eq!(named, vec![(1, 2), (6, 7), (11, 12)]);

        assert!(matches!(
            induced_subgraph(&c7, VertexSet::from_labels([8])),
            Err(Error::VertexOutOfRange { vertex: 8, .. })
        ));
    }

    #[test]
    fn component_counts() {
        assert_eq!(connected_components(&circ(6, &[2, 3])).len(), 1);
        assert_eq!(connected_components(&circ(12, &[4, 6])).len(), 2);
        assert_eq!(connected_components(&Graph::edgeless(5).unwrap()).len(), 5);
    }

    #[test]
    fn lex_product_examples() {
        let k2 = circ(2, &[1]);
        let c5 = circ(5, &[1]);
        // K2[C5]: each vertex sees the whole other block plus two in its own.
        let gh = lex_product(&k2, &c5).unwrap();
        assert_eq!(gh.vertex_count(), 10);
        assert!((0..10).all(|v| gh.degree(v) == 7));
        let hg = lex_product(&c5, &k2).unwrap();
        assert!((0..10).all(|v| hg.degree(v) == 5));
        assert!(hg.is_edge(0, 1) && hg.is_edge(0, 2) && !hg.is_edge(0, 4));

        let k1 = Graph::edgeless(1).unwrap();
        let p = lex_product(&k1, &c5).unwrap();
        assert_eq!(p.edges(), c5.edges());
    }

    #[test]
    fn lex_product_counts() {
        let specs = [(2, vec![1]), (3, vec![]), (4, vec![1]), (5, vec![1, 2]), (5, vec![2])];
        for (gn, gs) in &specs {
            for (hn, hs) in &specs {
                let g = circ(*gn, gs);
                let h = circ(*hn, hs);
                let p = lex_product(&g, &h).unwrap();
                assert_eq!(p.vertex_count(), gn * hn);
                assert_eq!(p.edge_count(), g.edge_count() * hn * hn + gn * h.edge_count());
            }
        }
    }

    #[test]
    fn cubic_decompose_examples() {
        let d = cubic_decompose(12, 4).unwrap();
        assert_eq!((d.t, d.copies), (4, 2));
        assert_eq!(d.component_spec, CirculantSpec::new(6, [2, 3]).unwrap());

        let d = cubic_decompose(8, 2).unwrap();
        assert_eq!((d.t, d.copies), (2, 2));
        assert_eq!(d.component_spec, CirculantSpec::new(4, [1, 2]).unwrap());

        let d = cubic_decompose(6, 2).unwrap();
        assert_eq!((d.t, d.copies), (2, 1));
        assert_eq!(d.component_spec, CirculantSpec::new(6, [2, 3]).unwrap());

        assert!(cubic_decompose(8, 4).is_err());
        assert!(cubic_decompose(7, 1).is_err());
        assert!(cubic_decompose(8, 0).is_err());
    }

    #[test]
    fn cubic_decomposition_matches_components() {
        for two_n in (4..=12).step_by(2) {
            for a in 1..two_n / 2 {
                let dec = cubic_decompose(two_n, a).unwrap();
                assert_eq!(dec.copies * dec.component_spec.n(), two_n);
                let g = circ(two_n, &[a, two_n / 2]);
                let comps = connected_components(&g);
                assert_eq!(comps.len(), dec.copies, "C_{two_n}({a},{})", two_n / 2);
                let target = make_circulant(&dec.component_spec);
                for c in &comps {
                    assert!(is_isomorphic_small(c, &target).unwrap());
                }
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert!(is_isomorphic_small(&circ(4, &[1, 2]), &k4).unwrap());
        // The two products of C2(1) and C5(1) are the circulants C10(1,4,5)
        // and C10(1,2,3,5); with the left factor outermost, K2[C5] is the
        // 7-regular one.
        let p = lex_product(&circ(2, &[1]), &circ(5, &[1])).unwrap();
        assert!(is_isomorphic_small(&p, &circ(10, &[1, 2, 3, 5])).unwrap());
        assert!(!is_isomorphic_small(&p, &circ(10, &[1, 4, 5])).unwrap());
        let q = lex_product(&circ(5, &[1]), &circ(2, &[1])).unwrap();
        assert!(is_isomorphic_small(&q, &circ(10, &[1, 4, 5])).unwrap());
        assert!(!is_isomorphic_small(&circ(6, &[1, 3]), &circ(6, &[2, 3])).unwrap());
        assert!(is_isomorphic_small(&circ(13, &[1]), &circ(13, &[1])).is_err());
    }

    #[test]
    fn isomorphism_reflexive_and_symmetric() {
        let mut graphs = Vec::new();
        for n in 1..=8 {
            for bits in 0u32..(1 << (n / 2)) {
                let set: Vec<usize> = (1..=n / 2).filter(|s| bits >> (s - 1) & 1 == 1).collect();
                graphs.push(circ(n, &set));
            }
        }
        for g in &graphs {
            assert!(is_isomorphic_small(g, g).unwrap());
            for h in &graphs {
                assert_eq!(is_isomorphic_small(g, h).unwrap(), is_isomorphic_small(h, g).unwrap());
            }
        }
    }

    #[test]
    fn edges_v1_round_trip() {
        let g = circ(12, &[1, 3, 4]);
        let text = g.to_edges_v1();
        assert!(text.starts_with("n 12\n1 2\n1 4\n1 5\n"));
        let back = Graph::from_edges_v1(&text).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert!(Graph::from_edges_v1("n 3\n2 1\n").is_err());
        assert!(Graph::from_edges_v1("m 3\n").is_err());
        assert!(Graph::from_edges_v1("n 3\n1 4\n").is_err());
    }
}

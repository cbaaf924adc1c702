//! Shellability by budgeted backtracking over facet orders.
//!
//! For a prefix `P` and a facet `F ∉ P`, let `R(F) = {x ∈ F : F∖x ⊆ G for
//! some G ∈ P}`. `F` can be appended iff `R(F)` is non-empty and not itself
//! a face of `⟨P⟩`. Whether a prefix extends to a shelling depends only on
//! its underlying set, so failed sets are memoised. Moreover
//! `Σ_{F ∈ P} t^{|R(F)|}` is the h-polynomial of `⟨P⟩`, so the number of
//! facets appended with `|R(F)| = k` can never exceed `h_k`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::complex::{f_vector, Complex};
use crate::vertex_set::VertexSet;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Upper bound on memoised failed prefixes (roughly 100 MB worst case).
const MEMO_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriState {
    True,
    False,
    Unknown,
}

impl TriState {
    pub fn as_str(self) -> &'static str {
        match self {
            TriState::True => "true",
            TriState::False => "false",
            TriState::Unknown => "unknown",
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            TriState::True => Some(true),
            TriState::False => Some(false),
            TriState::Unknown => None,
        }
    }
}

impl From<bool> for TriState {
    fn from(b: bool) -> Self {
        if b {
            TriState::True
        } else {
            TriState::False
        }
    }
}

/// Why the search answered the way it did.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ShellingEvidence {
    OrderFound,
    NotPure,
    /// `h_k < 0`, impossible for a shellable complex.
    NegativeHEntry {
        k: usize,
    },
    SearchExhausted,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingOutcome {
    pub status: TriState,
    pub order: Option<Vec<VertexSet>>,
    pub evidence: ShellingEvidence,
    pub nodes: u64,
}

impl ShellingOutcome {
    fn decided(status: bool, evidence: ShellingEvidence) -> Self {
        ShellingOutcome {
            status: status.into(),
            order: None,
            evidence,
            nodes: 0,
        }
    }
}

struct Search<'a> {
    facets: &'a [VertexSet],
    /// Facets sharing a ridge with each facet.
    neighbours: Vec<Vec<usize>>,
    h: Vec<i64>,
    placed: Vec<u64>,
    order: Vec<usize>,
    masks: Vec<VertexSet>,
    counts: Vec<i64>,
    failed: HashSet<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Done,
    Failed,
    OutOfBudget,
}

impl Search<'_> {
    fn is_placed(&self, i: usize) -> bool {
        self.placed[i / 64] >> (i % 64) & 1 == 1
    }

    fn toggle(&mut self, i: usize) {
        self.placed[i / 64] ^= 1 << (i % 64);
    }

    fn addable(&self, i: usize) -> bool {
        let mask = self.masks[i];
        !mask.is_empty()
            && self.counts[mask.len()] < self.h[mask.len()]
            && self.order.iter().all(|&g| !mask.is_subset(self.facets[g]))
    }

    fn place(&mut self, g: usize, undo: &mut Vec<(usize, VertexSet)>) {
        let k = if self.order.is_empty() { 0 } else { self.masks[g].len() };
        self.counts[k] += 1;
        self.toggle(g);
        self.order.push(g);
        let fg = self.facets[g];
        for idx in 0..self.neighbours[g].len() {
            let f = self.neighbours[g][idx];
            if self.is_placed(f) {
                continue;
            }
            let grown = self.masks[f].union(self.facets[f].difference(fg));
            if grown != self.masks[f] {
                undo.push((f, self.masks[f]));
                self.masks[f] = grown;
            }
        }
    }

    fn unplace(&mut self, undo: Vec<(usize, VertexSet)>) {
        for (f, old) in undo.into_iter().rev() {
            self.masks[f] = old;
        }
        let g = self.order.pop().expect("non-empty order");
        self.toggle(g);
        let k = if self.order.is_empty() { 0 } else { self.masks[g].len() };
        self.counts[k] -= 1;
    }

    fn extend(&mut self) -> Step {
        if self.order.len() == self.facets.len() {
            return Step::Done;
        }
        if self.failed.contains(&self.placed) {
            return Step::Failed;
        }
        let mut candidates: Vec<usize> = (0..self.facets.len())
            .filter(|&i| !self.is_placed(i) && (self.order.is_empty() || self.addable(i)))
            .collect();
        candidates.sort_by_key(|&i| self.masks[i].len());
        for f in candidates {
            if self.nodes >= self.budget {
                return Step::OutOfBudget;
            }
            self.nodes += 1;
            let mut undo = Vec::new();
            self.place(f, &mut undo);
            match self.extend() {
                Step::Failed => self.unplace(undo),
                other => return other,
            }
        }
        if self.failed.len() < MEMO_CAP {
            self.failed.insert(self.placed.clone());
        }
        Step::Failed
    }
}

/// Decides shellability within `node_budget` facet placements. A returned
/// order has been re-checked by [`verify_shelling_order`].
pub fn is_shellable(c: &Complex, node_budget: u64) -> ShellingOutcome {
    if !c.is_pure() {
        return ShellingOutcome::decided(false, ShellingEvidence::NotPure);
    }
    let h = f_vector(c).h;
    if let Some(k) = h.iter().position(|&x| x < 0) {
        return ShellingOutcome::decided(false, ShellingEvidence::NegativeHEntry { k });
    }
    let facets = c.facets();
    let m = facets.len();
    let neighbours = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| j != i && facets[i].difference(facets[j]).len() == 1)
                .collect()
        })
        .collect();
    let mut search = Search {
        facets,
        neighbours,
        counts: vec![0; h.len()],
        h,
        placed: vec![0; m.div_ceil(64)],
        order: Vec::with_capacity(m),
        masks: vec![VertexSet::EMPTY; m],
        failed: HashSet::new(),
        nodes: 0,
        budget: node_budget,
    };
    let step = search.extend();
    let nodes = search.nodes;
    match step {
        Step::Done => {
            let order: Vec<VertexSet> = search.order.iter().map(|&i| facets[i]).collect();
            assert!(
                verify_shelling_order(c, &order),
                "shelling search produced an invalid order"
            );
            ShellingOutcome {
                status: TriState::True,
                order: Some(order),
                evidence: ShellingEvidence::OrderFound,
                nodes,
            }
        }
        Step::Failed => ShellingOutcome {
            nodes,
            ..ShellingOutcome::decided(false, ShellingEvidence::SearchExhausted)
        },
        Step::OutOfBudget => ShellingOutcome {
            status: TriState::Unknown,
            order: None,
            evidence: ShellingEvidence::BudgetExhausted,
            nodes,
        },
    }
}

/// Direct check of the shelling condition: `order` lists every facet of the
/// pure complex `c` exactly once, and for all `j < i` there are `k < i` and
/// `x` with `F_i ∖ F_k = {x} ⊆ F_i ∖ F_j`.
pub fn verify_shelling_order(c: &Complex, order: &[VertexSet]) -> bool {
    if !c.is_pure() || order.len() != c.facets().len() {
        return false;
    }
    let mut sorted = order.to_vec();
    sorted.sort_by(|a, b| a.lex_cmp(*b));
    if sorted != c.facets() {
        return false;
    }
    (1..order.len()).all(|i| {
        let fi = order[i];
        (0..i).all(|j| {
            let diff_j = fi.difference(order[j]);
            (0..i).any(|k| {
                let diff_k = fi.difference(order[k]);
                diff_k.len() == 1 && diff_k.is_subset(diff_j)
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::independence_complex;
    use crate::graph::{make_circulant, CirculantSpec};

    fn ind(n: usize, s: &[usize]) -> Complex {
        independence_complex(&make_circulant(&CirculantSpec::new(n, s.iter().copied()).unwrap()))
    }

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_labels(v.iter().copied())
    }

    #[test]
    fn one_dimensional_examples() {
        let out = is_shellable(&ind(8, &[1, 2]), DEFAULT_NODE_BUDGET);
        assert_eq!(out.status, TriState::True);
        assert!(verify_shelling_order(&ind(8, &[1, 2]), out.order.as_ref().unwrap()));
        let out = is_shellable(&ind(4, &[1]), DEFAULT_NODE_BUDGET);
        assert_eq!(out.status, TriState::False);
        assert_eq!(out.evidence, ShellingEvidence::NegativeHEntry { k: 2 });
    }

    #[test]
    fn disconnected_graph_without_h_obstruction() {
        // Triangle boundary plus a disjoint edge: h = (1, 3, 0), yet not shellable.
        let c = Complex::from_facets(5, vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3]), set(&[4, 5])]).unwrap();
        assert!(f_vector(&c).h_nonnegative());
        let out = is_shellable(&c, DEFAULT_NODE_BUDGET);
        assert_eq!(out.status, TriState::False);
        assert_eq!(out.evidence, ShellingEvidence::SearchExhausted);
    }

    #[test]
    fn zero_dimensional_and_trivial() {
        assert_eq!(is_shellable(&ind(11, &[1, 2, 3, 4, 5]), 100).status, TriState::True);
        assert_eq!(is_shellable(&Complex::void_face(2), 1).status, TriState::True);
        assert_eq!(is_shellable(&ind(6, &[1]), 100).evidence, ShellingEvidence::NotPure);
    }

    #[test]
    fn seven_cycle_has_negative_h() {
        let out = is_shellable(&ind(7, &[1]), DEFAULT_NODE_BUDGET);
        assert_eq!(out.evidence, ShellingEvidence::NegativeHEntry { k: 3 });
    }

    #[test]
    fn budget_runs_out() {
        let two_triangles = Complex::from_facets(
            6,
            vec![
                set(&[1, 2]),
                set(&[2, 3]),
                set(&[1, 3]),
                set(&[4, 5]),
                set(&[5, 6]),
                set(&[4, 6]),
            ],
        )
        .unwrap();
        assert_eq!(f_vector(&two_triangles).h, vec![1, 4, 1]);
        assert_eq!(
            is_shellable(&two_triangles, DEFAULT_NODE_BUDGET).status,
            TriState::False
        );
        let octahedron_boundary = {
            let mut facets = Vec::new();
            for i in [1, 2] {
                for j in [3, 4] {
                    for k in [5, 6] {
                        facets.push(set(&[i, j, k]));
                    }
                }
            }
            Complex::from_facets(6, facets).unwrap()
        };
        assert_eq!(is_shellable(&octahedron_boundary, 2).status, TriState::Unknown);
        let full = is_shellable(&octahedron_boundary, DEFAULT_NODE_BUDGET);
        assert_eq!(full.status, TriState::True);
    }

    #[test]
    fn verifier_rejects_bad_orders() {
        let c = ind(8, &[1, 2]);
        let mut order = is_shellable(&c, DEFAULT_NODE_BUDGET).order.unwrap();
        assert!(verify_shelling_order(&c, &order));
        order.pop();
        assert!(!verify_shelling_order(&c, &order));
        // Path 12-23-34 listed as 12, 34, 23 breaks the condition at step two.
        let path = Complex::from_facets(4, vec![set(&[1, 2]), set(&[2, 3]), set(&[3, 4])]).unwrap();
        assert!(!verify_shelling_order(
            &path,
            &[set(&[1, 2]), set(&[3, 4]), set(&[2, 3])]
        ));
        assert!(verify_shelling_order(
            &path,
            &[set(&[2, 3]), set(&[3, 4]), set(&[1, 2])]
        ));
    }

    #[test]
    fn contiguous_family_shellable_when_cm() {
        for d in 1..=3 {
            let set: Vec<usize> = (1..=d).collect();
            for n in 2 * d..=3 * d + 2 {
                let out = is_shellable(&ind(n, &set), DEFAULT_NODE_BUDGET);
                let expected = if n == 2 * d + 2 {
                    TriState::False
                } else {
                    TriState::True
                };
                assert_eq!(out.status, expected, "C_{n}(1..{d})");
            }
        }
    }
}

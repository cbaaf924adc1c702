//! Projective dimension and depth of the Stanley–Reisner ring via
//! Hochster's formula and Auslander–Buchsbaum.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::field::FieldChoice;
use crate::homology::betti_of_faces;
use crate::vertex_set::VertexSet;

/// Default limit on the ambient vertex count (2^n induced subcomplexes).
pub const PDIM_VERTEX_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthInfo {
    pub pdim: usize,
    /// `vertex_count − pdim`.
    pub depth: usize,
    /// Subset `W` and degree `j` with `H̃_j(Δ_W) ≠ 0` attaining
    /// `pdim = |W| − j − 1`.
    pub witness_set: VertexSet,
    pub witness_degree: i64,
}

/// `pdim = max { |W| − j − 1 : W ⊆ V, H̃_j(Δ_W) ≠ 0 }` over the ambient
/// vertex set `V` (uncovered vertices included).
pub fn projective_dimension(c: &Complex, field: FieldChoice, allow_large: bool) -> Result<DepthInfo> {
    let n = c.vertex_count();
    if n > PDIM_VERTEX_LIMIT && !allow_large {
        return Err(Error::GuardExceeded {
            what: "vertex count for projective dimension",
            limit: PDIM_VERTEX_LIMIT,
            actual: n,
        });
    }
    if n >= 40 {
        return Err(Error::GuardExceeded {
            what: "vertex count for projective dimension even with override",
            limit: 39,
            actual: n,
        });
    }
    let faces = c.faces();

    // Every W contributes at most |W|, so sweep sizes downwards and stop
    // once no larger value is possible.
    let mut best: Option<(usize, VertexSet, i64)> = None;
    for size in (0..=n).rev() {
        if best.is_some_and(|(value, _, _)| value >= size) {
            break;
        }
        let mut layer = subsets_of_size(n, size);
        layer.sort_by(|a, b| a.lex_cmp(*b));
        let found = layer
            .par_iter()
            .filter_map(|&w| {
                let restricted: Vec<Vec<VertexSet>> = faces
                    .iter()
                    .map(|l| l.iter().copied().filter(|f| f.is_subset(w)).collect::<Vec<_>>())
                    .take_while(|l| !l.is_empty())
                    .collect();
                let j = betti_of_faces(&restricted, field).first_nonzero_below(i64::MAX)?;
                Some(((size as i64 - j - 1) as usize, w, j))
            })
            .reduce_with(|a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1.lex_cmp(a.1).is_lt()) {
                    b
                } else {
                    a
                }
            });
        if let Some(cand) = found {
            if best.is_none_or(|(value, _, _)| cand.0 > value) {
                best = Some(cand);
            }
        }
    }
    let (pdim, witness_set, witness_degree) = best.expect("W = ∅ always contributes");
    Ok(DepthInfo {
        pdim,
        depth: n - pdim,
        witness_set,
        witness_degree,
    })
}

/// All `k`-subsets of `0..n` (Gosper's hack), `n < 64`.
fn subsets_of_size(n: usize, k: usize) -> Vec<VertexSet> {
    if k == 0 {
        return vec![VertexSet::EMPTY];
    }
    let mut out = Vec::new();
    let mut x: u64 = (1 << k) - 1;
    while x < 1 << n {
        out.push(VertexSet::from_bits(x));
        let low = x & x.wrapping_neg();
        let ripple = x + low;
        x = (((ripple ^ x) >> 2) / low) | ripple;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::independence_complex;
    use crate::graph::{make_circulant, CirculantSpec};

    fn ind(n: usize, s: &[usize]) -> Complex {
        independence_complex(&make_circulant(&CirculantSpec::new(n, s.iter().copied()).unwrap()))
    }

    const Q: FieldChoice = FieldChoice::ExactRational;

    #[test]
    fn cubic_table_small() {
        assert_eq!(projective_dimension(&ind(4, &[1, 2]), Q, false).unwrap().pdim, 3);
        assert_eq!(projective_dimension(&ind(6, &[1, 3]), Q, false).unwrap().pdim, 5);
        let d = projective_dimension(&ind(6, &[2, 3]), Q, false).unwrap();
        assert_eq!(d.depth, 2);
    }

    #[test]
    fn simplex_and_void() {
        // k[x1..x3] itself: pdim 0.
        let s = Complex::simplex(3, VertexSet::full(3)).unwrap();
        let d = projective_dimension(&s, Q, false).unwrap();
        assert_eq!((d.pdim, d.depth), (0, 3));
        // Ideal (x1, x2): pdim 2, depth 0.
        let v = Complex::void_face(2);
        assert_eq!(projective_dimension(&v, Q, false).unwrap().pdim, 2);
    }

    #[test]
    fn single_edge_ideal() {
        // Two vertices joined by an edge: R/(x1 x2) has pdim 1.
        let c = ind(2, &[1]);
        let d = projective_dimension(&c, Q, false).unwrap();
        assert_eq!((d.pdim, d.witness_set, d.witness_degree), (1, VertexSet::full(2), 0));
    }

    #[test]
    fn gosper_enumeration() {
        for n in 0..=8 {
            for k in 0..=n {
                let subsets = subsets_of_size(n, k);
                assert_eq!(num_bigint::BigInt::from(subsets.len()), crate::complex::binomial(n, k));
                assert!(subsets.iter().all(|w| w.len() == k && w.is_subset(VertexSet::full(n))));
            }
        }
    }

    #[test]
    fn guard() {
        let c = Complex::void_face(17);
        assert!(projective_dimension(&c, Q, false).unwrap_err().is_guard());
        assert_eq!(projective_dimension(&c, Q, true).unwrap().pdim, 17);
    }

    #[test]
    fn depth_matches_dimension_for_cm_cycles() {
        for n in [3usize, 5] {
            let c = ind(n, &[1]);
            let d = projective_dimension(&c, Q, false).unwrap();
            assert_eq!(d.depth as i64, c.dim() + 1);
        }
        let c = ind(7, &[1]);
        assert!((projective_dimension(&c, Q, false).unwrap().depth as i64) < c.dim() + 1);
    }
}

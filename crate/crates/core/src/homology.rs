//! Reduced simplicial homology over an exact field.

use serde::{Deserialize, Serialize};

use crate::complex::{f_vector, Complex};
use crate::field::FieldChoice;
use crate::linalg::{SparseColumn, SparseMatrix};
use crate::vertex_set::VertexSet;

/// Augmented chain complex `0 ← k^{f_-1} ← k^{f_0} ← … ← k^{f_D} ← 0`.
///
/// `bases[i + 1]` lists the `i`-faces in lexicographic order and
/// `boundaries[i]` is `∂_i : C_i → C_{i-1}` for `i = 0..=D`.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    pub field: FieldChoice,
    pub bases: Vec<Vec<VertexSet>>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplexData {
    pub fn dim(&self) -> i64 {
        self.bases.len() as i64 - 2
    }

    /// Basis of `C_i`; empty outside `-1..=D`.
    pub fn basis(&self, i: i64) -> &[VertexSet] {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.bases.get(k))
            .map_or(&[], Vec::as_slice)
    }

    pub fn boundary(&self, i: i64) -> Option<&SparseMatrix> {
        usize::try_from(i).ok().and_then(|k| self.boundaries.get(k))
    }

    /// Index of `face` in the basis of its dimension.
    pub fn index_of(&self, face: VertexSet) -> Option<usize> {
        self.bases
            .get(face.len())?
            .binary_search_by(|probe| probe.lex_cmp(face))
            .ok()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.boundaries.iter().map(|m| m.rank(self.field)).collect()
    }

    pub fn betti(&self) -> BettiTable {
        betti_from_ranks(self.field, &self.bases, &self.ranks())
    }

    /// True iff every composite `∂_i ∘ ∂_{i+1}` vanishes.
    pub fn boundary_squares_vanish(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].mul(&w[1]).map(|m| m.is_zero()).unwrap_or(false))
    }
}

/// `dim H̃_i` for `i = -1..=D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub field: FieldChoice,
    /// `betti[i + 1] = dim H̃_i`.
    pub betti: Vec<u64>,
}

impl BettiTable {
    /// `dim H̃_i`, zero outside the stored range.
    pub fn get(&self, i: i64) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.betti.get(k))
            .copied()
            .unwrap_or(0)
    }

    /// Smallest `i < bound` with `H̃_i ≠ 0`.
    pub fn first_nonzero_below(&self, bound: i64) -> Option<i64> {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| (k as i64 - 1, b))
            .find(|&(i, b)| i < bound && b != 0)
            .map(|(i, _)| i)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Columns of `∂_i` for the faces in `layer` (each with `i + 1` vertices),
/// with rows indexed into `lower` (the `(i-1)`-faces, lex sorted).
fn boundary_columns(layer: &[VertexSet], lower: &[VertexSet]) -> Vec<SparseColumn<i64>> {
    layer
        .iter()
        .map(|&face| {
            let mut col: SparseColumn<i64> = face
                .iter()
                .enumerate()
                .map(|(pos, v)| {
                    let row = lower
                        .binary_search_by(|probe| probe.lex_cmp(face.without(v)))
                        .expect("faces are closed under taking subsets");
                    (row, if pos % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable_by_key(|&(r, _)| r);
            col
        })
        .collect()
}

fn boundary_matrices(bases: &[Vec<VertexSet>]) -> Vec<SparseMatrix> {
    (1..bases.len())
        .map(|k| SparseMatrix::from_columns(bases[k - 1].len(), boundary_columns(&bases[k], &bases[k - 1])))
        .collect()
}

fn betti_from_ranks(field: FieldChoice, bases: &[Vec<VertexSet>], ranks: &[usize]) -> BettiTable {
    // ranks[i] = rank ∂_i for i = 0..=D; ∂_{-1} and ∂_{D+1} are zero maps.
    let betti = bases
        .iter()
        .enumerate()
        .map(|(k, layer)| {
            let rank_out = if k == 0 { 0 } else { ranks[k - 1] };
            let rank_in = ranks.get(k).copied().unwrap_or(0);
            (layer.len() - rank_out - rank_in) as u64
        })
        .collect();
    BettiTable { field, betti }
}

/// Builds the augmented chain complex. Panics if `∂∂ ≠ 0`, which can only
/// happen through a bug in the sign convention.
pub fn build_chain_complex(c: &Complex, field: FieldChoice) -> ChainComplexData {
    let bases = c.faces();
    let boundaries = boundary_matrices(&bases);
    let data = ChainComplexData {
        field,
        bases,
        boundaries,
    };
    assert!(data.boundary_squares_vanish(), "boundary of a boundary is non-zero");
    data
}

/// Reduced Betti numbers of the complex whose faces are `layers`
/// (`layers[k]` = faces with `k` vertices, lex sorted, closed under subsets).
pub(crate) fn betti_of_faces(layers: &[Vec<VertexSet>], field: FieldChoice) -> BettiTable {
    let boundaries = boundary_matrices(layers);
    for w in boundaries.windows(2) {
        assert!(
            w[0].mul(&w[1]).map(|m| m.is_zero()).unwrap_or(false),
            "boundary of a boundary is non-zero"
        );
    }
    let ranks: Vec<usize> = boundaries.iter().map(|m| m.rank(field)).collect();
    betti_from_ranks(field, layers, &ranks)
}

pub fn reduced_betti(c: &Complex, field: FieldChoice) -> BettiTable {
    betti_of_faces(&c.faces(), field)
}

/// Checks `Σ (-1)^i dim H̃_i = Σ (-1)^i f_i`.
pub fn euler_check(c: &Complex, field: FieldChoice) -> bool {
    reduced_betti(c, field).euler_characteristic() == f_vector(c).reduced_euler_characteristic()
}

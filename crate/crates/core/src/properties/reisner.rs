//! Reisner's criterion for Cohen–Macaulayness and its Buchsbaum variant.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{link, Complex};
use crate::error::{Error, Result};
use crate::field::FieldChoice;
use crate::homology::reduced_betti;
use crate::vertex_set::VertexSet;

/// A face whose link has non-vanishing homology below its top dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReisnerWitness {
    pub face: VertexSet,
    /// Homological degree `i < dim link(face)` with `H̃_i(link) ≠ 0`.
    pub degree: i64,
}

fn link_violation(c: &Complex, face: VertexSet, field: FieldChoice) -> Option<ReisnerWitness> {
    let lk = link(c, face).expect("face enumerated from the complex");
    reduced_betti(&lk, field)
        .first_nonzero_below(lk.dim())
        .map(|degree| ReisnerWitness { face, degree })
}

/// First violating face in (size, lex) order; `skip_empty` gives the
/// Buchsbaum condition.
fn first_violation(c: &Complex, field: FieldChoice, skip_empty: bool) -> Option<ReisnerWitness> {
    let faces: Vec<VertexSet> = c
        .faces()
        .into_iter()
        .flatten()
        .filter(|f| !(skip_empty && f.is_empty()))
        .collect();
    faces.par_iter().find_map_first(|&face| link_violation(c, face, field))
}

/// `None` if the complex is Cohen–Macaulay over `field`, otherwise the
/// first face (∅ first, then by size and lex order) violating Reisner.
pub fn cohen_macaulay_witness(c: &Complex, field: FieldChoice) -> Option<ReisnerWitness> {
    first_violation(c, field, false)
}

pub fn is_cohen_macaulay(c: &Complex, field: FieldChoice) -> bool {
    cohen_macaulay_witness(c, field).is_none()
}

/// Like [`cohen_macaulay_witness`] but over non-empty faces only.
/// Buchsbaumness is only defined for pure complexes.
pub fn buchsbaum_witness(c: &Complex, field: FieldChoice) -> Result<Option<ReisnerWitness>> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    Ok(first_violation(c, field, true))
}

pub fn is_buchsbaum(c: &Complex, field: FieldChoice) -> Result<bool> {
    buchsbaum_witness(c, field).map(|w| w.is_none())
}

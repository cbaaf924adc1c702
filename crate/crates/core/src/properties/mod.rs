//! Decision procedures for Cohen–Macaulay and related properties.

pub mod decomposable;
pub mod hochster;
pub mod reisner;
pub mod report;
pub mod shelling;

pub use decomposable::{is_vertex_decomposable, shedding_vertex};
pub use hochster::{projective_dimension, DepthInfo, PDIM_VERTEX_LIMIT};
pub use reisner::{buchsbaum_witness, cohen_macaulay_witness, is_buchsbaum, is_cohen_macaulay, ReisnerWitness};
pub use report::{
    complex_report, full_report, graph_report, Checks, HochsterWitness, PropertyReport, ReportOptions, ShellableSource,
};
pub use shelling::{
    is_shellable, verify_shelling_order, ShellingEvidence, ShellingOutcome, TriState, DEFAULT_NODE_BUDGET,
};

//! Closed-form classifications, the octahedral-cycle construction, and
//! batch verification against the checkers.

pub mod family;
pub mod octahedron;
pub mod theorems;

pub use family::{expected_cubic_cm, expected_family_status, FamilyStatus};
pub use octahedron::{
    build_octahedron_list, h2_equality_experiment, h2_equality_experiment_with, h2_formula, octahedron_count,
    octahedron_restriction, octahedron_witness, verify_kernel_rank, verify_kernel_rank_with, H2Record,
    KernelRankReport, OctahedronList, OctahedronTuple, OctahedronWitness, H2_D_LIMIT, KERNEL_RANK_D_LIMIT,
};
pub use theorems::{
    all_circulants, lex_example, verify_theorem, verify_theorems, Failure, LexExample, TheoremId, TheoremReport,
    VerificationReport, VerifyScope, CUBIC_TABLE,
};

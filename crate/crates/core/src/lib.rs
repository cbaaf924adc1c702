//! Exact decision procedures for well-covered, Cohen–Macaulay, Buchsbaum,
//! vertex decomposable and shellable circulant graphs, studied through
//! their independence complexes.
//!
//! Vertex indices in the library API are 0-based; all text formats,
//! `Display` impls and serialized reports use 1-based labels.

pub mod complex;
pub mod error;
pub mod field;
pub mod graph;
pub mod homology;
pub mod linalg;
pub mod properties;
pub mod verifier;
pub mod vertex_set;

pub use complex::{
    alpha, deletion, dim, f_vector, family_f_vector, independence_complex, is_pure, is_well_covered, link, restrict,
    Complex, FHVectors,
};
pub use error::{Error, Result};
pub use field::FieldChoice;
pub use graph::{
    connected_components, cubic_decompose, disjoint_union, induced_subgraph, is_isomorphic_small, lex_product,
    make_circulant, CirculantSpec, CubicDecomposition, Graph,
};
pub use homology::{build_chain_complex, euler_check, reduced_betti, BettiTable, ChainComplexData};
pub use linalg::{kernel_rank_of, SparseMatrix};
pub use vertex_set::VertexSet;

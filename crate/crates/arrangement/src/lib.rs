//! The `(ℓ,n)`-braid arrangement: `ℓ` generically translated copies of the
//! braid arrangement. Enumerative invariants come from the partition-forest
//! flat poset; faces of a concrete translation are ordered partition forests.

mod counts;
mod faces;
mod matrix;
mod mobius;
pub mod poly;

pub use counts::{
    bounded_region_count, char_poly, refined_vertex_count, region_count, stirling2, vertex_count,
};
pub use faces::{
    all_faces, all_faces_brute_force, face_counts_by_dim, forced_order, is_face, orderings_of_forest,
    Forced, InversionPoset, OrderedPartitionForest,
};
pub use matrix::{is_generic, TranslationMatrix};
pub use mobius::{
    b_polynomial, f_polynomial, mobius_polynomial, mobius_polynomial_by_intervals, weird_poly,
    DEFAULT_INTERVAL_CAP,
};
pub use poly::{BiPoly, UniPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] permadiag_core::Error),
    #[error(transparent)]
    Forest(#[from] permadiag_forests::Error),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("translation matrix is not generic: {0}")]
    NotGeneric(String),
    #[error("{0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

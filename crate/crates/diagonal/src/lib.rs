//! Operadic cellular diagonals of the permutahedra.
//!
//! A generic direction orients every pair `{I, J}` of disjoint equal-size
//! subsets of `[n]`; the resulting ordering decides which pairs of faces
//! `(σ, τ)` of the permutahedron lie in the image of the diagonal.

mod face;
mod facets;
mod ordering;
mod patterns;

pub use face::{
    bigraded_counts, cellular_image, is_face_pair, iso_r, iso_rs_rs, iso_s, iso_t, iso_t_rr,
    BigradedCounts, DiagonalFace, DEFAULT_IMAGE_CAP,
};
pub use facets::{facets, order_partition_tree, DEFAULT_FACET_CAP};
pub use ordering::{
    indecomposables, is_operadic, la_ordering, opposite, operadic_closure, ordering_from_vector,
    su_ordering, un_pairs, Closure, Ordering, Variant,
};
pub use patterns::{
    avoids_patterns, avoids_patterns_by_scan, generate_patterns, vertex_pairs, PatternPair,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] permadiag_core::Error),
    #[error(transparent)]
    Forest(#[from] permadiag_forests::Error),
    #[error("vector is not generic: {0}")]
    NonGeneric(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("incomplete family: {0}")]
    IncompleteFamily(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

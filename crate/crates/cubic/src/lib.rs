//! Cubical realizations of the permutahedron for the SU and LA diagonals.
//!
//! `C_n` subdivides `[0,1]^n` into boxes labelled by the ordered partitions of
//! `[n+1]`. Subdivision cubes, hourglasses and the step-matrix encoding of
//! facets live on top of it.

mod complex;
mod dyadic;
mod matrix;
mod subcube;

pub use complex::{build_cubical, Cell, CubicalComplex, DEFAULT_CUBICAL_CAP};
pub use dyadic::Dyadic;
pub use matrix::{configuration_matrices, matrix_shift, step_matrix, ConfigurationMatrix, StepMatrix};
pub use subcube::{extremal_face, hourglass, is_subdivision_cube, max_subdivision_cube, Extremum, Hourglass};

use permadiag_diagonal::Variant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] permadiag_core::Error),
    #[error(transparent)]
    Shift(#[from] permadiag_shifts::Error),
    #[error("n = {0} exceeds the cap")]
    CapExceeded(usize),
    #[error("{0} is not a face of the complex")]
    UnknownFace(String),
    #[error("faces of different dimensions: {0}")]
    MixedDimensions(String),
    #[error("not a subdivision cube: {0}")]
    NotSubdivisionCube(String),
    #[error("element {element} would land on {occupant} at row {row}, column {col}")]
    Collision { element: u32, occupant: u32, row: usize, col: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_variant(v: Variant) -> Result<()> {
    match v {
        Variant::La | Variant::Su => Ok(()),
        other => Err(Error::InvalidInput(format!("cubical constructions exist for la and su only, not {other}"))),
    }
}

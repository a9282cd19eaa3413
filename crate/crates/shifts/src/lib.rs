//! Shift descriptions of the LA and SU diagonals.
//!
//! Every facet of either diagonal is reached from a strong complementary
//! pair (SCP) by moving single elements, or subsets, between blocks. The
//! facets reachable from one SCP form a lattice isomorphic to a product of
//! chains whose lengths are the heights of the elements.

mod closure;
mod inversions;
mod lattice;
mod scp;
mod shift;
mod tree;

pub use closure::{block_shift_sides, classify_case, facets_via_shifts, normalize_to_scp, Case, DEFAULT_SHIFT_CAP};
pub use inversions::{adjacent_crossings, crossings, inversions};
pub use lattice::{heights, shift_lattice, Coord, HeightVector, ShiftLattice};
pub use scp::{is_scp, perm_from_scp, scp_from_perm};
pub use shift::{apply_shift, apply_shifts, singleton_shifts, Direction, Mode, ShiftOp, Side};
pub use tree::BlockTree;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] permadiag_core::Error),
    #[error(transparent)]
    Diagonal(#[from] permadiag_diagonal::Error),
    #[error("inadmissible shift: {0}")]
    Inadmissible(String),
    #[error("shift would empty block {0}")]
    EmptiedBlock(usize),
    #[error("block index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("not a strong complementary pair: {0}")]
    NotScp(String),
    #[error("not a facet: {0}")]
    NotFacet(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use permadiag_diagonal::Variant;

pub(crate) fn check_variant(v: Variant) -> Result<()> {
    match v {
        Variant::La | Variant::Su => Ok(()),
        _ => Err(Error::InvalidInput(format!(
            "shift descriptions are given for la and su, not {v}"
        ))),
    }
}

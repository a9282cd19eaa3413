//! Permutations, set partitions and ordered set partitions of `[n]`, together
//! with the weak order, the facial weak order and block-prefix domination.
//!
//! Elements are one-based throughout. Subsets of `[n]` are `u32` bitmasks with
//! element `e` stored in bit `e - 1`, which caps `n` at 32.

mod error;
mod facial;
mod parse;
mod partition;
mod perm;
pub mod set;

pub use error::Error;
pub use facial::{facial_successors, facial_weak_leq, FacialWeakOrder};
pub use partition::{fubini, OrderedPartition, SetPartition};
pub use perm::{weak_leq, Perm};

pub type Result<T> = std::result::Result<T, Error>;

/// A pair of disjoint subsets `(I, J)` stored as bitmasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IJPair {
    pub i: u32,
    pub j: u32,
}

impl IJPair {
    pub fn new(i: u32, j: u32) -> Result<Self> {
        if i & j != 0 {
            return Err(Error::InvalidInput(format!(
                "I and J overlap in {}",
                set::render(i & j)
            )));
        }
        Ok(IJPair { i, j })
    }

    pub fn swap(self) -> Self {
        IJPair { i: self.j, j: self.i }
    }

    pub fn size(self) -> u32 {
        self.i.count_ones()
    }
}

impl std::fmt::Display for IJPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({{{}}},{{{}}})", set::render_list(self.i), set::render_list(self.j))
    }
}

/// Standardization: the unique pair on `[|I|+|J|]` order-isomorphic to `(I, J)`.
pub fn std_pair(i: u32, j: u32) -> Result<IJPair> {
    if i & j != 0 {
        return Err(Error::InvalidInput(format!(
            "I and J overlap in {}",
            set::render(i & j)
        )));
    }
    let (mut si, mut sj) = (0u32, 0u32);
    for (rank, e) in set::elements(i | j).enumerate() {
        if i & set::bit(e) != 0 {
            si |= 1 << rank;
        } else {
            sj |= 1 << rank;
        }
    }
    Ok(IJPair { i: si, j: sj })
}

/// True iff every block prefix of `sigma` holds at least as many elements of
/// `i` as of `j`.
pub fn dominates(i: u32, j: u32, sigma: &OrderedPartition) -> bool {
    let (mut ci, mut cj) = (0u32, 0u32);
    for &b in sigma.blocks() {
        ci += (b & i).count_ones();
        cj += (b & j).count_ones();
        if ci < cj {
            return false;
        }
    }
    true
}

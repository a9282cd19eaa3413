//! Rainbow forests: rooted plane forests whose non-root nodes carry colors in
//! `[ℓ]`, with no monochromatic edge and weakly increasing sibling colors.

mod ary;
mod bijection;
mod forest;
mod prufer;

pub use ary::{ary_to_rainbow, rainbow_to_ary, AryTree};
pub use bijection::{forest_to_rainbow, rainbow_covers, rainbow_to_forest};
pub use forest::{fuss_catalan, rainbow_trees, RainbowForest, Shape};
pub use prufer::{
    labeled_rainbow_tree_count, prufer_decode, prufer_encode, prufer_image_count, PruferWord,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rainbow forest: {0}")]
    Invalid(String),
    #[error("invalid Prüfer word: {0}")]
    InvalidWord(String),
    #[error(transparent)]
    Forest(#[from] permadiag_forests::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

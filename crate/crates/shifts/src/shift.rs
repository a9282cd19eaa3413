//! Shift operators and their admissibility.

use std::fmt;

use permadiag_core::{set, OrderedPartition};
use permadiag_diagonal::{DiagonalFace, Variant};
use serde::{Deserialize, Serialize};

use crate::tree::{render, BlockTree};
use crate::{check_variant, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Sigma,
    Tau,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

/// Which admissibility rule to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Subset 1-shifts; the target block's extremum is compared.
    Block1,
    /// Singleton 1-shifts; the path extremum is compared.
    Path1,
    /// Singleton m-shifts; the path extremum is compared.
    PathM,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "block1" | "block-1" | "subset-block-1" => Ok(Mode::Block1),
            "path1" | "path-1" | "singleton-path-1" => Ok(Mode::Path1),
            "pathm" | "path-m" | "singleton-path-m" => Ok(Mode::PathM),
            _ => Err(Error::InvalidInput(format!("unknown mode {s:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Block1 => "block1",
            Mode::Path1 => "path1",
            Mode::PathM => "pathm",
        })
    }
}

/// Moves `subset` from block `block` of one partition `distance` blocks over.
///
/// SU moves right on `σ` and left on `τ`; LA moves left on `σ` and right on
/// `τ`. An `inverse` shift goes the other way and undoes a forward one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftOp {
    pub side: Side,
    pub direction: Direction,
    pub subset: u32,
    pub block: usize,
    pub distance: usize,
    pub mode: Mode,
    pub variant: Variant,
    pub inverse: bool,
}

impl ShiftOp {
    /// The forward direction on `side` for `variant`.
    pub fn forward_direction(side: Side, variant: Variant) -> Direction {
        match (variant, side) {
            (Variant::Su, Side::Sigma) | (Variant::La, Side::Tau) => Direction::Right,
            _ => Direction::Left,
        }
    }

    pub fn target(&self) -> Option<usize> {
        match self.direction {
            Direction::Right => self.block.checked_add(self.distance),
            Direction::Left => self.block.checked_sub(self.distance),
        }
    }

    /// The shift undoing this one, as seen from the result.
    pub fn undo(&self) -> Option<ShiftOp> {
        Some(ShiftOp {
            direction: self.direction.flip(),
            block: self.target()?,
            inverse: !self.inverse,
            ..self.clone()
        })
    }
}

impl fmt::Display for ShiftOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // an inverse is named after the forward shift it undoes
        let named = if self.inverse { self.direction.flip() } else { self.direction };
        let letter = match named {
            Direction::Left => 'L',
            Direction::Right => 'R',
        };
        let side = match self.side {
            Side::Sigma => "σ",
            Side::Tau => "τ",
        };
        write!(
            f,
            "{letter}{}{} on {side}, block {} by {}",
            render(self.subset),
            if self.inverse { "⁻¹" } else { "" },
            self.block + 1,
            self.distance
        )
    }
}

/// Applies `op` after checking its admissibility in `op.mode`.
pub fn apply_shift(f: &DiagonalFace, op: &ShiftOp) -> Result<DiagonalFace> {
    check_variant(op.variant)?;
    let forward = ShiftOp::forward_direction(op.side, op.variant);
    let expected = if op.inverse { forward.flip() } else { forward };
    if op.direction != expected {
        return Err(Error::Inadmissible(format!(
            "{:?} shifts on {:?} are not {} shifts for {}",
            op.direction,
            op.side,
            if op.inverse { "inverse" } else { "forward" },
            op.variant
        )));
    }
    if op.distance == 0 {
        return Err(Error::InvalidInput("shift distance must be at least 1".into()));
    }
    match op.mode {
        Mode::Block1 if op.inverse => {
            return Err(Error::InvalidInput("block-admissible shifts have no inverse mode".into()))
        }
        Mode::Block1 | Mode::Path1 if op.distance != 1 => {
            return Err(Error::InvalidInput(format!("{} shifts move one block", op.mode)))
        }
        Mode::Path1 | Mode::PathM if op.subset.count_ones() != 1 => {
            return Err(Error::InvalidInput(format!("{} shifts move a single element", op.mode)))
        }
        _ => {}
    }
    let part = match op.side {
        Side::Sigma => &f.sigma,
        Side::Tau => &f.tau,
    };
    let blocks = part.blocks();
    let k = blocks.len();
    let src = *blocks
        .get(op.block)
        .ok_or_else(|| Error::IndexOutOfRange(format!("block {} of {k}", op.block + 1)))?;
    let tgt_idx = op
        .target()
        .filter(|&t| t < k)
        .ok_or_else(|| {
            Error::IndexOutOfRange(format!(
                "moving block {} by {} leaves the {k} blocks",
                op.block + 1,
                op.distance
            ))
        })?;
    let m = op.subset;
    if m == 0 || m & !src != 0 {
        return Err(Error::InvalidInput(format!(
            "{{{}}} is not a nonempty subset of block {}",
            render(m),
            render(src)
        )));
    }
    if m == src {
        return Err(Error::EmptiedBlock(op.block + 1));
    }
    let su = op.variant == Variant::Su;
    match op.mode {
        Mode::Block1 => {
            let tgt = blocks[tgt_idx];
            if su {
                if m & set::bit(set::min(src)) != 0 {
                    return Err(Error::Inadmissible(format!(
                        "M contains min {} of its block",
                        set::min(src)
                    )));
                }
                if set::min(m) <= set::max(tgt) {
                    return Err(Error::Inadmissible(format!(
                        "min M = {} is not greater than max {} of the target block {}",
                        set::min(m),
                        set::max(tgt),
                        render(tgt)
                    )));
                }
            } else {
                if m & set::bit(set::max(src)) != 0 {
                    return Err(Error::Inadmissible(format!(
                        "M contains max {} of its block",
                        set::max(src)
                    )));
                }
                if set::max(m) >= set::min(tgt) {
                    return Err(Error::Inadmissible(format!(
                        "max M = {} is not smaller than min {} of the target block {}",
                        set::max(m),
                        set::min(tgt),
                        render(tgt)
                    )));
                }
            }
        }
        Mode::Path1 | Mode::PathM => {
            let tree = BlockTree::new(f)?;
            let path = tree.path(op.side, op.block, tgt_idx);
            let pmax = *path.iter().max().unwrap();
            let pmin = *path.iter().min().unwrap();
            let show = || path.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
            if su && set::min(m) <= pmax {
                return Err(Error::Inadmissible(format!(
                    "min M = {} is not greater than the maximum {} of the path ({}) from {} to {}",
                    set::min(m),
                    pmax,
                    show(),
                    render(src),
                    render(blocks[tgt_idx])
                )));
            }
            if !su && set::max(m) >= pmin {
                return Err(Error::Inadmissible(format!(
                    "max M = {} is not smaller than the minimum {} of the path ({}) from {} to {}",
                    set::max(m),
                    pmin,
                    show(),
                    render(src),
                    render(blocks[tgt_idx])
                )));
            }
        }
    }
    let mut nb = blocks.to_vec();
    nb[op.block] &= !m;
    nb[tgt_idx] |= m;
    let moved = OrderedPartition::new(f.n(), nb)?;
    Ok(match op.side {
        Side::Sigma => DiagonalFace { sigma: moved, tau: f.tau.clone() },
        Side::Tau => DiagonalFace { sigma: f.sigma.clone(), tau: moved },
    })
}

/// Applies a sequence of shifts in order; the empty sequence is the identity.
pub fn apply_shifts(f: &DiagonalFace, ops: &[ShiftOp]) -> Result<DiagonalFace> {
    ops.iter().try_fold(f.clone(), |g, op| apply_shift(&g, op))
}

/// Every admissible singleton shift of `f` in the given mode and sense,
/// paired with its result.
pub fn singleton_shifts(
    f: &DiagonalFace,
    variant: Variant,
    mode: Mode,
    inverse: bool,
) -> Result<Vec<(ShiftOp, DiagonalFace)>> {
    check_variant(variant)?;
    let mut out = Vec::new();
    for side in [Side::Sigma, Side::Tau] {
        let part = match side {
            Side::Sigma => &f.sigma,
            Side::Tau => &f.tau,
        };
        let k = part.len();
        let forward = ShiftOp::forward_direction(side, variant);
        let direction = if inverse { forward.flip() } else { forward };
        for (b, &blk) in part.blocks().iter().enumerate() {
            if blk.count_ones() < 2 {
                continue;
            }
            let reach = match direction {
                Direction::Right => k - 1 - b,
                Direction::Left => b,
            };
            let max_d = if mode == Mode::PathM { reach } else { reach.min(1) };
            for e in set::elements(blk) {
                for distance in 1..=max_d {
                    let op = ShiftOp {
                        side,
                        direction,
                        subset: set::bit(e),
                        block: b,
                        distance,
                        mode,
                        variant,
                        inverse,
                    };
                    match apply_shift(f, &op) {
                        Ok(g) => out.push((op, g)),
                        Err(Error::Inadmissible(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(out)
}

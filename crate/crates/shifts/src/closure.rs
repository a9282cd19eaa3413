//! Facets generated by shifts, and the reduction of a facet to its SCP.

use std::collections::{HashSet, VecDeque};

use permadiag_core::{set, OrderedPartition, Perm};
use permadiag_diagonal::{is_face_pair, DiagonalFace, Variant};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::inversions::crossings;
use crate::scp::{is_scp, scp_from_perm};
use crate::shift::{apply_shift, singleton_shifts, Direction, Mode, ShiftOp, Side};
use crate::tree::BlockTree;
use crate::{check_variant, Error, Result};

pub const DEFAULT_SHIFT_CAP: usize = 7;

/// All facets reached from SCPs by admissible shift sequences of one kind.
///
/// `Block1` takes subset 1-shifts with strictly monotone source blocks
/// (increasing for right shifts, decreasing for left shifts) on each side
/// independently; the path modes close under singleton shifts.
pub fn facets_via_shifts(n: usize, variant: Variant, mode: Mode, cap: usize) -> Result<Vec<DiagonalFace>> {
    check_variant(variant)?;
    if n > cap {
        return Err(Error::CapExceeded(format!("n = {n} exceeds the cap {cap}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let per_scp = Perm::all(n)
        .par_iter()
        .map(|w| {
            let scp = scp_from_perm(w);
            match mode {
                Mode::Block1 => block_closure(&scp, variant),
                _ => path_closure(&scp, variant, mode),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut all: Vec<DiagonalFace> = per_scp
        .into_iter()
        .flatten()
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    all.sort_by_cached_key(|f| f.to_string());
    Ok(all)
}

fn path_closure(start: &DiagonalFace, variant: Variant, mode: Mode) -> Result<Vec<DiagonalFace>> {
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(f) = queue.pop_front() {
        for (_, g) in singleton_shifts(&f, variant, mode, false)? {
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn block_closure(start: &DiagonalFace, variant: Variant) -> Result<Vec<DiagonalFace>> {
    let sigmas = side_sequences(start, Side::Sigma, variant)?;
    let taus = side_sequences(start, Side::Tau, variant)?;
    let mut out = Vec::with_capacity(sigmas.len() * taus.len());
    for s in &sigmas {
        for t in &taus {
            out.push(DiagonalFace { sigma: s.sigma.clone(), tau: t.tau.clone() });
        }
    }
    Ok(out)
}

/// The two factors of the block-admissible closure of `start`: every σ reached
/// by forward σ-side sequences and every τ reached by forward τ-side ones.
pub fn block_shift_sides(start: &DiagonalFace, variant: Variant) -> Result<(Vec<OrderedPartition>, Vec<OrderedPartition>)> {
    check_variant(variant)?;
    let mut sigmas: Vec<_> = side_sequences(start, Side::Sigma, variant)?.into_iter().map(|f| f.sigma).collect();
    let mut taus: Vec<_> = side_sequences(start, Side::Tau, variant)?.into_iter().map(|f| f.tau).collect();
    sigmas.sort();
    taus.sort();
    Ok((sigmas, taus))
}

/// Results of block-admissible subset 1-shift sequences on one side.
fn side_sequences(start: &DiagonalFace, side: Side, variant: Variant) -> Result<Vec<DiagonalFace>> {
    let direction = ShiftOp::forward_direction(side, variant);
    let mut out = HashSet::new();
    fn rec(
        f: &DiagonalFace,
        side: Side,
        direction: Direction,
        variant: Variant,
        next: Option<usize>,
        out: &mut HashSet<DiagonalFace>,
    ) -> Result<()> {
        out.insert(f.clone());
        let part = match side {
            Side::Sigma => &f.sigma,
            Side::Tau => &f.tau,
        };
        let k = part.len();
        let sources: Vec<usize> = match direction {
            Direction::Right => (next.unwrap_or(0)..k.saturating_sub(1)).collect(),
            Direction::Left => (1..=next.unwrap_or(k - 1)).rev().collect(),
        };
        for b in sources {
            let blk = part.blocks()[b];
            for m in set::submasks(blk).filter(|&m| m != blk) {
                let op = ShiftOp {
                    side,
                    direction,
                    subset: m,
                    block: b,
                    distance: 1,
                    mode: Mode::Block1,
                    variant,
                    inverse: false,
                };
                match apply_shift(f, &op) {
                    Ok(g) => {
                        // later shifts start strictly beyond this source block
                        let next = match direction {
                            Direction::Right => b + 1,
                            Direction::Left => b - 1,
                        };
                        rec(&g, side, direction, variant, Some(next), out)?;
                    }
                    Err(Error::Inadmissible(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(())
    }
    rec(start, side, direction, variant, None, &mut out)?;
    Ok(out.into_iter().collect())
}

/// The situation an SU facet is in when reducing it towards its SCP.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// No crossing: already an SCP.
    Scp,
    /// Every pair of adjacent blocks is joined by a path of length two.
    One,
    /// Some adjacent blocks are joined by a longer path whose maximum is not its last step.
    TwoA,
    /// The maximum is the last step and sits in a block that is not the last one.
    TwoBi,
    /// The maximum is the last step and sits in the last block.
    TwoBii,
}

/// Classifies an SU facet; LA facets are classified through `t(r × r)`.
pub fn classify_case(f: &DiagonalFace, variant: Variant) -> Result<Case> {
    check_variant(variant)?;
    check_facet(f, variant)?;
    if variant == Variant::La {
        return classify_case(&permadiag_diagonal::iso_t_rr(f), Variant::Su);
    }
    if crossings(f).is_empty() {
        return Ok(Case::Scp);
    }
    let tree = BlockTree::new(f)?;
    for side in [Side::Sigma, Side::Tau] {
        let (k, other_len, other) = match side {
            Side::Sigma => (f.sigma.len(), f.tau.len(), Side::Tau),
            Side::Tau => (f.tau.len(), f.sigma.len(), Side::Sigma),
        };
        for i in 0..k.saturating_sub(1) {
            let path = tree.path(side, i, i + 1);
            if path.len() <= 2 {
                continue;
            }
            let (pos, &max) = path.iter().enumerate().max_by_key(|(_, &e)| e).unwrap();
            if pos + 1 != path.len() {
                return Ok(Case::TwoA);
            }
            return Ok(if tree.block_of(other, max) + 1 == other_len {
                Case::TwoBii
            } else {
                Case::TwoBi
            });
        }
    }
    Ok(Case::One)
}

fn check_facet(f: &DiagonalFace, variant: Variant) -> Result<()> {
    BlockTree::new(f)?;
    if !is_face_pair(f, &variant.ordering(f.n()))? {
        return Err(Error::NotFacet(format!("{f} is not a face of the {variant} diagonal")));
    }
    Ok(())
}

/// Reduces a facet to its SCP by path-admissible inverse m-shifts, returning
/// the SCP and the inverse shifts applied, in order.
///
/// A facet other than an SCP always admits one; each inverse shift lowers
/// the facet in its shift lattice, so the loop ends.
pub fn normalize_to_scp(f: &DiagonalFace, variant: Variant) -> Result<(DiagonalFace, Vec<ShiftOp>)> {
    check_variant(variant)?;
    check_facet(f, variant)?;
    let n = f.n();
    let bound = n * n * n + 1;
    let mut cur = f.clone();
    let mut trace = Vec::new();
    while !is_scp(&cur) {
        if trace.len() > bound {
            return Err(Error::InvalidInput(format!("{f}: no SCP after {bound} inverse shifts")));
        }
        let (op, next) = singleton_shifts(&cur, variant, Mode::PathM, true)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::NotFacet(format!("{cur} admits no inverse shift")))?;
        trace.push(op);
        cur = next;
    }
    Ok((cur, trace))
}

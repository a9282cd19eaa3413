use std::collections::HashSet;
use std::fmt;

use permadiag_core::{set, OrderedPartition, Perm};
use permadiag_diagonal::{DiagonalFace, Variant};
use permadiag_shifts::{apply_shift, Direction, Mode, ShiftOp, Side};
use serde::{Deserialize, Serialize};

use crate::{check_variant, Error, Result};

/// A grid whose nonzero entries are `[n]`, each once. Column `i` holds the
/// `i`-th block of σ and row `j`, counted from the bottom, the `j`-th block of τ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StepMatrix {
    rows: usize,
    cols: usize,
    // row-major, bottom row first
    entries: Vec<u32>,
}

impl StepMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `row` (from the bottom) and `col`; zero when empty.
    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.cols + col]
    }

    pub fn rows_bottom_up(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.cols).map(|r| r.to_vec()).collect()
    }

    fn find(&self, e: u32) -> Option<(usize, usize)> {
        let k = self.entries.iter().position(|&x| x == e)?;
        Some((k / self.cols, k % self.cols))
    }

    /// Places each element at (its τ block, its σ block).
    pub fn from_face(f: &DiagonalFace) -> Result<Self> {
        let (rows, cols) = (f.tau.len(), f.sigma.len());
        let mut entries = vec![0; rows * cols];
        let col = f.sigma.block_index();
        let row = f.tau.block_index();
        for e in 1..=f.n() as u32 {
            let k = row[e as usize - 1] * cols + col[e as usize - 1];
            if entries[k] != 0 {
                return Err(Error::Collision { element: e, occupant: entries[k], row: k / cols, col: k % cols });
            }
            entries[k] = e;
        }
        Ok(StepMatrix { rows, cols, entries })
    }

    /// Reads σ off the columns and τ off the rows.
    pub fn to_face(&self) -> Result<DiagonalFace> {
        let n = self.entries.iter().filter(|&&e| e != 0).count();
        let mut sigma = vec![0u32; self.cols];
        let mut tau = vec![0u32; self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.get(r, c);
                if e != 0 {
                    sigma[c] |= set::bit(e);
                    tau[r] |= set::bit(e);
                }
            }
        }
        Ok(DiagonalFace {
            sigma: OrderedPartition::new(n, sigma)?,
            tau: OrderedPartition::new(n, tau)?,
        })
    }
}

impl fmt::Display for StepMatrix {
    /// Top row first, empty cells as `.`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.entries.iter().max().map_or(1, |m| m.to_string().len());
        for r in (0..self.rows).rev() {
            let line: Vec<String> = (0..self.cols)
                .map(|c| match self.get(r, c) {
                    0 => format!("{:>w$}", "."),
                    e => format!("{e:>w$}"),
                })
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Walks `w` from the bottom-left corner: an ascent steps one column right,
/// a descent one row up.
pub fn step_matrix(w: &Perm) -> StepMatrix {
    let v = w.to_vec();
    let mut cells = Vec::with_capacity(v.len());
    let (mut r, mut c) = (0usize, 0usize);
    for (k, &e) in v.iter().enumerate() {
        if k > 0 {
            if e > v[k - 1] {
                c += 1;
            } else {
                r += 1;
            }
        }
        cells.push((r, c, e));
    }
    let (rows, cols) = (r + 1, c + 1);
    let mut entries = vec![0; rows * cols];
    for (r, c, e) in cells {
        entries[r * cols + c] = e;
    }
    StepMatrix { rows, cols, entries }
}

/// Moves the entries of `op.subset` one column (σ side) or one row (τ side)
/// over. Admissibility is that of the block 1-shift on the read-off pair;
/// landing on a nonzero entry is reported as a collision.
pub fn matrix_shift(m: &StepMatrix, op: &ShiftOp) -> Result<StepMatrix> {
    if op.mode != Mode::Block1 || op.distance != 1 {
        return Err(Error::InvalidInput("matrix shifts are block 1-shifts".into()));
    }
    let expected = apply_shift(&m.to_face()?, op)?;
    let target = op.target().ok_or_else(|| Error::InvalidInput(format!("{op} leaves the matrix")))?;
    let mut out = m.clone();
    for e in set::elements(op.subset) {
        let (r, c) = m.find(e).ok_or_else(|| Error::InvalidInput(format!("{e} is not in the matrix")))?;
        out.entries[r * m.cols + c] = 0;
    }
    for e in set::elements(op.subset) {
        let (r, c) = m.find(e).expect("found above");
        let (r2, c2) = match op.side {
            Side::Sigma => (r, target),
            Side::Tau => (target, c),
        };
        let k = r2 * m.cols + c2;
        if out.entries[k] != 0 {
            return Err(Error::Collision { element: e, occupant: out.entries[k], row: r2, col: c2 });
        }
        out.entries[k] = e;
    }
    if out.to_face()? != expected {
        return Err(Error::Internal(format!("matrix shift {op} disagrees with the pair shift")));
    }
    Ok(out)
}

/// A matrix reached from a step matrix, with the shifts that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationMatrix {
    pub start: Perm,
    pub matrix: StepMatrix,
    pub shifts: Vec<ShiftOp>,
}

/// All configuration matrices for permutations of `[n]`: admissible block
/// 1-shift sequences on the columns, then on the rows.
pub fn configuration_matrices(n: usize, variant: Variant, cap: usize) -> Result<Vec<ConfigurationMatrix>> {
    check_variant(variant)?;
    if n > cap {
        return Err(Error::CapExceeded(n));
    }
    let mut out = Vec::new();
    for w in Perm::all(n) {
        let start = ConfigurationMatrix { start: w.clone(), matrix: step_matrix(&w), shifts: vec![] };
        let mut cols = Vec::new();
        side_sequences(start, Side::Sigma, variant, None, &mut cols)?;
        let mut seen = HashSet::new();
        for c in cols {
            let mut all = Vec::new();
            side_sequences(c, Side::Tau, variant, None, &mut all)?;
            out.extend(all.into_iter().filter(|m| seen.insert(m.matrix.clone())));
        }
    }
    Ok(out)
}

fn side_sequences(
    cur: ConfigurationMatrix,
    side: Side,
    variant: Variant,
    next: Option<usize>,
    out: &mut Vec<ConfigurationMatrix>,
) -> Result<()> {
    let direction = ShiftOp::forward_direction(side, variant);
    let k = match side {
        Side::Sigma => cur.matrix.cols,
        Side::Tau => cur.matrix.rows,
    };
    // right shifts visit lines in increasing order, left shifts in decreasing order
    let lines: Vec<usize> = match direction {
        Direction::Right => (next.unwrap_or(0)..k.saturating_sub(1)).collect(),
        Direction::Left => (1..=next.unwrap_or(k.saturating_sub(1))).rev().collect(),
    };
    for b in lines {
        let line: u32 = (0..if side == Side::Sigma { cur.matrix.rows } else { cur.matrix.cols })
            .map(|x| match side {
                Side::Sigma => cur.matrix.get(x, b),
                Side::Tau => cur.matrix.get(b, x),
            })
            .filter(|&e| e != 0)
            .fold(0, |acc, e| acc | set::bit(e));
        for m in set::submasks(line).filter(|&m| m != line) {
            let op = ShiftOp { side, direction, subset: m, block: b, distance: 1, mode: Mode::Block1, variant, inverse: false };
            match matrix_shift(&cur.matrix, &op) {
                Ok(g) => {
                    let mut shifts = cur.shifts.clone();
                    shifts.push(op);
                    let after = match direction {
                        Direction::Right => b + 1,
                        Direction::Left => b - 1,
                    };
                    let nxt = ConfigurationMatrix { start: cur.start.clone(), matrix: g, shifts };
                    side_sequences(nxt, side, variant, Some(after), out)?;
                }
                Err(Error::Shift(permadiag_shifts::Error::Inadmissible(_))) => {}
                Err(e) => return Err(e),
            }
        }
    }
    out.push(cur);
    Ok(())
}

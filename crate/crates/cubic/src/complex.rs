use std::collections::HashMap;

use permadiag_core::{set, OrderedPartition, Perm};
use permadiag_diagonal::Variant;
use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::{check_variant, Error, Result};

pub const DEFAULT_CUBICAL_CAP: usize = 6;

/// An axis-parallel box `Π [lo_i, hi_i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub lo: Vec<Dyadic>,
    pub hi: Vec<Dyadic>,
}

impl Cell {
    /// Axes along which the box has positive length.
    pub fn axes(&self) -> Vec<usize> {
        (0..self.lo.len()).filter(|&i| self.lo[i] < self.hi[i]).collect()
    }

    pub fn dim(&self) -> usize {
        self.axes().len()
    }

    pub fn contains(&self, other: &Cell) -> bool {
        (0..self.lo.len()).all(|i| self.lo[i] <= other.lo[i] && other.hi[i] <= self.hi[i])
    }

    pub fn contains_point(&self, p: &[Dyadic]) -> bool {
        (0..self.lo.len()).all(|i| self.lo[i] <= p[i] && p[i] <= self.hi[i])
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &Cell) -> Cell {
        Cell {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| *a.min(b)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    /// Volume along `axes`, in units of `2^{-e}` per axis.
    pub(crate) fn volume(&self, axes: &[usize], e: u32) -> u128 {
        axes.iter()
            .map(|&i| (self.hi[i].scaled(e) - self.lo[i].scaled(e)) as u128)
            .product()
    }
}

/// The subdivided `n`-cube whose faces are labelled by ordered partitions of `[n+1]`.
#[derive(Clone, Debug)]
pub struct CubicalComplex {
    n: usize,
    variant: Variant,
    labels: Vec<OrderedPartition>,
    cells: Vec<Cell>,
    index: HashMap<OrderedPartition, usize>,
    vertex_at: HashMap<Vec<Dyadic>, usize>,
    // per face: weak-order extreme vertices among those it contains
    top: Vec<usize>,
    bottom: Vec<usize>,
}

/// Builds `C_n` for the SU or LA variant. Breakpoints sit at `1 − 2^{−m}`
/// where `m` counts the elements in the trailing blocks of the lower label.
pub fn build_cubical(n: usize, variant: Variant, cap: usize) -> Result<CubicalComplex> {
    check_variant(variant)?;
    if n > cap || n > 7 {
        return Err(Error::CapExceeded(n));
    }
    let mut level: Vec<(Vec<u32>, Cell)> = vec![(vec![1], Cell { lo: vec![], hi: vec![] })];
    for m in 1..=n {
        let mut next = Vec::with_capacity(level.len() * 4);
        for (blocks, cell) in &level {
            let (blocks, new): (Vec<u32>, u32) = match variant {
                Variant::Su => (blocks.clone(), set::bit(m as u32 + 1)),
                _ => (blocks.iter().map(|b| b << 1).collect(), set::bit(1)),
            };
            let k = blocks.len();
            let mut cuts = vec![Dyadic::ZERO];
            let mut tail = 0u32;
            for j in 1..k {
                tail += blocks[k - j].count_ones();
                cuts.push(Dyadic::one_minus_pow2(tail));
            }
            cuts.push(Dyadic::ONE);
            let extend = |lo: Dyadic, hi: Dyadic| {
                let mut c = cell.clone();
                c.lo.push(lo);
                c.hi.push(hi);
                c
            };
            // the new element slides leftwards through the blocks as the
            // coordinate grows: a separate block at each cut, merged in between
            for (p, &cut) in cuts.iter().enumerate() {
                let mut b = blocks.clone();
                b.insert(k - p, new);
                next.push((b, extend(cut, cut)));
            }
            for j in 1..=k {
                let mut b = blocks.clone();
                b[k - j] |= new;
                next.push((b, extend(cuts[j - 1], cuts[j])));
            }
        }
        level = next;
    }
    let mut labels = Vec::with_capacity(level.len());
    let mut cells = Vec::with_capacity(level.len());
    for (blocks, cell) in level {
        labels.push(OrderedPartition::new(n + 1, blocks)?);
        cells.push(cell);
    }
    let index: HashMap<_, _> = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    if index.len() != labels.len() {
        return Err(Error::Internal("repeated face label".into()));
    }
    let vertex_at: HashMap<Vec<Dyadic>, usize> = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.dim() == 0)
        .map(|(i, c)| (c.lo.clone(), i))
        .collect();
    let mut cx = CubicalComplex { n, variant, labels, cells, index, vertex_at, top: vec![], bottom: vec![] };
    cx.find_extremes()?;
    Ok(cx)
}

/// Inversion set of a permutation as a bitmask over pairs, so that the weak
/// order is mask inclusion.
fn inversion_mask(w: &Perm) -> u64 {
    let n = w.n() as u32;
    let mut m = 0u64;
    for (a, b) in w.inversions() {
        let (a, b) = (a.min(b), a.max(b));
        m |= 1 << ((a - 1) * n + (b - 1));
    }
    m
}

impl CubicalComplex {
    fn find_extremes(&mut self) -> Result<()> {
        let verts: Vec<(usize, u64)> = self
            .vertex_at
            .values()
            .map(|&i| (i, inversion_mask(&self.labels[i].to_perm().expect("vertex"))))
            .collect();
        for c in &self.cells {
            let inside: Vec<&(usize, u64)> = verts.iter().filter(|(i, _)| c.contains(&self.cells[*i])).collect();
            let pick = |best: &(usize, u64), dominates: &dyn Fn(u64, u64) -> bool| -> Result<usize> {
                if inside.iter().all(|(_, m)| dominates(best.1, *m)) {
                    Ok(best.0)
                } else {
                    Err(Error::Internal("box without a weak-order extreme vertex".into()))
                }
            };
            let hi = inside.iter().max_by_key(|(_, m)| m.count_ones()).unwrap();
            let lo = inside.iter().min_by_key(|(_, m)| m.count_ones()).unwrap();
            self.top.push(pick(hi, &|a, b| b & !a == 0)?);
            self.bottom.push(pick(lo, &|a, b| a & !b == 0)?);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn faces(&self) -> impl Iterator<Item = (&OrderedPartition, &Cell)> {
        self.labels.iter().zip(&self.cells)
    }

    pub fn cell(&self, label: &OrderedPartition) -> Result<&Cell> {
        self.position(label).map(|i| &self.cells[i])
    }

    pub(crate) fn position(&self, label: &OrderedPartition) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownFace(label.to_string()))
    }

    pub(crate) fn label(&self, i: usize) -> &OrderedPartition {
        &self.labels[i]
    }

    pub(crate) fn cell_at(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    /// The vertex sitting at `p`, if any.
    pub fn vertex_at(&self, p: &[Dyadic]) -> Option<&OrderedPartition> {
        self.vertex_at.get(p).map(|&i| &self.labels[i])
    }

    /// Weak-order maximal vertex among the vertices lying in the face's box.
    pub fn max_vertex(&self, label: &OrderedPartition) -> Result<Perm> {
        let i = self.position(label)?;
        Ok(self.labels[self.top[i]].to_perm().expect("vertex"))
    }

    pub fn min_vertex(&self, label: &OrderedPartition) -> Result<Perm> {
        let i = self.position(label)?;
        Ok(self.labels[self.bottom[i]].to_perm().expect("vertex"))
    }

    pub(crate) fn top_of(&self, i: usize) -> usize {
        self.top[i]
    }

    pub(crate) fn bottom_of(&self, i: usize) -> usize {
        self.bottom[i]
    }

    /// Face counts indexed by dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut out = vec![0; self.n + 1];
        for c in &self.cells {
            out[c.dim()] += 1;
        }
        out
    }
}

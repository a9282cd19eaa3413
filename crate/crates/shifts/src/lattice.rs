//! Heights and shift lattices.

use std::collections::{HashMap, VecDeque};

use permadiag_core::{set, Perm};
use permadiag_diagonal::{DiagonalFace, Variant};
use serde::{Deserialize, Serialize};

use crate::scp::scp_from_perm;
use crate::shift::{singleton_shifts, Direction, Mode};
use crate::{check_variant, Error, Result};

/// Per element `ρ` (index `ρ − 1`): how far left and right it can be shifted
/// from the SCP. SU shifts right on `σ` and left on `τ`; LA the other way.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeightVector {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl HeightVector {
    /// `Π (ℓ(ρ) + 1)(r(ρ) + 1)`, the size of the lattice.
    pub fn lattice_size(&self) -> u64 {
        self.left
            .iter()
            .chain(&self.right)
            .map(|&h| h as u64 + 1)
            .product()
    }
}

/// Shift counts per element, bounded by the heights.
pub type Coord = HeightVector;

/// Counts the consecutive blocks next to `ρ`'s block whose extremum is
/// beyond `ρ`: maxima below `ρ` for SU, minima above `ρ` for LA.
pub fn heights(w: &Perm, variant: Variant) -> Result<HeightVector> {
    check_variant(variant)?;
    let scp = scp_from_perm(w);
    let n = w.n();
    let su = variant == Variant::Su;
    let count = |blocks: &[u32], rho: u32, rightwards: bool| -> usize {
        let i = blocks.iter().position(|&b| b & set::bit(rho) != 0).unwrap();
        let beyond = |b: u32| if su { set::max(b) < rho } else { set::min(b) > rho };
        if rightwards {
            blocks[i + 1..].iter().take_while(|&&b| beyond(b)).count()
        } else {
            blocks[..i].iter().rev().take_while(|&&b| beyond(b)).count()
        }
    };
    let (left_side, right_side) = if su {
        (scp.tau.blocks(), scp.sigma.blocks())
    } else {
        (scp.sigma.blocks(), scp.tau.blocks())
    };
    Ok(HeightVector {
        left: (1..=n as u32).map(|r| count(left_side, r, false)).collect(),
        right: (1..=n as u32).map(|r| count(right_side, r, true)).collect(),
    })
}

/// The facets reachable from one SCP by 1-shifts, with their coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShiftLattice {
    pub perm: Perm,
    pub variant: Variant,
    pub heights: HeightVector,
    elements: Vec<DiagonalFace>,
    coords: Vec<Coord>,
    #[serde(skip)]
    by_coord: HashMap<Coord, usize>,
    #[serde(skip)]
    covers: Vec<(usize, usize)>,
}

pub fn shift_lattice(w: &Perm, variant: Variant) -> Result<ShiftLattice> {
    check_variant(variant)?;
    let n = w.n();
    let start = scp_from_perm(w);
    let zero = HeightVector { left: vec![0; n], right: vec![0; n] };
    let mut index: HashMap<DiagonalFace, usize> = HashMap::from([(start.clone(), 0)]);
    let mut elements = vec![start];
    let mut coords = vec![zero];
    let mut covers = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (op, g) in singleton_shifts(&elements[a], variant, Mode::Path1, false)? {
            let rho = set::min(op.subset) as usize - 1;
            let mut c = coords[a].clone();
            match op.direction {
                Direction::Left => c.left[rho] += 1,
                Direction::Right => c.right[rho] += 1,
            }
            let b = match index.get(&g) {
                Some(&b) => {
                    if coords[b] != c {
                        return Err(Error::InvalidInput(format!(
                            "{g} reached with two different coordinates"
                        )));
                    }
                    b
                }
                None => {
                    let b = elements.len();
                    index.insert(g.clone(), b);
                    elements.push(g);
                    coords.push(c);
                    queue.push_back(b);
                    b
                }
            };
            covers.push((a, b));
        }
    }
    let by_coord = coords.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
    Ok(ShiftLattice {
        perm: w.clone(),
        variant,
        heights: heights(w, variant)?,
        elements,
        coords,
        by_coord,
        covers,
    })
}

impl ShiftLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[DiagonalFace] {
        &self.elements
    }

    pub fn coord(&self, k: usize) -> &Coord {
        &self.coords[k]
    }

    pub fn find(&self, c: &Coord) -> Option<usize> {
        self.by_coord.get(c).copied()
    }

    /// Covering pairs `(lower, upper)`, one per admissible 1-shift.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn minimum(&self) -> usize {
        0
    }

    pub fn maximum(&self) -> usize {
        self.find(&self.heights).expect("the top coordinate is reached")
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        let (x, y) = (&self.coords[a], &self.coords[b]);
        x.left.iter().zip(&y.left).all(|(p, q)| p <= q)
            && x.right.iter().zip(&y.right).all(|(p, q)| p <= q)
    }

    fn combine(&self, a: usize, b: usize, f: fn(usize, usize) -> usize) -> Option<usize> {
        let (x, y) = (&self.coords[a], &self.coords[b]);
        let c = HeightVector {
            left: x.left.iter().zip(&y.left).map(|(&p, &q)| f(p, q)).collect(),
            right: x.right.iter().zip(&y.right).map(|(&p, &q)| f(p, q)).collect(),
        };
        self.find(&c)
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.combine(a, b, std::cmp::min)
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.combine(a, b, std::cmp::max)
    }
}

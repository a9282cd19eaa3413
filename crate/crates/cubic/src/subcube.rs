use std::str::FromStr;

use itertools::Itertools;
use permadiag_core::{OrderedPartition, Perm};
use serde::{Deserialize, Serialize};

use crate::complex::{Cell, CubicalComplex};
use crate::dyadic::Dyadic;
use crate::{Error, Result};

/// Which weak-order extreme of a cube a face is pinned to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Extremum {
    Max,
    Min,
}

impl FromStr for Extremum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" | "as-max" => Ok(Extremum::Max),
            "min" | "as-min" => Ok(Extremum::Min),
            _ => Err(Error::InvalidInput(format!("unknown extremum {s:?}"))),
        }
    }
}

fn positions(cx: &CubicalComplex, faces: &[OrderedPartition]) -> Result<Vec<usize>> {
    let idx: Vec<usize> = faces.iter().map(|f| cx.position(f)).collect::<Result<_>>()?;
    if idx.is_empty() {
        return Err(Error::InvalidInput("empty set of faces".into()));
    }
    let d = cx.cell_at(idx[0]).dim();
    if idx.iter().any(|&i| cx.cell_at(i).dim() != d) {
        return Err(Error::MixedDimensions(faces.iter().join(", ")));
    }
    Ok(idx.into_iter().unique().collect())
}

/// Bounding box of the faces when their union is exactly that box.
fn union_box(cx: &CubicalComplex, idx: &[usize]) -> Option<Cell> {
    let hull = idx.iter().skip(1).fold(cx.cell_at(idx[0]).clone(), |h, &i| h.hull(cx.cell_at(i)));
    let axes = hull.axes();
    let d = cx.cell_at(idx[0]).dim();
    if axes.len() != d || idx.iter().any(|&i| cx.cell_at(i).axes() != axes) {
        return None;
    }
    // distinct faces of one dimension have disjoint interiors
    let e = cx.n() as u32;
    let covered: u128 = idx.iter().map(|&i| cx.cell_at(i).volume(&axes, e)).sum();
    (covered == hull.volume(&axes, e)).then_some(hull)
}

/// Whether the equal-dimensional faces cover exactly a box.
pub fn is_subdivision_cube(cx: &CubicalComplex, faces: &[OrderedPartition]) -> Result<bool> {
    let idx = positions(cx, faces)?;
    Ok(union_box(cx, &idx).is_some())
}

fn extreme_vertex_in(cx: &CubicalComplex, bx: &Cell, idx: &[usize], which: Extremum) -> usize {
    let pick = |i: usize| match which {
        Extremum::Max => cx.top_of(i),
        Extremum::Min => cx.bottom_of(i),
    };
    // the extreme vertex of the union is the extreme of one of its tiles
    let cands: Vec<usize> = idx.iter().map(|&i| pick(i)).unique().collect();
    let inv = |v: usize| cx.label(v).to_perm().expect("vertex").inversions().len();
    let best = match which {
        Extremum::Max => cands.iter().max_by_key(|&&v| inv(v)),
        Extremum::Min => cands.iter().min_by_key(|&&v| inv(v)),
    };
    let v = *best.expect("nonempty");
    debug_assert!(bx.contains(cx.cell_at(v)));
    v
}

/// The face of a subdivision cube containing its weak-order maximal (or
/// minimal) vertex.
pub fn extremal_face(cx: &CubicalComplex, faces: &[OrderedPartition], which: Extremum) -> Result<OrderedPartition> {
    let idx = positions(cx, faces)?;
    let bx = union_box(cx, &idx).ok_or_else(|| Error::NotSubdivisionCube(faces.iter().join(", ")))?;
    let v = extreme_vertex_in(cx, &bx, &idx, which);
    let holders: Vec<usize> = idx.iter().copied().filter(|&i| cx.cell_at(i).contains(cx.cell_at(v))).collect();
    match holders[..] {
        [i] => Ok(cx.label(i).clone()),
        _ => Err(Error::Internal(format!("extreme vertex {} lies in {} faces", cx.label(v), holders.len()))),
    }
}

/// The inclusion-maximal subdivision cube whose extremal face is `face`. Its
/// box keeps the corner of `face` at the extreme vertex and grows the other
/// ends as far as a tiling by faces allows.
pub fn max_subdivision_cube(cx: &CubicalComplex, face: &OrderedPartition, which: Extremum) -> Result<Vec<OrderedPartition>> {
    let f = cx.position(face)?;
    let fc = cx.cell_at(f);
    let v = match which {
        Extremum::Max => cx.top_of(f),
        Extremum::Min => cx.bottom_of(f),
    };
    let corner = cx.cell_at(v).lo.clone();
    let axes = fc.axes();
    let fixed: Vec<usize> = (0..cx.n()).filter(|i| !axes.contains(i)).collect();
    // faces that can tile a box through `face`
    let group: Vec<usize> = (0..cx.len())
        .filter(|&i| {
            let c = cx.cell_at(i);
            c.axes() == axes && fixed.iter().all(|&a| c.lo[a] == fc.lo[a])
        })
        .collect();
    let mut choices: Vec<Vec<Dyadic>> = Vec::with_capacity(axes.len());
    for &a in &axes {
        let at_hi = corner[a] == fc.hi[a];
        if !at_hi && corner[a] != fc.lo[a] {
            return Err(Error::Internal(format!("extreme vertex of {face} is not a corner")));
        }
        let mut ends: Vec<Dyadic> = group
            .iter()
            .map(|&i| cx.cell_at(i))
            .map(|c| if at_hi { c.lo[a] } else { c.hi[a] })
            .filter(|&x| if at_hi { x <= fc.lo[a] } else { x >= fc.hi[a] })
            .collect();
        ends.sort();
        ends.dedup();
        choices.push(ends);
    }
    let mut found: Vec<(Cell, Vec<usize>)> = Vec::new();
    for pick in choices.iter().map(|c| c.iter().copied()).multi_cartesian_product() {
        let mut bx = fc.clone();
        for (&a, x) in axes.iter().zip(pick) {
            if corner[a] == fc.hi[a] {
                bx.lo[a] = x;
            } else {
                bx.hi[a] = x;
            }
        }
        let tiles: Vec<usize> = group.iter().copied().filter(|&i| bx.contains(cx.cell_at(i))).collect();
        if union_box(cx, &tiles).as_ref() == Some(&bx) && extreme_vertex_in(cx, &bx, &tiles, which) == v {
            found.push((bx, tiles));
        }
    }
    if axes.is_empty() {
        return Ok(vec![face.clone()]);
    }
    let best = found
        .iter()
        .find(|(b, _)| found.iter().all(|(o, _)| b.contains(o)))
        .ok_or_else(|| Error::Internal(format!("no unique maximal cube through {face}")))?;
    let mut out: Vec<OrderedPartition> = best.1.iter().map(|&i| cx.label(i).clone()).collect();
    out.sort();
    Ok(out)
}

/// The pair of subdivision cubes meeting at a vertex: `upper` has the vertex
/// as its maximum, `lower` as its minimum, and their dimensions sum to `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hourglass {
    pub vertex: Perm,
    pub upper: Vec<OrderedPartition>,
    pub lower: Vec<OrderedPartition>,
}

pub fn hourglass(cx: &CubicalComplex, v: &Perm) -> Result<Hourglass> {
    if v.n() != cx.n() + 1 {
        return Err(Error::InvalidInput(format!("{v} is not a vertex of C_{}", cx.n())));
    }
    let vi = cx.position(&OrderedPartition::from_perm(v))?;
    let cubes = |which: Extremum| -> Result<Vec<(usize, Cell, Vec<OrderedPartition>)>> {
        let mut out = Vec::new();
        for i in 0..cx.len() {
            let ext = match which {
                Extremum::Max => cx.top_of(i),
                Extremum::Min => cx.bottom_of(i),
            };
            if ext == vi {
                let faces = max_subdivision_cube(cx, cx.label(i), which)?;
                let idx: Vec<usize> = faces.iter().map(|f| cx.position(f)).collect::<Result<_>>()?;
                let bx = union_box(cx, &idx).expect("tiled");
                out.push((bx.dim(), bx, faces));
            }
        }
        Ok(out)
    };
    let ups = cubes(Extremum::Max)?;
    let downs = cubes(Extremum::Min)?;
    let pairs: Vec<(&(usize, Cell, Vec<OrderedPartition>), &(usize, Cell, Vec<OrderedPartition>))> = ups
        .iter()
        .cartesian_product(&downs)
        .filter(|(a, b)| a.0 + b.0 == cx.n())
        .collect();
    let best = pairs
        .iter()
        .find(|(a, b)| pairs.iter().all(|(c, d)| a.1.contains(&c.1) && b.1.contains(&d.1)))
        .ok_or_else(|| Error::Internal(format!("no maximal pair at {v}")))?;
    Ok(Hourglass { vertex: v.clone(), upper: best.0 .2.clone(), lower: best.1 .2.clone() })
}

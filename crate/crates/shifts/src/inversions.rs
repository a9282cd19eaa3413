//! Inversions and edge crossings of a pair of ordered partitions.

use std::collections::BTreeSet;

use permadiag_diagonal::DiagonalFace;

/// Pairs `i < j` with `j` in an earlier block than `i` in `τ` and `i` in an
/// earlier block than `j` in `σ`.
pub fn inversions(f: &DiagonalFace) -> BTreeSet<(u32, u32)> {
    let (s, t) = (f.sigma.block_index(), f.tau.block_index());
    let n = f.n() as u32;
    let mut out = BTreeSet::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let (a, b) = (i as usize - 1, j as usize - 1);
            if t[b] < t[a] && s[a] < s[b] {
                out.insert((i, j));
            }
        }
    }
    out
}

/// Pairs of elements whose edges cross when `σ` and `τ` are drawn as two
/// columns of blocks in order.
pub fn crossings(f: &DiagonalFace) -> BTreeSet<(u32, u32)> {
    crossing_pairs(f, false)
}

/// Crossings between edges leaving adjacent blocks of `σ` or of `τ`.
pub fn adjacent_crossings(f: &DiagonalFace) -> BTreeSet<(u32, u32)> {
    crossing_pairs(f, true)
}

fn crossing_pairs(f: &DiagonalFace, adjacent: bool) -> BTreeSet<(u32, u32)> {
    let (s, t) = (f.sigma.block_index(), f.tau.block_index());
    let n = f.n() as u32;
    let mut out = BTreeSet::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let (a, b) = (i as usize - 1, j as usize - 1);
            let ds = s[a] as i64 - s[b] as i64;
            let dt = t[a] as i64 - t[b] as i64;
            if ds * dt < 0 && (!adjacent || ds.abs() == 1 || dt.abs() == 1) {
                out.insert((i, j));
            }
        }
    }
    out
}

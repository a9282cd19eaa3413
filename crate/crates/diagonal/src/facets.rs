//! Facets from (2,n)-partition trees by the path criterion.

use std::collections::VecDeque;

use permadiag_core::{set, OrderedPartition};
use permadiag_forests::{enumerate_trees, PartitionForest};
use rayon::prelude::*;

use crate::face::DiagonalFace;
use crate::ordering::Variant;
use crate::{Error, Result};

pub const DEFAULT_FACET_CAP: usize = 8;

/// Orders the blocks of a (2,n)-partition tree into the facet of the LA or
/// SU diagonal it indexes.
///
/// The tree has the parts of both partitions as nodes and the elements as
/// edges. Two parts `X, Y` of the same partition compare through the unique
/// path between them: under LA, `X` comes first when the minimal edge of the
/// path is traversed from the first partition to the second; under SU, when
/// the maximal edge is traversed from the second to the first. The
/// opposite variants order both partitions backwards.
pub fn order_partition_tree(t: &PartitionForest, variant: Variant) -> Result<DiagonalFace> {
    if t.ell() != 2 {
        return Err(Error::InvalidInput(format!(
            "expected a (2,n)-partition tree, got ℓ = {}",
            t.ell()
        )));
    }
    if !t.is_tree() {
        return Err(Error::InvalidInput(format!("{t} is not a partition tree")));
    }
    let n = t.n();
    let left = t.partitions()[0].parts().to_vec();
    let right = t.partitions()[1].parts().to_vec();
    let (p, q) = (left.len(), right.len());
    // node ids: left parts 0..p, right parts p..p+q
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); p + q];
    for e in 1..=n as u32 {
        let b = set::bit(e);
        let a = left.iter().position(|&m| m & b != 0).expect("covers");
        let c = p + right.iter().position(|&m| m & b != 0).expect("covers");
        adj[a].push((c, e));
        adj[c].push((a, e));
    }
    // edges of the path from `from` to `to`, in order
    let path = |from: usize, to: usize| -> Vec<u32> {
        let mut prev: Vec<Option<(usize, u32)>> = vec![None; p + q];
        let mut seen = vec![false; p + q];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, e));
                    queue.push_back(y);
                }
            }
        }
        let mut edges = Vec::new();
        let mut cur = to;
        while cur != from {
            let (x, e) = prev[cur].expect("connected");
            edges.push(e);
            cur = x;
        }
        edges.reverse();
        edges
    };
    let (base, reverse) = match variant {
        Variant::La => (Variant::La, false),
        Variant::Su => (Variant::Su, false),
        Variant::LaOp => (Variant::La, true),
        Variant::SuOp => (Variant::Su, true),
    };
    // whether node x precedes node y (same side); edge at position k of a path
    // starting on the left side goes left → right iff k is even
    let before = |x: usize, y: usize| -> bool {
        let edges = path(x, y);
        let starts_left = x < p;
        let (pos, _) = match base {
            Variant::La => edges.iter().enumerate().min_by_key(|(_, &e)| e).unwrap(),
            _ => edges.iter().enumerate().max_by_key(|(_, &e)| e).unwrap(),
        };
        let left_to_right = (pos % 2 == 0) == starts_left;
        match base {
            Variant::La => left_to_right,
            _ => !left_to_right,
        }
    };
    let order = |nodes: Vec<usize>| -> Result<Vec<usize>> {
        let mut wins: Vec<(usize, usize)> = nodes
            .iter()
            .map(|&x| (nodes.iter().filter(|&&y| y != x && before(x, y)).count(), x))
            .collect();
        wins.sort_by(|a, b| b.0.cmp(&a.0));
        let m = wins.len();
        if wins.iter().enumerate().any(|(r, &(w, _))| w != m - 1 - r) {
            return Err(Error::InvalidInput("path comparisons are not transitive".into()));
        }
        let mut v: Vec<usize> = wins.into_iter().map(|(_, x)| x).collect();
        if reverse {
            v.reverse();
        }
        Ok(v)
    };
    let sigma: Vec<u32> = order((0..p).collect())?.into_iter().map(|x| left[x]).collect();
    let tau: Vec<u32> = order((p..p + q).collect())?
        .into_iter()
        .map(|x| right[x - p])
        .collect();
    DiagonalFace::new(OrderedPartition::new(n, sigma)?, OrderedPartition::new(n, tau)?)
}

/// Facets of the diagonal, one per (2,n)-partition tree, sorted by rendering.
pub fn facets(n: usize, variant: Variant, cap: usize) -> Result<Vec<DiagonalFace>> {
    if n > cap {
        return Err(Error::CapExceeded(format!("n = {n} exceeds the cap {cap}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let trees = enumerate_trees(2, n)?;
    let mut out = trees
        .par_iter()
        .map(|t| order_partition_tree(t, variant))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_cached_key(|f| f.to_string());
    Ok(out)
}

//! The (2,n)-partition tree of a pair: blocks as nodes, elements as edges.

use permadiag_core::set;
use permadiag_diagonal::DiagonalFace;

use crate::shift::Side;
use crate::{Error, Result};

/// Rooted at the first block of `σ`; node `k < p` is `σ_k`, node `p + k` is `τ_k`.
#[derive(Clone, Debug)]
pub struct BlockTree {
    p: usize,
    parent: Vec<Option<(usize, u32)>>,
    depth: Vec<usize>,
    sigma_of: Vec<usize>,
    tau_of: Vec<usize>,
}

impl BlockTree {
    pub fn new(f: &DiagonalFace) -> Result<Self> {
        let n = f.n();
        let (p, q) = (f.sigma.len(), f.tau.len());
        if p + q != n + 1 {
            return Err(Error::NotFacet(format!("{f}: {p} + {q} blocks, a tree needs {}", n + 1)));
        }
        let sigma_of = f.sigma.block_index();
        let tau_of = f.tau.block_index();
        let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); p + q];
        for e in 1..=n as u32 {
            let (a, b) = (sigma_of[e as usize - 1], p + tau_of[e as usize - 1]);
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        let mut parent = vec![None; p + q];
        let mut depth = vec![usize::MAX; p + q];
        depth[0] = 0;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &(y, e) in &adj[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some((x, e));
                    stack.push(y);
                }
            }
        }
        if depth.contains(&usize::MAX) {
            return Err(Error::NotFacet(format!("{f}: the intersection graph is disconnected")));
        }
        Ok(BlockTree { p, parent, depth, sigma_of, tau_of })
    }

    fn node(&self, side: Side, block: usize) -> usize {
        match side {
            Side::Sigma => block,
            Side::Tau => self.p + block,
        }
    }

    /// Elements along the path from block `i` to block `j` of one side, in order.
    pub fn path(&self, side: Side, i: usize, j: usize) -> Vec<u32> {
        let (mut a, mut b) = (self.node(side, i), self.node(side, j));
        let (mut front, mut back) = (Vec::new(), Vec::new());
        while self.depth[a] > self.depth[b] {
            let (x, e) = self.parent[a].unwrap();
            front.push(e);
            a = x;
        }
        while self.depth[b] > self.depth[a] {
            let (x, e) = self.parent[b].unwrap();
            back.push(e);
            b = x;
        }
        while a != b {
            let (x, e) = self.parent[a].unwrap();
            front.push(e);
            a = x;
            let (y, g) = self.parent[b].unwrap();
            back.push(g);
            b = y;
        }
        back.reverse();
        front.extend(back);
        front
    }

    /// Path maximum and whether it is traversed from `σ` to `τ`.
    pub fn path_max(&self, side: Side, i: usize, j: usize) -> (u32, bool) {
        let path = self.path(side, i, j);
        let (pos, &m) = path.iter().enumerate().max_by_key(|(_, &e)| e).expect("distinct blocks");
        (m, (pos % 2 == 0) == (side == Side::Sigma))
    }

    /// Path minimum and whether it is traversed from `σ` to `τ`.
    pub fn path_min(&self, side: Side, i: usize, j: usize) -> (u32, bool) {
        let path = self.path(side, i, j);
        let (pos, &m) = path.iter().enumerate().min_by_key(|(_, &e)| e).expect("distinct blocks");
        (m, (pos % 2 == 0) == (side == Side::Sigma))
    }

    /// Block of `e` on the given side.
    pub fn block_of(&self, side: Side, e: u32) -> usize {
        match side {
            Side::Sigma => self.sigma_of[e as usize - 1],
            Side::Tau => self.tau_of[e as usize - 1],
        }
    }
}

pub(crate) fn render(mask: u32) -> String {
    set::render(mask)
}

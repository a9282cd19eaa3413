use std::collections::{BTreeSet, VecDeque};

use permadiag_core::{set, SetPartition};
use permadiag_forests::PartitionForest;

use crate::{Error, RainbowForest, Result};

/// Labeled rainbow forest from a colored edge list on `[n]` (zero-based
/// nodes), rooting each component at its minimum.
fn from_colored_edges(ell: usize, n: usize, edges: &[(usize, usize, u8)]) -> Result<RainbowForest> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b, c) in edges {
        adj[a].push((b, c));
        adj[b].push((a, c));
    }
    let mut parent = vec![None; n];
    let mut color = vec![0u8; n];
    let mut seen = vec![false; n];
    for r in 0..n {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut queue = VecDeque::from([r]);
        while let Some(v) = queue.pop_front() {
            for &(w, c) in &adj[v] {
                if Some(w) == parent[v] {
                    continue;
                }
                if seen[w] {
                    return Err(Error::Invalid("colored edge graph has a cycle".into()));
                }
                seen[w] = true;
                parent[w] = Some(v);
                color[w] = c;
                queue.push_back(w);
            }
        }
    }
    RainbowForest::labeled(ell, parent, color)
}

/// Root each component of the colored clique graph at its minimum; a node's
/// parent is its unique neighbor one step closer, its color that edge's color.
pub fn forest_to_rainbow(f: &PartitionForest) -> Result<RainbowForest> {
    let n = f.n();
    let mut adj: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
    for (i, p) in f.partitions().iter().enumerate() {
        for &part in p.parts() {
            let elems: Vec<u32> = set::elements(part).collect();
            for &a in &elems {
                for &b in &elems {
                    if a != b {
                        adj[a as usize - 1].push((b as usize - 1, i as u8 + 1));
                    }
                }
            }
        }
    }
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    let mut color = vec![0u8; n];
    for r in 0..n {
        if dist[r] != usize::MAX {
            continue;
        }
        dist[r] = 0;
        let mut queue = VecDeque::from([r]);
        let mut order = vec![];
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, _) in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        for &v in &order[1..] {
            let closer: BTreeSet<(usize, u8)> =
                adj[v].iter().copied().filter(|&(w, _)| dist[w] + 1 == dist[v]).collect();
            if closer.len() != 1 {
                return Err(Error::Invalid(format!("node {} has no unique parent", v + 1)));
            }
            let (w, c) = *closer.iter().next().unwrap();
            parent[v] = Some(w);
            color[v] = c;
        }
    }
    RainbowForest::labeled(f.ell(), parent, color)
}

/// Copy `i` has a part `{N} ∪ C_i(N)` for every node `N` not colored `i`.
pub fn rainbow_to_forest(r: &RainbowForest) -> Result<PartitionForest> {
    if !r.is_labeled() {
        return Err(Error::Invalid("the bijection needs a labeled forest".into()));
    }
    let n = r.len();
    let mut partitions = Vec::with_capacity(r.ell());
    for i in 1..=r.ell() as u8 {
        let parts: Vec<u32> = (0..n)
            .filter(|&k| r.color(k) != i)
            .map(|k| {
                r.children(k)
                    .iter()
                    .filter(|&&c| r.color(c) == i)
                    .fold(set::bit(k as u32 + 1), |m, &c| m | set::bit(c as u32 + 1))
            })
            .collect();
        partitions.push(SetPartition::new(n, parts).map_err(permadiag_forests::Error::from)?);
    }
    Ok(PartitionForest::new(partitions)?)
}

/// Forests covering `r`: for a color `c` and nodes `a`, `b` not colored `c`
/// in trees with `Root(a) < Root(b)`, reroot `b`'s tree at `b`, hang `b` below
/// `a` with color `c`, and move `b`'s `c`-colored children to `a`.
///
/// Rerooting walks the path `Root(b) = v_0, …, v_k = b`: the corolla made of
/// `v_i` and its children colored like `v_{i+1}` is recentred at `v_{i+1}`,
/// so each `v_i` takes the former color of its child and `b` loses its color.
pub fn rainbow_covers(r: &RainbowForest) -> Result<Vec<RainbowForest>> {
    if !r.is_labeled() {
        return Err(Error::Invalid("covers need a labeled forest".into()));
    }
    let n = r.len();
    let mut out = BTreeSet::new();
    for c in 1..=r.ell() as u8 {
        for a in 0..n {
            for b in 0..n {
                let (ra, rb) = (r.root_of(a), r.root_of(b));
                if ra >= rb || r.color(a) == c || r.color(b) == c {
                    continue;
                }
                // (center, member, color) for every non-root node
                let mut edges: Vec<(usize, usize, u8)> =
                    (0..n).filter_map(|k| r.parent(k).map(|p| (p, k, r.color(k)))).collect();
                let mut path = vec![b];
                while let Some(p) = r.parent(*path.last().unwrap()) {
                    path.push(p);
                }
                path.reverse();
                for w in path.windows(2) {
                    let (v, child) = (w[0], w[1]);
                    let col = r.color(child);
                    for e in edges.iter_mut() {
                        if e.0 == v && e.2 == col {
                            *e = if e.1 == child { (child, v, col) } else { (child, e.1, col) };
                        }
                    }
                }
                for e in edges.iter_mut() {
                    if e.0 == b && e.2 == c {
                        e.0 = a;
                    }
                }
                edges.push((a, b, c));
                out.insert(Key(from_colored_edges(r.ell(), n, &edges)?));
            }
        }
    }
    Ok(out.into_iter().map(|k| k.0).collect())
}

/// Orders labeled forests by their parent/color arrays for deduplication.
#[derive(PartialEq, Eq)]
struct Key(RainbowForest);

impl Key {
    fn sig(&self) -> (Vec<Option<usize>>, Vec<u8>) {
        let f = &self.0;
        ((0..f.len()).map(|k| f.parent(k)).collect(), (0..f.len()).map(|k| f.color(k)).collect())
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sig().cmp(&other.sig())
    }
}

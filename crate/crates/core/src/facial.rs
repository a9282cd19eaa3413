use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::set;
use crate::{Error, OrderedPartition, Result};

/// Largest `n` whose full reachability table is cached; larger sizes search.
const CACHE_MAX_N: usize = 6;

/// Generating relations of the facial weak order leaving `sigma`: merging
/// `σ_i|σ_{i+1}` when `max σ_i < min σ_{i+1}`, and splitting a block into
/// `A|B` when `min A > max B`.
pub fn facial_successors(sigma: &OrderedPartition) -> Vec<OrderedPartition> {
    let b = sigma.blocks();
    let n = sigma.n();
    let mut out = Vec::new();
    for i in 0..b.len().saturating_sub(1) {
        if set::max(b[i]) < set::min(b[i + 1]) {
            let mut nb = b.to_vec();
            nb[i] |= nb.remove(i + 1);
            out.push(OrderedPartition::new_unchecked(n, nb));
        }
    }
    for i in 0..b.len() {
        if b[i].count_ones() < 2 {
            continue;
        }
        for a in set::submasks(b[i]) {
            let rest = b[i] & !a;
            if rest != 0 && set::min(a) > set::max(rest) {
                let mut nb = b.to_vec();
                nb[i] = rest;
                nb.insert(i, a);
                out.push(OrderedPartition::new_unchecked(n, nb));
            }
        }
    }
    out
}

/// Reachability closure of the facial weak order on all ordered partitions of `[n]`.
pub struct FacialWeakOrder {
    n: usize,
    index: HashMap<OrderedPartition, usize>,
    words: usize,
    reach: Vec<u64>,
}

impl FacialWeakOrder {
    pub fn new(n: usize) -> Self {
        let all = OrderedPartition::all(n);
        let index: HashMap<_, _> = all.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let succ: Vec<Vec<usize>> = all
            .iter()
            .map(|p| facial_successors(p).iter().map(|q| index[q]).collect())
            .collect();
        let words = all.len().div_ceil(64);
        let mut reach = vec![0u64; all.len() * words];
        let mut done = vec![false; all.len()];
        // iterative post-order DFS; the relation graph is acyclic
        for root in 0..all.len() {
            if done[root] {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            while let Some(&mut (v, ref mut k)) = stack.last_mut() {
                if *k < succ[v].len() {
                    let w = succ[v][*k];
                    *k += 1;
                    if !done[w] {
                        stack.push((w, 0));
                    }
                } else {
                    reach[v * words + v / 64] |= 1 << (v % 64);
                    for &w in &succ[v] {
                        for t in 0..words {
                            let x = reach[w * words + t];
                            reach[v * words + t] |= x;
                        }
                    }
                    done[v] = true;
                    stack.pop();
                }
            }
        }
        FacialWeakOrder { n, index, words, reach }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn leq(&self, sigma: &OrderedPartition, tau: &OrderedPartition) -> bool {
        let (a, b) = (self.index[sigma], self.index[tau]);
        self.reach[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    /// Shared cached instance for `n`.
    pub fn cached(n: usize) -> Arc<FacialWeakOrder> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<FacialWeakOrder>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&n) {
            return f.clone();
        }
        let f = Arc::new(FacialWeakOrder::new(n));
        cache.lock().unwrap().entry(n).or_insert(f).clone()
    }
}

/// Facial weak order comparison `σ ≤ τ`.
pub fn facial_weak_leq(sigma: &OrderedPartition, tau: &OrderedPartition) -> Result<bool> {
    if sigma.n() != tau.n() {
        return Err(Error::SizeMismatch(sigma.n(), tau.n()));
    }
    if sigma == tau {
        return Ok(true);
    }
    if sigma.n() <= CACHE_MAX_N {
        return Ok(FacialWeakOrder::cached(sigma.n()).leq(sigma, tau));
    }
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::from([sigma.clone()]);
    seen.insert(sigma.clone());
    while let Some(p) = queue.pop_front() {
        for q in facial_successors(&p) {
            if &q == tau {
                return Ok(true);
            }
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> OrderedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn small_chain() {
        assert!(facial_weak_leq(&op("1|2|3"), &op("12|3")).unwrap());
        assert!(facial_weak_leq(&op("12|3"), &op("123")).unwrap());
        assert!(facial_weak_leq(&op("1|2|3"), &op("123")).unwrap());
        assert!(!facial_weak_leq(&op("123"), &op("1|2|3")).unwrap());
        assert!(facial_weak_leq(&op("123"), &op("3|2|1")).unwrap());
    }

    #[test]
    fn chain_witness_n7() {
        let chain = ["13|24|57|6", "3|1|4|2|7|5|6", "3|1|7|4|5|6|2", "3|17|456|2"];
        for w in chain.windows(2) {
            assert!(facial_weak_leq(&op(w[0]), &op(w[1])).unwrap(), "{} < {}", w[0], w[1]);
        }
        assert!(facial_weak_leq(&op(chain[0]), &op(chain[3])).unwrap());
        assert!(!facial_weak_leq(&op(chain[3]), &op(chain[0])).unwrap());
    }
}

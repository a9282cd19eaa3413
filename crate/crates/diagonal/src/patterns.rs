//! Vertex pairs of the diagonal and the forbidden patterns describing them.

use std::collections::HashSet;

use itertools::Itertools;
use permadiag_core::{set, OrderedPartition, Perm};
use serde::{Deserialize, Serialize};

use crate::face::{is_face_pair, DiagonalFace};
use crate::ordering::Variant;
use crate::{Error, Result};

/// A pair of permutations of `[2k]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PatternPair {
    pub k: usize,
    pub first: Perm,
    pub second: Perm,
}

impl std::fmt::Display for PatternPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

/// The forbidden pairs of size `k`.
///
/// With `I = {i_1, …}` and `J = {j_1, …}` listed in any order, the first
/// word is `j_1 i_1 j_2 i_2 ⋯ j_k i_k`. For LA, `i_1 = 1` and the second word
/// is `i_2 j_1 i_3 j_2 ⋯ i_k j_{k−1} i_1 j_k`; for SU, `j_k = 2k` and it is
/// `i_1 j_k i_2 j_1 ⋯ i_k j_{k−1}`. Opposite variants swap the two words.
pub fn generate_patterns(k: usize, variant: Variant) -> Result<Vec<PatternPair>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    if 2 * k > 32 {
        return Err(Error::InvalidInput("k is capped at 16".into()));
    }
    let m = 2 * k as u32;
    let su = matches!(variant, Variant::Su | Variant::SuOp);
    let fixed = if su { m } else { 1 };
    let free: Vec<u32> = (1..=m).filter(|&x| x != fixed).collect();
    let mut out = Vec::new();
    // the fixed element is i_1 (LA) or j_k (SU); the others are split k−1 / k
    let n_same = k - 1;
    for same in free.iter().copied().combinations(n_same) {
        let other: Vec<u32> = free.iter().copied().filter(|x| !same.contains(x)).collect();
        for sp in same.iter().copied().permutations(n_same) {
            for op in other.iter().copied().permutations(k) {
                let (is, js): (Vec<u32>, Vec<u32>) = if su {
                    // same = j_1..j_{k−1}, other = i_1..i_k
                    let mut js = sp.clone();
                    js.push(fixed);
                    (op.clone(), js)
                } else {
                    let mut is = vec![fixed];
                    is.extend(&sp);
                    (is, op.clone())
                };
                let first: Vec<u32> = (0..k).flat_map(|t| [js[t], is[t]]).collect();
                let second: Vec<u32> = if su {
                    let mut w = vec![is[0], js[k - 1]];
                    for t in 1..k {
                        w.push(is[t]);
                        w.push(js[t - 1]);
                    }
                    w
                } else {
                    let mut w = Vec::new();
                    for t in 1..k {
                        w.push(is[t]);
                        w.push(js[t - 1]);
                    }
                    w.push(is[0]);
                    w.push(js[k - 1]);
                    w
                };
                let (a, b) = (Perm::new(first)?, Perm::new(second)?);
                let (first, second) = match variant {
                    Variant::La | Variant::Su => (a, b),
                    _ => (b, a),
                };
                out.push(PatternPair { k, first, second });
            }
        }
    }
    out.sort();
    Ok(out)
}

fn check_pair(u: &Perm, w: &Perm) -> Result<()> {
    if u.n() != w.n() {
        return Err(Error::InvalidInput(format!(
            "permutations of different sizes {} and {}",
            u.n(),
            w.n()
        )));
    }
    Ok(())
}

/// Whether `(u, w)` is a vertex of the diagonal, through the face criterion.
pub fn avoids_patterns(u: &Perm, w: &Perm, variant: Variant) -> Result<bool> {
    check_pair(u, w)?;
    let f = DiagonalFace::new(OrderedPartition::from_perm(u), OrderedPartition::from_perm(w))?;
    is_face_pair(&f, &variant.ordering(u.n()))
}

/// Subsequence of `u` on the values in `mask`, standardized.
fn restrict(u: &Perm, mask: u32) -> Vec<u32> {
    let rank = |x: u32| (mask & (set::bit(x) - 1)).count_ones() + 1;
    u.entries().filter(|&x| mask & set::bit(x) != 0).map(rank).collect()
}

/// Whether `(u, w)` avoids every forbidden pair, by scanning all value sets
/// `X` of even size and comparing the standardized restrictions.
pub fn avoids_patterns_by_scan(u: &Perm, w: &Perm, variant: Variant) -> Result<bool> {
    check_pair(u, w)?;
    let n = u.n();
    for k in 1..=n / 2 {
        let forbidden: HashSet<(Vec<u32>, Vec<u32>)> = generate_patterns(k, variant)?
            .into_iter()
            .map(|p| (p.first.to_vec(), p.second.to_vec()))
            .collect();
        for x in set::submasks(set::full(n)).filter(|x| x.count_ones() as usize == 2 * k) {
            if forbidden.contains(&(restrict(u, x), restrict(w, x))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Vertex pairs `(u, w)` of the diagonal, sorted.
pub fn vertex_pairs(n: usize, variant: Variant, cap: usize) -> Result<Vec<(Perm, Perm)>> {
    if n > cap {
        return Err(Error::CapExceeded(format!("n = {n} exceeds the cap {cap}")));
    }
    let perms = Perm::all(n);
    let or = variant.ordering(n);
    let mut out = Vec::new();
    for u in &perms {
        let su = OrderedPartition::from_perm(u);
        for w in &perms {
            let f = DiagonalFace {
                sigma: su.clone(),
                tau: OrderedPartition::from_perm(w),
            };
            if is_face_pair(&f, &or)? {
                out.push((u.clone(), w.clone()));
            }
        }
    }
    out.sort();
    Ok(out)
}

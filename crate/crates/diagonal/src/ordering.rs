//! Orderings of `Un(n)` and the operadic property.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;
use permadiag_core::{set, std_pair, IJPair};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The four operadic diagonals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    La,
    Su,
    LaOp,
    SuOp,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::La, Variant::Su, Variant::LaOp, Variant::SuOp];

    pub fn ordering(self, n: usize) -> Ordering {
        match self {
            Variant::La => la_ordering(n),
            Variant::Su => su_ordering(n),
            Variant::LaOp => opposite(&la_ordering(n)),
            Variant::SuOp => opposite(&su_ordering(n)),
        }
    }

    /// `(I, J)` with `min(I ∪ J) ∈ I` (LA) or `max(I ∪ J) ∈ J` (SU), possibly reversed.
    pub fn orients(self, i: u32, j: u32) -> bool {
        let both = i | j;
        match self {
            Variant::La => i & set::bit(set::min(both)) != 0,
            Variant::Su => j & set::bit(set::max(both)) != 0,
            Variant::LaOp => j & set::bit(set::min(both)) != 0,
            Variant::SuOp => i & set::bit(set::max(both)) != 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::La => "la",
            Variant::Su => "su",
            Variant::LaOp => "la-op",
            Variant::SuOp => "su-op",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "la" => Ok(Variant::La),
            "su" => Ok(Variant::Su),
            "la-op" | "laop" => Ok(Variant::LaOp),
            "su-op" | "suop" => Ok(Variant::SuOp),
            _ => Err(Error::InvalidInput(format!("unknown variant {s:?}"))),
        }
    }
}

/// Each unordered pair of `Un(n)` once, oriented with `min(I ∪ J) ∈ I`,
/// sorted by `(|I|, I, J)` with sets compared as increasing sequences.
pub fn un_pairs(n: usize) -> Arc<Vec<IJPair>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<IJPair>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let full = set::full(n);
    let mut out = Vec::new();
    for i in set::submasks(full) {
        let k = i.count_ones();
        let rest = full & !i;
        for j in set::submasks(rest) {
            if j.count_ones() == k && set::min(i) < set::min(j) {
                out.push(IJPair { i, j });
            }
        }
    }
    let key = |p: &IJPair| {
        (
            p.i.count_ones(),
            set::elements(p.i).collect::<Vec<_>>(),
            set::elements(p.j).collect::<Vec<_>>(),
        )
    };
    out.sort_by_key(key);
    let v = Arc::new(out);
    cache.lock().unwrap().insert(n, v.clone());
    v
}

fn un_index(n: usize) -> Arc<HashMap<(u32, u32), usize>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<HashMap<(u32, u32), usize>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let idx: HashMap<(u32, u32), usize> =
        un_pairs(n).iter().enumerate().map(|(k, p)| ((p.i, p.j), k)).collect();
    let v = Arc::new(idx);
    cache.lock().unwrap().insert(n, v.clone());
    v
}

/// A complete orientation of `Un(n)`: pair `p` of [`un_pairs`] is kept as
/// listed when `flip[p]` is false and reversed otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ordering {
    n: usize,
    flip: Vec<bool>,
}

impl Ordering {
    pub fn from_fn(n: usize, mut keep: impl FnMut(IJPair) -> bool) -> Self {
        let flip = un_pairs(n).iter().map(|&p| !keep(p)).collect();
        Ordering { n, flip }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.flip.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flip.is_empty()
    }

    /// The oriented pairs, in the order of [`un_pairs`].
    pub fn pairs(&self) -> Vec<IJPair> {
        un_pairs(self.n)
            .iter()
            .zip(&self.flip)
            .map(|(&p, &f)| if f { p.swap() } else { p })
            .collect()
    }

    /// Whether `(I, J)` (rather than `(J, I)`) belongs to the ordering.
    pub fn contains(&self, i: u32, j: u32) -> Result<bool> {
        let idx = un_index(self.n);
        if let Some(&p) = idx.get(&(i, j)) {
            Ok(!self.flip[p])
        } else if let Some(&p) = idx.get(&(j, i)) {
            Ok(self.flip[p])
        } else {
            Err(Error::InvalidInput(format!(
                "({},{}) is not a pair of Un({})",
                set::render(i),
                set::render(j),
                self.n
            )))
        }
    }

    /// Reverses the pair `{I, J}`.
    pub fn toggled(&self, i: u32, j: u32) -> Result<Ordering> {
        let idx = un_index(self.n);
        let p = idx
            .get(&(i, j))
            .or_else(|| idx.get(&(j, i)))
            .copied()
            .ok_or_else(|| Error::InvalidInput("pair not in Un(n)".into()))?;
        let mut out = self.clone();
        out.flip[p] = !out.flip[p];
        Ok(out)
    }

    /// Restriction to pairs inside `[m]`, for `m ≤ n`.
    pub fn restrict(&self, m: usize) -> Ordering {
        Ordering::from_fn(m, |p| self.contains(p.i, p.j).expect("subpair"))
    }
}

pub fn la_ordering(n: usize) -> Ordering {
    Ordering::from_fn(n, |p| Variant::La.orients(p.i, p.j))
}

pub fn su_ordering(n: usize) -> Ordering {
    Ordering::from_fn(n, |p| Variant::Su.orients(p.i, p.j))
}

pub fn opposite(or: &Ordering) -> Ordering {
    Ordering {
        n: or.n,
        flip: or.flip.iter().map(|f| !f).collect(),
    }
}

/// `(I, J) ∈ Or(v)` iff `Σ_I v > Σ_J v`.
pub fn ordering_from_vector(v: &[BigRational]) -> Result<Ordering> {
    let n = v.len();
    let sum = |m: u32| -> BigRational { set::elements(m).map(|e| &v[e as usize - 1]).sum() };
    let mut flip = Vec::with_capacity(un_pairs(n).len());
    for p in un_pairs(n).iter() {
        let d = sum(p.i) - sum(p.j);
        if d.is_zero() {
            return Err(Error::NonGeneric(format!(
                "equal sums on {} and {}",
                set::render(p.i),
                set::render(p.j)
            )));
        }
        flip.push(d < BigRational::zero());
    }
    Ok(Ordering { n, flip })
}

/// Proper splits `(I', J')` of `(I, J)` with `|I'| = |J'| ≥ 1`.
fn splits(i: u32, j: u32) -> impl Iterator<Item = (u32, u32)> {
    let k = i.count_ones();
    set::submasks(i)
        .filter(move |&a| a != i)
        .flat_map(move |a| {
            set::submasks(j)
                .filter(move |&b| b.count_ones() == a.count_ones() && b != j && a.count_ones() < k)
                .map(move |b| (a, b))
        })
}

/// Checks standardization-closure and union-closure of the family
/// `family[m − 1] = Or(m)` for `m = 1, …, N`.
pub fn is_operadic(family: &[Ordering]) -> Result<bool> {
    for (m, or) in family.iter().enumerate() {
        if or.n != m + 1 {
            return Err(Error::IncompleteFamily(format!(
                "entry {} is an ordering of Un({}), expected Un({})",
                m,
                or.n,
                m + 1
            )));
        }
    }
    for or in family {
        for p in or.pairs() {
            let s = std_pair(p.i, p.j)?;
            let size = 2 * s.size() as usize;
            if !family[size - 1].contains(s.i, s.j)? {
                return Ok(false);
            }
            // union-closure applied to the reversed pair
            for (a, b) in splits(p.j, p.i) {
                if or.contains(a, b)? && or.contains(p.j & !a, p.i & !b)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Oriented pairs of `Or` that are not a union of two smaller pairs of `Or`.
pub fn indecomposables(or: &Ordering) -> Result<Vec<IJPair>> {
    let mut out = Vec::new();
    for p in or.pairs() {
        let mut decomposable = false;
        for (a, b) in splits(p.i, p.j) {
            if or.contains(a, b)? && or.contains(p.i & !a, p.j & !b)? {
                decomposable = true;
                break;
            }
        }
        if !decomposable {
            out.push(p);
        }
    }
    Ok(out)
}

/// Result of propagating seed orientations through the operadic rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    /// For each size `k`, the standard pairs on `[2k]` (as in [`un_pairs`]
    /// restricted to full support) with their orientation, if forced.
    Consistent(Vec<Vec<(IJPair, Option<bool>)>>),
    /// A standard pair forced both ways.
    Conflict(IJPair),
}

/// Propagates orientations of standard pairs up to size `k_max`.
///
/// Orientation depends only on the standardization, so it suffices to
/// track standard pairs; a pair of size `k` is forced forward when it splits
/// into two forward pieces, backward when it splits into two backward
/// pieces. `seeds` orient standard pairs `(I, J)` as given; they are applied
/// before propagation at their size.
pub fn operadic_closure(k_max: usize, seeds: &[IJPair]) -> Result<Closure> {
    let mut table: Vec<HashMap<(u32, u32), Option<bool>>> = Vec::new();
    let mut listing: Vec<Vec<IJPair>> = Vec::new();
    for k in 1..=k_max {
        let full = set::full(2 * k);
        let pairs: Vec<IJPair> = un_pairs(2 * k)
            .iter()
            .copied()
            .filter(|p| p.i | p.j == full)
            .collect();
        let mut map: HashMap<(u32, u32), Option<bool>> =
            pairs.iter().map(|p| ((p.i, p.j), None)).collect();
        for s in seeds.iter().filter(|s| s.size() as usize == k) {
            let st = std_pair(s.i, s.j)?;
            let (key, fwd) = if map.contains_key(&(st.i, st.j)) {
                ((st.i, st.j), true)
            } else {
                ((st.j, st.i), false)
            };
            map.insert(key, Some(fwd));
        }
        // orientation of an arbitrary pair of smaller size, through its standardization
        let lookup = |table: &Vec<HashMap<(u32, u32), Option<bool>>>, i: u32, j: u32| -> Option<bool> {
            let st = std_pair(i, j).expect("disjoint");
            let m = &table[st.size() as usize - 1];
            match m.get(&(st.i, st.j)) {
                Some(v) => *v,
                None => m.get(&(st.j, st.i)).copied().flatten().map(|b| !b),
            }
        };
        for p in &pairs {
            let mut forced: Option<bool> = map[&(p.i, p.j)];
            for (a, b) in splits(p.i, p.j) {
                let x = lookup(&table, a, b);
                let y = lookup(&table, p.i & !a, p.j & !b);
                if let (Some(x), Some(y)) = (x, y) {
                    if x == y {
                        match forced {
                            Some(f) if f != x => return Ok(Closure::Conflict(*p)),
                            _ => forced = Some(x),
                        }
                    }
                }
            }
            map.insert((p.i, p.j), forced);
        }
        table.push(map);
        listing.push(pairs);
    }
    Ok(Closure::Consistent(
        listing
            .into_iter()
            .zip(&table)
            .map(|(pairs, map)| pairs.into_iter().map(|p| (p, map[&(p.i, p.j)])).collect())
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn un_sizes() {
        assert_eq!(un_pairs(2).len(), 1);
        assert_eq!(un_pairs(4).len(), 6 + 3);
        assert_eq!(un_pairs(6).len(), 70);
        assert_eq!(un_pairs(7).len(), 196);
    }

    #[test]
    fn split_counts() {
        // (|I|,|J|) = (2,2): four single-element splits
        assert_eq!(splits(0b0011, 0b1100).count(), 4);
        assert_eq!(splits(0b1, 0b10).count(), 0);
    }
}

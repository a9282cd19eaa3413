//! `(ℓ,n)`-partition forests: `ℓ`-tuples of set partitions of `[n]` whose
//! intersection hypergraph (parts as vertices, one hyperedge per element
//! joining the `ℓ` parts that contain it) is acyclic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use permadiag_core::{set, SetPartition};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] permadiag_core::Error),
    #[error("not a partition forest: {0}")]
    NotAForest(String),
    #[error("not an interval: {0}")]
    NotAnInterval(String),
    #[error("enumeration cap of {cap} forests exceeded")]
    CapExceeded { cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default bound on the number of forests an enumeration may produce.
pub const DEFAULT_CAP: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PartitionForest {
    partitions: Vec<SetPartition>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(k: usize) -> Self {
        UnionFind((0..k).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// False when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Acyclicity of the intersection hypergraph of `partitions`.
pub fn is_acyclic(n: usize, partitions: &[SetPartition]) -> bool {
    let total: usize = partitions.iter().map(SetPartition::len).sum();
    let mut uf = UnionFind::new(total);
    let mut offset = Vec::with_capacity(partitions.len());
    let mut index = Vec::with_capacity(partitions.len());
    let mut acc = 0;
    for p in partitions {
        offset.push(acc);
        index.push(p.part_index());
        acc += p.len();
    }
    for e in 0..n {
        let first = offset[0] + index[0][e];
        for c in 1..partitions.len() {
            if !uf.union(first, offset[c] + index[c][e]) {
                return false;
            }
        }
    }
    true
}

/// Whether `partitions` form an `(ℓ,n)`-partition forest.
pub fn is_partition_forest(ell: usize, n: usize, partitions: &[SetPartition]) -> Result<bool> {
    if partitions.len() != ell || ell == 0 {
        return Err(Error::NotAForest(format!(
            "expected {ell} partitions, got {}",
            partitions.len()
        )));
    }
    if let Some(p) = partitions.iter().find(|p| p.n() != n) {
        return Err(Error::NotAForest(format!("{p} is not a partition of [{n}]")));
    }
    Ok(is_acyclic(n, partitions))
}

impl PartitionForest {
    pub fn new(partitions: Vec<SetPartition>) -> Result<Self> {
        let ell = partitions.len();
        let n = partitions.first().map_or(0, SetPartition::n);
        if !is_partition_forest(ell, n, &partitions)? {
            let f = PartitionForest { partitions };
            return Err(Error::NotAForest(format!("{f} has a hypercycle")));
        }
        Ok(PartitionForest { partitions })
    }

    /// Skips the acyclicity check; for tuples known to refine a forest.
    pub fn new_unchecked(partitions: Vec<SetPartition>) -> Self {
        PartitionForest { partitions }
    }

    pub fn discrete(ell: usize, n: usize) -> Self {
        PartitionForest { partitions: vec![SetPartition::discrete(n); ell] }
    }

    pub fn ell(&self) -> usize {
        self.partitions.len()
    }

    pub fn n(&self) -> usize {
        self.partitions[0].n()
    }

    pub fn partitions(&self) -> &[SetPartition] {
        &self.partitions
    }

    pub fn total_parts(&self) -> usize {
        self.partitions.iter().map(SetPartition::len).sum()
    }

    /// `n − 1 − ℓn + Σ|F_i|`.
    pub fn dim(&self) -> usize {
        let n = self.n();
        (n + self.total_parts()) - 1 - self.ell() * n
    }

    pub fn is_tree(&self) -> bool {
        self.dim() == 0
    }

    /// Componentwise refinement order.
    pub fn leq(&self, other: &PartitionForest) -> bool {
        self.ell() == other.ell()
            && self.partitions.iter().zip(&other.partitions).all(|(a, b)| a.refines(b))
    }

    /// Connected components of the hypergraph, as element sets.
    pub fn components(&self) -> Vec<u32> {
        let n = self.n();
        let mut comp: Vec<u32> = (1..=n as u32).map(set::bit).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for p in &self.partitions {
                for &part in p.parts() {
                    let touched: Vec<usize> =
                        (0..comp.len()).filter(|&k| comp[k] & part != 0).collect();
                    if touched.len() > 1 {
                        let merged = touched.iter().fold(0, |m, &k| m | comp[k]);
                        for &k in touched.iter().rev() {
                            comp.remove(k);
                        }
                        comp.push(merged);
                        changed = true;
                    }
                }
            }
        }
        comp.sort_by_key(|&m| m.trailing_zeros());
        comp
    }
}

/// `forest_dim` as a free function.
pub fn forest_dim(f: &PartitionForest) -> usize {
    f.dim()
}

impl fmt::Display for PartitionForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partitions.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl FromStr for PartitionForest {
    type Err = Error;

    /// Parses `(12|3, 13|2)`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split([',', ';'])
            .map(|t| t.trim().parse::<SetPartition>())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        PartitionForest::new(parts)
    }
}

impl<'de> Deserialize<'de> for PartitionForest {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<SetPartition>::deserialize(d)?;
        PartitionForest::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All `(ℓ,n)`-partition forests, sorted by rendered form.
///
/// Partitions are chosen one copy at a time; a prefix with a hypercycle is
/// abandoned since every sub-tuple of a forest is a forest.
pub fn enumerate_forests(ell: usize, n: usize) -> Result<Vec<PartitionForest>> {
    enumerate_forests_capped(ell, n, DEFAULT_CAP, false)
}

/// All dimension-0 forests (partition trees), sorted by rendered form.
pub fn enumerate_trees(ell: usize, n: usize) -> Result<Vec<PartitionForest>> {
    enumerate_forests_capped(ell, n, DEFAULT_CAP, true)
}

pub fn enumerate_forests_capped(
    ell: usize,
    n: usize,
    cap: usize,
    trees_only: bool,
) -> Result<Vec<PartitionForest>> {
    let all = SetPartition::all(n);
    let mut out = Vec::new();
    let mut cur: Vec<SetPartition> = Vec::with_capacity(ell);
    // a tree needs Σ|F_i| = (ℓ−1)n + 1 parts; each further copy adds at least one
    let target = (ell - 1) * n + 1;
    fn rec(
        ell: usize,
        n: usize,
        all: &[SetPartition],
        cur: &mut Vec<SetPartition>,
        parts: usize,
        target: usize,
        trees_only: bool,
        cap: usize,
        out: &mut Vec<PartitionForest>,
    ) -> Result<()> {
        if cur.len() == ell {
            if !trees_only || parts == target {
                if out.len() == cap {
                    return Err(Error::CapExceeded { cap });
                }
                out.push(PartitionForest { partitions: cur.clone() });
            }
            return Ok(());
        }
        let remaining = ell - cur.len() - 1;
        for p in all {
            if trees_only && parts + p.len() + remaining > target {
                continue;
            }
            cur.push(p.clone());
            if is_acyclic(n, cur) {
                rec(ell, n, all, cur, parts + p.len(), target, trees_only, cap, out)?;
            }
            cur.pop();
        }
        Ok(())
    }
    rec(ell, n, &all, &mut cur, 0, target, trees_only, cap, &mut out)?;
    let mut keyed: Vec<(String, PartitionForest)> =
        out.into_iter().map(|f| (f.to_string(), f)).collect();
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, f)| f).collect())
}

/// An interval `lower ≤ upper` of the forest poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestInterval {
    pub lower: PartitionForest,
    pub upper: PartitionForest,
}

impl ForestInterval {
    pub fn new(lower: PartitionForest, upper: PartitionForest) -> Result<Self> {
        if !lower.leq(&upper) {
            return Err(Error::NotAnInterval(format!("{lower} is not below {upper}")));
        }
        Ok(ForestInterval { lower, upper })
    }
}

fn signed_factorial(k: usize) -> BigInt {
    // (−1)^{k−1}(k−1)!
    let mut v = BigInt::one();
    for m in 1..k {
        v *= m;
    }
    if k % 2 == 0 {
        -v
    } else {
        v
    }
}

/// Möbius function of the interval: a product over copies `i` and parts `p`
/// of `G_i` of the set-partition-lattice value `(−1)^{k−1}(k−1)!`, where `k`
/// counts the parts of `F_i` inside `p`.
pub fn interval_mobius(iv: &ForestInterval) -> BigInt {
    let mut v = BigInt::one();
    for (f, g) in iv.lower.partitions.iter().zip(&iv.upper.partitions) {
        for &q in g.parts() {
            let k = f.parts().iter().filter(|&&p| p & !q == 0).count();
            v *= signed_factorial(k);
        }
    }
    v
}

/// Forests covering `f`: merge two parts of one copy while staying acyclic.
pub fn forest_covers(f: &PartitionForest) -> Vec<PartitionForest> {
    let mut out = Vec::new();
    for c in 0..f.ell() {
        let parts = f.partitions[c].parts();
        for a in 0..parts.len() {
            for b in a + 1..parts.len() {
                let mut np: Vec<u32> = parts.to_vec();
                np[a] |= np[b];
                np.remove(b);
                let mut partitions = f.partitions.clone();
                partitions[c] = SetPartition::new_unchecked(f.n(), np);
                if is_acyclic(f.n(), &partitions) {
                    out.push(PartitionForest { partitions });
                }
            }
        }
    }
    out
}

//! Faces of a translated `(ℓ,n)`-braid arrangement as ordered partition forests.
//!
//! Copy `i` orders `s` before `t` exactly when `x_s − x_t < A(i,s,t)`, and puts
//! them in one block when equality holds.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use permadiag_core::{set, OrderedPartition, Perm, SetPartition};
use permadiag_forests::{enumerate_forests, is_partition_forest, PartitionForest};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result, TranslationMatrix};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedPartitionForest {
    parts: Vec<OrderedPartition>,
}

impl OrderedPartitionForest {
    pub fn new(parts: Vec<OrderedPartition>) -> Result<Self> {
        let underlying: Vec<SetPartition> = parts.iter().map(OrderedPartition::underlying).collect();
        let n = parts.first().map_or(0, OrderedPartition::n);
        if !is_partition_forest(parts.len(), n, &underlying)? {
            let shown: Vec<String> = parts.iter().map(ToString::to_string).collect();
            return Err(Error::InvalidInput(format!(
                "({}) does not underlie a partition forest",
                shown.join(", ")
            )));
        }
        Ok(OrderedPartitionForest { parts })
    }

    pub fn ell(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.parts.first().map_or(0, OrderedPartition::n)
    }

    pub fn parts(&self) -> &[OrderedPartition] {
        &self.parts
    }

    pub fn underlying(&self) -> PartitionForest {
        PartitionForest::new_unchecked(self.parts.iter().map(OrderedPartition::underlying).collect())
    }

    pub fn dim(&self) -> usize {
        self.underlying().dim()
    }
}

impl fmt::Display for OrderedPartitionForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", shown.join(", "))
    }
}

impl FromStr for OrderedPartitionForest {
    type Err = Error;

    /// Parses `(1|2|3, 3|2|1)`; use `;` between copies when blocks need commas.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let sep: &[char] = if inner.contains(';') { &[';'] } else { &[','] };
        let parts = inner
            .split(sep)
            .map(|t| t.trim().parse::<OrderedPartition>())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        OrderedPartitionForest::new(parts)
    }
}

impl Serialize for OrderedPartitionForest {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrderedPartitionForest {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<OrderedPartition>::deserialize(d)?;
        OrderedPartitionForest::new(parts).map_err(serde::de::Error::custom)
    }
}

/// `r + k·ε` for an infinitesimal `ε > 0`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Weight(BigRational, i64);

impl Add for &Weight {
    type Output = Weight;

    fn add(self, o: &Weight) -> Weight {
        Weight(&self.0 + &o.0, self.1 + o.1)
    }
}

fn check_dims(ell: usize, n: usize, a: &TranslationMatrix) -> Result<()> {
    if ell != a.ell() || n != a.n() {
        return Err(Error::InvalidInput(format!(
            "forest is ({ell},{n}) but the matrix is ({},{})",
            a.ell(),
            a.n()
        )));
    }
    Ok(())
}

/// Whether the ordered forest labels a nonempty face of the arrangement.
///
/// Equalities inside blocks and strict inequalities between consecutive
/// blocks form a system of difference constraints; it is feasible iff the
/// constraint digraph has no negative cycle.
pub fn is_face(of: &OrderedPartitionForest, a: &TranslationMatrix) -> Result<bool> {
    let n = of.n();
    check_dims(of.ell(), n, a)?;
    // x_v − x_u ≤ w is stored as the arc u → v of weight w
    let mut arcs: Vec<(usize, usize, Weight)> = Vec::new();
    let mut leq = |s: u32, t: u32, w: BigRational, strict: bool| {
        arcs.push((t as usize - 1, s as usize - 1, Weight(w, -(strict as i64))));
    };
    for (i, op) in of.parts.iter().enumerate() {
        let copy = i + 1;
        for &block in op.blocks() {
            let elems: Vec<u32> = set::elements(block).collect();
            for w in elems.windows(2) {
                leq(w[0], w[1], a.big_a(copy, w[0], w[1]), false);
                leq(w[1], w[0], a.big_a(copy, w[1], w[0]), false);
            }
        }
        for w in op.blocks().windows(2) {
            let (s, t) = (set::min(w[0]), set::min(w[1]));
            leq(s, t, a.big_a(copy, s, t), true);
        }
    }
    let mut dist = vec![Weight(BigRational::zero(), 0); n];
    for _ in 0..=n {
        let mut changed = false;
        for (u, v, w) in &arcs {
            let cand = &dist[*u] + w;
            if cand < dist[*v] {
                dist[*v] = cand;
                changed = true;
            }
        }
        if !changed {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Relative position of two elements in one copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Forced {
    Before,
    Same,
    After,
}

/// Order of `s` and `t` in copy `i` (1-based) on any face with underlying
/// forest `f`, when `s` and `t` lie in one component of `f`.
pub fn forced_order(
    f: &PartitionForest,
    a: &TranslationMatrix,
    i: usize,
    s: u32,
    t: u32,
) -> Result<Forced> {
    let n = f.n();
    check_dims(f.ell(), n, a)?;
    if i == 0 || i > f.ell() || s == 0 || t == 0 || s as usize > n || t as usize > n {
        return Err(Error::InvalidInput(format!("copy {i} or elements {s},{t} out of range")));
    }
    if s == t {
        return Err(Error::InvalidInput("forced_order needs s ≠ t".into()));
    }
    let sum = path_sum(f, a, s, t).ok_or_else(|| {
        Error::NotApplicable(format!("{s} and {t} lie in distinct components"))
    })?;
    let diff = a.big_a(i, s, t) - sum;
    Ok(if diff.is_positive() {
        Forced::Before
    } else if diff.is_zero() {
        Forced::Same
    } else {
        Forced::After
    })
}

/// `Σ_p A(i_p, r_{p−1}, r_p)` along the hyperpath from `s` to `t`, i.e. the
/// value `x_s − x_t` takes on the flat of `f`.
fn path_sum(f: &PartitionForest, a: &TranslationMatrix, s: u32, t: u32) -> Option<BigRational> {
    let n = f.n();
    let mut prev: Vec<Option<(u32, usize)>> = vec![None; n + 1];
    let mut seen = vec![false; n + 1];
    seen[s as usize] = true;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(r) = queue.pop_front() {
        if r == t {
            break;
        }
        for (j, p) in f.partitions().iter().enumerate() {
            for q in set::elements(p.part_of(r)) {
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    prev[q as usize] = Some((r, j + 1));
                    queue.push_back(q);
                }
            }
        }
    }
    if !seen[t as usize] {
        return None;
    }
    let mut sum = BigRational::zero();
    let mut cur = t;
    while let Some((p, copy)) = prev[cur as usize] {
        sum += a.big_a(copy, p, cur);
        cur = p;
    }
    Some(sum)
}

/// Quotient of the chains `(i,s,t)`, over `s,t` in distinct components, where
/// `(i,s,t)` precedes `(j,s,t)` when `A(i,s,t) > A(j,s,t)`. Triples are
/// identified when `s` and `t` stay in the same parts of `F_i`.
#[derive(Clone, Debug)]
pub struct InversionPoset {
    /// `(copy index from 0, part of s, part of t)`.
    classes: Vec<(usize, u32, u32)>,
    partner: Vec<usize>,
    /// Strict order, transitively closed.
    less: Vec<Vec<bool>>,
}

impl InversionPoset {
    pub fn new(f: &PartitionForest, a: &TranslationMatrix) -> Result<Self> {
        let n = f.n();
        let ell = f.ell();
        check_dims(ell, n, a)?;
        let comps = f.components();
        let comp_of = |e: u32| comps.iter().position(|&c| c & set::bit(e) != 0).unwrap();
        let mut classes: Vec<(usize, u32, u32)> = Vec::new();
        let mut index = std::collections::HashMap::new();
        let mut class_id = |key: (usize, u32, u32), classes: &mut Vec<_>| -> usize {
            *index.entry(key).or_insert_with(|| {
                classes.push(key);
                classes.len() - 1
            })
        };
        let mut edges = Vec::new();
        for s in 1..=n as u32 {
            for t in 1..=n as u32 {
                if comp_of(s) == comp_of(t) {
                    continue;
                }
                let mut chain: Vec<(BigRational, usize)> =
                    (0..ell).map(|i| (a.big_a(i + 1, s, t), i)).collect();
                chain.sort_by(|x, y| y.0.cmp(&x.0));
                if chain.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(Error::NotGeneric(format!("tie in A(·,{s},{t})")));
                }
                let ids: Vec<usize> = chain
                    .iter()
                    .map(|&(_, i)| {
                        let p = f.partitions()[i].part_of(s);
                        let q = f.partitions()[i].part_of(t);
                        class_id((i, p, q), &mut classes)
                    })
                    .collect();
                for w in ids.windows(2) {
                    edges.push((w[0], w[1]));
                }
            }
        }
        let k = classes.len();
        let mut less = vec![vec![false; k]; k];
        for (x, y) in edges {
            less[x][y] = true;
        }
        for m in 0..k {
            for x in 0..k {
                if less[x][m] {
                    for y in 0..k {
                        if less[m][y] {
                            less[x][y] = true;
                        }
                    }
                }
            }
        }
        if (0..k).any(|x| less[x][x]) {
            return Err(Error::NotGeneric("inversion poset quotient has a cycle".into()));
        }
        let partner = classes
            .iter()
            .map(|&(i, p, q)| index[&(i, q, p)])
            .collect();
        Ok(InversionPoset { classes, partner, less })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `(copy index from 0, part containing s, part containing t)`.
    pub fn classes(&self) -> &[(usize, u32, u32)] {
        &self.classes
    }

    pub fn partner(&self, c: usize) -> usize {
        self.partner[c]
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        self.less[x][y]
    }

    /// Every lower set containing exactly one class of each pair
    /// `(i,P,Q)`, `(i,Q,P)`, as membership vectors.
    pub fn antisymmetric_lower_sets(&self) -> Vec<Vec<bool>> {
        let pairs: Vec<usize> = (0..self.len()).filter(|&c| c < self.partner[c]).collect();
        let mut state: Vec<Option<bool>> = vec![None; self.len()];
        let mut out = Vec::new();
        self.extend(&pairs, 0, &mut state, &mut out);
        out
    }

    fn extend(
        &self,
        pairs: &[usize],
        k: usize,
        state: &mut Vec<Option<bool>>,
        out: &mut Vec<Vec<bool>>,
    ) {
        if k == pairs.len() {
            out.push(state.iter().map(|v| v.unwrap_or(false)).collect());
            return;
        }
        let c = pairs[k];
        let cb = self.partner[c];
        for (inside, outside) in [(c, cb), (cb, c)] {
            if self.consistent(state, inside, outside) {
                state[inside] = Some(true);
                state[outside] = Some(false);
                self.extend(pairs, k + 1, state, out);
                state[inside] = None;
                state[outside] = None;
            }
        }
    }

    /// Checks `y ∈ X ⇒ d ∈ X` for every `d < y` among decided classes once
    /// `inside` joins `X` and `outside` stays out.
    fn consistent(&self, state: &[Option<bool>], inside: usize, outside: usize) -> bool {
        !self.less[outside][inside]
            && (0..self.len()).all(|d| match state[d] {
                Some(false) => !self.less[d][inside],
                Some(true) => !self.less[outside][d],
                None => true,
            })
    }
}

/// All orderings of `f` that are faces for the translation `a`.
///
/// Every face yields an antisymmetric lower set of the inversion poset, but
/// not conversely: nothing in the poset ties together three or more
/// components, so a lower set can induce a cyclic order of parts or an
/// infeasible system. Candidates are assembled and kept when they are
/// transitive and pass `is_face`.
pub fn orderings_of_forest(
    f: &PartitionForest,
    a: &TranslationMatrix,
) -> Result<Vec<OrderedPartitionForest>> {
    let poset = InversionPoset::new(f, a)?;
    let comps = f.components();
    let comp_of = |m: u32| comps.iter().position(|&c| c & m != 0).unwrap();
    let mut out = Vec::new();
    'candidates: for x in poset.antisymmetric_lower_sets() {
        let mut ordered = Vec::with_capacity(f.ell());
        for (i, p) in f.partitions().iter().enumerate() {
            let parts = p.parts();
            let mut wins = vec![0usize; parts.len()];
            for (u, &pu) in parts.iter().enumerate() {
                for (v, &pv) in parts.iter().enumerate() {
                    if u == v {
                        continue;
                    }
                    let before = if comp_of(pu) == comp_of(pv) {
                        forced_order(f, a, i + 1, set::min(pu), set::min(pv))? == Forced::Before
                    } else {
                        let c = poset
                            .classes
                            .iter()
                            .position(|&key| key == (i, pu, pv))
                            .expect("class for every cross-component pair");
                        x[c]
                    };
                    if before {
                        wins[u] += 1;
                    }
                }
            }
            let mut order: Vec<usize> = (0..parts.len()).collect();
            order.sort_by(|&u, &v| wins[v].cmp(&wins[u]));
            if order.iter().enumerate().any(|(r, &u)| wins[u] != parts.len() - 1 - r) {
                continue 'candidates;
            }
            let blocks = order.iter().map(|&u| parts[u]).collect();
            ordered.push(OrderedPartition::new(f.n(), blocks)?);
        }
        let candidate = OrderedPartitionForest { parts: ordered };
        if is_face(&candidate, a)? {
            out.push(candidate);
        }
    }
    if out.is_empty() {
        return Err(Error::NotGeneric(format!("no face has underlying forest {f}")));
    }
    out.sort_by_key(|o| o.to_string());
    Ok(out)
}

/// All faces, by running `orderings_of_forest` over every forest.
pub fn all_faces(a: &TranslationMatrix) -> Result<Vec<OrderedPartitionForest>> {
    let mut out = Vec::new();
    for f in enumerate_forests(a.ell(), a.n())? {
        out.extend(orderings_of_forest(&f, a)?);
    }
    out.sort_by_key(|o| o.to_string());
    Ok(out)
}

/// All faces, by testing every ordering of every forest with `is_face`.
pub fn all_faces_brute_force(a: &TranslationMatrix) -> Result<Vec<OrderedPartitionForest>> {
    let n = a.n();
    let mut out = Vec::new();
    for f in enumerate_forests(a.ell(), n)? {
        let options: Vec<Vec<OrderedPartition>> = f
            .partitions()
            .iter()
            .map(|p| {
                Perm::all(p.len())
                    .iter()
                    .map(|w| {
                        let blocks = w.entries().map(|k| p.parts()[k as usize - 1]).collect();
                        OrderedPartition::new(n, blocks).expect("reordering of a partition")
                    })
                    .collect()
            })
            .collect();
        let mut idx = vec![0usize; options.len()];
        loop {
            let of = OrderedPartitionForest {
                parts: idx.iter().enumerate().map(|(i, &k)| options[i][k].clone()).collect(),
            };
            if is_face(&of, a)? {
                out.push(of);
            }
            let mut i = 0;
            while i < idx.len() && idx[i] + 1 == options[i].len() {
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
            idx[i] += 1;
        }
    }
    out.sort_by_key(|o| o.to_string());
    Ok(out)
}

/// Number of faces of each dimension, indexed by dimension.
pub fn face_counts_by_dim(faces: &[OrderedPartitionForest]) -> Vec<u64> {
    let mut counts = Vec::new();
    for f in faces {
        let d = f.dim();
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
    }
    counts
}

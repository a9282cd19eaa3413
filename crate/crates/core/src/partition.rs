use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::parse::{block_readings, validate_blocks};
use crate::set;
use crate::{Error, Perm, Result};

/// An ordered set partition of `[n]`: a sequence of disjoint nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedPartition {
    n: u8,
    blocks: Vec<u32>,
}

/// An unordered set partition of `[n]`, parts sorted by their minimum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    n: u8,
    parts: Vec<u32>,
}

fn check_masks(n: usize, masks: &[u32]) -> Result<()> {
    if n > 32 {
        return Err(Error::InvalidInput("n is capped at 32".into()));
    }
    let mut seen = 0u32;
    for &m in masks {
        if m == 0 {
            return Err(Error::InvalidInput("empty block".into()));
        }
        if seen & m != 0 {
            return Err(Error::InvalidInput("blocks overlap".into()));
        }
        seen |= m;
    }
    if seen != set::full(n) {
        return Err(Error::InvalidInput(format!("blocks do not cover [{n}]")));
    }
    Ok(())
}

fn render_masks(f: &mut fmt::Formatter<'_>, n: usize, masks: &[u32]) -> fmt::Result {
    let parts: Vec<String> = masks
        .iter()
        .map(|&m| if n <= 9 { set::render(m) } else { set::render_list(m) })
        .collect();
    write!(f, "{}", parts.join("|"))
}

fn parse_masks(s: &str) -> Result<(usize, Vec<u32>)> {
    let mut last = None;
    for blocks in block_readings(s)? {
        match validate_blocks(s, &blocks) {
            Ok(r) => return Ok(r),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::parse(s, "no reading")))
}

fn masks_to_lists(masks: &[u32]) -> Vec<Vec<u32>> {
    masks.iter().map(|&m| set::elements(m).collect()).collect()
}

impl OrderedPartition {
    pub fn new(n: usize, blocks: Vec<u32>) -> Result<Self> {
        check_masks(n, &blocks)?;
        Ok(OrderedPartition { n: n as u8, blocks })
    }

    pub fn from_lists(blocks: &[Vec<u32>]) -> Result<Self> {
        let (n, masks) = validate_blocks("<lists>", blocks)?;
        Ok(OrderedPartition { n: n as u8, blocks: masks })
    }

    pub(crate) fn new_unchecked(n: usize, blocks: Vec<u32>) -> Self {
        OrderedPartition { n: n as u8, blocks }
    }

    /// Singleton blocks in the order of `w`.
    pub fn from_perm(w: &Perm) -> Self {
        OrderedPartition {
            n: w.n() as u8,
            blocks: w.entries().map(set::bit).collect(),
        }
    }

    /// The single-block partition `[n]`.
    pub fn top(n: usize) -> Self {
        OrderedPartition { n: n as u8, blocks: if n == 0 { vec![] } else { vec![set::full(n)] } }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Dimension of the corresponding face of the permutahedron.
    pub fn dim(&self) -> usize {
        self.n() - self.len()
    }

    /// `block_index()[e - 1]` is the zero-based block holding `e`.
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n()];
        for (b, &m) in self.blocks.iter().enumerate() {
            for e in set::elements(m) {
                idx[e as usize - 1] = b;
            }
        }
        idx
    }

    pub fn block_of(&self, e: u32) -> usize {
        self.blocks
            .iter()
            .position(|&m| m & set::bit(e) != 0)
            .expect("element outside [n]")
    }

    pub fn to_perm(&self) -> Option<Perm> {
        if self.blocks.iter().all(|m| m.count_ones() == 1) {
            Some(Perm::new(self.blocks.iter().map(|&m| set::min(m)).collect()).unwrap())
        } else {
            None
        }
    }

    pub fn to_lists(&self) -> Vec<Vec<u32>> {
        masks_to_lists(&self.blocks)
    }

    pub fn underlying(&self) -> SetPartition {
        SetPartition::new_unchecked(self.n(), self.blocks.clone())
    }

    pub fn reversed(&self) -> Self {
        OrderedPartition {
            n: self.n,
            blocks: self.blocks.iter().rev().copied().collect(),
        }
    }

    /// Relabels every element by `i -> n + 1 - i`.
    pub fn complement(&self) -> Self {
        let n = self.n();
        OrderedPartition {
            n: self.n,
            blocks: self.blocks.iter().map(|&m| complement_mask(n, m)).collect(),
        }
    }

    /// Lower bound of the face in the weak order: blocks sorted increasingly.
    pub fn min_perm(&self) -> Perm {
        let v: Vec<u32> = self.blocks.iter().flat_map(|&m| set::elements(m)).collect();
        Perm::new(v).unwrap()
    }

    /// Upper bound of the face in the weak order: blocks sorted decreasingly.
    pub fn max_perm(&self) -> Perm {
        let v: Vec<u32> = self
            .blocks
            .iter()
            .flat_map(|&m| set::elements(m).collect::<Vec<_>>().into_iter().rev())
            .collect();
        Perm::new(v).unwrap()
    }

    /// All ordered partitions of `[n]`, in a fixed deterministic order.
    pub fn all(n: usize) -> Vec<OrderedPartition> {
        let mut out = Vec::with_capacity(fubini(n) as usize);
        let mut cur = Vec::new();
        fn rec(rest: u32, n: usize, cur: &mut Vec<u32>, out: &mut Vec<OrderedPartition>) {
            if rest == 0 {
                out.push(OrderedPartition::new_unchecked(n, cur.clone()));
                return;
            }
            for b in set::submasks(rest) {
                cur.push(b);
                rec(rest & !b, n, cur, out);
                cur.pop();
            }
        }
        rec(set::full(n), n, &mut cur, &mut out);
        out
    }

    /// Whether `self` is a face of `other`, i.e. `other` merges runs of
    /// consecutive blocks of `self`.
    pub fn refines_consecutively(&self, other: &OrderedPartition) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut k = 0;
        for &big in &other.blocks {
            let mut acc = 0u32;
            while acc != big {
                match self.blocks.get(k) {
                    Some(&b) if b & !big == 0 => {
                        acc |= b;
                        k += 1;
                    }
                    _ => return false,
                }
            }
        }
        k == self.blocks.len()
    }
}

pub(crate) fn complement_mask(n: usize, m: u32) -> u32 {
    set::elements(m).fold(0, |acc, e| acc | set::bit(n as u32 + 1 - e))
}

impl SetPartition {
    pub fn new(n: usize, mut parts: Vec<u32>) -> Result<Self> {
        check_masks(n, &parts)?;
        parts.sort_by_key(|&m| m.trailing_zeros());
        Ok(SetPartition { n: n as u8, parts })
    }

    pub fn new_unchecked(n: usize, mut parts: Vec<u32>) -> Self {
        parts.sort_by_key(|&m| m.trailing_zeros());
        SetPartition { n: n as u8, parts }
    }

    pub fn from_lists(parts: &[Vec<u32>]) -> Result<Self> {
        let (n, masks) = validate_blocks("<lists>", parts)?;
        Ok(Self::new_unchecked(n, masks))
    }

    pub fn discrete(n: usize) -> Self {
        SetPartition { n: n as u8, parts: (1..=n as u32).map(set::bit).collect() }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `part_index()[e - 1]` is the index of the part holding `e`.
    pub fn part_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n()];
        for (p, &m) in self.parts.iter().enumerate() {
            for e in set::elements(m) {
                idx[e as usize - 1] = p;
            }
        }
        idx
    }

    pub fn part_of(&self, e: u32) -> u32 {
        *self
            .parts
            .iter()
            .find(|&&m| m & set::bit(e) != 0)
            .expect("element outside [n]")
    }

    /// Every part of `self` lies inside a part of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        self.n == other.n
            && self
                .parts
                .iter()
                .all(|&p| other.parts.iter().any(|&q| p & !q == 0))
    }

    pub fn to_lists(&self) -> Vec<Vec<u32>> {
        masks_to_lists(&self.parts)
    }

    /// All set partitions of `[n]` via restricted growth strings.
    pub fn all(n: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut parts: Vec<u32> = Vec::new();
        fn rec(e: u32, n: u32, parts: &mut Vec<u32>, out: &mut Vec<SetPartition>) {
            if e > n {
                out.push(SetPartition { n: n as u8, parts: parts.clone() });
                return;
            }
            for k in 0..parts.len() {
                parts[k] |= set::bit(e);
                rec(e + 1, n, parts, out);
                parts[k] &= !set::bit(e);
            }
            parts.push(set::bit(e));
            rec(e + 1, n, parts, out);
            parts.pop();
        }
        rec(1, n as u32, &mut parts, &mut out);
        out
    }
}

/// Ordered Bell (Fubini) number: the number of ordered partitions of `[n]`.
pub fn fubini(n: usize) -> u64 {
    let mut a = vec![1u64; n + 1];
    for m in 1..=n {
        let mut binom = 1u64;
        let mut s = 0u64;
        for k in 1..=m {
            binom = binom * (m - k + 1) as u64 / k as u64;
            s += binom * a[m - k];
        }
        a[m] = s;
    }
    a[n]
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_masks(f, self.n(), &self.blocks)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_masks(f, self.n(), &self.parts)
    }
}

impl FromStr for OrderedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, blocks) = parse_masks(s)?;
        Ok(OrderedPartition { n: n as u8, blocks })
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, parts) = parse_masks(s)?;
        Ok(SetPartition::new_unchecked(n, parts))
    }
}

impl Serialize for OrderedPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_lists().serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrderedPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Vec<u32>>::deserialize(d)?;
        OrderedPartition::from_lists(&v).map_err(serde::de::Error::custom)
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_lists().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Vec<u32>>::deserialize(d)?;
        SetPartition::from_lists(&v).map_err(serde::de::Error::custom)
    }
}

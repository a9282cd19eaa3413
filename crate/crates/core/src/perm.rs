use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        if n > 32 {
            return Err(Error::InvalidInput("permutations are capped at n = 32".into()));
        }
        let mut seen = 0u64;
        for &e in &entries {
            if e == 0 || e as usize > n || seen & (1 << e) != 0 {
                return Err(Error::InvalidInput(format!(
                    "{entries:?} is not a permutation of [{n}]"
                )));
            }
            seen |= 1 << e;
        }
        Ok(Perm(entries.into_iter().map(|e| e as u8).collect()))
    }

    pub fn identity(n: usize) -> Self {
        Perm((1..=n as u8).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|&e| e as u32)
    }

    pub fn get(&self, pos: usize) -> u32 {
        self.0[pos] as u32
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.entries().collect()
    }

    /// `positions()[e - 1]` is the zero-based position of `e`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n()];
        for (p, &e) in self.0.iter().enumerate() {
            pos[e as usize - 1] = p;
        }
        pos
    }

    pub fn inverse(&self) -> Perm {
        Perm(self.positions().into_iter().map(|p| p as u8 + 1).collect())
    }

    /// Pairs `(i, j)` with `i < j` and `j` placed before `i`.
    pub fn inversions(&self) -> Vec<(u32, u32)> {
        let pos = self.positions();
        let n = self.n() as u32;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if pos[j as usize - 1] < pos[i as usize - 1] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Values relabelled by `i -> n + 1 - i`.
    pub fn complement(&self) -> Perm {
        let n = self.n() as u8;
        Perm(self.0.iter().map(|&e| n + 1 - e).collect())
    }

    pub fn reversed(&self) -> Perm {
        Perm(self.0.iter().rev().copied().collect())
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        let mut out = vec![Perm(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Perm(cur.clone()));
        }
        out
    }
}

fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Weak order: `Inv(u) ⊆ Inv(v)`.
pub fn weak_leq(u: &Perm, v: &Perm) -> Result<bool> {
    if u.n() != v.n() {
        return Err(Error::SizeMismatch(u.n(), v.n()));
    }
    let (pu, pv) = (u.positions(), v.positions());
    for i in 0..u.n() {
        for j in i + 1..u.n() {
            if pu[j] < pu[i] && pv[j] > pv[i] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &e in &self.0 {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// Accepts `3142`, `3|1|4|2` or `3,1,4,2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let entries: Vec<u32> = if s.contains(['|', ',', ' ']) {
            s.split(['|', ',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| Error::parse(s, format!("bad entry {t:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| Error::parse(s, "non-digit")))
                .collect::<Result<_>>()?
        };
        Perm::new(entries).map_err(|e| Error::parse(s, e.to_string()))
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Perm::new(v).map_err(serde::de::Error::custom)
    }
}

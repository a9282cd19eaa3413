//! Translation matrices `a ∈ Q^{ℓ×(n−1)}`, with `A(i,s,t) = Σ_{s≤j<t} a(i,j)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Largest `n` accepted by the exhaustive genericity check.
const GENERIC_CHECK_MAX_N: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationMatrix {
    n: usize,
    a: Vec<Vec<BigRational>>,
    // prefix[i][t] = Σ_{j<t} a(i,j), so A(i,s,t) = prefix[i][t] − prefix[i][s]
    prefix: Vec<Vec<BigRational>>,
}

impl TranslationMatrix {
    /// Rows are copies; each row holds `n − 1` entries.
    pub fn new(n: usize, a: Vec<Vec<BigRational>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        if a.is_empty() {
            return Err(Error::InvalidInput("matrix needs at least one row".into()));
        }
        if let Some(row) = a.iter().find(|r| r.len() != n - 1) {
            return Err(Error::InvalidInput(format!(
                "row has {} entries, expected {}",
                row.len(),
                n - 1
            )));
        }
        let prefix = a
            .iter()
            .map(|row| {
                let mut p = vec![BigRational::zero(); n + 1];
                for t in 2..=n {
                    p[t] = &p[t - 1] + &row[t - 2];
                }
                p
            })
            .collect();
        Ok(TranslationMatrix { n, a, prefix })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.first().map_or(1, |r| r.len() + 1);
        let a = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        Self::new(n, a)
    }

    /// Row 1 zero; row `i ≥ 2` is the potential `w_i(s) = 2^{(i−2)n + n − s}`,
    /// so `A(i,s,t) = w_i(s) − w_i(t)`. For `ℓ = 2` this is the scaled vector
    /// `(1, 1/2, 1/4, …)` with `a(2,j) = 2^{n−1−j}`.
    pub fn default_for(ell: usize, n: usize) -> Result<Self> {
        Self::from_potentials(ell, n, |i, s| {
            BigInt::one() << ((i - 2) * n + n - s as usize)
        })
    }

    /// A second generic choice: `w_i(s) = −2^{(i−2)n + s − 1}`; for `ℓ = 2`
    /// this gives `a(2,j) = 2^{j−1}`.
    pub fn alternative_for(ell: usize, n: usize) -> Result<Self> {
        Self::from_potentials(ell, n, |i, s| {
            -(BigInt::one() << ((i - 2) * n + s as usize - 1))
        })
    }

    fn from_potentials(ell: usize, n: usize, w: impl Fn(usize, u32) -> BigInt) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidInput("ell must be at least 1".into()));
        }
        let a = (1..=ell)
            .map(|i| {
                (1..n as u32)
                    .map(|j| {
                        if i == 1 {
                            BigRational::zero()
                        } else {
                            BigRational::from_integer(w(i, j) - w(i, j + 1))
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(n, a)
    }

    pub fn ell(&self) -> usize {
        self.a.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.a
    }

    /// `A(i,s,t)` for copy `i ∈ [ℓ]` (1-based) and elements `s,t ∈ [n]`.
    pub fn big_a(&self, i: usize, s: u32, t: u32) -> BigRational {
        let p = &self.prefix[i - 1];
        &p[t as usize] - &p[s as usize]
    }

    /// Exhaustive check that every vanishing cyclic sum
    /// `Σ_j A(i_j, r_{j−1}, r_j)` over distinct `r_j` uses a single color.
    pub fn is_generic(&self) -> Result<bool> {
        if self.n > GENERIC_CHECK_MAX_N {
            return Err(Error::CapExceeded(format!(
                "genericity check supports n ≤ {GENERIC_CHECK_MAX_N}"
            )));
        }
        let mut seq = Vec::with_capacity(self.n);
        for r1 in 1..=self.n as u32 {
            seq.clear();
            seq.push(r1);
            if !self.extend_cycles(&mut seq) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // Cycles are rooted at their minimum element.
    fn extend_cycles(&self, seq: &mut Vec<u32>) -> bool {
        if seq.len() >= 2 && !self.cycle_ok(seq) {
            return false;
        }
        for r in seq[0] + 1..=self.n as u32 {
            if seq.contains(&r) {
                continue;
            }
            seq.push(r);
            let ok = self.extend_cycles(seq);
            seq.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    fn cycle_ok(&self, seq: &[u32]) -> bool {
        let k = seq.len();
        let ell = self.ell();
        // step j goes from seq[j] to seq[j+1 mod k]
        let steps: Vec<Vec<BigRational>> = (0..k)
            .map(|j| {
                (1..=ell)
                    .map(|i| self.big_a(i, seq[j], seq[(j + 1) % k]))
                    .collect()
            })
            .collect();
        let mut colors = vec![0usize; k];
        loop {
            if colors.iter().any(|&c| c != colors[0]) {
                let sum: BigRational = (0..k).map(|j| &steps[j][colors[j]]).sum();
                if sum.is_zero() {
                    return false;
                }
            }
            let mut j = 0;
            while j < k && colors[j] + 1 == ell {
                colors[j] = 0;
                j += 1;
            }
            if j == k {
                return true;
            }
            colors[j] += 1;
        }
    }
}

/// Free-function form of [`TranslationMatrix::is_generic`].
pub fn is_generic(a: &TranslationMatrix) -> Result<bool> {
    a.is_generic()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Str(String),
    Int(i64),
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad rational {s:?}"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad rational {s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

impl<'de> Deserialize<'de> for TranslationMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Entry>>::deserialize(d)?;
        let n = rows.first().map_or(1, |r| r.len() + 1);
        let a = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|e| match e {
                        Entry::Str(s) => parse_rational(&s),
                        Entry::Int(v) => Ok(BigRational::from_integer(v.into())),
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        TranslationMatrix::new(n, a).map_err(serde::de::Error::custom)
    }
}

impl Serialize for TranslationMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .a
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl fmt::Display for TranslationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .a
            .iter()
            .map(|r| {
                let e: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                format!("[{}]", e.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_sums() {
        let m = TranslationMatrix::from_i64(&[vec![0, 0], vec![1, -2]]).unwrap();
        assert_eq!(m.big_a(2, 1, 3), BigRational::from_integer((-1).into()));
        assert_eq!(m.big_a(2, 3, 1), BigRational::from_integer(1.into()));
        assert_eq!(m.big_a(2, 2, 2), BigRational::zero());
    }

    #[test]
    fn default_rows() {
        let m = TranslationMatrix::default_for(2, 4).unwrap();
        let row: Vec<String> = m.entries()[1].iter().map(|v| v.to_string()).collect();
        assert_eq!(row, ["4", "2", "1"]);
        let m = TranslationMatrix::alternative_for(2, 4).unwrap();
        let row: Vec<String> = m.entries()[1].iter().map(|v| v.to_string()).collect();
        assert_eq!(row, ["1", "2", "4"]);
    }
}

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// `num / 2^exp` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dyadic {
    num: u64,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(mut num: u64, mut exp: u32) -> Self {
        while exp > 0 && num % 2 == 0 {
            num /= 2;
            exp -= 1;
        }
        Dyadic { num, exp }
    }

    /// `1 − 2^{−k}`.
    pub fn one_minus_pow2(k: u32) -> Self {
        Dyadic::new((1u64 << k) - 1, k)
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn exp(self) -> u32 {
        self.exp
    }

    /// `self · 2^e` as an integer; `e` must be at least `exp`.
    pub fn scaled(self, e: u32) -> u64 {
        assert!(e >= self.exp, "scale 2^{e} too coarse for {self}");
        self.num << (e - self.exp)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / (1u64 << self.exp) as f64
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        self.scaled(e).cmp(&other.scaled(e))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.exp)
        }
    }
}

//! Exact big-integer polynomials in one or two variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `Σ c_k x^k`, coefficients indexed by degree, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

/// `Σ c_{a,b} x^a y^b`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return UniPoly::default();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn render(&self, var: &str) -> String {
        let terms: Vec<(usize, BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect();
        render_terms(terms.into_iter().map(|(k, c)| (monomial(&[(var, k)]), c)))
    }
}

impl BiPoly {
    pub fn new() -> Self {
        BiPoly::default()
    }

    pub fn from_terms(terms: &[((usize, usize), i64)]) -> Self {
        let mut p = BiPoly::new();
        for &((a, b), c) in terms {
            p.add_term(a, b, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, a: usize, b: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn coeff(&self, a: usize, b: usize) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.terms.iter()
    }

    /// Substitutes `x ↦ sx·x` and `y ↦ y0`, leaving a polynomial in `x`.
    pub fn specialize(&self, sx: i64, y0: i64) -> UniPoly {
        let deg = self.terms.keys().map(|&(a, _)| a).max().map_or(0, |d| d + 1);
        let mut c = vec![BigInt::zero(); deg];
        for (&(a, b), v) in &self.terms {
            c[a] += v * BigInt::from(sx).pow(a as u32) * BigInt::from(y0).pow(b as u32);
        }
        UniPoly::new(c)
    }

    /// Coefficients of `x^a`, as a polynomial in `y`.
    pub fn x_slice(&self, a: usize) -> UniPoly {
        let deg = self.terms.keys().map(|&(_, b)| b).max().map_or(0, |d| d + 1);
        let mut c = vec![BigInt::zero(); deg];
        for (&(xa, b), v) in &self.terms {
            if xa == a {
                c[b] += v;
            }
        }
        UniPoly::new(c)
    }

    pub fn render(&self) -> String {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(&(a, b), c)| (monomial(&[("x", a), ("y", b)]), c.clone()));
        render_terms(terms)
    }
}

fn monomial(vars: &[(&str, usize)]) -> String {
    let mut s = String::new();
    for &(v, e) in vars {
        match e {
            0 => {}
            1 => s.push_str(v),
            _ => s.push_str(&format!("{v}^{e}")),
        }
    }
    s
}

fn render_terms(terms: impl Iterator<Item = (String, BigInt)>) -> String {
    let mut out = String::new();
    for (m, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
            }
            out.push_str(&m);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        let p = BiPoly::from_terms(&[((1, 1), 1), ((1, 0), -2), ((0, 0), 2)]);
        assert_eq!(p.to_string(), "xy - 2x + 2");
        assert_eq!(UniPoly::from_i64(&[2, -3, 1]).render("y"), "y^2 - 3y + 2");
        assert_eq!(UniPoly::default().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let a = UniPoly::from_i64(&[-1, 1]);
        let b = UniPoly::from_i64(&[-2, 1]);
        assert_eq!(a.mul(&b), UniPoly::from_i64(&[2, -3, 1]));
        assert_eq!(a.add(&b), UniPoly::from_i64(&[-3, 2]));
        assert_eq!(a.mul(&b).eval(&BigInt::from(3)), BigInt::from(2));
        let mut p = BiPoly::new();
        p.add_term(1, 0, BigInt::from(2));
        p.add_term(1, 0, BigInt::from(-2));
        assert_eq!(p, BiPoly::new());
    }
}

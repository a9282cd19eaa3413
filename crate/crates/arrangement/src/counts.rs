//! Closed-form and generating-function counts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use permadiag_rainbow::fuss_catalan;

use crate::poly::UniPoly;
use crate::{Error, Result};

/// Stirling numbers of the second kind.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for j in 1..=m {
            let stay = if j < m { &row[j] * j } else { BigInt::zero() };
            next[j] = stay + &row[j - 1];
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn fuss(ell: usize, m: usize) -> BigRational {
    rat(BigInt::from(fuss_catalan(ell, m)))
}

/// Truncated power series product, both of length `len`.
fn series_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len();
    let mut c = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            c[i + j] += x * y;
        }
    }
    c
}

/// `exp(s)` for `s` with zero constant term, via `E' = s'E`.
fn series_exp(s: &[BigRational]) -> Vec<BigRational> {
    let len = s.len();
    let mut e = vec![BigRational::zero(); len];
    if len == 0 {
        return e;
    }
    e[0] = BigRational::one();
    for m in 1..len {
        let mut acc = BigRational::zero();
        for k in 1..=m {
            acc += rat(k) * &s[k] * &e[m - k];
        }
        e[m] = acc / rat(m);
    }
    e
}

/// `S(z) = Σ_{m≥1} F_{ℓ,m} z^m / m`, truncated after `z^n`.
fn fuss_log_series(ell: usize, n: usize) -> Vec<BigRational> {
    (0..=n)
        .map(|m| if m == 0 { BigRational::zero() } else { fuss(ell, m) / rat(m) })
        .collect()
}

fn check(ell: usize, n: usize) -> Result<()> {
    if ell == 0 || n == 0 {
        return Err(Error::InvalidInput("ell and n must be at least 1".into()));
    }
    Ok(())
}

/// `χ(y) = ((−1)^n n! / y) [z^n] exp(−y S(z))`.
pub fn char_poly(ell: usize, n: usize) -> Result<UniPoly> {
    check(ell, n)?;
    let s = fuss_log_series(ell, n);
    // [z^n] exp(−yS) = Σ_k (−y)^k [z^n] S^k / k!
    let mut power = vec![BigRational::zero(); n + 1];
    power[0] = BigRational::one();
    let scale = rat(factorial(n));
    let mut coeffs = vec![BigInt::zero(); n];
    for k in 1..=n {
        power = series_mul(&power, &s);
        let sign = if (n + k) % 2 == 0 { 1 } else { -1 };
        let c = rat(sign) * &scale * &power[n] / rat(factorial(k));
        coeffs[k - 1] = into_integer(c)?;
    }
    Ok(UniPoly::new(coeffs))
}

/// Regions: `n! [z^n] exp(S(z))`.
pub fn region_count(ell: usize, n: usize) -> Result<BigInt> {
    check(ell, n)?;
    let e = series_exp(&fuss_log_series(ell, n));
    into_integer(rat(factorial(n)) * &e[n])
}

/// Bounded regions: `(n−1)! [z^{n−1}] exp((ℓ−1) Σ_{m≥1} F_{ℓ,m} z^m)`.
pub fn bounded_region_count(ell: usize, n: usize) -> Result<BigInt> {
    check(ell, n)?;
    let s: Vec<BigRational> = (0..n)
        .map(|m| if m == 0 { BigRational::zero() } else { rat(ell - 1) * fuss(ell, m) })
        .collect();
    let e = series_exp(&s);
    into_integer(rat(factorial(n - 1)) * &e[n - 1])
}

/// `ℓ((ℓ−1)n + 1)^{n−2}`.
pub fn vertex_count(ell: usize, n: usize) -> Result<BigInt> {
    check(ell, n)?;
    let base = BigInt::from((ell - 1) * n + 1);
    if n == 1 {
        return Ok(BigInt::one());
    }
    Ok(BigInt::from(ell) * base.pow(n as u32 - 2))
}

/// Vertices whose smallest flat in copy `i` has dimension `n − k_i − 1`:
/// `n^{ℓ−1} (n−1 choose k) Π_i (n−k_i)^{k_i−1}`.
pub fn refined_vertex_count(ell: usize, n: usize, k: &[usize]) -> Result<BigInt> {
    check(ell, n)?;
    if k.len() != ell {
        return Err(Error::InvalidInput(format!("expected {ell} entries in k, got {}", k.len())));
    }
    if k.iter().sum::<usize>() != n - 1 || k.iter().any(|&ki| ki > n - 1) {
        return Err(Error::InvalidInput(format!(
            "k must have entries in [0, {}] summing to {}",
            n - 1,
            n - 1
        )));
    }
    let mut v = rat(BigInt::from(n).pow(ell as u32 - 1)) * rat(factorial(n - 1));
    for &ki in k {
        v /= rat(factorial(ki));
        let base = rat(n - ki);
        v *= if ki == 0 { base.recip() } else { rat(BigInt::from(n - ki).pow(ki as u32 - 1)) };
    }
    into_integer(v)
}

fn into_integer(v: BigRational) -> Result<BigInt> {
    if !v.is_integer() {
        return Err(Error::InvalidInput(format!("non-integral count {v}")));
    }
    let (num, den) = (v.numer().clone(), v.denom().clone());
    debug_assert!(den.is_positive() && num.is_multiple_of(&den));
    Ok(num / den)
}

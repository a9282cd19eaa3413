//! Möbius, f- and b-polynomials from the partition-forest flat poset.

use num_bigint::BigInt;
use num_traits::One;
use permadiag_core::{set, SetPartition};
use permadiag_forests::{
    enumerate_forests_capped, interval_mobius, ForestInterval, PartitionForest, DEFAULT_CAP,
};

use crate::counts::stirling2;
use crate::poly::{BiPoly, UniPoly};
use crate::{Error, Result};

/// Bound on the number of intervals visited by the explicit-interval route.
pub const DEFAULT_INTERVAL_CAP: usize = 2_000_000;

/// `M_n(x) = μ_{B_n}(x, 0) = Σ_k (−1)^{k−1}(k−1)! S(n,k) x^{k−1}`.
pub fn weird_poly(n: usize) -> UniPoly {
    let mut c = Vec::with_capacity(n);
    let mut fact = BigInt::one();
    for k in 1..=n {
        if k > 1 {
            fact *= k - 1;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        c.push(BigInt::from(sign) * &fact * stirling2(n, k));
    }
    UniPoly::new(c)
}

/// Möbius polynomial `Σ_{F≤G} μ(F,G) x^{dim F} y^{dim G}`, summing over each
/// flat `G` the refinements below it in closed form.
pub fn mobius_polynomial(ell: usize, n: usize) -> Result<BiPoly> {
    check(ell, n)?;
    let forests = enumerate_forests_capped(ell, n, DEFAULT_CAP, false)?;
    let weird: Vec<UniPoly> = (0..=n).map(weird_poly).collect();
    let mut out = BiPoly::new();
    for g in &forests {
        let d = g.dim();
        let mut prod = UniPoly::from_i64(&[1]);
        for p in g.partitions() {
            for &part in p.parts() {
                prod = prod.mul(&weird[part.count_ones() as usize]);
            }
        }
        for (k, c) in prod.coeffs().iter().enumerate() {
            out.add_term(d + k, d, c.clone());
        }
    }
    Ok(out)
}

/// Same polynomial, visiting every interval `[F, G]` and asking the forest
/// poset for its Möbius value.
pub fn mobius_polynomial_by_intervals(ell: usize, n: usize, cap: usize) -> Result<BiPoly> {
    check(ell, n)?;
    let forests = enumerate_forests_capped(ell, n, DEFAULT_CAP, false)?;
    let mut out = BiPoly::new();
    let mut visited = 0usize;
    for g in &forests {
        let choices: Vec<Vec<SetPartition>> =
            g.partitions().iter().map(|p| refinements(n, p)).collect();
        let mut idx = vec![0usize; ell];
        loop {
            visited += 1;
            if visited > cap {
                return Err(Error::CapExceeded(format!("more than {cap} intervals")));
            }
            let f = PartitionForest::new_unchecked(
                (0..ell).map(|i| choices[i][idx[i]].clone()).collect(),
            );
            let dim_f = f.dim();
            let mu = interval_mobius(&ForestInterval::new(f, g.clone())?);
            out.add_term(dim_f, g.dim(), mu);
            let mut i = 0;
            while i < ell && idx[i] + 1 == choices[i].len() {
                idx[i] = 0;
                i += 1;
            }
            if i == ell {
                break;
            }
            idx[i] += 1;
        }
    }
    Ok(out)
}

/// `f(x) = μ(−x, −1)`: coefficient of `x^k` counts `k`-dimensional faces.
pub fn f_polynomial(ell: usize, n: usize) -> Result<UniPoly> {
    Ok(mobius_polynomial(ell, n)?.specialize(-1, -1))
}

/// `b(x) = μ(−x, 1)`: coefficient of `x^k` counts bounded `k`-dimensional faces.
pub fn b_polynomial(ell: usize, n: usize) -> Result<UniPoly> {
    Ok(mobius_polynomial(ell, n)?.specialize(-1, 1))
}

fn check(ell: usize, n: usize) -> Result<()> {
    if ell == 0 || n == 0 {
        return Err(Error::InvalidInput("ell and n must be at least 1".into()));
    }
    Ok(())
}

/// Every set partition refining `p`: each part is split independently.
fn refinements(n: usize, p: &SetPartition) -> Vec<SetPartition> {
    let mut acc: Vec<Vec<u32>> = vec![Vec::new()];
    for &part in p.parts() {
        let splits = partitions_of(part);
        let mut next = Vec::with_capacity(acc.len() * splits.len());
        for a in &acc {
            for s in &splits {
                let mut v = a.clone();
                v.extend_from_slice(s);
                next.push(v);
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|parts| SetPartition::new_unchecked(n, parts))
        .collect()
}

fn partitions_of(mask: u32) -> Vec<Vec<u32>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let first = set::bit(set::min(mask));
    let rest = mask & !first;
    let mut out = Vec::new();
    for sub in std::iter::once(0).chain(set::submasks(rest)) {
        let block = first | sub;
        for mut tail in partitions_of(mask & !block) {
            tail.push(block);
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_partitions_of_mask() {
        assert_eq!(partitions_of(0b111).len(), 5);
        assert_eq!(partitions_of(0b1111).len(), 15);
    }

    #[test]
    fn weird_small() {
        assert_eq!(weird_poly(1), UniPoly::from_i64(&[1]));
        assert_eq!(weird_poly(2), UniPoly::from_i64(&[1, -1]));
        assert_eq!(weird_poly(3), UniPoly::from_i64(&[1, -3, 2]));
    }
}

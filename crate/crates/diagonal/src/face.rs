//! Face pairs of the diagonal and the full cellular image.

use std::fmt;
use std::str::FromStr;

use permadiag_core::{dominates, OrderedPartition};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ordering::Ordering;
use crate::{Error, Result};

pub const DEFAULT_IMAGE_CAP: usize = 6;

/// A pair `(σ, τ)` of ordered partitions of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiagonalFace {
    pub sigma: OrderedPartition,
    pub tau: OrderedPartition,
}

impl DiagonalFace {
    pub fn new(sigma: OrderedPartition, tau: OrderedPartition) -> Result<Self> {
        if sigma.n() != tau.n() {
            return Err(Error::InvalidInput(format!(
                "σ is on [{}] but τ is on [{}]",
                sigma.n(),
                tau.n()
            )));
        }
        Ok(DiagonalFace { sigma, tau })
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    /// `(dim σ, dim τ)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.sigma.dim(), self.tau.dim())
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim() + self.tau.dim()
    }
}

impl fmt::Display for DiagonalFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.sigma, self.tau)
    }
}

impl FromStr for DiagonalFace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t
            .split_once(',')
            .or_else(|| t.split_once(';'))
            .ok_or_else(|| Error::InvalidInput(format!("expected (σ, τ), got {s:?}")))?;
        DiagonalFace::new(a.trim().parse()?, b.trim().parse()?)
    }
}

/// `(σ, τ)` is a face unless some `(I, J) ∈ Or` has `J` dominating `I` in
/// `σ` and `I` dominating `J` in `τ`.
pub fn is_face_pair(f: &DiagonalFace, or: &Ordering) -> Result<bool> {
    if f.sigma.n() != f.tau.n() || f.n() != or.n() {
        return Err(Error::InvalidInput(format!(
            "sizes differ: σ on [{}], τ on [{}], ordering of Un({})",
            f.sigma.n(),
            f.tau.n(),
            or.n()
        )));
    }
    Ok(or
        .pairs()
        .iter()
        .all(|p| !(dominates(p.j, p.i, &f.sigma) && dominates(p.i, p.j, &f.tau))))
}

/// Per-partition bitsets over the oriented pairs of `Or`.
struct Tables {
    words: usize,
    /// bit p: `J_p` dominates `I_p`
    left: Vec<Vec<u64>>,
    /// bit p: `I_p` dominates `J_p`
    right: Vec<Vec<u64>>,
}

fn tables(parts: &[OrderedPartition], or: &Ordering) -> Tables {
    let pairs = or.pairs();
    let words = pairs.len().div_ceil(64).max(1);
    let build = |flip: bool| -> Vec<Vec<u64>> {
        parts
            .par_iter()
            .map(|s| {
                let mut w = vec![0u64; words];
                for (k, p) in pairs.iter().enumerate() {
                    let hit = if flip {
                        dominates(p.j, p.i, s)
                    } else {
                        dominates(p.i, p.j, s)
                    };
                    if hit {
                        w[k / 64] |= 1 << (k % 64);
                    }
                }
                w
            })
            .collect()
    };
    Tables {
        words,
        left: build(true),
        right: build(false),
    }
}

fn disjoint(a: &[u64], b: &[u64], words: usize) -> bool {
    (0..words).all(|k| a[k] & b[k] == 0)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded(format!("n = {n} exceeds the cap {cap}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    Ok(())
}

/// Every face pair of the diagonal for `Or`, sorted by `(dim, σ, τ)` rendering.
pub fn cellular_image(n: usize, or: &Ordering, cap: usize) -> Result<Vec<DiagonalFace>> {
    check_cap(n, cap)?;
    if or.n() != n {
        return Err(Error::InvalidInput(format!("ordering is on Un({}), not Un({n})", or.n())));
    }
    let parts = OrderedPartition::all(n);
    let t = tables(&parts, or);
    let mut out: Vec<DiagonalFace> = (0..parts.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let t = &t;
            let parts = &parts;
            (0..parts.len()).filter_map(move |b| {
                disjoint(&t.left[a], &t.right[b], t.words).then(|| DiagonalFace {
                    sigma: parts[a].clone(),
                    tau: parts[b].clone(),
                })
            })
        })
        .collect();
    out.sort_by_cached_key(|f| (f.dim(), f.sigma.dim(), f.to_string()));
    Ok(out)
}

/// Face counts indexed by `(dim σ, dim τ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedCounts {
    pub n: usize,
    /// `counts[p][q]` counts faces with `dim σ = p`, `dim τ = q`.
    pub counts: Vec<Vec<u64>>,
}

impl BigradedCounts {
    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.counts.get(p).and_then(|r| r.get(q)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Counts by total dimension `p + q`.
    pub fn by_dim(&self) -> Vec<u64> {
        let mut v = vec![0; self.n];
        for (p, row) in self.counts.iter().enumerate() {
            for (q, &c) in row.iter().enumerate() {
                if c > 0 {
                    v[p + q] += c;
                }
            }
        }
        v
    }
}

/// Bigraded face counts without materializing the image.
pub fn bigraded_counts(n: usize, or: &Ordering, cap: usize) -> Result<BigradedCounts> {
    check_cap(n, cap)?;
    if or.n() != n {
        return Err(Error::InvalidInput(format!("ordering is on Un({}), not Un({n})", or.n())));
    }
    let parts = OrderedPartition::all(n);
    let t = tables(&parts, or);
    let dims: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
    let counts = (0..parts.len())
        .into_par_iter()
        .fold(
            || vec![vec![0u64; n]; n],
            |mut acc, a| {
                for b in 0..parts.len() {
                    if disjoint(&t.left[a], &t.right[b], t.words) {
                        acc[dims[a]][dims[b]] += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![vec![0u64; n]; n],
            |mut x, y| {
                for (rx, ry) in x.iter_mut().zip(y) {
                    for (a, b) in rx.iter_mut().zip(ry) {
                        *a += b;
                    }
                }
                x
            },
        );
    Ok(BigradedCounts { n, counts })
}

/// Reverses the block order of both partitions.
pub fn iso_s(f: &DiagonalFace) -> DiagonalFace {
    DiagonalFace {
        sigma: f.sigma.reversed(),
        tau: f.tau.reversed(),
    }
}

/// Relabels `i ↦ n + 1 − i` in both partitions.
pub fn iso_r(f: &DiagonalFace) -> DiagonalFace {
    DiagonalFace {
        sigma: f.sigma.complement(),
        tau: f.tau.complement(),
    }
}

/// Swaps `σ` and `τ`.
pub fn iso_t(f: &DiagonalFace) -> DiagonalFace {
    DiagonalFace {
        sigma: f.tau.clone(),
        tau: f.sigma.clone(),
    }
}

/// `rs × rs`: sends the LA diagonal onto the SU diagonal.
pub fn iso_rs_rs(f: &DiagonalFace) -> DiagonalFace {
    iso_r(&iso_s(f))
}

/// `t ∘ (r × r)`: the other isomorphism from LA onto SU.
pub fn iso_t_rr(f: &DiagonalFace) -> DiagonalFace {
    iso_t(&iso_r(f))
}

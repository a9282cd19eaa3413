//! Strong complementary pairs.

use permadiag_core::{set, OrderedPartition, Perm};
use permadiag_diagonal::DiagonalFace;

use crate::{Error, Result};

/// `σ` merges the decreasing runs of `w`, `τ` its increasing runs.
pub fn scp_from_perm(w: &Perm) -> DiagonalFace {
    let n = w.n();
    let v = w.to_vec();
    let runs = |desc: bool| -> Vec<u32> {
        let mut blocks = Vec::new();
        let mut cur = 0u32;
        for (k, &x) in v.iter().enumerate() {
            if k > 0 && ((v[k - 1] > x) != desc) {
                blocks.push(cur);
                cur = 0;
            }
            cur |= set::bit(x);
        }
        if cur != 0 {
            blocks.push(cur);
        }
        blocks
    };
    DiagonalFace {
        sigma: OrderedPartition::new(n, runs(true)).expect("runs partition [n]"),
        tau: OrderedPartition::new(n, runs(false)).expect("runs partition [n]"),
    }
}

/// The permutation read off an SCP: blocks of `σ` in decreasing order.
pub fn perm_from_scp(p: &DiagonalFace) -> Result<Perm> {
    let w = p.sigma.max_perm();
    if scp_from_perm(&w) != *p {
        return Err(Error::NotScp(p.to_string()));
    }
    Ok(w)
}

pub fn is_scp(p: &DiagonalFace) -> bool {
    perm_from_scp(p).is_ok()
}

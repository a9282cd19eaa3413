use std::collections::HashMap;

use num_bigint::BigInt;
use permadiag_core::SetPartition;
use permadiag_forests::{
    enumerate_forests, enumerate_trees, forest_covers, interval_mobius, is_acyclic,
    ForestInterval, PartitionForest,
};
use proptest::prelude::*;

#[test]
fn tree_counts_match_closed_form() {
    for ell in 1..=3usize {
        for n in 1..=5usize {
            if ell == 3 && n == 5 {
                continue; // covered below with the direct product search
            }
            let expected = if n == 1 {
                1
            } else {
                // ℓ((ℓ−1)n+1)^{n−2}, computed in floating point as an oracle
                (ell as f64 * (((ell - 1) * n + 1) as f64).powi(n as i32 - 2)).round() as usize
            };
            assert_eq!(enumerate_trees(ell, n).unwrap().len(), expected, "ell={ell} n={n}");
        }
    }
}

#[test]
fn tree_count_three_copies_five_elements() {
    assert_eq!(enumerate_trees(3, 5).unwrap().len(), 3 * 11usize.pow(3));
}

#[test]
fn dimension_strata_small() {
    let all = enumerate_forests(2, 3).unwrap();
    let mut by_dim = [0; 3];
    for f in &all {
        by_dim[f.dim()] += 1;
    }
    assert_eq!(by_dim, [8, 6, 1]);
}

#[test]
fn enumeration_matches_filtered_product() {
    for n in 1..=4 {
        let parts = SetPartition::all(n);
        let mut brute = 0;
        for a in &parts {
            for b in &parts {
                if is_acyclic(n, &[a.clone(), b.clone()]) {
                    brute += 1;
                }
            }
        }
        assert_eq!(enumerate_forests(2, n).unwrap().len(), brute);
    }
}

#[test]
fn covers_drop_dimension_and_generate_order() {
    let all = enumerate_forests(2, 4).unwrap();
    for f in &all {
        for g in forest_covers(f) {
            assert_eq!(g.dim() + 1, f.dim());
            assert!(f.leq(&g));
        }
    }
}

/// Recursive Möbius function of the enumerated poset, compared with the
/// product formula on every interval.
#[test]
fn interval_mobius_matches_recursion() {
    for n in 1..=4 {
        let all = enumerate_forests(2, n).unwrap();
        let idx: HashMap<&PartitionForest, usize> = all.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut order: Vec<usize> = (0..all.len()).collect();
        // larger dimension first: lower elements of the refinement order
        order.sort_by_key(|&i| std::cmp::Reverse(all[i].dim()));
        for &a in &order {
            let mut mu: HashMap<usize, BigInt> = HashMap::new();
            for &g in &order {
                if !all[a].leq(&all[g]) {
                    continue;
                }
                let v = if g == a {
                    BigInt::from(1)
                } else {
                    let mut s = BigInt::from(0);
                    for (&h, m) in &mu {
                        if all[h].leq(&all[g]) && h != g {
                            s += m;
                        }
                    }
                    -s
                };
                let iv = ForestInterval::new(all[a].clone(), all[g].clone()).unwrap();
                assert_eq!(interval_mobius(&iv), v, "[{}, {}]", all[a], all[g]);
                mu.insert(idx[&all[g]], v);
            }
        }
    }
}

fn random_forest(ell: usize, n: usize) -> impl Strategy<Value = PartitionForest> {
    let all = enumerate_forests(ell, n).unwrap();
    (0..all.len()).prop_map(move |k| all[k].clone())
}

proptest! {
    #[test]
    fn lower_set_property(f in random_forest(2, 5), seed in any::<u64>()) {
        // refine each copy pseudo-randomly: split parts by a bit pattern
        let mut parts = Vec::new();
        for (c, p) in f.partitions().iter().enumerate() {
            let mut np = Vec::new();
            for &q in p.parts() {
                let pattern = (seed >> (c * 8)) as u32 & q;
                if pattern != 0 && pattern != q {
                    np.push(pattern);
                    np.push(q & !pattern);
                } else {
                    np.push(q);
                }
            }
            parts.push(SetPartition::new(f.n(), np).unwrap());
        }
        prop_assert!(is_acyclic(f.n(), &parts));
        let g = PartitionForest::new(parts).unwrap();
        prop_assert!(g.leq(&f));
    }

    #[test]
    fn json_round_trip(f in random_forest(3, 3)) {
        let s = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<PartitionForest>(&s).unwrap(), f.clone());
        prop_assert_eq!(f.to_string().parse::<PartitionForest>().unwrap(), f);
    }
}

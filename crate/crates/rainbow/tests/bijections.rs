use std::collections::{BTreeSet, HashSet};

use num_bigint::{BigInt, BigUint};
use permadiag_forests::{enumerate_forests, forest_covers, interval_mobius, ForestInterval, PartitionForest};
use permadiag_rainbow::*;

fn fmt_forest(r: &RainbowForest) -> String {
    serde_json::to_string(r).unwrap()
}

#[test]
fn partition_forest_round_trip_and_transport() {
    for ell in 1..=3 {
        for n in 1..=4 {
            if ell == 3 && n == 4 {
                continue;
            }
            for f in enumerate_forests(ell, n).unwrap() {
                let r = forest_to_rainbow(&f).unwrap();
                assert_eq!(rainbow_to_forest(&r).unwrap(), f);
                assert_eq!(f.dim(), r.tree_count() - 1);
                let iv = ForestInterval::new(PartitionForest::discrete(ell, n), f.clone()).unwrap();
                let sign = if (n - r.tree_count()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(interval_mobius(&iv), BigInt::from(sign) * BigInt::from(r.omega()), "{f}");
            }
        }
    }
}

#[test]
fn labeled_tree_count_matches_vertex_count() {
    let trees: Vec<_> = enumerate_forests(2, 4)
        .unwrap()
        .into_iter()
        .filter(PartitionForest::is_tree)
        .map(|f| forest_to_rainbow(&f).unwrap())
        .collect();
    assert_eq!(trees.len(), 50);
}

#[test]
fn three_way_vertex_counts() {
    for ell in 1..=3u64 {
        for n in 1..=5u64 {
            let formula = if n == 1 { 1 } else { ell * ((ell - 1) * n + 1).pow(n as u32 - 2) };
            assert_eq!(labeled_rainbow_tree_count(ell as usize, n as usize), formula, "direct {ell} {n}");
            assert_eq!(prufer_image_count(ell as usize, n as usize), formula, "prufer {ell} {n}");
        }
    }
}

#[test]
fn prufer_round_trip_and_refinement() {
    for f in enumerate_forests(2, 4).unwrap().into_iter().filter(PartitionForest::is_tree) {
        let r = forest_to_rainbow(&f).unwrap();
        let w = prufer_encode(&r).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.last().unwrap().0, 1);
        assert_eq!(prufer_decode(2, 4, &w).unwrap(), r);
    }
    // trees with one node colored 1 and two colored 2
    let refined = enumerate_forests(2, 4)
        .unwrap()
        .into_iter()
        .filter(PartitionForest::is_tree)
        .map(|f| forest_to_rainbow(&f).unwrap())
        .filter(|r| (0..4).filter(|&k| r.color(k) == 1).count() == 1)
        .count();
    assert_eq!(refined, 24);
}

#[test]
fn covers_commute_with_bijection() {
    for n in 1..=4 {
        for f in enumerate_forests(2, n).unwrap() {
            let r = forest_to_rainbow(&f).unwrap();
            let via_rainbow: BTreeSet<PartitionForest> = rainbow_covers(&r)
                .unwrap()
                .iter()
                .map(|g| {
                    assert_eq!(g.tree_count() + 1, r.tree_count());
                    rainbow_to_forest(g).unwrap()
                })
                .collect();
            let direct: BTreeSet<PartitionForest> = forest_covers(&f).into_iter().collect();
            assert_eq!(via_rainbow, direct, "{f}");
        }
    }
}

#[test]
fn cover_with_a5_b7() {
    // tree 1 -(1)- 5, 5 -(2)- 2 ; tree 3 -(2)- 4, 4 -(1)- 7, 7 -(2)- 6 ; tree 8 alone
    let parent = vec![None, Some(4), None, Some(2), Some(0), Some(6), Some(3), None];
    let color = vec![0, 2, 0, 2, 1, 2, 1, 0];
    let r = RainbowForest::labeled(2, parent, color).unwrap();
    let f = rainbow_to_forest(&r).unwrap();
    // merging the green (color 2) parts of 5 and 7: {5,2} and {7,6}
    let mut partitions = f.partitions().to_vec();
    let p = &partitions[1];
    let merged: Vec<u32> = {
        let (a, b) = (p.part_of(5), p.part_of(7));
        let mut parts: Vec<u32> = p.parts().iter().copied().filter(|&q| q != a && q != b).collect();
        parts.push(a | b);
        parts
    };
    partitions[1] = permadiag_core::SetPartition::new(8, merged).unwrap();
    let expected = forest_to_rainbow(&PartitionForest::new(partitions).unwrap()).unwrap();
    let covers = rainbow_covers(&r).unwrap();
    assert!(covers.contains(&expected));
    // the rerooted tree: 7 hangs below 5 with color 2, 6 moves to 5,
    // 4 below 7 keeps the edge color 1 and 3 below 4 takes color 2
    assert_eq!(expected.parent(6), Some(4));
    assert_eq!(expected.color(6), 2);
    assert_eq!(expected.parent(5), Some(4));
    assert_eq!(expected.parent(3), Some(6));
    assert_eq!(expected.color(3), 1);
    assert_eq!(expected.parent(2), Some(3));
    assert_eq!(expected.color(2), 2);
}

#[test]
fn isolated_nodes_covers() {
    let r = forest_to_rainbow(&PartitionForest::discrete(2, 3)).unwrap();
    // each pair {a < b} joined by either color
    assert_eq!(rainbow_covers(&r).unwrap().len(), 3 * 2);
}

#[test]
fn ary_bijection() {
    for ell in 1..=3 {
        for m in 1..=6 {
            let trees = rainbow_trees(ell, m);
            let mut seen = HashSet::new();
            for t in &trees {
                let a = rainbow_to_ary(t, ell);
                assert_eq!(a.size(), m);
                assert_eq!(&ary_to_rainbow(&a), t);
                assert!(seen.insert(a));
            }
            assert_eq!(BigUint::from(seen.len()), fuss_catalan(ell, m));
        }
    }
}

/// λ against brute force: every bijection of labels onto nodes, kept when roots
/// are minimal and same-colored siblings increase left to right.
#[test]
fn labeling_count_brute_force() {
    for ell in 1..=2 {
        for m in 1..=5 {
            for t in rainbow_trees(ell, m) {
                let forests = [vec![t.clone()], vec![t.clone(), Shape { color: 0, children: vec![] }]];
                for shapes in forests {
                    let f = RainbowForest::from_shapes(ell, &shapes).unwrap();
                    let n = f.len();
                    let mut count = 0u32;
                    for perm in permadiag_core::Perm::all(n) {
                        let label = |k: usize| perm.get(k);
                        let roots_ok = (0..n).all(|k| label(f.root_of(k)) <= label(k));
                        let sib_ok = (0..n).all(|k| {
                            f.children(k).windows(2).all(|w| {
                                f.color(w[0]) != f.color(w[1]) || label(w[0]) < label(w[1])
                            })
                        });
                        if roots_ok && sib_ok {
                            count += 1;
                        }
                    }
                    assert_eq!(f.labeling_count(), BigUint::from(count), "{}", fmt_forest(&f));
                }
            }
        }
    }
}

#[test]
fn fuss_catalan_functional_equation() {
    const ORDER: usize = 12;
    fn mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
        let mut c = vec![BigUint::from(0u32); ORDER + 1];
        for i in 0..=ORDER {
            for j in 0..=ORDER - i {
                c[i + j] += &a[i] * &b[j];
            }
        }
        c
    }
    for ell in 1..=5 {
        let f: Vec<BigUint> = (0..=ORDER).map(|m| fuss_catalan(ell, m)).collect();
        let mut pow = vec![BigUint::from(0u32); ORDER + 1];
        pow[0] = BigUint::from(1u32);
        for _ in 0..ell {
            pow = mul(&pow, &f);
        }
        // 1 + z F^ℓ
        let mut rhs = vec![BigUint::from(0u32); ORDER + 1];
        rhs[0] = BigUint::from(1u32);
        for m in 1..=ORDER {
            rhs[m] = pow[m - 1].clone();
        }
        assert_eq!(f, rhs, "ell={ell}");
    }
}

#[test]
fn json_round_trip() {
    for f in enumerate_forests(2, 3).unwrap() {
        let r = forest_to_rainbow(&f).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<RainbowForest>(&s).unwrap(), r);
    }
    for t in rainbow_trees(2, 4) {
        let r = RainbowForest::from_shapes(2, &[t]).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<RainbowForest>(&s).unwrap(), r);
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use permadiag_arrangement::*;
use permadiag_core::OrderedPartition;
use permadiag_forests::{enumerate_forests, enumerate_trees, PartitionForest};
use permadiag_rainbow::{forest_to_rainbow, rainbow_trees, RainbowForest};
use proptest::prelude::*;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn bipoly(terms: &[((usize, usize), i64)]) -> BiPoly {
    BiPoly::from_terms(terms)
}

fn two_three() -> BiPoly {
    bipoly(&[((2, 2), 1), ((2, 1), -6), ((2, 0), 10), ((1, 1), 6), ((1, 0), -18), ((0, 0), 8)])
}

#[test]
fn mobius_listed_values() {
    assert_eq!(mobius_polynomial(2, 1).unwrap(), bipoly(&[((0, 0), 1)]));
    assert_eq!(mobius_polynomial(2, 2).unwrap().to_string(), "xy - 2x + 2");
    assert_eq!(mobius_polynomial(2, 3).unwrap(), two_three());
    let b3 = bipoly(&[((2, 2), 1), ((2, 1), -3), ((2, 0), 2), ((1, 1), 3), ((1, 0), -3), ((0, 0), 1)]);
    assert_eq!(mobius_polynomial(1, 3).unwrap(), b3);
    let four = bipoly(&[
        ((3, 3), 1), ((3, 2), -12), ((3, 1), 52), ((3, 0), -84),
        ((2, 2), 12), ((2, 1), -96), ((2, 0), 216),
        ((1, 1), 44), ((1, 0), -182), ((0, 0), 50),
    ]);
    assert_eq!(mobius_polynomial(2, 4).unwrap(), four);
    let five = bipoly(&[
        ((4, 4), 1), ((4, 3), -20), ((4, 2), 160), ((4, 1), -620), ((4, 0), 1008),
        ((3, 3), 20), ((3, 2), -300), ((3, 1), 1640), ((3, 0), -3360),
        ((2, 2), 140), ((2, 1), -1430), ((2, 0), 4130),
        ((1, 1), 410), ((1, 0), -2210), ((0, 0), 432),
    ]);
    assert_eq!(mobius_polynomial(2, 5).unwrap(), five);
}

#[test]
fn mobius_two_points() {
    // xy − ℓx + ℓ for every ℓ
    for ell in 1..=5 {
        let p = mobius_polynomial(ell, 2).unwrap();
        let l = ell as i64;
        assert_eq!(p, bipoly(&[((1, 1), 1), ((1, 0), -l), ((0, 0), l)]));
        assert_eq!(f_polynomial(ell, 2).unwrap(), UniPoly::from_i64(&[l, l + 1]));
        assert_eq!(b_polynomial(ell, 2).unwrap(), UniPoly::from_i64(&[l, l - 1]));
    }
}

#[test]
fn mobius_routes_agree() {
    for ell in 1..=3 {
        for n in 1..=4 {
            let a = mobius_polynomial(ell, n).unwrap();
            let b = mobius_polynomial_by_intervals(ell, n, DEFAULT_INTERVAL_CAP).unwrap();
            assert_eq!(a, b, "ell={ell} n={n}");
        }
    }
}

#[test]
fn interval_cap_is_enforced() {
    assert!(matches!(
        mobius_polynomial_by_intervals(2, 4, 10),
        Err(Error::CapExceeded(_))
    ));
}

#[test]
fn weird_poly_matches_braid_slice() {
    // M_n(x) = μ_{B_n}(x, 0)
    for n in 1..=5 {
        let mu = mobius_polynomial(1, n).unwrap();
        let slice: Vec<BigInt> = (0..n).map(|a| mu.coeff(a, 0)).collect();
        assert_eq!(weird_poly(n), UniPoly::new(slice), "n={n}");
    }
}

#[test]
fn weird_poly_stirling_identity() {
    for n in 2..=8 {
        let mut sum = Vec::new();
        let mut fact = big(1);
        for k in 1..n {
            fact *= k;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            sum.push(big(sign) * &fact * stirling2(n - 1, k));
        }
        let rhs = UniPoly::from_i64(&[1, -1]).mul(&UniPoly::new(sum));
        assert_eq!(weird_poly(n), rhs, "n={n}");
    }
}

#[test]
fn f_vectors_by_dimension() {
    assert_eq!(f_polynomial(2, 2).unwrap(), UniPoly::from_i64(&[2, 3]));
    assert_eq!(f_polynomial(2, 3).unwrap(), UniPoly::from_i64(&[8, 24, 17]));
    let f4 = f_polynomial(2, 4).unwrap();
    assert_eq!(f4, UniPoly::from_i64(&[50, 226, 324, 149]));
    assert_eq!(f4.eval(&big(1)), big(749));
    // braid arrangement: ordered set partitions by dimension
    for n in 1..=6 {
        let want: Vec<BigInt> = (1..=n)
            .map(|j| (1..=j).fold(big(1), |acc, m| acc * m) * stirling2(n, j))
            .collect();
        assert_eq!(f_polynomial(1, n).unwrap(), UniPoly::new(want));
    }
}

#[test]
fn bounded_faces_top_coefficient() {
    for n in 2..=4 {
        let b = b_polynomial(2, n).unwrap();
        assert_eq!(b.coeff(n - 1), bounded_region_count(2, n).unwrap());
    }
}

const REGIONS: [[i64; 4]; 6] = [
    [1, 1, 1, 1],
    [2, 3, 4, 5],
    [6, 17, 34, 57],
    [24, 149, 472, 1089],
    [120, 1809, 9328, 29937],
    [720, 28399, 241888, 1085157],
];

const BOUNDED: [[i64; 4]; 6] = [
    [1, 1, 1, 1],
    [0, 1, 2, 3],
    [0, 5, 16, 33],
    [0, 43, 224, 639],
    [0, 529, 4528, 17937],
    [0, 8501, 120272, 663363],
];

#[test]
fn region_tables() {
    for n in 1..=6 {
        for ell in 1..=4 {
            assert_eq!(region_count(ell, n).unwrap(), big(REGIONS[n - 1][ell - 1]));
            assert_eq!(bounded_region_count(ell, n).unwrap(), big(BOUNDED[n - 1][ell - 1]));
        }
    }
    assert_eq!(region_count(2, 8).unwrap(), big(12732873));
    assert_eq!(bounded_region_count(2, 8).unwrap(), big(4010455));
}

#[test]
fn char_poly_evaluations() {
    for ell in 1..=4 {
        for n in 1..=6 {
            let chi = char_poly(ell, n).unwrap();
            let sign = big(if n % 2 == 1 { 1 } else { -1 });
            assert_eq!(&sign * chi.eval(&big(-1)), region_count(ell, n).unwrap());
            assert_eq!(&sign * chi.eval(&big(1)), bounded_region_count(ell, n).unwrap());
        }
    }
}

#[test]
fn char_poly_braid_product() {
    // (y−1)(y−2)…(y−n+1)
    for n in 1..=7 {
        let want = (1..n as i64).fold(UniPoly::from_i64(&[1]), |p, k| {
            p.mul(&UniPoly::from_i64(&[-k, 1]))
        });
        assert_eq!(char_poly(1, n).unwrap(), want);
    }
}

#[test]
fn char_poly_is_top_mobius_slice() {
    for ell in 1..=3 {
        for n in 1..=4 {
            let mu = mobius_polynomial(ell, n).unwrap();
            assert_eq!(char_poly(ell, n).unwrap(), mu.x_slice(n - 1), "ell={ell} n={n}");
        }
    }
}

#[test]
fn char_poly_from_rainbow_forests() {
    // Σ over ordered sequences of unlabeled rainbow trees of λ·(−1)^{n−k}·ω·y^{k−1}/k!
    for ell in 1..=3 {
        for n in 1..=5 {
            let trees: Vec<Vec<_>> = (0..=n).map(|m| rainbow_trees(ell, m)).collect();
            let mut coeffs = vec![BigRational::zero(); n];
            let mut stack = vec![(Vec::new(), 0usize)];
            while let Some((seq, size)) = stack.pop() {
                if size == n {
                    let forest = RainbowForest::from_shapes(ell, &seq).unwrap();
                    let k = seq.len();
                    let kfact: BigInt = (1..=k).fold(big(1), |a, m| a * m);
                    let term = BigInt::from(forest.labeling_count()) * BigInt::from(forest.omega());
                    let sign = big(if (n - k) % 2 == 0 { 1 } else { -1 });
                    coeffs[k - 1] += BigRational::new(sign * term, kfact);
                    continue;
                }
                for m in 1..=n - size {
                    for t in &trees[m] {
                        let mut next = seq.clone();
                        next.push(t.clone());
                        stack.push((next, size + m));
                    }
                }
            }
            let coeffs: Vec<BigInt> = coeffs
                .into_iter()
                .map(|c| {
                    assert!(c.is_integer());
                    c.to_integer()
                })
                .collect();
            assert_eq!(char_poly(ell, n).unwrap(), UniPoly::new(coeffs), "ell={ell} n={n}");
        }
    }
}

#[test]
fn char_poly_from_labeled_forests() {
    for ell in 1..=3 {
        for n in 1..=4 {
            let mut coeffs = vec![BigInt::from(0); n];
            for f in enumerate_forests(ell, n).unwrap() {
                let r = forest_to_rainbow(&f).unwrap();
                let k = r.tree_count();
                let sign = big(if (n - k) % 2 == 0 { 1 } else { -1 });
                coeffs[k - 1] += sign * BigInt::from(r.omega());
            }
            assert_eq!(char_poly(ell, n).unwrap(), UniPoly::new(coeffs));
        }
    }
}

#[test]
fn vertex_tables() {
    assert_eq!(vertex_count(2, 5).unwrap(), big(432));
    assert_eq!(vertex_count(3, 3).unwrap(), big(21));
    assert_eq!(vertex_count(2, 9).unwrap(), big(20000000));
    for ell in 1..=3 {
        for n in 1..=5 {
            let trees = enumerate_trees(ell, n).unwrap().len();
            assert_eq!(vertex_count(ell, n).unwrap(), big(trees as i64), "ell={ell} n={n}");
        }
    }
}

#[test]
fn refined_vertices() {
    assert_eq!(refined_vertex_count(2, 4, &[1, 2]).unwrap(), big(24));
    let total: BigInt = (0..=3)
        .map(|k| refined_vertex_count(2, 4, &[k, 3 - k]).unwrap())
        .sum();
    assert_eq!(total, big(50));
    assert!(refined_vertex_count(2, 4, &[2, 2]).is_err());
    assert!(refined_vertex_count(2, 4, &[3]).is_err());
    // bucket the partition trees by how many merges each copy makes
    for ell in 2..=3 {
        for n in 2..=5 {
            let mut buckets = std::collections::BTreeMap::<Vec<usize>, i64>::new();
            for t in enumerate_trees(ell, n).unwrap() {
                let k: Vec<usize> = t.partitions().iter().map(|p| n - p.len()).collect();
                *buckets.entry(k).or_default() += 1;
            }
            for (k, count) in buckets {
                assert_eq!(refined_vertex_count(ell, n, &k).unwrap(), big(count), "{k:?}");
            }
        }
    }
}

fn b23a() -> TranslationMatrix {
    TranslationMatrix::from_i64(&[vec![0, 0], vec![-1, -1]]).unwrap()
}

#[test]
fn genericity() {
    assert!(b23a().is_generic().unwrap());
    assert!(!TranslationMatrix::from_i64(&[vec![0, 0], vec![0, 0]]).unwrap().is_generic().unwrap());
    assert!(TranslationMatrix::from_i64(&[vec![0, 0], vec![1, -2]]).unwrap().is_generic().unwrap());
    // A(2,1,3) = 0 closes a mixed 2-cycle through 1 and 3
    assert!(!TranslationMatrix::from_i64(&[vec![0, 0], vec![1, -1]]).unwrap().is_generic().unwrap());
    for ell in 2..=3 {
        for n in 2..=5 {
            assert!(TranslationMatrix::default_for(ell, n).unwrap().is_generic().unwrap());
            assert!(TranslationMatrix::alternative_for(ell, n).unwrap().is_generic().unwrap());
        }
    }
    let big_n = TranslationMatrix::default_for(2, 8).unwrap();
    assert!(matches!(big_n.is_generic(), Err(Error::CapExceeded(_))));
}

#[test]
fn matrix_json() {
    let m: TranslationMatrix = serde_json::from_str(r#"[["0","0"],["3/2", -1]]"#).unwrap();
    assert_eq!(m.to_string(), "[[0, 0], [3/2, -1]]");
    assert_eq!(serde_json::to_string(&m).unwrap(), r#"[["0","0"],["3/2","-1"]]"#);
    assert!(serde_json::from_str::<TranslationMatrix>(r#"[["1/0","0"]]"#).is_err());
    assert!(serde_json::from_str::<TranslationMatrix>(r#"[["1"],["1","2"]]"#).is_err());
}

fn forest(s: &str) -> PartitionForest {
    s.parse().unwrap()
}

fn opf(s: &str) -> OrderedPartitionForest {
    s.parse().unwrap()
}

#[test]
fn forced_order_example() {
    let f = forest("(12|3, 13|2)");
    let a = b23a();
    // x1 = x2 and x3 = x1 + 2, so x2 − x3 = −2 < A(2,2,3) = −1
    assert_eq!(forced_order(&f, &a, 2, 2, 3).unwrap(), Forced::Before);
    assert_eq!(forced_order(&f, &a, 2, 3, 2).unwrap(), Forced::After);
    assert_eq!(forced_order(&f, &a, 1, 1, 2).unwrap(), Forced::Same);
    assert_eq!(forced_order(&f, &a, 2, 1, 3).unwrap(), Forced::Same);
    assert!(forced_order(&f, &a, 1, 2, 2).is_err());
    let g = forest("(12|3, 1|2|3)");
    assert!(matches!(forced_order(&g, &a, 1, 1, 3), Err(Error::NotApplicable(_))));
}

#[test]
fn face_membership() {
    let a = b23a();
    // copy 2 compares y = x + (0, −1, −2): x = (0, 0.5, 0.9) realizes this pair
    assert!(is_face(&opf("(1|2|3, 3|2|1)"), &a).unwrap());
    assert!(!is_face(&opf("(3|2|1, 1|2|3)"), &a).unwrap());
    // x1 = x2 = x3 forces y = (0, −1, −2) in copy 2
    assert!(is_face(&opf("(123, 3|2|1)"), &a).unwrap());
    assert!(!is_face(&opf("(123, 1|2|3)"), &a).unwrap());
    // y = (0, −1, x3 − 2) with x3 > 0
    assert!(is_face(&opf("(12|3, 3|2|1)"), &a).unwrap());
    assert!(is_face(&opf("(12|3, 2|1|3)"), &a).unwrap());
    assert!(!is_face(&opf("(12|3, 1|2|3)"), &a).unwrap());
    assert!("(12|3, 12|3)".parse::<OrderedPartitionForest>().is_err());
}

#[test]
fn orderings_of_trees_and_finest_forest() {
    let a = b23a();
    for t in enumerate_trees(2, 3).unwrap() {
        let o = orderings_of_forest(&t, &a).unwrap();
        assert_eq!(o.len(), 1, "{t}");
        assert!(is_face(&o[0], &a).unwrap());
    }
    let finest = forest("(1|2|3, 1|2|3)");
    let regions = orderings_of_forest(&finest, &a).unwrap();
    assert_eq!(regions.len(), 17);
    assert!(regions.iter().any(|r| r.to_string() == "(1|2|3, 3|2|1)"));
}

#[test]
fn face_enumeration_routes_agree() {
    for n in 2..=4 {
        let f = f_polynomial(2, n).unwrap();
        let want: Vec<u64> = f.coeffs().iter().map(|c| c.try_into().unwrap()).collect();
        for a in [
            TranslationMatrix::default_for(2, n).unwrap(),
            TranslationMatrix::alternative_for(2, n).unwrap(),
        ] {
            let fast = all_faces(&a).unwrap();
            let slow = all_faces_brute_force(&a).unwrap();
            assert_eq!(fast, slow, "n={n} a={a}");
            assert_eq!(face_counts_by_dim(&fast), want, "n={n} a={a}");
            for face in &fast {
                assert!(is_face(face, &a).unwrap());
            }
        }
    }
    let total: usize = all_faces(&b23a()).unwrap().len();
    assert_eq!(total, 49);
}

#[test]
fn face_counts_for_three_copies() {
    let a = TranslationMatrix::default_for(3, 3).unwrap();
    let want: Vec<u64> = f_polynomial(3, 3)
        .unwrap()
        .coeffs()
        .iter()
        .map(|c| c.try_into().unwrap())
        .collect();
    let faces = all_faces(&a).unwrap();
    assert_eq!(face_counts_by_dim(&faces), want);
    assert_eq!(faces, all_faces_brute_force(&a).unwrap());
}

#[test]
fn inversion_poset_pairing() {
    let a = TranslationMatrix::default_for(2, 4).unwrap();
    let f = forest("(12|3|4, 1|2|34)");
    let p = InversionPoset::new(&f, &a).unwrap();
    for c in 0..p.len() {
        let cb = p.partner(c);
        assert_eq!(p.partner(cb), c);
        for d in 0..p.len() {
            assert_eq!(p.less(c, d), p.less(p.partner(d), cb));
        }
    }
    for x in p.antisymmetric_lower_sets() {
        for c in 0..p.len() {
            assert_ne!(x[c], x[p.partner(c)]);
        }
    }
}

#[test]
fn non_generic_matrix_is_reported() {
    let a = TranslationMatrix::from_i64(&[vec![0, 0], vec![0, 0]]).unwrap();
    let finest = forest("(1|2|3, 1|2|3)");
    assert!(matches!(orderings_of_forest(&finest, &a), Err(Error::NotGeneric(_))));
}

#[test]
fn face_json_round_trip() {
    let f = opf("(1|23, 3|12)");
    let s = serde_json::to_string(&f).unwrap();
    assert_eq!(serde_json::from_str::<OrderedPartitionForest>(&s).unwrap(), f);
}

/// Merges blocks `k` and `k+1` of copy `i`.
fn coarsen(f: &OrderedPartitionForest, i: usize, k: usize) -> Option<OrderedPartitionForest> {
    let mut parts: Vec<OrderedPartition> = f.parts().to_vec();
    let blocks = parts[i].blocks();
    if k + 1 >= blocks.len() {
        return None;
    }
    let mut merged = blocks.to_vec();
    merged[k] |= merged.remove(k + 1);
    parts[i] = OrderedPartition::new(f.n(), merged).ok()?;
    OrderedPartitionForest::new(parts).ok()
}

/// Faces together with, for each face, the faces it has as single-merge
/// coarsenings (its facets in the face poset).
struct FacePoset {
    faces: Vec<OrderedPartitionForest>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
}

impl FacePoset {
    fn new(a: &TranslationMatrix) -> Self {
        let faces = all_faces(a).unwrap();
        let index: std::collections::HashMap<_, _> =
            faces.iter().enumerate().map(|(k, f)| (f.clone(), k)).collect();
        let mut down = vec![Vec::new(); faces.len()];
        let mut up = vec![Vec::new(); faces.len()];
        for (k, f) in faces.iter().enumerate() {
            for i in 0..f.ell() {
                for b in 0..f.parts()[i].len() {
                    if let Some(&g) = coarsen(f, i, b).and_then(|g| index.get(&g).copied()).as_ref() {
                        down[k].push(g);
                        up[g].push(k);
                    }
                }
            }
        }
        FacePoset { faces, down, up }
    }

    fn top_dim(&self) -> usize {
        self.faces.iter().map(|f| f.dim()).max().unwrap()
    }

    fn in_closure_of_region(&self, k: usize) -> bool {
        let top = self.top_dim();
        let mut cur = k;
        while self.faces[cur].dim() < top {
            match self.up[cur].first() {
                Some(&next) => cur = next,
                None => return false,
            }
        }
        true
    }

    /// Every interval `[g, f]` of length two has exactly two middle elements.
    fn diamonds_at(&self, f: usize) -> bool {
        let mut middle = std::collections::HashMap::<usize, usize>::new();
        for &m in &self.down[f] {
            for &g in &self.down[m] {
                *middle.entry(g).or_default() += 1;
            }
        }
        middle.values().all(|&c| c == 2)
    }
}

fn poset_2_4() -> &'static FacePoset {
    static P: std::sync::OnceLock<FacePoset> = std::sync::OnceLock::new();
    P.get_or_init(|| FacePoset::new(&TranslationMatrix::default_for(2, 4).unwrap()))
}

#[test]
fn faces_are_not_closed_under_coarsening() {
    // merging 24 and 1 forces x1 = x2 = x4, hence y1 < y2 in copy 2
    let a = TranslationMatrix::default_for(2, 4).unwrap();
    let f = opf("(3|24|1, 23|1|4)");
    assert!(is_face(&f, &a).unwrap());
    let g = coarsen(&f, 0, 1).unwrap();
    assert_eq!(g.to_string(), "(3|124, 23|1|4)");
    assert!(!is_face(&g, &a).unwrap());
}

#[test]
fn face_poset_is_a_regular_cell_structure() {
    for a in [b23a(), TranslationMatrix::default_for(2, 4).unwrap()] {
        let p = FacePoset::new(&a);
        let top = p.top_dim();
        for k in 0..p.faces.len() {
            assert!(p.in_closure_of_region(k), "{}", p.faces[k]);
            assert!(p.diamonds_at(k), "{}", p.faces[k]);
            if p.faces[k].dim() + 1 == top {
                assert_eq!(p.up[k].len(), 2, "{}", p.faces[k]);
            }
        }
    }
}

proptest! {
    #[test]
    fn sampled_faces_lie_in_region_closures(idx in 0usize..749) {
        let p = poset_2_4();
        prop_assert_eq!(p.faces.len(), 749);
        prop_assert!(p.in_closure_of_region(idx));
        prop_assert!(p.diamonds_at(idx));
        if p.faces[idx].dim() + 1 == p.top_dim() {
            prop_assert_eq!(p.up[idx].len(), 2);
        }
    }

    #[test]
    fn random_generic_matrices_give_the_f_vector(
        row in proptest::collection::vec(-20i64..20, 2),
    ) {
        let a = TranslationMatrix::from_i64(&[vec![0, 0], row]).unwrap();
        prop_assume!(a.is_generic().unwrap());
        let faces = all_faces(&a).unwrap();
        prop_assert_eq!(face_counts_by_dim(&faces), vec![8, 24, 17]);
    }
}

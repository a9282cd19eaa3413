use std::collections::{BTreeSet, HashMap, HashSet};

use permadiag_core::{set, weak_leq, Perm};
use permadiag_diagonal::{facets, is_face_pair, iso_t_rr, DiagonalFace, Variant};
use permadiag_shifts::*;
use proptest::prelude::*;

const BOTH: [Variant; 2] = [Variant::La, Variant::Su];

fn face(s: &str) -> DiagonalFace {
    s.parse().unwrap()
}

fn perm(s: &str) -> Perm {
    s.parse().unwrap()
}

fn strings(v: &[DiagonalFace]) -> HashSet<String> {
    v.iter().map(|f| f.to_string()).collect()
}

fn op(side: Side, direction: Direction, m: &[u32], block: usize, distance: usize, mode: Mode, variant: Variant) -> ShiftOp {
    ShiftOp { side, direction, subset: set::from_slice(m), block, distance, mode, variant, inverse: false }
}

// ---- strong complementary pairs

#[test]
fn scp_examples() {
    assert_eq!(scp_from_perm(&perm("3|1|7|4|2|5|6")).to_string(), "(13|247|5|6, 3|17|4|256)");
    assert_eq!(scp_from_perm(&perm("6|5|2|4|7|1|3")).to_string(), "(256|4|17|3, 6|5|247|13)");
    assert_eq!(scp_from_perm(&perm("5|2|1|7|6|3|4")).to_string(), "(125|367|4, 5|2|17|6|34)");
    for n in 1..=7 {
        let id = Perm::identity(n);
        let p = scp_from_perm(&id);
        assert_eq!(p.sigma.len(), n);
        assert_eq!(p.tau.len(), 1);
    }
}

#[test]
fn scp_bijection() {
    for n in 1..=6 {
        let mut seen = HashSet::new();
        for w in Perm::all(n) {
            let p = scp_from_perm(&w);
            assert_eq!(perm_from_scp(&p).unwrap(), w);
            assert!(BlockTree::new(&p).is_ok());
            assert!(seen.insert(p));
        }
    }
    assert!(matches!(perm_from_scp(&face("(12|3|4, 24|13)")), Err(Error::NotScp(_))));
}

#[test]
fn scps_are_the_facets_with_touching_vertices() {
    for n in 1..=5 {
        for v in BOTH {
            let fs = facets(n, v, 8).unwrap();
            let touching: HashSet<String> = fs
                .iter()
                .filter(|f| f.sigma.max_perm() == f.tau.min_perm())
                .map(|f| f.to_string())
                .collect();
            let scps: HashSet<String> = Perm::all(n).iter().map(|w| scp_from_perm(w).to_string()).collect();
            assert_eq!(touching, scps);
            for f in &fs {
                assert!(weak_leq(&f.sigma.max_perm(), &f.tau.min_perm()).unwrap());
            }
        }
    }
}

// ---- shift operators

#[test]
fn one_shift_example() {
    let p = scp_from_perm(&perm("3|1|7|4|2|5|6"));
    for mode in [Mode::Block1, Mode::Path1] {
        let ops = [
            op(Side::Sigma, Direction::Right, &[7], 1, 1, mode, Variant::Su),
            op(Side::Tau, Direction::Left, &[5, 6], 3, 1, Mode::Block1, Variant::Su),
        ];
        let g = apply_shifts(&p, &ops).unwrap();
        assert_eq!(g.to_string(), "(13|24|57|6, 3|17|456|2)");
        assert!(is_face_pair(&g, &Variant::Su.ordering(7)).unwrap());
    }
    assert_eq!(apply_shifts(&p, &[]).unwrap(), p);
}

#[test]
fn rejected_la_shift_names_the_path() {
    let f = face("(15|7|234|6, 57|46|13|2)");
    let bad = op(Side::Sigma, Direction::Left, &[2], 2, 1, Mode::Path1, Variant::La);
    match apply_shift(&f, &bad) {
        Err(Error::Inadmissible(msg)) => {
            assert!(msg.contains("minimum 1"), "{msg}");
            assert!(msg.contains("234") && msg.contains('7'), "{msg}");
        }
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn shift_errors() {
    let p = scp_from_perm(&perm("3|1|7|4|2|5|6"));
    let wrong_dir = op(Side::Sigma, Direction::Left, &[7], 1, 1, Mode::Path1, Variant::Su);
    assert!(matches!(apply_shift(&p, &wrong_dir), Err(Error::Inadmissible(_))));
    let empties = op(Side::Sigma, Direction::Right, &[2, 4, 7], 1, 1, Mode::Block1, Variant::Su);
    assert!(matches!(apply_shift(&p, &empties), Err(Error::EmptiedBlock(2))));
    let off_end = op(Side::Sigma, Direction::Right, &[7], 1, 3, Mode::PathM, Variant::Su);
    assert!(matches!(apply_shift(&p, &off_end), Err(Error::IndexOutOfRange(_))));
    let no_block = op(Side::Sigma, Direction::Right, &[7], 9, 1, Mode::PathM, Variant::Su);
    assert!(matches!(apply_shift(&p, &no_block), Err(Error::IndexOutOfRange(_))));
    let min_moved = op(Side::Sigma, Direction::Right, &[2], 1, 1, Mode::Block1, Variant::Su);
    assert!(matches!(apply_shift(&p, &min_moved), Err(Error::Inadmissible(_))));
    let op_variant = op(Side::Sigma, Direction::Right, &[7], 1, 1, Mode::Path1, Variant::LaOp);
    assert!(matches!(apply_shift(&p, &op_variant), Err(Error::InvalidInput(_))));
}

#[test]
fn shifts_of_the_translated_pair() {
    // LA shifts of an SCP and SU shifts of its image under t(r × r)
    let la = face("(5|17|4|236, 57|146|3|2)");
    let su = face("(13|247|5|6, 3|17|4|256)");
    assert_eq!(iso_t_rr(&la), su);
    let moves = |f: &DiagonalFace, v: Variant, side: Side| -> BTreeSet<String> {
        singleton_shifts(f, v, Mode::Path1, false)
            .unwrap()
            .into_iter()
            .filter(|(o, _)| o.side == side)
            .map(|(_, g)| g.to_string())
            .collect()
    };
    let left: BTreeSet<String> = ["(15|7|4|236, 57|146|3|2)", "(5|17|24|36, 57|146|3|2)", "(5|17|34|26, 57|146|3|2)"]
        .map(String::from)
        .into();
    assert_eq!(moves(&la, Variant::La, Side::Sigma), left);
    assert_eq!(
        moves(&la, Variant::La, Side::Tau),
        BTreeSet::from(["(5|17|4|236, 57|46|13|2)".to_string()])
    );
    assert_eq!(
        moves(&su, Variant::Su, Side::Sigma),
        BTreeSet::from(["(13|24|57|6, 3|17|4|256)".to_string()])
    );
    let chain = op(Side::Sigma, Direction::Right, &[7], 2, 1, Mode::Path1, Variant::Su);
    let top = apply_shift(&face("(13|24|57|6, 3|17|4|256)"), &chain).unwrap();
    assert_eq!(top.sigma.to_string(), "13|24|5|67");
    // the two lattices have the same shape
    let a = shift_lattice(&perm_from_scp(&la).unwrap(), Variant::La).unwrap();
    let b = shift_lattice(&perm_from_scp(&su).unwrap(), Variant::Su).unwrap();
    assert_eq!(a.len(), 24);
    assert_eq!(b.len(), 24);
    let mapped: HashSet<String> = a.elements().iter().map(|f| iso_t_rr(f).to_string()).collect();
    assert_eq!(mapped, strings(b.elements()));
}

#[test]
fn shift_json_round_trip() {
    let o = op(Side::Tau, Direction::Left, &[5, 6], 3, 1, Mode::Block1, Variant::Su);
    let j = serde_json::to_string(&o).unwrap();
    assert_eq!(serde_json::from_str::<ShiftOp>(&j).unwrap(), o);
    assert_eq!(o.to_string(), "L56 on τ, block 4 by 1");
    assert_eq!("path-m".parse::<Mode>().unwrap(), Mode::PathM);
}

// ---- heights and lattices

#[test]
fn height_examples() {
    let h = heights(&perm("3|1|7|4|2|5|6"), Variant::Su).unwrap();
    assert_eq!(h.right[6], 2);
    for n in 1..=6 {
        let h = heights(&Perm::identity(n), Variant::Su).unwrap();
        assert!(h.right.iter().all(|&x| x == 0));
        assert_eq!(shift_lattice(&Perm::identity(n), Variant::Su).unwrap().len(), 1);
    }
}

/// Largest m for which shifting ρ by m blocks from the SCP is path-admissible.
fn height_by_shifting(w: &Perm, v: Variant, rho: u32, direction: Direction) -> usize {
    let p = scp_from_perm(w);
    let side = [Side::Sigma, Side::Tau]
        .into_iter()
        .find(|&s| ShiftOp::forward_direction(s, v) == direction)
        .unwrap();
    let part = if side == Side::Sigma { &p.sigma } else { &p.tau };
    let block = part.block_of(rho);
    (1..=part.len())
        .filter(|&m| {
            let o = op(side, direction, &[rho], block, m, Mode::PathM, v);
            apply_shift(&p, &o).is_ok()
        })
        .max()
        .unwrap_or(0)
}

#[test]
fn heights_match_their_definition() {
    for n in 1..=6 {
        for w in Perm::all(n) {
            for v in BOTH {
                let h = heights(&w, v).unwrap();
                for rho in 1..=n as u32 {
                    let k = rho as usize - 1;
                    assert_eq!(h.left[k], height_by_shifting(&w, v, rho, Direction::Left), "{v} {w} ℓ({rho})");
                    assert_eq!(h.right[k], height_by_shifting(&w, v, rho, Direction::Right), "{v} {w} r({rho})");
                }
            }
        }
    }
}

#[test]
fn height_statistic() {
    for n in 1..=7usize {
        let expect = if n == 1 { 1 } else { 2 * (n as u64 + 1).pow(n as u32 - 2) };
        for v in BOTH {
            let total: u64 = Perm::all(n).iter().map(|w| heights(w, v).unwrap().lattice_size()).sum();
            assert_eq!(total, expect, "{v} n={n}");
        }
    }
}

fn ascents(w: &Perm) -> usize {
    let v = w.to_vec();
    v.windows(2).filter(|p| p[0] < p[1]).count()
}

/// n·C(n−1, a)·(n−a)^(a−1)·(n−d)^(d−1) with d = n − 1 − a, kept integral.
fn refined(n: u64, a: u64) -> u64 {
    let d = n - 1 - a;
    let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
    let pow = |b: u64, e: u64| b.pow(e as u32);
    // one of a, d may be zero; the factor n cancels its negative power
    match (a, d) {
        (0, 0) => 1,
        (0, _) => binom(n - 1, a) * pow(n - d, d - 1),
        (_, 0) => binom(n - 1, a) * pow(n - a, a - 1),
        _ => n * binom(n - 1, a) * pow(n - a, a - 1) * pow(n - d, d - 1),
    }
}

#[test]
fn run_refined_statistic() {
    for n in 1..=6u64 {
        for v in BOTH {
            let mut by_runs: HashMap<usize, u64> = HashMap::new();
            for w in Perm::all(n as usize) {
                *by_runs.entry(ascents(&w)).or_default() += heights(&w, v).unwrap().lattice_size();
            }
            for a in 0..n {
                assert_eq!(by_runs.get(&(a as usize)).copied().unwrap_or(0), refined(n, a), "{v} n={n} a={a}");
            }
        }
    }
}

#[test]
fn lattice_of_4312_and_of_2134() {
    let l = shift_lattice(&perm("4|3|1|2"), Variant::Su).unwrap();
    assert_eq!(l.len(), 4);
    let fig = shift_lattice(&perm("2|1|3|4"), Variant::Su).unwrap();
    let expect: HashSet<String> = ["(12|3|4, 2|134)", "(12|3|4, 23|14)", "(12|3|4, 24|13)", "(12|3|4, 234|1)"]
        .map(String::from)
        .into();
    assert_eq!(strings(fig.elements()), expect);
    assert_eq!(fig.elements()[fig.minimum()].to_string(), "(12|3|4, 2|134)");
    assert_eq!(fig.elements()[fig.maximum()].to_string(), "(12|3|4, 234|1)");
}

fn check_lattice(l: &ShiftLattice) {
    let h = &l.heights;
    assert_eq!(l.len() as u64, h.lattice_size());
    assert_eq!(l.elements()[l.minimum()], scp_from_perm(&l.perm));
    let mut coords = HashSet::new();
    for k in 0..l.len() {
        let c = l.coord(k);
        assert!(c.left.iter().zip(&h.left).all(|(a, b)| a <= b));
        assert!(c.right.iter().zip(&h.right).all(|(a, b)| a <= b));
        assert!(coords.insert(c.clone()));
    }
    for a in 0..l.len() {
        for b in 0..l.len() {
            let m = l.meet(a, b).unwrap();
            let j = l.join(a, b).unwrap();
            assert!(l.leq(m, a) && l.leq(m, b) && l.leq(a, j) && l.leq(b, j));
        }
    }
    for &(a, b) in l.covers() {
        assert!(l.leq(a, b) && a != b);
    }
}

#[test]
fn lattices_are_boxes() {
    for n in 1..=5 {
        for w in Perm::all(n) {
            for v in BOTH {
                check_lattice(&shift_lattice(&w, v).unwrap());
            }
        }
    }
}

#[test]
fn lattices_partition_the_facets() {
    for n in 1..=6 {
        for v in BOTH {
            let mut union = HashSet::new();
            let mut total = 0;
            for w in Perm::all(n) {
                let l = shift_lattice(&w, v).unwrap();
                total += l.len();
                union.extend(l.elements().iter().map(|f| f.to_string()));
            }
            assert_eq!(total, union.len(), "lattices overlap");
            assert_eq!(union, strings(&facets(n, v, 8).unwrap()), "{v} n={n}");
        }
    }
}

proptest! {
    #[test]
    fn random_lattices_at_six(w in Just(()).prop_perturb(|_, mut rng| {
        let mut v: Vec<u32> = (1..=6).collect();
        for i in (1..v.len()).rev() {
            let j = (rng.next_u32() as usize) % (i + 1);
            v.swap(i, j);
        }
        Perm::new(v).unwrap()
    }), su in any::<bool>()) {
        let v = if su { Variant::Su } else { Variant::La };
        check_lattice(&shift_lattice(&w, v).unwrap());
    }
}

// ---- conservation, commutation and closure

/// Extremum of the path between consecutive blocks and its direction.
fn profile(f: &DiagonalFace, v: Variant) -> Vec<(Side, usize, u32, bool)> {
    let t = BlockTree::new(f).unwrap();
    let mut out = Vec::new();
    for (side, k) in [(Side::Sigma, f.sigma.len()), (Side::Tau, f.tau.len())] {
        for i in 0..k.saturating_sub(1) {
            let (e, dir) = if v == Variant::Su { t.path_max(side, i, i + 1) } else { t.path_min(side, i, i + 1) };
            out.push((side, i, e, dir));
        }
    }
    out
}

#[test]
fn shifts_conserve_path_extrema() {
    for n in 1..=5 {
        for w in Perm::all(n) {
            for v in BOTH {
                let l = shift_lattice(&w, v).unwrap();
                let base = profile(&l.elements()[0], v);
                for f in l.elements() {
                    assert_eq!(profile(f, v), base, "{v} {f}");
                }
            }
        }
    }
}

fn commute_on(f: &DiagonalFace, v: Variant) {
    let ops = singleton_shifts(f, v, Mode::PathM, false).unwrap();
    for (a, fa) in &ops {
        for (b, _) in &ops {
            if a.subset == b.subset && a.side == b.side {
                continue;
            }
            if let Ok(fab) = apply_shift(fa, b) {
                let fb = apply_shift(f, b).unwrap();
                let fba = apply_shift(&fb, a).expect("the other order is defined");
                assert_eq!(fab, fba);
            }
        }
    }
}

#[test]
fn shifts_commute() {
    for n in 1..=5 {
        for v in BOTH {
            for f in facets(n, v, 8).unwrap() {
                commute_on(&f, v);
            }
        }
    }
}

proptest! {
    #[test]
    fn shifts_commute_at_six(idx in 0usize..4802, su in any::<bool>()) {
        let v = if su { Variant::Su } else { Variant::La };
        thread_local! {
            static FACETS: HashMap<bool, Vec<DiagonalFace>> = HashMap::from([
                (true, facets(6, Variant::Su, 8).unwrap()),
                (false, facets(6, Variant::La, 8).unwrap()),
            ]);
        }
        let f = FACETS.with(|m| m[&su][idx].clone());
        commute_on(&f, v);
    }
}

#[test]
fn shifts_preserve_facets() {
    for n in 1..=5 {
        for v in BOTH {
            let or = v.ordering(n);
            for f in facets(n, v, 8).unwrap() {
                for inverse in [false, true] {
                    for (_, g) in singleton_shifts(&f, v, Mode::PathM, inverse).unwrap() {
                        assert!(BlockTree::new(&g).is_ok());
                        assert!(is_face_pair(&g, &or).unwrap(), "{v} {f} -> {g}");
                    }
                }
            }
        }
    }
}

#[test]
fn shift_modes_agree_with_geometric_facets() {
    for n in 1..=5 {
        for v in BOTH {
            let geo = strings(&facets(n, v, 8).unwrap());
            for mode in [Mode::Block1, Mode::Path1, Mode::PathM] {
                assert_eq!(strings(&facets_via_shifts(n, v, mode, 7).unwrap()), geo, "{v} {mode} n={n}");
            }
        }
    }
    assert_eq!(facets_via_shifts(4, Variant::Su, Mode::Block1, 7).unwrap().len(), 50);
    assert_eq!(facets_via_shifts(5, Variant::Su, Mode::PathM, 7).unwrap().len(), 432);
    assert!(matches!(facets_via_shifts(8, Variant::Su, Mode::Path1, 7), Err(Error::CapExceeded(_))));
}

#[test]
fn path_shifts_decompose_into_one_shifts() {
    // the 1-shift and m-shift closures coincide set-wise; check it at six too
    for v in BOTH {
        let a = strings(&facets_via_shifts(6, v, Mode::Path1, 7).unwrap());
        let b = strings(&facets_via_shifts(6, v, Mode::PathM, 7).unwrap());
        assert_eq!(a.len(), 4802);
        assert_eq!(a, b);
    }
}

// ---- inversions and crossings

#[test]
fn inversion_examples() {
    for n in 1..=6 {
        for w in Perm::all(n) {
            let p = scp_from_perm(&w);
            assert!(inversions(&p).is_empty());
            assert!(crossings(&p).is_empty());
        }
    }
    let f = face("(12|3|4, 24|13)");
    assert_eq!(inversions(&f), BTreeSet::from([(1, 4), (3, 4)]));
    assert_eq!(crossings(&f), inversions(&f));
}

#[test]
fn crossings_are_inversions_on_su_facets() {
    for n in 1..=5 {
        for f in facets(n, Variant::Su, 8).unwrap() {
            assert_eq!(crossings(&f), inversions(&f), "{f}");
            assert_eq!(crossings(&f).is_empty(), is_scp(&f));
            assert_eq!(crossings(&f).is_empty(), adjacent_crossings(&f).is_empty());
        }
    }
}

#[test]
fn inversion_change_under_one_shifts() {
    // moving ρ changes its relative order with the rest of its old block and
    // with the whole new block; only those pairs can enter or leave the set
    for n in 2..=5 {
        for f in facets(n, Variant::Su, 8).unwrap() {
            let before = inversions(&f);
            for (o, g) in singleton_shifts(&f, Variant::Su, Mode::Path1, false).unwrap() {
                let rho = set::min(o.subset);
                let part = if o.side == Side::Sigma { &f.sigma } else { &f.tau };
                let jumped = (part.blocks()[o.block] & !o.subset) | part.blocks()[o.target().unwrap()];
                let after = inversions(&g);
                let changed: BTreeSet<_> = before.symmetric_difference(&after).copied().collect();
                for &(i, j) in &changed {
                    let other = if i == rho { j } else { i };
                    assert!(i == rho || j == rho, "{f} {o}: ({i},{j})");
                    assert!(jumped & set::bit(other) != 0);
                }
                assert!(after.len() as i64 - before.len() as i64 <= jumped.count_ones() as i64);
            }
        }
    }
}

// ---- reduction to an SCP

#[test]
fn reduction_examples() {
    let cases = [
        ("(1|23, 3|12)", Case::One, "(13|2, 3|12)", "R3⁻¹ on σ, block 2 by 1"),
        ("(1|2|34, 14|23)", Case::TwoA, "(1|24|3, 14|23)", "R4⁻¹ on σ, block 3 by 1"),
        ("(13|2|4, 34|12)", Case::TwoBi, "(13|2|4, 3|124)", "L4⁻¹ on τ, block 1 by 1"),
        ("(12|3|4, 23|14)", Case::TwoBii, "(12|3|4, 2|134)", "L3⁻¹ on τ, block 1 by 1"),
    ];
    for (f, case, scp, step) in cases {
        let f = face(f);
        assert_eq!(classify_case(&f, Variant::Su).unwrap(), case);
        let (p, trace) = normalize_to_scp(&f, Variant::Su).unwrap();
        assert_eq!(p.to_string(), scp);
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].to_string(), step);
    }
    let p = scp_from_perm(&perm("3|1|7|4|2|5|6"));
    assert_eq!(normalize_to_scp(&p, Variant::Su).unwrap(), (p.clone(), vec![]));
    assert_eq!(classify_case(&p, Variant::Su).unwrap(), Case::Scp);
    assert!(matches!(normalize_to_scp(&face("(1|2|3, 3|2|1)"), Variant::Su), Err(Error::NotFacet(_))));
}

#[test]
fn every_facet_reduces_and_replays() {
    for n in 1..=5 {
        for v in BOTH {
            let by_scp: HashMap<DiagonalFace, HashSet<DiagonalFace>> = Perm::all(n)
                .iter()
                .map(|w| {
                    let l = shift_lattice(w, v).unwrap();
                    (scp_from_perm(w), l.elements().iter().cloned().collect())
                })
                .collect();
            for f in facets(n, v, 8).unwrap() {
                let (p, trace) = normalize_to_scp(&f, v).unwrap();
                assert!(is_scp(&p));
                assert!(by_scp[&p].contains(&f), "{f} reduced to the wrong SCP");
                // undoing the trace from the SCP uses forward shifts only
                let mut g = p.clone();
                for o in trace.iter().rev() {
                    let back = o.undo().unwrap();
                    assert!(!back.inverse);
                    g = apply_shift(&g, &back).unwrap();
                }
                assert_eq!(g, f);
                let case = classify_case(&f, v).unwrap();
                assert_eq!(case == Case::Scp, is_scp(&f));
            }
        }
    }
}

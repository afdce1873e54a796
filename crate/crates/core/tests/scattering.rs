//! Angle variables: decomposition, the direct and inverse maps, slides,
//! normalization and linearized evolution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pbbs_core::bethe::canonical_invariant;
use pbbs_core::dynamics::{self, Path, Weyl};
use pbbs_core::kkr::{self, ActionVariable};
use pbbs_core::oracle::lex_path;
use pbbs_core::scattering::{self, AngleRep};
use pbbs_core::Error;
use proptest::prelude::*;

fn path(s: &str) -> Path {
    s.parse().unwrap()
}

fn rep(size: usize, d: i64, rows: &[(usize, i64)]) -> AngleRep {
    let mut mult = BTreeMap::new();
    let mut blocks: BTreeMap<usize, Vec<BigInt>> = BTreeMap::new();
    for &(j, r) in rows {
        *mult.entry(j).or_insert(0) += 1;
        blocks.entry(j).or_default().push(BigInt::from(r));
    }
    for v in blocks.values_mut() {
        v.sort();
    }
    AngleRep::new(ActionVariable::new(size, mult).unwrap(), BigInt::from(d), blocks).unwrap()
}

fn nonneg_paths(max_len: usize) -> impl Strategy<Value = Path> {
    prop::collection::vec(1u8..=2, 1..=max_len).prop_map(|v| {
        let p = Path::from_letters(v).unwrap();
        if p.weight() < 0 {
            p.omega()
        } else {
            p
        }
    })
}

fn all_nonneg(size: usize) -> impl Iterator<Item = Path> {
    (0..1u64 << size)
        .map(move |x| lex_path(x, size))
        .filter(|p| p.weight() >= 0)
}

#[test]
fn decomposition_examples() {
    let p = path("2211221112122111221");
    assert_eq!(scattering::decompose(&p).unwrap(), (2, path("1122111212211122122")));
    let all = scattering::decompositions(&p).unwrap();
    for (d, plus) in [
        (2, "1122111212211122122"),
        (6, "1112122111221221122"),
        (13, "1112212211221112122"),
    ] {
        assert!(all.contains(&(d, path(plus))));
        assert_eq!(dynamics::t1_pow(&path(plus), d as i64), p);
    }
    let q = path("2122112211221111222111122");
    let all = scattering::decompositions(&q).unwrap();
    assert!(all.contains(&(12, path("1111222111122212211221122"))));
    assert!(all.contains(&(19, path("1111222122112211221111222"))));
    assert_eq!(scattering::decompose(&path("1121")).unwrap(), (0, path("1121")));
    assert_eq!(scattering::decompose(&path("2212")), Err(Error::NegativeWeight));
}

#[test]
fn action_examples() {
    assert_eq!(
        scattering::action(&path("2211221112122111221")).to_vec(3),
        vec![2, 2, 1]
    );
    assert!(scattering::action(&Path::vacuum(9)).is_empty());
}

#[test]
fn direct_examples() {
    assert_eq!(
        scattering::direct(&path("2211221112122111221")).unwrap(),
        rep(19, 2, &[(3, 1), (2, 1), (2, 0), (1, 8), (1, 4)])
    );
    assert_eq!(
        scattering::direct(&path("12112211122211121112211111")).unwrap(),
        rep(26, 0, &[(3, 0), (2, 5), (2, 0), (1, 8), (1, 0)])
    );
    assert_eq!(scattering::direct(&Path::vacuum(4)).unwrap(), AngleRep::empty(4));
    assert_eq!(scattering::inverse(&AngleRep::empty(4)).unwrap(), Path::vacuum(4));
}

#[test]
fn two_decompositions_give_one_class() {
    let q = path("2122112211221111222111122");
    let a = AngleRep::from_rc(
        &kkr::kkr_map(&path("1111222111122212211221122")).unwrap(),
        BigInt::from(12),
    );
    let b = AngleRep::from_rc(
        &kkr::kkr_map(&path("1111222122112211221111222")).unwrap(),
        BigInt::from(19),
    );
    assert_eq!(canonical_invariant(&a), canonical_invariant(&b));
    assert_eq!(scattering::normalize(&a), scattering::normalize(&b));
    assert_eq!(scattering::inverse(&a).unwrap(), q);
    assert_eq!(scattering::inverse(&b).unwrap(), q);
}

#[test]
fn slide_example() {
    let a = rep(25, 12, &[(4, 1), (3, 1), (2, 7), (2, 7), (1, 10)]);
    let b = rep(25, 19, &[(4, 0), (3, 3), (2, 4), (2, 4), (1, 5)]);
    assert_eq!(scattering::slide(&a, 3, 1).element_windows(), b.element_windows());
    assert_eq!(scattering::slide(&a, 2, 0), a);
}

#[test]
fn linear_evolution_example() {
    let a = rep(19, 2, &[(3, 1), (2, 1), (2, 0), (1, 8), (1, 4)]);
    assert_eq!(
        scattering::linear_evolve(&a, 2, &BigInt::from(1000)),
        rep(19, 2, &[(3, 2001), (2, 2001), (2, 2000), (1, 1008), (1, 1004)])
    );
    assert_eq!(scattering::linear_evolve(&a, 3, &BigInt::from(0)), a);
}

#[test]
fn normalized_images_of_large_evolutions() {
    let n = rep(19, 0, &[(3, 1), (2, 1), (2, 0), (1, 7), (1, 3)]);
    assert_eq!(scattering::inverse(&n).unwrap(), path("1122112112211121222"));
    let n14 = rep(19, 14, &[(3, 1), (2, 1), (2, 0), (1, 7), (1, 3)]);
    assert_eq!(scattering::inverse(&n14).unwrap(), path("1211221112122211221"));
    let p = path("2211221112122111221");
    assert_eq!(scattering::fast_evolve(&p, 2, 1000), path("1211221112122211221"));
    assert_eq!(scattering::fast_evolve(&p, 3, 1000), path("2112221211221112112"));
    let q = path("12112211122211121112211111");
    assert_eq!(scattering::fast_evolve(&q, 3, 130), q);
}

#[test]
fn huge_times_match_reduced_times() {
    let p = path("2211221112122111221");
    let big: BigInt = BigInt::from(10).pow(40);
    let fast = scattering::fast_evolve(&p, 2, big.clone());
    let n = pbbs_core::periods::generic_period(&scattering::action(&p), 2);
    let reduced = u64::try_from(&big % &n).unwrap();
    assert_eq!(fast, dynamics::evolve_steps(&p, 2, reduced));
}

#[test]
fn display_format() {
    let a = rep(7, 3, &[(2, 1), (1, 2)]);
    assert_eq!(a.to_string(), "3 +\n1 ## 1\n3 #  2\n");
}

#[test]
fn malformed_representatives_are_rejected() {
    let m = ActionVariable::from_multiplicities(8, &[2]).unwrap();
    let unsorted = BTreeMap::from([(1, vec![BigInt::from(5), BigInt::from(1)])]);
    assert!(AngleRep::new(m.clone(), BigInt::from(0), unsorted).is_err());
    let too_wide = BTreeMap::from([(1, vec![BigInt::from(0), BigInt::from(5)])]);
    assert!(AngleRep::new(m.clone(), BigInt::from(0), too_wide).is_err());
    let wrong_len = BTreeMap::from([(2, vec![BigInt::from(0)])]);
    assert!(AngleRep::new(m, BigInt::from(0), wrong_len).is_err());
}

/// Same class: equal invariants and the same decoded path.
fn same_class(a: &AngleRep, b: &AngleRep) -> bool {
    canonical_invariant(a) == canonical_invariant(b) && scattering::inverse(a) == scattering::inverse(b)
}

#[test]
fn normalize_picks_one_representative_of_a_symmetric_class() {
    let a = rep(4, 0, &[(1, 0), (1, 0)]);
    let b = rep(4, 2, &[(1, 0), (1, 0)]);
    assert_ne!(a, b);
    assert!(same_class(&a, &b));
    assert_eq!(scattering::inverse(&a).unwrap(), path("1212"));
    assert!(!same_class(&a, &rep(4, 1, &[(1, 0), (1, 0)])));
}

#[test]
fn every_decomposition_gives_the_same_class() {
    for size in 1..=10 {
        for p in all_nonneg(size) {
            let reference = scattering::direct(&p).unwrap();
            for (d, plus) in scattering::decompositions(&p).unwrap() {
                let a = AngleRep::from_rc(&kkr::kkr_map(&plus).unwrap(), BigInt::from(d));
                assert!(same_class(&a, &reference), "{p} d={d}");
            }
        }
    }
}

#[test]
fn direct_map_intertwines_evolutions() {
    for size in 1..=10 {
        for p in all_nonneg(size) {
            let a = scattering::direct(&p).unwrap();
            for l in 1..=4u64 {
                let moved = scattering::linear_evolve(&a, l, &BigInt::from(1));
                let image = scattering::direct(&dynamics::evolve(&p, l).next).unwrap();
                assert!(same_class(&moved, &image), "{p} l={l}");
            }
            let shifted = scattering::direct(&dynamics::t1(&p)).unwrap();
            let plus_one = AngleRep::new(a.action().clone(), a.offset() + 1, a.blocks().clone()).unwrap();
            assert!(same_class(&shifted, &plus_one), "{p} T_1");
        }
    }
}

#[test]
fn angle_classes_biject_with_paths() {
    for size in 1..=10 {
        let mut seen = std::collections::HashSet::new();
        for p in all_nonneg(size) {
            let a = scattering::direct(&p).unwrap();
            assert!(scattering::normalize(&a).is_normalized());
            assert!(
                seen.insert((a.action().clone(), canonical_invariant(&a))),
                "two paths share a class: {p}"
            );
        }
    }
}

proptest! {
    #[test]
    fn inverse_after_direct(p in nonneg_paths(20)) {
        let a = scattering::direct(&p).unwrap();
        prop_assert_eq!(scattering::inverse(&a).unwrap(), p);
    }

    #[test]
    fn normalize_is_canonical(p in nonneg_paths(20), k in 1usize..=4, n in -50i64..=50, t in -200i64..=200, l in 1u64..=4) {
        let a = scattering::linear_evolve(&scattering::direct(&p).unwrap(), l, &BigInt::from(t));
        let n0 = scattering::normalize(&a);
        prop_assert!(n0.is_normalized());
        prop_assert!(n0.offset() >= &BigInt::from(0) && n0.offset() < &BigInt::from(p.len()));
        prop_assert_eq!(scattering::normalize(&n0), n0.clone());
        let k = a.action().lengths().get(k % a.action().lengths().len().max(1)).copied().unwrap_or(1);
        let slid = scattering::slide(&a, k, n);
        prop_assert!(same_class(&slid, &a));
        prop_assert!(same_class(&n0, &a));
    }

    #[test]
    fn slides_form_an_abelian_group(p in nonneg_paths(20), n1 in -20i64..=20, n2 in -20i64..=20, k1 in 0usize..4, k2 in 0usize..4) {
        let a = scattering::direct(&p).unwrap();
        let lengths = a.action().lengths();
        prop_assume!(!lengths.is_empty());
        let (k1, k2) = (lengths[k1 % lengths.len()], lengths[k2 % lengths.len()]);
        let s = |x: &AngleRep, k, n| scattering::slide(x, k, n);
        prop_assert_eq!(s(&s(&a, k1, n1), k1, n2).element_windows(), s(&a, k1, n1 + n2).element_windows());
        prop_assert_eq!(s(&s(&a, k1, n1), k2, n2).element_windows(), s(&s(&a, k2, n2), k1, n1).element_windows());
        prop_assert_eq!(s(&s(&a, k1, n1), k1, -n1).element_windows(), a.element_windows());
    }

    #[test]
    fn action_is_invariant(p in prop::collection::vec(1u8..=2, 1..=20), l in 1u64..=5, w in 0usize..3) {
        let p = Path::from_letters(p).unwrap();
        let m = scattering::action(&p);
        prop_assert_eq!(scattering::action(&dynamics::evolve(&p, l).next), m.clone());
        let w = [Weyl::Omega, Weyl::S0, Weyl::S1][w];
        prop_assert_eq!(scattering::action(&w.apply(&p)), m);
    }

    #[test]
    fn fast_evolution_handles_negative_time(p in prop::collection::vec(1u8..=2, 1..=16), l in 1u64..=4, t in 0u64..=20) {
        let p = Path::from_letters(p).unwrap();
        let forward = dynamics::evolve_steps(&p, l, t);
        prop_assert_eq!(scattering::fast_evolve(&p, l, t), forward.clone());
        prop_assert_eq!(scattering::fast_evolve(&forward, l, -(t as i64)), p);
    }
}

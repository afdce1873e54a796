//! Brute-force oracle: census, iterated periods, orbit union-find and the
//! self-check suites.

use std::collections::{BTreeMap, BTreeSet};

use pbbs_core::dynamics::{self, Path, Weyl};
use pbbs_core::kkr::{self, ActionVariable};
use pbbs_core::oracle::{self, lex_path, Suite, CENSUS_MAX_LEN, ORBITS_MAX_LEN};
use pbbs_core::scattering;
use pbbs_core::Error;

fn path(s: &str) -> Path {
    s.parse().unwrap()
}

fn config(size: usize, m: &[usize]) -> ActionVariable {
    ActionVariable::from_multiplicities(size, m).unwrap()
}

#[test]
fn lexicographic_enumeration() {
    let all: Vec<String> = (0..8).map(|x| lex_path(x, 3).to_string()).collect();
    assert_eq!(all, ["111", "112", "121", "122", "211", "212", "221", "222"]);
}

#[test]
fn census_of_eight_sites_with_four_balls() {
    let c = oracle::census(8, Some(4)).unwrap();
    let sizes: BTreeMap<Vec<usize>, usize> = c.classes.iter().map(|(m, k)| (m.to_vec(4), k.all.len())).collect();
    let want = BTreeMap::from([
        (vec![4, 0, 0, 0], 2),
        (vec![2, 1, 0, 0], 24),
        (vec![0, 2, 0, 0], 4),
        (vec![1, 0, 1, 0], 32),
        (vec![0, 0, 0, 1], 8),
    ]);
    assert_eq!(sizes, want);
    assert_eq!(c.total(), 70);
    let k = c.class(&config(8, &[2, 1])).unwrap();
    assert_eq!(k.energies, vec![3, 4, 4, 4]);
    let mut orbit: Vec<Path> = ["12121122", "12112122", "11212122"]
        .iter()
        .flat_map(|s| (0..8).map(move |d| dynamics::t1_pow(&path(s), d)))
        .collect();
    orbit.sort();
    orbit.dedup();
    assert_eq!(orbit, k.all);
}

#[test]
fn census_of_two_sites() {
    let c = oracle::census(2, None).unwrap();
    assert_eq!(c.total(), 4);
    let empty = c.class(&config(2, &[])).unwrap();
    assert_eq!(empty.all, vec![path("11"), path("22")]);
    assert_eq!(empty.nonneg, vec![path("11")]);
    let one = c.class(&config(2, &[1])).unwrap();
    assert_eq!(one.all, vec![path("12"), path("21")]);
}

#[test]
fn census_classes_agree_with_scattering_and_are_invariant() {
    for size in 1..=10 {
        let c = oracle::census(size, None).unwrap();
        assert_eq!(c.total(), 1 << size);
        for (m, k) in &c.classes {
            let set: BTreeSet<&Path> = k.all.iter().collect();
            for p in &k.all {
                assert_eq!(&scattering::action(p), m, "{p}");
                for l in 1..=4 {
                    assert!(set.contains(&dynamics::evolve(p, l).next));
                }
                for w in [Weyl::Omega, Weyl::S0, Weyl::S1] {
                    assert!(set.contains(&w.apply(p)));
                }
            }
        }
    }
}

#[test]
fn ball_filter_counts_letter_two() {
    let c = oracle::census(9, Some(3)).unwrap();
    assert!(c.classes.values().flat_map(|k| &k.all).all(|p| p.count_twos() == 3));
    assert_eq!(c.total(), 84);
}

#[test]
fn census_size_guard() {
    assert!(matches!(
        oracle::census(CENSUS_MAX_LEN + 1, None),
        Err(Error::SizeGuard { .. })
    ));
    assert!(matches!(oracle::census(0, None), Err(Error::SizeGuard { .. })));
}

#[test]
fn brute_period_examples() {
    assert_eq!(oracle::brute_period(&path("2221111221121"), 1, 100).unwrap(), 13);
    assert_eq!(oracle::brute_period(&Path::vacuum(9), 3, 1).unwrap(), 1);
    let m = config(23, &[1, 2, 0, 1]);
    let p = kkr::kkr_inverse(&kkr::enumerate_rcs(&m)[0]).unwrap();
    assert_eq!(oracle::brute_period(&p, 2, 10_000).unwrap(), 345);
    assert_eq!(oracle::brute_period(&p, 2, 344), Err(Error::CapExceeded { cap: 344 }));
}

#[test]
fn brute_composite_period_examples() {
    let p = path("2221111221121");
    assert_eq!(oracle::brute_composite_period(&p, &[(1, 1)], 100).unwrap(), 13);
    assert_eq!(oracle::brute_composite_period(&p, &[(2, 1), (2, -1)], 100).unwrap(), 1);
    assert_eq!(
        oracle::brute_composite_period(&p, &[(2, -1)], 1000).unwrap(),
        oracle::brute_period(&p, 2, 1000).unwrap()
    );
}

#[test]
fn brute_orbit_examples() {
    assert_eq!(oracle::brute_orbits(&config(8, &[1, 0, 1]), &[1]).unwrap().count, 4);
    let o = oracle::brute_orbits(&config(8, &[4]), &[1]).unwrap();
    assert_eq!((o.count, o.sizes), (1, vec![2]));
    let o = oracle::brute_orbits(&config(8, &[0, 0, 0, 1]), &[1, 2, 3, 4]).unwrap();
    assert_eq!((o.count, o.sizes), (1, vec![8]));
    assert_eq!(oracle::brute_orbits(&config(6, &[]), &[1]).unwrap().count, 1);
    let big = config(ORBITS_MAX_LEN + 2, &[1]);
    assert!(matches!(oracle::brute_orbits(&big, &[1]), Err(Error::SizeGuard { .. })));
}

#[test]
fn suite_names() {
    for (s, want) in [
        ("counting", Suite::Counting),
        ("periods", Suite::Periods),
        ("linearization", Suite::Linearization),
        ("kkr", Suite::Kkr),
        ("crystal", Suite::Crystal),
    ] {
        assert_eq!(s.parse::<Suite>().unwrap(), want);
    }
    assert!(matches!("bogus".parse::<Suite>(), Err(Error::Parse(_))));
}

#[test]
fn every_suite_passes_at_small_sizes() {
    for suite in [
        Suite::Counting,
        Suite::Periods,
        Suite::Linearization,
        Suite::Kkr,
        Suite::Crystal,
    ] {
        for size in [1, 4, 7, 8] {
            let checks = oracle::verify(suite, size, 3).unwrap();
            assert!(!checks.is_empty());
            for c in checks {
                assert!(c.pass, "{suite:?} L={size} {}: {}", c.name, c.detail);
            }
        }
    }
}

#[test]
fn verify_reports_size_guards() {
    assert!(oracle::verify(Suite::Kkr, CENSUS_MAX_LEN + 1, 0).is_err());
    assert!(oracle::verify(Suite::Counting, 0, 0).is_err());
}

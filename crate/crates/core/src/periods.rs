//! Generic and fundamental periods of `T_l` and orbit counts.
//!
//! The generic period of a level set is `LCM(1, ∪' det F / det F[j])`, the
//! least positive integer `N` with `N F⁻¹h' ∈ ℤ^s`. A path whose riggings
//! repeat with finer quasi-periods `g_j` has fundamental period
//! `LCM(1, ∪' det F / (g_j det F[j]))`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bethe::{self, linalg, StringSystem};
use crate::dynamics::{self, Path};
use crate::error::{Error, Result};
use crate::kkr::{self, ActionVariable};
use crate::scattering::{self, AngleRep};

/// Everything that enters a period computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    pub l: u64,
    /// Occurring lengths `j_1 < ⋯ < j_s`.
    pub lengths: Vec<usize>,
    pub det_f: BigInt,
    /// `det F[j]` in the order of `lengths`.
    pub det_f_columns: Vec<BigInt>,
    /// Symmetry orders `g_j` (all 1 for the generic report).
    pub symmetry: BTreeMap<usize, u64>,
    /// Rationals fed to `LCM(1, …)`.
    pub lcm_args: Vec<BigRational>,
    pub generic: BigInt,
    pub fundamental: Option<BigInt>,
}

/// `LCM(1, r_1, …, r_n)`: the least positive integer in
/// `ℤ ∩ ℤr_1 ∩ ⋯ ∩ ℤr_n`, i.e. the lcm of the reduced numerators.
pub fn lcm_rationals(rs: &[BigRational]) -> Result<BigInt> {
    let mut acc = BigInt::one();
    for r in rs {
        if r.is_zero() {
            return Err(Error::ZeroRational);
        }
        acc = acc.lcm(&r.numer().abs());
    }
    Ok(acc)
}

/// `det F / det F[j]` over the lengths with `det F[j] ≠ 0`.
fn determinant_ratios(
    sys: &StringSystem,
    h_prime: &[BigInt],
    g: &BTreeMap<usize, u64>,
) -> (Vec<BigInt>, Vec<BigRational>) {
    let cols: Vec<BigInt> = (0..sys.lengths.len())
        .map(|c| linalg::det(&linalg::replace_column(&sys.f, c, h_prime)))
        .collect();
    let args = sys
        .lengths
        .iter()
        .zip(&cols)
        .filter(|(_, d)| !d.is_zero())
        .map(|(j, d)| BigRational::new(sys.det_f.clone(), d * BigInt::from(g.get(j).copied().unwrap_or(1))))
        .collect();
    (cols, args)
}

/// Generic period from the `F` determinants, with its LCM arguments.
pub fn generic_period_lcm(m: &ActionVariable, l: u64) -> (BigInt, Vec<BigRational>) {
    if m.is_empty() {
        return (BigInt::one(), Vec::new());
    }
    let sys = StringSystem::build(m, l).expect("admissible configuration");
    let (_, args) = determinant_ratios(&sys, &sys.h_prime, &BTreeMap::new());
    (lcm_rationals(&args).expect("nonzero ratios"), args)
}

/// Generic period from the vacancy form
/// `∪'_{n ≤ t} p_{i_{n+1}} p_{i_n} / ((i_{n+1} − i_n) p_{i_s})` with
/// `i_n = min(l, j_n)`, `i_0 = 0`, `p_0 = L`. The term reaching `i_s`
/// cancels `p_{i_s}`; other terms are skipped when `p_{i_s} = 0`.
pub fn generic_period_lcm2(m: &ActionVariable, l: u64) -> (BigInt, Vec<BigRational>) {
    if m.is_empty() {
        return (BigInt::one(), Vec::new());
    }
    let mut i = vec![0usize];
    i.extend(m.lengths().iter().map(|&j| j.min(l as usize)));
    let s = i.len() - 1;
    let t = (0..s).filter(|&n| i[n + 1] > i[n]).max().expect("i_1 > i_0 = 0");
    let p = |k: usize| BigInt::from(m.vacancy(k));
    let p_top = p(i[s]);
    let mut args = Vec::new();
    for n in 0..=t {
        let gap = BigInt::from(i[n + 1] - i[n]);
        if i[n + 1] == i[s] {
            args.push(BigRational::new(p(i[n]), gap));
        } else if !p_top.is_zero() {
            args.push(BigRational::new(p(i[n + 1]) * p(i[n]), gap * &p_top));
        }
    }
    (lcm_rationals(&args).expect("nonzero terms"), args)
}

/// Generic period `N` of `T_l` on the level set of `m`. Both formulas are
/// evaluated and asserted equal; balanced level sets with `l ≥ j_s` give
/// `2 m_{j_s}`.
pub fn generic_period(m: &ActionVariable, l: u64) -> BigInt {
    let (a, _) = generic_period_lcm(m, l);
    let (b, _) = generic_period_lcm2(m, l);
    assert_eq!(a, b, "period formulas disagree");
    if !m.is_empty() && 2 * m.balls() == m.size() && l as usize >= m.longest() {
        assert_eq!(a, BigInt::from(2 * m.m(m.longest())), "balanced saturated period");
    }
    a
}

/// Symmetry order `g_j` per block: the largest `g | gcd(m_j, p_j)` with
/// `J_{i+m_j/g} − J_i = p_j/g` for all `i`.
pub fn symmetry_orders(a: &AngleRep) -> BTreeMap<usize, u64> {
    let m = a.action();
    m.lengths()
        .into_iter()
        .map(|j| {
            let (mj, pj) = (m.m(j) as u64, m.vacancy(j) as u64);
            let big = mj.gcd(&pj);
            let g = (1..=big)
                .rev()
                .filter(|g| big % g == 0)
                .find(|&g| {
                    let step = BigInt::from(mj / g);
                    let jump = BigInt::from(pj / g);
                    (1..=mj).all(|i| {
                        let i = BigInt::from(i);
                        a.extended(j, &(&i + &step)) - a.extended(j, &i) == jump
                    })
                })
                .expect("g = 1 always qualifies");
            (j, g)
        })
        .collect()
}

/// `h' = Σ β_l h'_l` for a composite evolution `Π T_l^{β_l}`.
fn composite_h(lengths: &[usize], betas: &[(u64, i64)]) -> Vec<BigInt> {
    lengths
        .iter()
        .map(|&j| {
            betas
                .iter()
                .map(|&(l, b)| BigInt::from(b * (l as usize).min(j) as i64))
                .sum()
        })
        .collect()
}

/// Period report for `p` under `Π T_l^{β_l}`.
pub fn composite_report(p: &Path, betas: &[(u64, i64)]) -> PeriodReport {
    let q = if p.weight() < 0 { p.omega() } else { p.clone() };
    let a = scattering::direct(&q).expect("non-negative weight");
    let m = a.action().clone();
    let l = betas.first().map_or(1, |b| b.0);
    if m.is_empty() {
        return PeriodReport {
            l,
            lengths: Vec::new(),
            det_f: BigInt::one(),
            det_f_columns: Vec::new(),
            symmetry: BTreeMap::new(),
            lcm_args: Vec::new(),
            generic: BigInt::one(),
            fundamental: Some(BigInt::one()),
        };
    }
    let sys = StringSystem::build(&m, l).expect("admissible configuration");
    let h = composite_h(&sys.lengths, betas);
    let g = symmetry_orders(&a);
    let (cols, generic_args) = determinant_ratios(&sys, &h, &BTreeMap::new());
    let (_, args) = determinant_ratios(&sys, &h, &g);
    PeriodReport {
        l,
        lengths: sys.lengths.clone(),
        det_f: sys.det_f.clone(),
        det_f_columns: cols,
        symmetry: g,
        generic: lcm_rationals(&generic_args).expect("nonzero"),
        fundamental: Some(lcm_rationals(&args).expect("nonzero")),
        lcm_args: args,
    }
}

/// Report for the fundamental period of `p` under `T_l`.
pub fn fundamental_report(p: &Path, l: u64) -> PeriodReport {
    composite_report(p, &[(l, 1)])
}

/// Report for the generic period of `m` under `T_l`.
pub fn generic_report(m: &ActionVariable, l: u64) -> PeriodReport {
    let (_, lcm_args) = generic_period_lcm(m, l);
    let (lengths, det_f, det_f_columns) = if m.is_empty() {
        (Vec::new(), BigInt::one(), Vec::new())
    } else {
        let sys = StringSystem::build(m, l).expect("admissible configuration");
        let cols = sys.det_f_columns();
        (sys.lengths, sys.det_f, cols)
    };
    PeriodReport {
        l,
        symmetry: lengths.iter().map(|&j| (j, 1)).collect(),
        lengths,
        det_f,
        det_f_columns,
        lcm_args,
        generic: generic_period(m, l),
        fundamental: None,
    }
}

/// Minimal `N ≥ 1` with `T_l^N(p) = p`.
pub fn fundamental_period(p: &Path, l: u64) -> BigInt {
    fundamental_report(p, l).fundamental.expect("set for paths")
}

/// Minimal `N ≥ 1` with `(Π T_l^{β_l})^N (p) = p`.
pub fn composite_fundamental_period(p: &Path, betas: &[(u64, i64)]) -> BigInt {
    composite_report(p, betas).fundamental.expect("set for paths")
}

/// Generic period of `Π T_l^{β_l}` on the level set of `m`.
pub fn composite_generic_period(m: &ActionVariable, betas: &[(u64, i64)]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    let sys = StringSystem::build(m, 1).expect("admissible configuration");
    let h = composite_h(&sys.lengths, betas);
    let (_, args) = determinant_ratios(&sys, &h, &BTreeMap::new());
    lcm_rationals(&args).expect("nonzero")
}

/// Euler's totient.
fn totient(mut n: u64) -> u64 {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// `C(p, m)`: orbits of weak compositions of `p` into `m` parts under
/// cyclic rotation, by Burnside's lemma.
pub fn cyclic_composition_orbits(p: u64, m: u64) -> BigInt {
    assert!(m >= 1);
    let mut total = BigInt::zero();
    for e in (1..=m).filter(|e| m.is_multiple_of(*e)) {
        // Rotations with gcd e have e cycles of length m/e.
        let cycle = m / e;
        if p.is_multiple_of(cycle) {
            total += bethe::binomial(p / cycle + e - 1, e - 1) * totient(cycle);
        }
    }
    let (q, r) = total.div_rem(&BigInt::from(m));
    assert!(r.is_zero(), "Burnside sum divisible by group order");
    q
}

/// Orbits of the full family `{T_l}` on the level set of `m`:
/// `Π_j C(p_j, m_j)`.
pub fn orbit_count_all_evolutions(m: &ActionVariable) -> BigInt {
    m.lengths()
        .into_iter()
        .map(|j| cyclic_composition_orbits(m.vacancy(j) as u64, m.m(j) as u64))
        .product()
}

/// Whether `gcd(p_j, m_j) = 1` for every occurring length (`gcd(0, m) = m`).
/// Then every path of the level set has fundamental period `N`.
pub fn is_generic(m: &ActionVariable) -> bool {
    m.lengths()
        .into_iter()
        .all(|j| (m.vacancy(j) as u64).gcd(&(m.m(j) as u64)) == 1)
}

/// All paths of non-negative weight with soliton content `m`, from the
/// angle variables.
pub fn level_set(m: &ActionVariable) -> BTreeSet<Path> {
    let mut out = BTreeSet::new();
    for rc in kkr::enumerate_rcs(m) {
        let plus = kkr::kkr_inverse(&rc).expect("enumerated rcs are valid");
        for d in 0..m.size() as i64 {
            out.insert(dynamics::t1_pow(&plus, d));
        }
    }
    out
}

/// Orbits of `T_l` on the level set of `m`: `Ω/N` in the generic case,
/// otherwise counted on the level set.
pub fn orbit_count_single(m: &ActionVariable, l: u64) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    if is_generic(m) {
        let (q, r) = bethe::omega_count(m).div_rem(&generic_period(m, l));
        assert!(r.is_zero(), "Ω divisible by N in the generic case");
        return q;
    }
    let set = level_set(m);
    let mut seen = BTreeSet::new();
    let mut orbits = 0u64;
    for p in &set {
        if seen.contains(p) {
            continue;
        }
        orbits += 1;
        let mut q = p.clone();
        loop {
            seen.insert(q.clone());
            q = dynamics::evolve(&q, l).next;
            if &q == p {
                break;
            }
        }
    }
    BigInt::from(orbits)
}

/// Converts a small period for iteration.
pub fn as_u64(n: &BigInt) -> u64 {
    n.to_u64().expect("period fits in u64")
}

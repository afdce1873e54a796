//! Brute-force ground truth: path enumeration, energy census, iterated
//! periods, orbit counting and the self-check suites.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bethe;
use crate::crystal::{self, AffineElement, CrystalElement};
use crate::dynamics::{self, Path};
use crate::error::{Error, Result};
use crate::kkr::{self, ActionVariable};
use crate::periods;
use crate::scattering;

/// Largest `L` accepted by [`census`].
pub const CENSUS_MAX_LEN: usize = 22;
/// Largest `L` accepted by [`brute_orbits`].
pub const ORBITS_MAX_LEN: usize = 14;

/// Paths of one level set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusClass {
    /// Every path with this soliton content, any weight.
    pub all: Vec<Path>,
    /// Paths of non-negative weight.
    pub nonneg: Vec<Path>,
    /// `(E_1, …, E_{⌊L/2⌋})`, shared by the whole class.
    pub energies: Vec<u64>,
}

/// All paths of a size classified by their energies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub size: usize,
    pub balls: Option<usize>,
    pub classes: BTreeMap<ActionVariable, CensusClass>,
}

impl Census {
    pub fn total(&self) -> usize {
        self.classes.values().map(|c| c.all.len()).sum()
    }

    pub fn class(&self, m: &ActionVariable) -> Option<&CensusClass> {
        self.classes.get(m)
    }
}

/// Path number `x` in lexicographic order over `{1,2}^L`.
pub fn lex_path(x: u64, len: usize) -> Path {
    Path::from_letters((0..len).map(|k| 1 + ((x >> (len - 1 - k)) & 1) as u8).collect()).expect("letters are 1 or 2")
}

/// `E_1, …, E_n` stopping early once the energies saturate.
fn energy_vector(p: &Path, n: usize) -> Vec<u64> {
    let mut e = Vec::with_capacity(n);
    for l in 1..=n as u64 {
        let v = dynamics::energy(p, l);
        if e.last() == Some(&v) {
            e.resize(n, v);
            break;
        }
        e.push(v);
    }
    e
}

fn action_from_energy_vector(size: usize, e: &[u64]) -> ActionVariable {
    let n = e.len();
    let at = |l: usize| if l == 0 { 0 } else { e[(l - 1).min(n - 1)] as i64 };
    let mult = (1..=n)
        .map(|l| (l, (2 * at(l) - at(l - 1) - at(l + 1)) as usize))
        .collect();
    ActionVariable::new(size, mult).expect("energies give an admissible configuration")
}

/// Classifies every path of length `size` (optionally only those with
/// `balls` letters `2`) by `m_l = 2E_l − E_{l−1} − E_{l+1}`.
pub fn census(size: usize, balls: Option<usize>) -> Result<Census> {
    if size == 0 || size > CENSUS_MAX_LEN {
        return Err(Error::SizeGuard {
            what: "census length",
            value: size as u128,
            limit: CENSUS_MAX_LEN as u128,
        });
    }
    let n = (size / 2).max(1);
    let entries: Vec<(ActionVariable, Vec<u64>, Path)> = (0..1u64 << size)
        .into_par_iter()
        .map(|x| lex_path(x, size))
        .filter(|p| balls.is_none_or(|b| p.count_twos() == b))
        .map(|p| {
            let e = energy_vector(&p, n);
            (action_from_energy_vector(size, &e), e, p)
        })
        .collect();
    let mut classes: BTreeMap<ActionVariable, CensusClass> = BTreeMap::new();
    for (m, e, p) in entries {
        let c = classes.entry(m).or_default();
        if c.all.is_empty() {
            c.energies = e;
        }
        if p.weight() >= 0 {
            c.nonneg.push(p.clone());
        }
        c.all.push(p);
    }
    Ok(Census { size, balls, classes })
}

/// Minimal `N ≤ cap` with `T_l^N(p) = p` by iteration.
pub fn brute_period(p: &Path, l: u64, cap: u64) -> Result<u64> {
    let mut q = p.clone();
    for n in 1..=cap {
        q = dynamics::evolve(&q, l).next;
        if &q == p {
            return Ok(n);
        }
    }
    Err(Error::CapExceeded { cap })
}

/// Minimal `N ≤ cap` with `(Π T_l^{β_l})^N (p) = p` by iteration.
pub fn brute_composite_period(p: &Path, betas: &[(u64, i64)], cap: u64) -> Result<u64> {
    let step = |q: &Path| {
        let mut r = q.clone();
        for &(l, b) in betas {
            for _ in 0..b.unsigned_abs() {
                r = if b > 0 {
                    dynamics::evolve(&r, l).next
                } else {
                    dynamics::evolve_inverse(&r, l)
                };
            }
        }
        r
    };
    let mut q = p.clone();
    for n in 1..=cap {
        q = step(&q);
        if &q == p {
            return Ok(n);
        }
    }
    Err(Error::CapExceeded { cap })
}

/// Orbit count and sorted orbit sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    pub count: usize,
    pub sizes: Vec<usize>,
}

/// Orbits of the group generated by `{T_l : l ∈ evolutions}` on the
/// non-negative-weight paths with content `m`.
pub fn brute_orbits(m: &ActionVariable, evolutions: &[u64]) -> Result<Orbits> {
    let size = m.size();
    if size > ORBITS_MAX_LEN {
        return Err(Error::SizeGuard {
            what: "orbit census length",
            value: size as u128,
            limit: ORBITS_MAX_LEN as u128,
        });
    }
    let c = census(size, Some(m.balls()))?;
    let paths = c.class(m).map(|k| k.nonneg.clone()).unwrap_or_default();
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut uf = UnionFind::<usize>::new(paths.len());
    for (i, p) in paths.iter().enumerate() {
        for &l in evolutions {
            let q = dynamics::evolve(p, l).next;
            uf.union(i, index[&q]);
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..paths.len() {
        *sizes.entry(uf.find(i)).or_insert(0) += 1;
    }
    let mut sizes: Vec<usize> = sizes.into_values().collect();
    sizes.sort_unstable();
    Ok(Orbits {
        count: sizes.len(),
        sizes,
    })
}

/// Self-check suites exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Counting,
    Periods,
    Linearization,
    Kkr,
    Crystal,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "counting" => Suite::Counting,
            "periods" => Suite::Periods,
            "linearization" => Suite::Linearization,
            "kkr" => Suite::Kkr,
            "crystal" => Suite::Crystal,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

/// Outcome of one comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// Runs `suite` at system size `size`. Random sampling uses `seed`.
pub fn verify(suite: Suite, size: usize, seed: u64) -> Result<Vec<Check>> {
    match suite {
        Suite::Counting => verify_counting(size),
        Suite::Periods => verify_periods(size),
        Suite::Linearization => verify_linearization(size),
        Suite::Kkr => verify_kkr(size),
        Suite::Crystal => Ok(verify_crystal(size, seed)),
    }
}

fn all_paths(size: usize) -> Result<Vec<Path>> {
    if size == 0 || size > CENSUS_MAX_LEN {
        return Err(Error::SizeGuard {
            what: "exhaustive length",
            value: size as u128,
            limit: CENSUS_MAX_LEN as u128,
        });
    }
    Ok((0..1u64 << size).map(|x| lex_path(x, size)).collect())
}

fn verify_counting(size: usize) -> Result<Vec<Check>> {
    let c = census(size, None)?;
    let mut checks = Vec::new();
    for balls in 0..=size / 2 {
        let mut sum = BigInt::from(0);
        for m in kkr::configurations_with_balls(size, balls) {
            let omega = bethe::omega_count(&m);
            let found = c.class(&m).map_or(0, |k| k.nonneg.len());
            checks.push(Check::new(
                format!("omega {:?} L={size}", m.to_vec(m.longest())),
                omega == BigInt::from(found),
                format!("formula {omega}, census {found}"),
            ));
            if size <= 10 {
                let all: Vec<u64> = (1..=(size / 2).max(1) as u64).collect();
                let brute = brute_orbits(&m, &all)?.count;
                let formula = periods::orbit_count_all_evolutions(&m);
                checks.push(Check::new(
                    format!("orbits {:?} L={size}", m.to_vec(m.longest())),
                    formula == BigInt::from(brute),
                    format!("formula {formula}, brute {brute}"),
                ));
            }
            sum += omega;
        }
        let binom = bethe::binomial(size as u64, balls as u64);
        checks.push(Check::new(
            format!("completeness L={size} M={balls}"),
            sum == binom,
            format!("sum {sum}, binomial {binom}"),
        ));
    }
    let partition = c.total() == 1usize << size;
    checks.push(Check::new(
        format!("partition L={size}"),
        partition,
        format!("{} paths", c.total()),
    ));
    Ok(checks)
}

fn verify_periods(size: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for l in 1..=4u64 {
        let mut bad = Vec::new();
        for p in all_paths(size)? {
            let formula = periods::fundamental_period(&p, l);
            let brute = brute_period(&p, l, 1 << 20)?;
            if formula != BigInt::from(brute) {
                bad.push(format!("{p}: formula {formula}, brute {brute}"));
            }
        }
        checks.push(Check::new(
            format!("fundamental period L={size} l={l}"),
            bad.is_empty(),
            bad.join("; "),
        ));
    }
    Ok(checks)
}

fn verify_linearization(size: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for l in 1..=5u64 {
        let mut bad = Vec::new();
        for p in all_paths(size)? {
            let mut q = p.clone();
            for t in 0..=20i64 {
                if scattering::fast_evolve(&p, l, t) != q {
                    bad.push(format!("{p} t={t}"));
                    break;
                }
                q = dynamics::evolve(&q, l).next;
            }
        }
        checks.push(Check::new(
            format!("linearization L={size} l={l}"),
            bad.is_empty(),
            bad.join("; "),
        ));
    }
    Ok(checks)
}

fn verify_kkr(size: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut bad = Vec::new();
    let mut highest = 0usize;
    for p in all_paths(size)?.into_iter().filter(Path::is_highest) {
        highest += 1;
        let rc = kkr::kkr_map(&p)?;
        if kkr::kkr_inverse(&rc)? != p || kkr::kkr_inverse_pwl(&rc)? != p {
            bad.push(p.to_string());
        }
    }
    checks.push(Check::new(
        format!("path round trip L={size}"),
        bad.is_empty(),
        bad.join("; "),
    ));
    let mut count = 0usize;
    let mut bad = Vec::new();
    for balls in 0..=size / 2 {
        for m in kkr::configurations_with_balls(size, balls) {
            for rc in kkr::enumerate_rcs(&m) {
                count += 1;
                let p = kkr::kkr_inverse(&rc)?;
                if kkr::kkr_map(&p)? != rc {
                    bad.push(format!("{:?}", rc.rows()));
                }
            }
        }
    }
    checks.push(Check::new(
        format!("rc round trip L={size}"),
        bad.is_empty(),
        bad.join("; "),
    ));
    checks.push(Check::new(
        format!("bijection count L={size}"),
        count == highest,
        format!("{count} rigged configurations, {highest} highest paths"),
    ));
    Ok(checks)
}

fn random_element(rng: &mut impl Rng, max_cap: u64) -> CrystalElement {
    let l = rng.gen_range(1..=max_cap);
    let a = rng.gen_range(0..=l);
    CrystalElement::new(l - a, a)
}

/// Yang–Baxter with spectral degrees on one triple.
pub fn yang_baxter_holds(x: CrystalElement, y: CrystalElement, z: CrystalElement, degrees: [i64; 3]) -> bool {
    let aff = |degree, elem| AffineElement { degree, elem };
    let (a, b, c) = (aff(degrees[0], x), aff(degrees[1], y), aff(degrees[2], z));
    // (1⊗R)(R⊗1)(1⊗R)
    let (b1, c1) = crystal::affine_r(b, c);
    let (a2, b2) = crystal::affine_r(a, b1);
    let (b3, c3) = crystal::affine_r(b2, c1);
    let left = (a2, b3, c3);
    // (R⊗1)(1⊗R)(R⊗1)
    let (a1, b1) = crystal::affine_r(a, b);
    let (b2, c2) = crystal::affine_r(b1, c);
    let (a3, b3) = crystal::affine_r(a1, b2);
    left == (a3, b3, c2)
}

fn verify_crystal(max_cap: usize, seed: u64) -> Vec<Check> {
    let cap = (max_cap as u64).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut yb = true;
    for _ in 0..1000 {
        let (x, y, z) = (
            random_element(&mut rng, cap),
            random_element(&mut rng, cap),
            random_element(&mut rng, cap),
        );
        let d = [rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-5..=5)];
        yb &= yang_baxter_holds(x, y, z, d);
    }
    let mut involutive = true;
    let mut dynkin = true;
    let mut reversal = true;
    let mut range = true;
    for l in 1..=cap {
        for k in 1..=cap {
            for a in 0..=l {
                for b in 0..=k {
                    let (x, y) = (CrystalElement::new(l - a, a), CrystalElement::new(k - b, b));
                    let r = crystal::combinatorial_r(x, y);
                    let back = crystal::combinatorial_r(r.y_tilde, r.x_tilde);
                    involutive &= (back.y_tilde, back.x_tilde) == (x, y);
                    let w = crystal::combinatorial_r(x.omega(), y.omega());
                    dynkin &= (w.y_tilde, w.x_tilde) == (r.y_tilde.omega(), r.x_tilde.omega())
                        && w.energy_h == -(x.x2().min(y.x1()) as i64);
                    let rev = crystal::combinatorial_r(y, x);
                    reversal &= (rev.y_tilde, rev.x_tilde) == (r.x_tilde, r.y_tilde);
                    range &= r.energy_h <= 0 && r.energy_h >= -(l.min(k) as i64);
                }
            }
        }
    }
    vec![
        Check::new(format!("yang-baxter 1000 triples cap<={cap}"), yb, ""),
        Check::new(format!("R involutive cap<={cap}"), involutive, ""),
        Check::new(format!("dynkin symmetry cap<={cap}"), dynkin, ""),
        Check::new(format!("reversal cap<={cap}"), reversal, ""),
        Check::new(format!("energy range cap<={cap}"), range, ""),
    ]
}

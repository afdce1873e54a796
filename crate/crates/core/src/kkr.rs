//! Rigged configurations and the KKR bijection for `B_1^{⊗L}`.
//!
//! `kkr_map` reads a highest path left to right, adding a box to a longest
//! singular string for every letter `2`. `kkr_inverse` removes boxes from
//! shortest singular strings and emits the path from the right end.

use std::collections::BTreeMap;

use crate::crystal::CrystalElement;
use crate::dynamics::{self, Path};
use crate::error::{Error, Result};

/// Soliton content `m = (m_j)` of a system of size `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionVariable {
    size: usize,
    mult: BTreeMap<usize, usize>,
}

impl ActionVariable {
    /// Requires `2 Σ j m_j ≤ L`.
    pub fn new(size: usize, mult: BTreeMap<usize, usize>) -> Result<Self> {
        let mult: BTreeMap<usize, usize> = mult.into_iter().filter(|&(j, m)| j > 0 && m > 0).collect();
        let total: usize = mult.iter().map(|(j, m)| j * m).sum();
        if 2 * total > size {
            return Err(Error::NotAdmissible {
                twice_m: 2 * total,
                size,
            });
        }
        Ok(ActionVariable { size, mult })
    }

    /// From `(m_1, m_2, …)`.
    pub fn from_multiplicities(size: usize, m: &[usize]) -> Result<Self> {
        Self::new(size, m.iter().enumerate().map(|(k, &c)| (k + 1, c)).collect())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `j ↦ m_j` over the occurring lengths.
    pub fn multiplicities(&self) -> &BTreeMap<usize, usize> {
        &self.mult
    }

    pub fn m(&self, j: usize) -> usize {
        self.mult.get(&j).copied().unwrap_or(0)
    }

    /// Occurring lengths `j_1 < ⋯ < j_s`.
    pub fn lengths(&self) -> Vec<usize> {
        self.mult.keys().copied().collect()
    }

    /// Number of rows `Σ m_j`.
    pub fn rows(&self) -> usize {
        self.mult.values().sum()
    }

    /// Number of balls `M = Σ j m_j`.
    pub fn balls(&self) -> usize {
        self.mult.iter().map(|(j, m)| j * m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Longest length `j_s`, or 0 when empty.
    pub fn longest(&self) -> usize {
        self.mult.keys().next_back().copied().unwrap_or(0)
    }

    /// `p_j = L − 2 Σ_k min(j,k) m_k`; `p_0 = L`.
    pub fn vacancy(&self, j: usize) -> i64 {
        vacancy_of(&self.mult, self.size, j)
    }

    /// `(m_1, …, m_n)` padded to length `n`.
    pub fn to_vec(&self, n: usize) -> Vec<usize> {
        (1..=n).map(|j| self.m(j)).collect()
    }
}

pub(crate) fn vacancy_of(mult: &BTreeMap<usize, usize>, size: usize, j: usize) -> i64 {
    let s: usize = mult.iter().map(|(&k, &m)| j.min(k) * m).sum();
    size as i64 - 2 * s as i64
}

/// Rows `(length, rigging)` of a rigged configuration over `B_1^{⊗L}`,
/// stored by length descending then rigging descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RiggedConfiguration {
    size: usize,
    rows: Vec<(usize, i64)>,
}

impl RiggedConfiguration {
    /// Validates admissibility, vacancy signs and `0 ≤ J ≤ p_j`.
    pub fn new(size: usize, rows: Vec<(usize, i64)>) -> Result<Self> {
        let rc = Self::new_unchecked(size, rows);
        rc.validate()?;
        Ok(rc)
    }

    pub(crate) fn new_unchecked(size: usize, mut rows: Vec<(usize, i64)>) -> Self {
        rows.sort_unstable_by(|a, b| b.cmp(a));
        RiggedConfiguration { size, rows }
    }

    pub fn empty(size: usize) -> Self {
        RiggedConfiguration { size, rows: Vec::new() }
    }

    fn validate(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::InvalidRiggedConfiguration("system size must be positive".into()));
        }
        if let Some(r) = self.rows.iter().find(|r| r.0 == 0) {
            return Err(Error::InvalidRiggedConfiguration(format!("row {r:?} has length 0")));
        }
        let m = self.action()?;
        for &(j, rig) in &self.rows {
            let p = m.vacancy(j);
            if p < 0 {
                return Err(Error::InvalidRiggedConfiguration(format!(
                    "vacancy p_{j} = {p} is negative"
                )));
            }
            if rig < 0 || rig > p {
                return Err(Error::InvalidRiggedConfiguration(format!(
                    "rigging {rig} of a length-{j} row outside [0, {p}]"
                )));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Rows in canonical order.
    pub fn rows(&self) -> &[(usize, i64)] {
        &self.rows
    }

    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &(j, _) in &self.rows {
            *m.entry(j).or_insert(0) += 1;
        }
        m
    }

    /// The configuration part.
    pub fn action(&self) -> Result<ActionVariable> {
        ActionVariable::new(self.size, self.multiplicities())
    }

    pub fn vacancy(&self, j: usize) -> i64 {
        vacancy_of(&self.multiplicities(), self.size, j)
    }

    /// Riggings per length, ascending `J_1 ≤ ⋯ ≤ J_{m_j}`.
    pub fn blocks(&self) -> BTreeMap<usize, Vec<i64>> {
        let mut b: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
        for &(j, r) in &self.rows {
            b.entry(j).or_default().push(r);
        }
        for v in b.values_mut() {
            v.sort_unstable();
        }
        b
    }

    /// Builds from ascending blocks.
    pub fn from_blocks(size: usize, blocks: &BTreeMap<usize, Vec<i64>>) -> Result<Self> {
        let rows = blocks
            .iter()
            .flat_map(|(&j, v)| v.iter().map(move |&r| (j, r)))
            .collect();
        Self::new(size, rows)
    }

    /// Young diagram with vacancy numbers on the left and riggings on the
    /// right, one row per line.
    pub fn diagram(&self) -> String {
        let m = self.multiplicities();
        let width = self.rows.first().map_or(0, |r| r.0);
        let pw = self
            .rows
            .iter()
            .map(|&(j, _)| vacancy_of(&m, self.size, j).to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for &(j, rig) in &self.rows {
            let p = vacancy_of(&m, self.size, j);
            out.push_str(&format!("{p:>pw$} {:<width$} {rig}\n", "#".repeat(j)));
        }
        out
    }
}

/// `φ`: highest path to rigged configuration, taking the first candidate in
/// canonical order.
pub fn kkr_map(p: &Path) -> Result<RiggedConfiguration> {
    kkr_map_with(p, |_| 0)
}

/// `φ` with an explicit choice among equally long singular strings.
/// `choose` receives the candidate count and returns an index.
pub fn kkr_map_with(p: &Path, mut choose: impl FnMut(usize) -> usize) -> Result<RiggedConfiguration> {
    if !p.is_highest() {
        return Err(Error::NotHighest);
    }
    let mut rows: Vec<(usize, i64)> = Vec::new();
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    for (n, &b) in p.letters().iter().enumerate() {
        if b == 1 {
            continue;
        }
        // Current system size is n; the new one is n + 1.
        let singular: Vec<usize> = (0..rows.len())
            .filter(|&i| rows[i].1 == vacancy_of(&mult, n, rows[i].0))
            .collect();
        let longest = singular.iter().map(|&i| rows[i].0).max();
        let new_len = match longest {
            Some(j) => {
                let cands: Vec<usize> = singular.into_iter().filter(|&i| rows[i].0 == j).collect();
                let i = cands[choose(cands.len()) % cands.len()];
                rows.remove(i);
                dec(&mut mult, j);
                j + 1
            }
            None => 1,
        };
        *mult.entry(new_len).or_insert(0) += 1;
        rows.push((new_len, vacancy_of(&mult, n + 1, new_len)));
        rows.sort_unstable_by(|a, b| b.cmp(a));
    }
    Ok(RiggedConfiguration { size: p.len(), rows })
}

fn dec(mult: &mut BTreeMap<usize, usize>, j: usize) {
    let c = mult.get_mut(&j).expect("length present");
    *c -= 1;
    if *c == 0 {
        mult.remove(&j);
    }
}

/// `φ⁻¹`: rigged configuration to highest path.
pub fn kkr_inverse(rc: &RiggedConfiguration) -> Result<Path> {
    kkr_inverse_with(rc, |_| 0)
}

/// `φ⁻¹` with an explicit choice among equally short singular strings.
pub fn kkr_inverse_with(rc: &RiggedConfiguration, mut choose: impl FnMut(usize) -> usize) -> Result<Path> {
    rc.validate()?;
    let mut rows = rc.rows.clone();
    let mut mult = rc.multiplicities();
    let mut letters = vec![0u8; rc.size];
    for size in (1..=rc.size).rev() {
        let singular: Vec<usize> = (0..rows.len())
            .filter(|&i| rows[i].1 == vacancy_of(&mult, size, rows[i].0))
            .collect();
        let shortest = singular.iter().map(|&i| rows[i].0).min();
        letters[size - 1] = match shortest {
            None => 1,
            Some(j) => {
                let cands: Vec<usize> = singular.into_iter().filter(|&i| rows[i].0 == j).collect();
                let i = cands[choose(cands.len()) % cands.len()];
                rows.remove(i);
                dec(&mut mult, j);
                if j > 1 {
                    *mult.entry(j - 1).or_insert(0) += 1;
                    rows.push((j - 1, vacancy_of(&mult, size - 1, j - 1)));
                    rows.sort_unstable_by(|a, b| b.cmp(a));
                }
                2
            }
        };
    }
    assert!(rows.is_empty(), "all boxes must be removed");
    Path::from_letters(letters)
}

/// Largest number of subsets the piecewise-linear formula will enumerate.
pub const PWL_SUBSET_LIMIT: u128 = 1 << 20;

/// `φ⁻¹` through the tropical tau-function formula, maximizing over all
/// subsets of rows. Exponential in the number of rows.
pub fn kkr_inverse_pwl(rc: &RiggedConfiguration) -> Result<Path> {
    rc.validate()?;
    let r = rc.rows.len();
    let subsets = 1u128 << r.min(127);
    if r >= 127 || subsets > PWL_SUBSET_LIMIT {
        return Err(Error::SizeGuard {
            what: "subsets of rows",
            value: subsets,
            limit: PWL_SUBSET_LIMIT,
        });
    }
    // For a subset ν: τ_i(n) term = |ν|·n + (i−2)Σν_k − (ΣI_k + 2Σ_{j<k} min(ν_j,ν_k)).
    let n_sub = 1usize << r;
    let mut card = vec![0i64; n_sub];
    let mut len_sum = vec![0i64; n_sub];
    let mut cost = vec![0i64; n_sub];
    for s in 1..n_sub {
        let k = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let (nu, rig) = rc.rows[k];
        let mut pair = 0i64;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            pair += rc.rows[j].0.min(nu) as i64;
            bits &= bits - 1;
        }
        card[s] = card[rest] + 1;
        len_sum[s] = len_sum[rest] + nu as i64;
        cost[s] = cost[rest] + rig + 2 * pair;
    }
    let tau = |i: i64, n: i64| -> i64 {
        (0..n_sub)
            .map(|s| card[s] * n + (i - 2) * len_sum[s] - cost[s])
            .max()
            .expect("the empty subset is always present")
    };
    let mut letters = Vec::with_capacity(rc.size);
    let (mut t1_prev, mut t0_prev) = (tau(1, 0), tau(0, 0));
    for n in 1..=rc.size as i64 {
        let (t1, t0) = (tau(1, n), tau(0, n));
        let x = t1 - t1_prev - t0 + t0_prev;
        letters.push(match x {
            0 => 1,
            1 => 2,
            _ => panic!("piecewise-linear formula produced x = {x}"),
        });
        t1_prev = t1;
        t0_prev = t0;
    }
    Path::from_letters(letters)
}

/// Rigged configuration of `q ⊗ r` from those of `q` and `r`: rows of `q`
/// unchanged, rows `(j, K)` of `r` become `(j, K − 2Σ_k min(j,k) l_k + d)`
/// with `l` the configuration of `q` and `d = |q|`.
pub fn concat_rc(qrc: &RiggedConfiguration, rrc: &RiggedConfiguration) -> Result<RiggedConfiguration> {
    qrc.validate()?;
    rrc.validate()?;
    let l = qrc.multiplicities();
    let d = qrc.size as i64;
    let mut rows = qrc.rows.clone();
    for &(j, k) in &rrc.rows {
        let s: usize = l.iter().map(|(&lk, &c)| j.min(lk) * c).sum();
        rows.push((j, k - 2 * s as i64 + d));
    }
    RiggedConfiguration::new(qrc.size + rrc.size, rows)
}

/// Passes `u_l` through `p ⊗ 1^n`, giving `ξ ⊗ u_l`, and checks that `φ(ξ)`
/// equals `φ(p ⊗ 1^n)` with every rigging raised by `min(l, j)`.
pub fn carrier_rigging_shift_check(p: &Path, l: u64, n: usize) -> bool {
    let padded = p.concat(&Path::vacuum(n.max(1)));
    let mut c = CrystalElement::highest(l);
    let mut xi = Vec::with_capacity(padded.len());
    for x in padded.to_elements() {
        let r = crate::crystal::combinatorial_r(c, x);
        xi.push(r.y_tilde);
        c = r.x_tilde;
    }
    if c != CrystalElement::highest(l) {
        return false;
    }
    let xi = Path::from_elements(&xi);
    let (Ok(before), Ok(after)) = (kkr_map(&padded), kkr_map(&xi)) else {
        return false;
    };
    let shifted: Vec<(usize, i64)> = before
        .rows
        .iter()
        .map(|&(j, r)| (j, r + (l as usize).min(j) as i64))
        .collect();
    RiggedConfiguration::new_unchecked(after.size, shifted) == after
}

/// All rigged configurations with configuration `m`.
pub fn enumerate_rcs(m: &ActionVariable) -> Vec<RiggedConfiguration> {
    let mut acc: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
    for (&j, &c) in m.multiplicities() {
        let p = m.vacancy(j);
        if p < 0 {
            return Vec::new();
        }
        let blocks = weak_sequences(c, p);
        acc = acc
            .iter()
            .flat_map(|rows| {
                blocks.iter().map(move |b| {
                    let mut r = rows.clone();
                    r.extend(b.iter().map(|&x| (j, x)));
                    r
                })
            })
            .collect();
    }
    acc.into_iter()
        .map(|rows| RiggedConfiguration::new_unchecked(m.size(), rows))
        .collect()
}

/// Weakly increasing sequences of length `len` with entries in `[0, max]`.
fn weak_sequences(len: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, lo: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in lo..=max {
            cur.push(x);
            rec(len, x, max, cur, out);
            cur.pop();
        }
    }
    rec(len, 0, max, &mut cur, &mut out);
    out
}

/// All configurations `m` with `Σ j m_j = balls` (partitions of `balls`).
pub fn configurations_with_balls(size: usize, balls: usize) -> Vec<ActionVariable> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    fn rec(left: usize, max: usize, parts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(parts.clone());
            return;
        }
        for k in (1..=left.min(max)).rev() {
            parts.push(k);
            rec(left - k, k, parts, out);
            parts.pop();
        }
    }
    let mut raw = Vec::new();
    rec(balls, balls, &mut parts, &mut raw);
    for p in raw {
        let mut mult = BTreeMap::new();
        for k in p {
            *mult.entry(k).or_insert(0) += 1;
        }
        if let Ok(m) = ActionVariable::new(size, mult) {
            out.push(m);
        }
    }
    out
}

/// Energies predicted by a configuration: `E_l = Σ_k min(l,k) m_k`.
pub fn energy_of(m: &ActionVariable, l: usize) -> u64 {
    m.multiplicities().iter().map(|(&k, &c)| (l.min(k) * c) as u64).sum()
}

/// Recovers `m` from the energies of `p` by second differences.
pub fn action_from_energies(p: &Path) -> ActionVariable {
    let n = p.len() / 2 + 1;
    let mut e = vec![0u64];
    e.extend(dynamics::energies(p, n as u64));
    e.push(e[n]);
    let mult = (1..=n)
        .map(|l| (l, (2 * e[l] as i64 - e[l - 1] as i64 - e[l + 1] as i64) as usize))
        .collect();
    ActionVariable::new(p.len(), mult).expect("energies of a path give an admissible configuration")
}

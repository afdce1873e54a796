//! Action-angle variables of the periodic box-ball system.
//!
//! A path `p = T_1^d(p_+)` with `p_+` highest maps to the class of
//! `ι(J) + d`, where `(m, J) = φ(p_+)`. Riggings are extended
//! quasi-periodically by `J_{i+m_j} = J_i + p_j` and identified under the
//! slides `σ_k`. In these coordinates `T_l` adds `min(j, l)` to block `j`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dynamics::{self, Path};
use crate::error::{Error, Result};
use crate::kkr::{self, RiggedConfiguration};

pub use crate::kkr::ActionVariable;

/// Representative `ι(J) + d` of an angle variable. Each block stores the
/// window `J_1 ≤ ⋯ ≤ J_{m_j}` of its extended sequence, without the offset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AngleRep {
    m: ActionVariable,
    offset: BigInt,
    blocks: BTreeMap<usize, Vec<BigInt>>,
}

impl AngleRep {
    /// Checks block sizes against `m` and that the extended sequences are
    /// weakly increasing.
    pub fn new(m: ActionVariable, offset: BigInt, blocks: BTreeMap<usize, Vec<BigInt>>) -> Result<Self> {
        let keys: Vec<usize> = blocks.keys().copied().collect();
        if keys != m.lengths() {
            return Err(Error::Parse(format!(
                "block lengths {keys:?} differ from configuration lengths {:?}",
                m.lengths()
            )));
        }
        for (&j, v) in &blocks {
            if v.len() != m.m(j) {
                return Err(Error::Parse(format!(
                    "block {j} has {} riggings, expected {}",
                    v.len(),
                    m.m(j)
                )));
            }
            let p = m.vacancy(j);
            if p < 0 {
                return Err(Error::Parse(format!("vacancy p_{j} = {p} is negative")));
            }
            let sorted = v.windows(2).all(|w| w[0] <= w[1]);
            let wraps = v.last().unwrap() - v.first().unwrap() <= BigInt::from(p);
            if !sorted || !wraps {
                return Err(Error::Parse(format!(
                    "block {j} riggings are not quasi-periodically increasing"
                )));
            }
        }
        Ok(AngleRep { m, offset, blocks })
    }

    /// `ι(J) + d` for a rigged configuration.
    pub fn from_rc(rc: &RiggedConfiguration, offset: BigInt) -> Self {
        let m = rc.action().expect("valid rigged configuration");
        let blocks = rc
            .blocks()
            .into_iter()
            .map(|(j, v)| (j, v.into_iter().map(BigInt::from).collect()))
            .collect();
        AngleRep { m, offset, blocks }
    }

    /// The empty class for a system of size `size`.
    pub fn empty(size: usize) -> Self {
        AngleRep {
            m: ActionVariable::new(size, BTreeMap::new()).expect("empty configuration"),
            offset: BigInt::zero(),
            blocks: BTreeMap::new(),
        }
    }

    pub fn action(&self) -> &ActionVariable {
        &self.m
    }

    pub fn size(&self) -> usize {
        self.m.size()
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    /// Windows `J_1..J_{m_j}` per block, ascending, without the offset.
    pub fn blocks(&self) -> &BTreeMap<usize, Vec<BigInt>> {
        &self.blocks
    }

    /// Extended rigging `J^{(j)}_i` for any integer `i` (1-based), without
    /// the offset.
    pub fn extended(&self, j: usize, i: &BigInt) -> BigInt {
        let v = &self.blocks[&j];
        let m = BigInt::from(v.len());
        let (q, r) = (i - BigInt::one()).div_mod_floor(&m);
        &v[r.to_usize().unwrap()] + q * self.m.vacancy(j)
    }

    /// Windows with the offset added: the actual element `ι(J) + d`.
    pub fn element_windows(&self) -> BTreeMap<usize, Vec<BigInt>> {
        self.blocks
            .iter()
            .map(|(&j, v)| (j, v.iter().map(|x| x + &self.offset).collect()))
            .collect()
    }

    /// Rows `(length, rigging)` sorted by length descending then rigging
    /// descending, without the offset.
    pub fn rows(&self) -> Vec<(usize, BigInt)> {
        let mut rows: Vec<(usize, BigInt)> = self
            .blocks
            .iter()
            .flat_map(|(&j, v)| v.iter().map(move |x| (j, x.clone())))
            .collect();
        rows.sort_by(|a, b| b.cmp(a));
        rows
    }

    /// The rigged configuration when the riggings lie in `Rig(m)`.
    pub fn to_rc(&self) -> Result<RiggedConfiguration> {
        let mut rows = Vec::new();
        for (j, x) in self.rows() {
            let r = x
                .to_i64()
                .ok_or_else(|| Error::InvalidRiggedConfiguration(format!("rigging {x} out of range")))?;
            rows.push((j, r));
        }
        RiggedConfiguration::new(self.size(), rows)
    }

    /// Whether `0 ≤ J^{(j)}_i ≤ p_j` for all rows.
    pub fn is_normalized(&self) -> bool {
        self.blocks.iter().all(|(&j, v)| {
            let p = BigInt::from(self.m.vacancy(j));
            v.iter().all(|x| !x.is_negative() && x <= &p)
        })
    }
}

impl fmt::Display for AngleRep {
    /// `d +` followed by the rigged Young diagram.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} +", self.offset)?;
        let rows = self.rows();
        let width = rows.first().map_or(0, |r| r.0);
        let pw = rows
            .iter()
            .map(|r| self.m.vacancy(r.0).to_string().len())
            .max()
            .unwrap_or(1);
        for (j, x) in rows {
            writeln!(f, "{:>pw$} {:<width$} {x}", self.m.vacancy(j), "#".repeat(j))?;
        }
        Ok(())
    }
}

/// Minimal `d ∈ [0, L)` with `p = T_1^d(p_+)` and `p_+` highest.
pub fn decompose(p: &Path) -> Result<(usize, Path)> {
    if p.weight() < 0 {
        return Err(Error::NegativeWeight);
    }
    let n = p.len();
    let mut h = Vec::with_capacity(n + 1);
    h.push(0i64);
    for &b in p.letters() {
        h.push(h.last().unwrap() + if b == 1 { 1 } else { -1 });
    }
    let total = h[n];
    // p_+ starts at letter d of p; it is highest iff h_d is no higher than
    // every h_i (i ≥ d) and every h_i + total (i ≤ d).
    let mut suffix_min = vec![0i64; n + 1];
    suffix_min[n] = h[n];
    for i in (0..n).rev() {
        suffix_min[i] = suffix_min[i + 1].min(h[i]);
    }
    let mut prefix_min = i64::MAX;
    for d in 0..n {
        prefix_min = prefix_min.min(h[d]);
        if h[d] <= suffix_min[d] && h[d] <= prefix_min + total {
            let plus = p.rotate_left(d);
            debug_assert!(plus.is_highest());
            return Ok((d, plus));
        }
    }
    unreachable!("a path of non-negative weight has a highest rotation")
}

/// Every `(d, p_+)` with `p = T_1^d(p_+)`, `0 ≤ d < L` and `p_+` highest, by increasing `d`.
pub fn decompositions(p: &Path) -> Result<Vec<(usize, Path)>> {
    if p.weight() < 0 {
        return Err(Error::NegativeWeight);
    }
    Ok((0..p.len())
        .map(|d| (d, p.rotate_left(d)))
        .filter(|(_, q)| q.is_highest())
        .collect())
}

/// The action variable `μ(p)`, applying `ω` first when `wt(p) < 0`.
pub fn action(p: &Path) -> ActionVariable {
    let q = if p.weight() < 0 { p.omega() } else { p.clone() };
    let (_, plus) = decompose(&q).expect("non-negative weight");
    kkr::kkr_map(&plus)
        .expect("highest path")
        .action()
        .expect("valid configuration")
}

/// `σ_k^n`.
pub fn slide(a: &AngleRep, k: usize, n: i64) -> AngleRep {
    let n_big = BigInt::from(n);
    let blocks = a
        .blocks
        .iter()
        .map(|(&j, v)| {
            let add = BigInt::from(2 * j.min(k)) * &n_big;
            let w: Vec<BigInt> = if j == k {
                (1..=v.len())
                    .map(|i| a.extended(j, &(BigInt::from(i) + &n_big)) + &add)
                    .collect()
            } else {
                v.iter().map(|x| x + &add).collect()
            };
            (j, w)
        })
        .collect();
    AngleRep {
        m: a.m.clone(),
        offset: a.offset.clone(),
        blocks,
    }
}

/// `T_l^t` in angle coordinates: block `j` gains `t·min(j, l)`.
pub fn linear_evolve(a: &AngleRep, l: u64, t: &BigInt) -> AngleRep {
    let blocks = a
        .blocks
        .iter()
        .map(|(&j, v)| {
            let add = t * BigInt::from((l as usize).min(j));
            (j, v.iter().map(|x| x + &add).collect())
        })
        .collect();
    AngleRep {
        m: a.m.clone(),
        offset: a.offset.clone(),
        blocks,
    }
}

/// Result of [`normalize_with_slides`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    /// Representative with `J ∈ Rig(m)` and offset in `[0, L)`.
    pub rep: AngleRep,
    /// Slide exponents `n_j` applied to each block.
    pub exponents: BTreeMap<usize, BigInt>,
    /// Common offset before reduction modulo `L`.
    pub unreduced_offset: BigInt,
}

/// Equivalent representative `ι(J') + d'` with `J' ∈ Rig(m)`, `0 ≤ d' < L`.
pub fn normalize(a: &AngleRep) -> AngleRep {
    normalize_with_slides(a).rep
}

/// [`normalize`] reporting the slides used.
///
/// Writing `E = ι(J) + d` and `x_k = D − 2Σ_a min(j_k, j_a) n_a`, block `k`
/// fits in `[D, D + p_{j_k}]` after `σ_{j_k}^{n_k}` iff
/// `E_{n_k} < x_k ≤ E_{n_k+1}` (or the window already fits). The longest
/// block is kept in place with `x_s = E_{m_s} − p_s`; then, going down,
/// `x_k = x_{k+1} + 2(j_{k+1} − j_k)Σ_{a>k} n_a` fixes each `n_k`.
pub fn normalize_with_slides(a: &AngleRep) -> Normalized {
    let size = BigInt::from(a.size());
    if a.blocks.is_empty() {
        let d = a.offset.mod_floor(&size);
        return Normalized {
            rep: AngleRep { offset: d, ..a.clone() },
            exponents: BTreeMap::new(),
            unreduced_offset: a.offset.clone(),
        };
    }
    let elems = a.element_windows();
    let lengths = a.m.lengths();
    let s = lengths.len();
    let mut exps: BTreeMap<usize, BigInt> = BTreeMap::new();
    let top = lengths[s - 1];
    let mut x = elems[&top].last().unwrap() - a.m.vacancy(top);
    exps.insert(top, BigInt::zero());
    let mut tail_sum = BigInt::zero();
    for k in (0..s - 1).rev() {
        let (j, above) = (lengths[k], lengths[k + 1]);
        tail_sum += &exps[&above];
        x += BigInt::from(2 * (above - j)) * &tail_sum;
        let n = first_index_at_least(&elems[&j], a.m.vacancy(j), &x) - 1;
        exps.insert(j, n);
    }
    let total: BigInt = exps.values().sum();
    let d_big = x + BigInt::from(2 * lengths[0]) * total;
    let mut blocks = BTreeMap::new();
    for &j in &lengths {
        let shift: BigInt = exps.iter().map(|(&k, n)| BigInt::from(2 * j.min(k)) * n).sum();
        let m_j = a.m.m(j);
        let w: Vec<BigInt> = (1..=m_j)
            .map(|i| a.extended(j, &(BigInt::from(i) + &exps[&j])) + &a.offset + &shift - &d_big)
            .collect();
        blocks.insert(j, w);
    }
    let rep = AngleRep {
        m: a.m.clone(),
        offset: d_big.mod_floor(&size),
        blocks,
    };
    assert!(rep.is_normalized(), "normalize failed to reach Rig(m)");
    debug_assert_eq!(
        crate::bethe::canonical_invariant(&rep),
        crate::bethe::canonical_invariant(a),
        "normalize changed the angle class"
    );
    Normalized {
        rep,
        exponents: exps,
        unreduced_offset: d_big,
    }
}

/// Smallest 1-based index `i` with `E_i ≥ x` for the extended sequence with
/// window `w` and period shift `p > 0`.
fn first_index_at_least(w: &[BigInt], p: i64, x: &BigInt) -> BigInt {
    assert!(p > 0, "only the longest block may have zero vacancy");
    let p = BigInt::from(p);
    let m = BigInt::from(w.len());
    w.iter()
        .enumerate()
        .map(|(r, e)| {
            let q = (x - e).div_ceil(&p);
            q * &m + (r + 1)
        })
        .min()
        .unwrap()
}

/// `Φ(p)` for `wt(p) ≥ 0`.
pub fn direct(p: &Path) -> Result<AngleRep> {
    let (d, plus) = decompose(p)?;
    let rc = kkr::kkr_map(&plus)?;
    Ok(AngleRep::from_rc(&rc, BigInt::from(d)))
}

/// `Φ⁻¹`: normalize, apply `φ⁻¹`, then shift by the offset.
pub fn inverse(a: &AngleRep) -> Result<Path> {
    let n = normalize(a);
    let plus = kkr::kkr_inverse(&n.to_rc()?)?;
    let d = n.offset.to_i64().expect("offset reduced below L");
    Ok(dynamics::t1_pow(&plus, d))
}

/// `T_l^t(p)` through the angle variables; `t` may be negative or huge.
pub fn fast_evolve(p: &Path, l: u64, t: impl Into<BigInt>) -> Path {
    let t = t.into();
    if p.weight() < 0 {
        return fast_evolve(&p.omega(), l, t).omega();
    }
    let a = direct(p).expect("non-negative weight");
    inverse(&linear_evolve(&a, l, &t)).expect("evolved representative is valid")
}

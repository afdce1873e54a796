//! Time evolutions `T_l` of the periodic box-ball system on `B_1^{⊗L}`.
//!
//! `T_l` threads a carrier from `B_l` through the ring twice: the first pass
//! from `u_l` (or `ω(u_l)` when the weight is negative) produces the carrier
//! `v_l`, the second pass from `v_l` produces `T_l(p)` and the energy
//! `E_l(p) = −ΣH`.

use std::fmt;
use std::str::FromStr;

use crate::crystal::{self, combinatorial_r, CrystalElement};
use crate::error::{Error, Result};

/// A state of the ring: letters `1` (empty box) and `2` (ball).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<u8>);

impl Path {
    /// Letters must be `1` or `2`, at least one of them.
    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Parse("empty path".into()));
        }
        if let Some(b) = letters.iter().find(|&&b| b != 1 && b != 2) {
            return Err(Error::Parse(format!("letter {b} is not 1 or 2")));
        }
        Ok(Path(letters))
    }

    /// `1^L`.
    pub fn vacuum(len: usize) -> Self {
        assert!(len >= 1);
        Path(vec![1; len])
    }

    /// Path whose `k`-th letter is `2` iff bit `k` of `bits` is set
    /// (bit 0 is the leftmost letter).
    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!((1..=64).contains(&len));
        Path((0..len).map(|k| 1 + ((bits >> k) & 1) as u8).collect())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of balls `M`.
    pub fn count_twos(&self) -> usize {
        self.0.iter().filter(|&&b| b == 2).count()
    }

    /// `#1 − #2`.
    pub fn weight(&self) -> i64 {
        self.len() as i64 - 2 * self.count_twos() as i64
    }

    /// Every prefix has at least as many `1`s as `2`s.
    pub fn is_highest(&self) -> bool {
        let mut h = 0i64;
        for &b in &self.0 {
            h += if b == 1 { 1 } else { -1 };
            if h < 0 {
                return false;
            }
        }
        true
    }

    /// Swaps `1 ↔ 2`.
    pub fn omega(&self) -> Self {
        Path(self.0.iter().map(|&b| 3 - b).collect())
    }

    /// Reverses the letter order.
    pub fn reversed(&self) -> Self {
        Path(self.0.iter().rev().copied().collect())
    }

    /// Cyclic rotation: result letter `i` is input letter `i + k mod L`.
    pub fn rotate_left(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        let n = v.len();
        v.rotate_left(k % n);
        Path(v)
    }

    /// Concatenation `self ⊗ other`.
    pub fn concat(&self, other: &Path) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Path(v)
    }

    pub fn to_elements(&self) -> Vec<CrystalElement> {
        self.0
            .iter()
            .map(|&b| {
                if b == 1 {
                    CrystalElement::new(1, 0)
                } else {
                    CrystalElement::new(0, 1)
                }
            })
            .collect()
    }

    pub fn from_elements(elems: &[CrystalElement]) -> Self {
        Path(
            elems
                .iter()
                .map(|x| {
                    assert_eq!(x.capacity(), 1, "path components live in B_1");
                    if x.x1() == 1 {
                        1
                    } else {
                        2
                    }
                })
                .collect(),
        )
    }

    /// Letters separated by single spaces.
    pub fn spaced(&self) -> String {
        let mut s = String::with_capacity(2 * self.len());
        for (k, &b) in self.0.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            s.push((b'0' + b) as char);
        }
        s
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&b| (b'0' + b) as char).collect();
        f.write_str(&s)
    }
}

impl FromStr for Path {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty path".into()));
        }
        s.bytes()
            .map(|b| match b {
                b'1' => Ok(1),
                b'2' => Ok(2),
                _ => Err(Error::Parse(format!("path must match [12]+, got {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Path)
    }
}

/// One step of `T_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionResult {
    pub next: Path,
    pub energy: u64,
    pub carrier: CrystalElement,
}

struct Pass {
    out: Vec<u8>,
    exit: CrystalElement,
    energy: u64,
}

fn pass(seed: CrystalElement, p: &Path) -> Pass {
    let mut carrier = seed;
    let mut energy = 0u64;
    let mut out = Vec::with_capacity(p.len());
    for &b in p.letters() {
        let y = if b == 1 {
            CrystalElement::new(1, 0)
        } else {
            CrystalElement::new(0, 1)
        };
        let r = combinatorial_r(carrier, y);
        out.push(if r.y_tilde.x1() == 1 { 1 } else { 2 });
        energy += (-r.energy_h) as u64;
        carrier = r.x_tilde;
    }
    Pass {
        out,
        exit: carrier,
        energy,
    }
}

fn seed(p: &Path, l: u64) -> CrystalElement {
    if p.weight() >= 0 {
        CrystalElement::highest(l)
    } else {
        CrystalElement::lowest(l)
    }
}

/// The carrier `v_l` obtained by one pass of `u_l` (or `ω(u_l)`) through `p`.
pub fn carrier(p: &Path, l: u64) -> CrystalElement {
    pass(seed(p, l), p).exit
}

/// `T_l(p)`, `E_l(p)` and the carrier `v_l`.
///
/// Panics if the carrier does not return to `v_l`.
pub fn evolve(p: &Path, l: u64) -> EvolutionResult {
    let v = carrier(p, l);
    evolve_with_carrier(p, v).expect("carrier must be a fixed point of the second pass")
}

/// Runs the second pass from an arbitrary carrier `v`; `None` unless `v`
/// exits unchanged.
pub fn evolve_with_carrier(p: &Path, v: CrystalElement) -> Option<EvolutionResult> {
    let second = pass(v, p);
    (second.exit == v).then_some(EvolutionResult {
        next: Path(second.out),
        energy: second.energy,
        carrier: v,
    })
}

/// `E_l(p)`.
pub fn energy(p: &Path, l: u64) -> u64 {
    evolve(p, l).energy
}

/// Energies `(E_1, …, E_n)`.
pub fn energies(p: &Path, n: u64) -> Vec<u64> {
    (1..=n).map(|l| energy(p, l)).collect()
}

/// Energy read off the first pass from `u_l`: the number of vertices with
/// `H = −1`. Equals `E_l(p)` on highest paths.
pub fn first_pass_energy(p: &Path, l: u64) -> u64 {
    pass(CrystalElement::highest(l), p).energy
}

/// `T_l^t(p)` by repeated carrier evolution.
pub fn evolve_steps(p: &Path, l: u64, t: u64) -> Path {
    let mut q = p.clone();
    for _ in 0..t {
        q = evolve(&q, l).next;
    }
    q
}

/// `T_1`: cyclic right shift `b_1⊗⋯⊗b_L ↦ b_L⊗b_1⊗⋯⊗b_{L−1}`.
pub fn t1(p: &Path) -> Path {
    let mut v = p.0.clone();
    v.rotate_right(1);
    Path(v)
}

/// `T_1^d` for any integer `d`.
pub fn t1_pow(p: &Path, d: i64) -> Path {
    let n = p.len() as i64;
    let k = d.rem_euclid(n) as usize;
    let mut v = p.0.clone();
    v.rotate_right(k);
    Path(v)
}

/// `T_l^{-1}(p) = ϱ T_l(ϱ p)` with `ϱ` the reversal.
pub fn evolve_inverse(p: &Path, l: u64) -> Path {
    evolve(&p.reversed(), l).next.reversed()
}

/// `T_∞(p)`: `ω s_0 p` for `wt ≥ 0`, `ω s_1 p` otherwise.
pub fn t_infinity(p: &Path) -> Path {
    let i = if p.weight() >= 0 { 0 } else { 1 };
    let s = crystal::weyl_s(&p.to_elements(), i);
    Path::from_elements(&crystal::omega(&s))
}

/// Generators of the extended affine Weyl group acting on paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weyl {
    Omega,
    S0,
    S1,
}

impl Weyl {
    pub fn apply(self, p: &Path) -> Path {
        match self {
            Weyl::Omega => p.omega(),
            Weyl::S0 => Path::from_elements(&crystal::weyl_s(&p.to_elements(), 0)),
            Weyl::S1 => Path::from_elements(&crystal::weyl_s(&p.to_elements(), 1)),
        }
    }
}

/// Applies the generators left to right.
pub fn weyl_on_path(p: &Path, word: &[Weyl]) -> Path {
    word.iter().fold(p.clone(), |q, w| w.apply(&q))
}

/// Spacetime lines `t=<n>: <spaced letters>` for `t = 0..=steps`.
pub fn trace(p: &Path, l: u64, steps: u64) -> Vec<String> {
    let mut q = p.clone();
    let mut lines = Vec::with_capacity(steps as usize + 1);
    for t in 0..=steps {
        lines.push(format!("t={t}: {}", q.spaced()));
        if t < steps {
            q = evolve(&q, l).next;
        }
    }
    lines
}

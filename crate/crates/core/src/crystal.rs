//! Crystals `B_l` of the symmetric tensor representations of affine sl2.
//!
//! An element of `B_l` is a pair `(x1, x2)` with `x1 + x2 = l`, rendered as
//! the one-row tableau `1^x1 2^x2`. Indices of `x_i` and `Q_i` are taken in
//! Z/2, so `x_0 = x_2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Element `(x1, x2)` of `B_l`, `l = x1 + x2 >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrystalElement {
    x1: u64,
    x2: u64,
}

impl CrystalElement {
    /// Panics when `x1 + x2 == 0`.
    pub fn new(x1: u64, x2: u64) -> Self {
        assert!(x1 + x2 >= 1, "crystal capacity must be at least 1");
        CrystalElement { x1, x2 }
    }

    /// The highest element `u_l = (l, 0)`.
    pub fn highest(l: u64) -> Self {
        Self::new(l, 0)
    }

    /// The lowest element `(0, l)`.
    pub fn lowest(l: u64) -> Self {
        Self::new(0, l)
    }

    pub fn x1(&self) -> u64 {
        self.x1
    }

    pub fn x2(&self) -> u64 {
        self.x2
    }

    pub fn capacity(&self) -> u64 {
        self.x1 + self.x2
    }

    /// `x1 - x2`.
    pub fn weight(&self) -> i64 {
        self.x1 as i64 - self.x2 as i64
    }

    /// Swaps the two letters.
    pub fn omega(&self) -> Self {
        CrystalElement {
            x1: self.x2,
            x2: self.x1,
        }
    }

    /// `(ε_i, φ_i) = (x_{i+1}, x_i)`.
    pub fn eps_phi(&self, i: u8) -> (u64, u64) {
        match i {
            0 => (self.x1, self.x2),
            1 => (self.x2, self.x1),
            _ => panic!("Kashiwara index must be 0 or 1"),
        }
    }

    /// `f̃_i`, or `None` when `φ_i = 0`.
    pub fn f(&self, i: u8) -> Option<Self> {
        self.f_pow(i, 1)
    }

    /// `ẽ_i`, or `None` when `ε_i = 0`.
    pub fn e(&self, i: u8) -> Option<Self> {
        self.e_pow(i, 1)
    }

    fn f_pow(&self, i: u8, n: u64) -> Option<Self> {
        let (_, phi) = self.eps_phi(i);
        if phi < n {
            return None;
        }
        Some(match i {
            1 => CrystalElement {
                x1: self.x1 - n,
                x2: self.x2 + n,
            },
            _ => CrystalElement {
                x1: self.x1 + n,
                x2: self.x2 - n,
            },
        })
    }

    fn e_pow(&self, i: u8, n: u64) -> Option<Self> {
        let (eps, _) = self.eps_phi(i);
        if eps < n {
            return None;
        }
        Some(match i {
            1 => CrystalElement {
                x1: self.x1 + n,
                x2: self.x2 - n,
            },
            _ => CrystalElement {
                x1: self.x1 - n,
                x2: self.x2 + n,
            },
        })
    }
}

impl fmt::Display for CrystalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.x1 {
            f.write_str("1")?;
        }
        for _ in 0..self.x2 {
            f.write_str("2")?;
        }
        Ok(())
    }
}

impl FromStr for CrystalElement {
    type Err = Error;

    /// Parses a weakly increasing tableau such as `1122`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty tableau".into()));
        }
        let x1 = s.bytes().take_while(|&b| b == b'1').count();
        let rest = &s[x1..];
        if !rest.bytes().all(|b| b == b'2') {
            return Err(Error::Parse(format!("not a one-row tableau over 1<2: {s:?}")));
        }
        Ok(CrystalElement::new(x1 as u64, rest.len() as u64))
    }
}

/// Result of the combinatorial R on `x ⊗ y`: the image `ỹ ⊗ x̃` and the
/// local energy `H ≤ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RMatrixOutput {
    pub y_tilde: CrystalElement,
    pub x_tilde: CrystalElement,
    pub energy_h: i64,
}

/// Combinatorial R: `B_l ⊗ B_k → B_k ⊗ B_l`, `x ⊗ y ↦ ỹ ⊗ x̃`.
pub fn combinatorial_r(x: CrystalElement, y: CrystalElement) -> RMatrixOutput {
    let q0 = x.x1.min(y.x2);
    let q1 = x.x2.min(y.x1);
    RMatrixOutput {
        y_tilde: CrystalElement {
            x1: y.x1 + q0 - q1,
            x2: y.x2 + q1 - q0,
        },
        x_tilde: CrystalElement {
            x1: x.x1 + q1 - q0,
            x2: x.x2 + q0 - q1,
        },
        energy_h: -(q0 as i64),
    }
}

/// Element of the affinization: `ζ^degree elem`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineElement {
    pub degree: i64,
    pub elem: CrystalElement,
}

/// Affine R: `ζ^d x ⊗ ζ^e y ↦ ζ^{e+H} ỹ ⊗ ζ^{d−H} x̃`.
pub fn affine_r(a: AffineElement, b: AffineElement) -> (AffineElement, AffineElement) {
    let r = combinatorial_r(a.elem, b.elem);
    (
        AffineElement {
            degree: b.degree + r.energy_h,
            elem: r.y_tilde,
        },
        AffineElement {
            degree: a.degree - r.energy_h,
            elem: r.x_tilde,
        },
    )
}

/// Tensor product `b_1 ⊗ ⋯ ⊗ b_n` of crystal elements of arbitrary capacities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorWord(pub Vec<CrystalElement>);

impl TensorWord {
    pub fn new(components: Vec<CrystalElement>) -> Self {
        TensorWord(components)
    }

    pub fn components(&self) -> &[CrystalElement] {
        &self.0
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(CrystalElement::weight).sum()
    }

    pub fn epsilon(&self, i: u8) -> u64 {
        epsilon(&self.0, i)
    }

    pub fn phi(&self, i: u8) -> u64 {
        phi(&self.0, i)
    }

    pub fn f(&self, i: u8) -> Option<Self> {
        kashiwara_f(&self.0, i).map(TensorWord)
    }

    pub fn e(&self, i: u8) -> Option<Self> {
        kashiwara_e(&self.0, i).map(TensorWord)
    }

    pub fn s(&self, i: u8) -> Self {
        TensorWord(weyl_s(&self.0, i))
    }

    pub fn omega(&self) -> Self {
        TensorWord(omega(&self.0))
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("⊗")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for TensorWord {
    type Err = Error;

    /// Components separated by `⊗` or whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s
            .split(|c: char| c == '⊗' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if parts.is_empty() {
            return Err(Error::Parse("empty tensor word".into()));
        }
        parts
            .into_iter()
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(TensorWord)
    }
}

/// Reduced i-signature `−^α +^β`: unmatched minus and plus runs as
/// `(component, count)`, left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReducedSignature {
    pub minus: Vec<(usize, u64)>,
    pub plus: Vec<(usize, u64)>,
}

impl ReducedSignature {
    pub fn epsilon(&self) -> u64 {
        self.minus.iter().map(|r| r.1).sum()
    }

    pub fn phi(&self) -> u64 {
        self.plus.iter().map(|r| r.1).sum()
    }
}

/// Cancels adjacent `+−` pairs in one left-to-right stack pass.
pub fn reduced_signature(word: &[CrystalElement], i: u8) -> ReducedSignature {
    let mut sig = ReducedSignature::default();
    for (k, x) in word.iter().enumerate() {
        let (mut eps, phi) = x.eps_phi(i);
        while eps > 0 {
            let Some(top) = sig.plus.last_mut() else { break };
            let c = eps.min(top.1);
            top.1 -= c;
            eps -= c;
            if top.1 == 0 {
                sig.plus.pop();
            }
        }
        if eps > 0 {
            sig.minus.push((k, eps));
        }
        if phi > 0 {
            sig.plus.push((k, phi));
        }
    }
    sig
}

pub fn epsilon(word: &[CrystalElement], i: u8) -> u64 {
    reduced_signature(word, i).epsilon()
}

pub fn phi(word: &[CrystalElement], i: u8) -> u64 {
    reduced_signature(word, i).phi()
}

/// `f̃_i` on a word; `None` is the crystal zero.
pub fn kashiwara_f(word: &[CrystalElement], i: u8) -> Option<Vec<CrystalElement>> {
    let sig = reduced_signature(word, i);
    let &(k, _) = sig.plus.first()?;
    let mut out = word.to_vec();
    out[k] = out[k].f(i).expect("unmatched plus implies positive phi");
    Some(out)
}

/// `ẽ_i` on a word; `None` is the crystal zero.
pub fn kashiwara_e(word: &[CrystalElement], i: u8) -> Option<Vec<CrystalElement>> {
    let sig = reduced_signature(word, i);
    let &(k, _) = sig.minus.last()?;
    let mut out = word.to_vec();
    out[k] = out[k].e(i).expect("unmatched minus implies positive epsilon");
    Some(out)
}

/// Simple reflection `s_i`: turns `−^α +^β` into `−^β +^α`.
pub fn weyl_s(word: &[CrystalElement], i: u8) -> Vec<CrystalElement> {
    let sig = reduced_signature(word, i);
    let (eps, phi) = (sig.epsilon(), sig.phi());
    let mut out = word.to_vec();
    if phi >= eps {
        // f̃^n flips the n leftmost unmatched pluses.
        let mut n = phi - eps;
        for &(k, c) in &sig.plus {
            if n == 0 {
                break;
            }
            let t = n.min(c);
            out[k] = out[k].f_pow(i, t).expect("enough unmatched pluses");
            n -= t;
        }
    } else {
        // ẽ^n flips the n rightmost unmatched minuses.
        let mut n = eps - phi;
        for &(k, c) in sig.minus.iter().rev() {
            if n == 0 {
                break;
            }
            let t = n.min(c);
            out[k] = out[k].e_pow(i, t).expect("enough unmatched minuses");
            n -= t;
        }
    }
    out
}

/// Dynkin diagram automorphism applied componentwise.
pub fn omega(word: &[CrystalElement]) -> Vec<CrystalElement> {
    word.iter().map(CrystalElement::omega).collect()
}

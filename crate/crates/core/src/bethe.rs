//! String-center equations of the Bethe ansatz at `q = 0`.
//!
//! For a configuration `m` the angle variables map to string centers `u` by
//! solving `A u = c + J + ρ` exactly. The integer matrices `A` (size
//! `γ = Σ m_j`) and `F` (size `s`) govern counting and periods.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::kkr::ActionVariable;
use crate::scattering::AngleRep;

/// Exact integer and rational matrix helpers.
pub mod linalg {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = m.to_vec();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Solves `m x = b`; `None` when `m` is singular.
    pub fn solve(m: &[Vec<BigInt>], b: &[BigRational]) -> Option<Vec<BigRational>> {
        let n = m.len();
        let mut a: Vec<Vec<BigRational>> = m
            .iter()
            .zip(b)
            .map(|(row, rhs)| {
                let mut r: Vec<BigRational> = row.iter().map(|x| BigRational::from(x.clone())).collect();
                r.push(rhs.clone());
                r
            })
            .collect();
        for k in 0..n {
            let piv = (k..n).find(|&r| !a[r][k].is_zero())?;
            a.swap(k, piv);
            let inv = a[k][k].recip();
            let pivot: Vec<BigRational> = std::mem::take(&mut a[k]).into_iter().map(|x| x * &inv).collect();
            for (i, row) in a.iter_mut().enumerate() {
                if i != k && !row[k].is_zero() {
                    let f = row[k].clone();
                    for (x, y) in row.iter_mut().zip(&pivot).skip(k) {
                        *x -= y * &f;
                    }
                }
            }
            a[k] = pivot;
        }
        Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
    }

    /// Copy of `m` with column `c` replaced by `v`.
    pub fn replace_column(m: &[Vec<BigInt>], c: usize, v: &[BigInt]) -> Vec<Vec<BigInt>> {
        m.iter()
            .zip(v)
            .map(|(row, x)| {
                let mut r = row.clone();
                r[c] = x.clone();
                r
            })
            .collect()
    }
}

/// Matrices `A`, `F` and the vectors `h`, `h'` for `(m, L, l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringSystem {
    pub m: ActionVariable,
    pub l: u64,
    /// Occurring lengths `j_1 < ⋯ < j_s`.
    pub lengths: Vec<usize>,
    /// Row labels `(j, α)` of `A`, `α` 1-based.
    pub labels: Vec<(usize, usize)>,
    pub a: Vec<Vec<BigInt>>,
    pub f: Vec<Vec<BigInt>>,
    /// `h_{jα} = min(j, l)`.
    pub h: Vec<BigInt>,
    /// `h'_j = min(j, l)`.
    pub h_prime: Vec<BigInt>,
    pub det_a: BigInt,
    pub det_f: BigInt,
}

impl StringSystem {
    /// Builds the matrices and asserts the determinant factorizations.
    pub fn build(m: &ActionVariable, l: u64) -> Result<Self> {
        let lengths = m.lengths();
        let labels: Vec<(usize, usize)> = lengths
            .iter()
            .flat_map(|&j| (1..=m.m(j)).map(move |al| (j, al)))
            .collect();
        let a: Vec<Vec<BigInt>> = labels
            .iter()
            .map(|&(j, al)| {
                labels
                    .iter()
                    .map(|&(k, be)| {
                        let mut v = 2 * j.min(k) as i64;
                        if j == k {
                            v -= 1;
                            if al == be {
                                v += m.vacancy(j) + m.m(j) as i64;
                            }
                        }
                        BigInt::from(v)
                    })
                    .collect()
            })
            .collect();
        let f: Vec<Vec<BigInt>> = lengths
            .iter()
            .map(|&j| {
                lengths
                    .iter()
                    .map(|&k| {
                        let mut v = 2 * (j.min(k) * m.m(k)) as i64;
                        if j == k {
                            v += m.vacancy(j);
                        }
                        BigInt::from(v)
                    })
                    .collect()
            })
            .collect();
        let cap = |j: usize| BigInt::from((l as usize).min(j));
        let h = labels.iter().map(|&(j, _)| cap(j)).collect();
        let h_prime = lengths.iter().map(|&j| cap(j)).collect();
        let det_a = linalg::det(&a);
        let det_f = linalg::det(&f);
        let sys = StringSystem {
            m: m.clone(),
            l,
            lengths,
            labels,
            a,
            f,
            h,
            h_prime,
            det_a,
            det_f,
        };
        assert_eq!(sys.det_f, sys.det_f_product(), "det F factorization");
        assert_eq!(sys.det_a, sys.det_a_product(), "det A factorization");
        assert!(sys.m.is_empty() || sys.det_a.is_positive(), "det A must be positive");
        Ok(sys)
    }

    /// `L · p_{j_1} ⋯ p_{j_{s−1}}`.
    pub fn det_f_product(&self) -> BigInt {
        let s = self.lengths.len();
        let mut v = BigInt::from(self.m.size());
        if s == 0 {
            return BigInt::one();
        }
        for &j in &self.lengths[..s - 1] {
            v *= self.m.vacancy(j);
        }
        v
    }

    /// `det F · Π (p_j + m_j)^{m_j − 1}`.
    pub fn det_a_product(&self) -> BigInt {
        let mut v = self.det_f.clone();
        for &j in &self.lengths {
            let base = BigInt::from(self.m.vacancy(j) + self.m.m(j) as i64);
            v *= num_traits::pow(base, self.m.m(j) - 1);
        }
        v
    }

    /// `det F[j]`: column of length `j` replaced by `h'`.
    pub fn det_f_column(&self, j: usize) -> BigInt {
        let c = self.lengths.iter().position(|&k| k == j).expect("occurring length");
        linalg::det(&linalg::replace_column(&self.f, c, &self.h_prime))
    }

    /// `det F[j]` for every occurring length, in order.
    pub fn det_f_columns(&self) -> Vec<BigInt> {
        self.lengths.iter().map(|&j| self.det_f_column(j)).collect()
    }

    /// `det A[jα]`: column `(j, α)` replaced by `h`.
    pub fn det_a_column(&self, j: usize, alpha: usize) -> BigInt {
        let c = self.labels.iter().position(|&x| x == (j, alpha)).expect("row label");
        linalg::det(&linalg::replace_column(&self.a, c, &self.h))
    }

    /// `A⁻¹ h`.
    pub fn a_inverse_h(&self) -> Vec<BigRational> {
        let b: Vec<BigRational> = self.h.iter().map(|x| BigRational::from(x.clone())).collect();
        linalg::solve(&self.a, &b).expect("A is nonsingular")
    }

    /// `F⁻¹ h'`.
    pub fn f_inverse_h(&self) -> Vec<BigRational> {
        let b: Vec<BigRational> = self.h_prime.iter().map(|x| BigRational::from(x.clone())).collect();
        linalg::solve(&self.f, &b).expect("F is nonsingular")
    }
}

/// Binomial coefficient `C(n, k)` with `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut v = BigInt::one();
    for i in 0..k {
        v = v * (n - i) / (i + 1);
    }
    v
}

/// `Ω(m)`: number of off-diagonal string-center solutions, equal to the
/// number of paths with soliton content `m`. Both product formulas are
/// computed and asserted equal.
pub fn omega_count(m: &ActionVariable) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    let sys = StringSystem::build(m, 1).expect("admissible configuration");
    let mut first = BigRational::from(sys.det_f.clone());
    for &j in &sys.lengths {
        let (p, c) = (m.vacancy(j) as u64, m.m(j) as u64);
        first *= BigRational::new(binomial(p + c - 1, c - 1), BigInt::from(c));
    }
    let top = *sys.lengths.last().unwrap();
    let size = BigInt::from(m.size());
    let mut second = if m.vacancy(top) == 0 {
        BigRational::new(size, BigInt::from(m.m(top)))
    } else {
        let (p, c) = (m.vacancy(top) as u64, m.m(top) as u64);
        BigRational::new(size * binomial(p + c - 1, c), BigInt::from(p))
    };
    for &j in &sys.lengths[..sys.lengths.len() - 1] {
        let (p, c) = (m.vacancy(j) as u64, m.m(j) as u64);
        second *= BigRational::from(binomial(p + c - 1, c));
    }
    assert!(first.is_integer(), "Ω must be an integer");
    assert_eq!(first, second, "the two counting formulas disagree");
    first.to_integer()
}

/// String centers `u^{(j)}_α`, per block in row order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetheRoots {
    pub roots: BTreeMap<usize, Vec<BigRational>>,
}

impl BetheRoots {
    /// `σ̃_k`: `(u_1, …, u_m) ↦ (u_2, …, u_m, u_1 + 1)` on block `k`.
    pub fn sigma_tilde(&self, k: usize) -> BetheRoots {
        let mut roots = self.roots.clone();
        if let Some(v) = roots.get_mut(&k) {
            let first = v.remove(0);
            v.push(first + BigRational::one());
        }
        BetheRoots { roots }
    }
}

fn frac(x: &BigRational) -> BigRational {
    x - BigRational::from(x.floor().to_integer())
}

/// `Ψ`: solves `A u = c + J + ρ` with `c_j = (p_j + m_j + 1)/2` and
/// `ρ_α = α − 1`, where `J` includes the offset.
pub fn psi(a: &AngleRep) -> BetheRoots {
    let m = a.action();
    if m.is_empty() {
        return BetheRoots { roots: BTreeMap::new() };
    }
    let sys = StringSystem::build(m, 1).expect("admissible configuration");
    let elems = a.element_windows();
    let rhs: Vec<BigRational> = sys
        .labels
        .iter()
        .map(|&(j, al)| {
            let c = BigRational::new(BigInt::from(m.vacancy(j) + m.m(j) as i64 + 1), BigInt::from(2));
            c + BigRational::from(elems[&j][al - 1].clone()) + BigRational::from(BigInt::from(al - 1))
        })
        .collect();
    let u = linalg::solve(&sys.a, &rhs).expect("det A > 0");
    let mut roots: BTreeMap<usize, Vec<BigRational>> = BTreeMap::new();
    for (&(j, _), x) in sys.labels.iter().zip(u) {
        roots.entry(j).or_default().push(x);
    }
    for v in roots.values() {
        let one = BigRational::one();
        let ordered = v.windows(2).all(|w| w[0] < w[1]) && v.last().unwrap() < &(&v[0] + &one);
        assert!(ordered, "string centers must increase inside a unit window");
    }
    BetheRoots { roots }
}

/// Complete invariant of an angle class: per block, the sorted fractional
/// parts of the string centers.
pub type ClassInvariant = BTreeMap<usize, Vec<BigRational>>;

pub fn canonical_invariant(a: &AngleRep) -> ClassInvariant {
    psi(a)
        .roots
        .into_iter()
        .map(|(j, v)| {
            let mut f: Vec<BigRational> = v.iter().map(frac).collect();
            f.sort();
            (j, f)
        })
        .collect()
}

/// Exponent `Σ min(j, l)(u^{(j)}_α + 1/2)` of the `q → 0` eigenvalue.
pub fn eigenvalue_exponent(a: &AngleRep, l: u64) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    psi(a)
        .roots
        .iter()
        .flat_map(|(&j, v)| {
            let w = BigRational::from(BigInt::from((l as usize).min(j)));
            let half = half.clone();
            v.iter().map(move |u| &w * (u + &half))
        })
        .sum()
}

/// Whether `N` times the eigenvalue exponent is an integer.
pub fn eigenvalue_is_root_of_unity(a: &AngleRep, l: u64, n: &BigInt) -> bool {
    (eigenvalue_exponent(a, l) * BigRational::from(n.clone())).is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big_rows(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_basics() {
        assert_eq!(linalg::det(&big_rows(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(linalg::det(&big_rows(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(linalg::det(&big_rows(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(linalg::det(&[]), BigInt::one());
    }

    #[test]
    fn f_matrix_examples() {
        let m = ActionVariable::from_multiplicities(25, &[1, 2, 1, 1]).unwrap();
        let sys = StringSystem::build(&m, 3).unwrap();
        assert_eq!(
            sys.f,
            big_rows(&[&[17, 4, 2, 2], &[2, 15, 4, 4], &[2, 8, 9, 6], &[2, 8, 6, 9]])
        );
        let m = ActionVariable::from_multiplicities(26, &[2, 2, 1]).unwrap();
        let sys = StringSystem::build(&m, 3).unwrap();
        assert_eq!(sys.f, big_rows(&[&[20, 4, 2], &[4, 18, 4], &[4, 8, 14]]));
        assert_eq!(sys.det_f, BigInt::from(4160));
        assert_eq!(
            sys.det_f_columns(),
            vec![BigInt::from(80), BigInt::from(288), BigInt::from(704)]
        );
        for row in &sys.a {
            assert_eq!(row.iter().sum::<BigInt>(), BigInt::from(26));
        }
    }

    #[test]
    fn omega_examples() {
        let cases = [
            (vec![4], 2),
            (vec![2, 1], 24),
            (vec![0, 2], 4),
            (vec![1, 0, 1], 32),
            (vec![0, 0, 0, 1], 8),
        ];
        let mut total = BigInt::zero();
        for (m, expect) in cases {
            let m = ActionVariable::from_multiplicities(8, &m).unwrap();
            let w = omega_count(&m);
            assert_eq!(w, BigInt::from(expect));
            total += w;
        }
        assert_eq!(total, binomial(8, 4));
        assert_eq!(
            omega_count(&ActionVariable::from_multiplicities(8, &[]).unwrap()),
            BigInt::one()
        );
    }

    #[test]
    fn single_row_root() {
        let m = ActionVariable::from_multiplicities(8, &[0, 0, 0, 1]).unwrap();
        let a = AngleRep::new(m, BigInt::zero(), BTreeMap::from([(4, vec![BigInt::zero()])])).unwrap();
        let r = psi(&a);
        assert_eq!(r.roots[&4], vec![BigRational::new(BigInt::one(), BigInt::from(8))]);
        assert!(eigenvalue_is_root_of_unity(&a, 4, &BigInt::from(2)));
        assert!(!eigenvalue_is_root_of_unity(&a, 4, &BigInt::one()));
    }

    #[test]
    fn offset_changes_class() {
        let m = ActionVariable::from_multiplicities(8, &[1]).unwrap();
        let a = AngleRep::new(m, BigInt::zero(), BTreeMap::from([(1, vec![BigInt::from(2)])])).unwrap();
        let b = crate::scattering::linear_evolve(&a, 1, &BigInt::one());
        assert_ne!(canonical_invariant(&a), canonical_invariant(&b));
        assert!(!eigenvalue_is_root_of_unity(&a, 1, &BigInt::one()));
        assert!(eigenvalue_is_root_of_unity(&a, 1, &BigInt::from(8)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), BigInt::from(70));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}

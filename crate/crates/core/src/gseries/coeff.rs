//! Exact Γ-series coefficients `Q_λ(c)` and their monomial expansions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::srring::{AlgebraElement, GradedAlgebra};

/// Univariate polynomial truncated to a fixed number of coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Trunc(pub Vec<BigRational>);

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl Trunc {
    pub fn one(len: usize) -> Self {
        let mut v = vec![BigRational::zero(); len];
        if len > 0 {
            v[0] = BigRational::one();
        }
        Trunc(v)
    }

    /// `a + b·x`.
    pub fn linear(len: usize, a: BigRational, b: BigRational) -> Self {
        let mut v = vec![BigRational::zero(); len];
        if len > 0 {
            v[0] = a;
        }
        if len > 1 {
            v[1] = b;
        }
        Trunc(v)
    }

    /// `1 / (a + b·x)` as a truncated geometric series, `a ≠ 0`.
    pub fn inverse_linear(len: usize, a: &BigRational, b: &BigRational) -> Self {
        let r = -(b / a);
        let mut v = Vec::with_capacity(len);
        let mut p = a.recip();
        for _ in 0..len {
            v.push(p.clone());
            p *= &r;
        }
        Trunc(v)
    }

    pub fn mul(&self, o: &Trunc) -> Trunc {
        let len = self.0.len();
        let mut v = vec![BigRational::zero(); len];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate().take(len - i) {
                v[i + j] += a * b;
            }
        }
        Trunc(v)
    }
}

/// `Γ(x+1)/Γ(x+λ+1)` as a power series in `x`, truncated to `len` terms.
///
/// For `λ < 0` this is `Π_{k=0}^{-λ-1} (x − k)`; for `λ > 0` it is
/// `1 / Π_{k=1}^{λ} (x + k)`.
pub(crate) fn gamma_ratio(len: usize, lambda: &BigInt) -> Trunc {
    let mut acc = Trunc::one(len);
    if lambda.is_negative() {
        let m = i64::try_from(-lambda).expect("exponent fits in i64");
        for k in 0..m {
            acc = acc.mul(&Trunc::linear(len, rat(-k), BigRational::one()));
        }
    } else if lambda.is_positive() {
        let m = i64::try_from(lambda.clone()).expect("exponent fits in i64");
        for k in 1..=m {
            acc = acc.mul(&Trunc::inverse_linear(len, &rat(k), &BigRational::one()));
        }
    }
    acc
}

/// Falling factorial `(x + a)(x + a − 1)…(x + a − k + 1)` truncated to `len` terms.
pub(crate) fn falling(len: usize, a: &BigInt, k: u64) -> Trunc {
    let mut acc = Trunc::one(len);
    for t in 0..k {
        let c = BigRational::from_integer(a - BigInt::from(t));
        acc = acc.mul(&Trunc::linear(len, c, BigRational::one()));
    }
    acc
}

/// Substitute the ring generator `c_j` into a truncated series.
pub(crate) fn substitute(ring: &GradedAlgebra, powers: &[Vec<AlgebraElement>], j: usize, p: &Trunc) -> AlgebraElement {
    let mut out = ring.zero();
    for (i, c) in p.0.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&powers[j][i].scale(c));
        }
    }
    out
}

/// `powers[j][i] = c_j^i` for `i < n`.
pub(crate) fn generator_powers(ring: &GradedAlgebra) -> Vec<Vec<AlgebraElement>> {
    (0..ring.npoints())
        .map(|j| {
            let g = ring.generator(j);
            let mut v = vec![ring.one()];
            for i in 1..ring.rank().max(1) {
                v.push(ring.mul(&v[i - 1], &g));
            }
            v
        })
        .collect()
}

/// Coefficient evaluator with cached generator powers.
pub struct CoefficientEngine<'a> {
    ring: &'a GradedAlgebra,
    powers: Vec<Vec<AlgebraElement>>,
}

impl<'a> CoefficientEngine<'a> {
    pub fn new(ring: &'a GradedAlgebra) -> Self {
        Self { ring, powers: generator_powers(ring) }
    }

    pub fn ring(&self) -> &GradedAlgebra {
        self.ring
    }

    /// Full computation of `Q_λ(c) = Π_j Γ(c_j+1)/Γ(c_j+λ_j+1)` in the ring.
    pub fn gamma_coefficient(&self, lambda: &[BigInt]) -> AlgebraElement {
        let len = self.ring.rank().max(1);
        let mut acc = self.ring.one();
        for (j, l) in lambda.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            let f = substitute(self.ring, &self.powers, j, &gamma_ratio(len, l));
            acc = self.ring.mul(&acc, &f);
        }
        acc
    }

    /// Same as [`Self::gamma_coefficient`], returning zero early when the negative support is not a face.
    pub fn gamma_coefficient_fast(&self, lambda: &[BigInt]) -> AlgebraElement {
        let neg: Vec<usize> = lambda.iter().enumerate().filter(|(_, l)| l.is_negative()).map(|(j, _)| j).collect();
        if !self.ring.triangulation().is_face(&neg) {
            return self.ring.zero();
        }
        self.gamma_coefficient(lambda)
    }
}

/// `Q_λ(c)` computed from scratch (builds a fresh power cache).
pub fn gamma_coefficient(ring: &GradedAlgebra, lambda: &[BigInt]) -> AlgebraElement {
    CoefficientEngine::new(ring).gamma_coefficient(lambda)
}

/// Expansion coefficients `K_m` of `Π_{λ_j<0} Π_{k<-λ_j}(k + x_j) / Π_{λ_j>0} Π_{k≤λ_j}(k − x_j)`
/// for all `m` with `‖m‖ ≤ max_degree`, as `(m, K_m)` pairs.
pub fn expansion_coefficients(lambda: &[BigInt], max_degree: usize) -> Vec<(Vec<usize>, BigRational)> {
    let len = max_degree + 1;
    let per_var: Vec<Trunc> = lambda
        .iter()
        .map(|l| {
            let mut acc = Trunc::one(len);
            if l.is_negative() {
                let m = i64::try_from(-l).expect("fits");
                for k in 0..m {
                    acc = acc.mul(&Trunc::linear(len, rat(k), BigRational::one()));
                }
            } else if l.is_positive() {
                let m = i64::try_from(l.clone()).expect("fits");
                for k in 1..=m {
                    acc = acc.mul(&Trunc::inverse_linear(len, &rat(k), &rat(-1)));
                }
            }
            acc
        })
        .collect();
    let mut out = Vec::new();
    let mut m = vec![0usize; lambda.len()];
    loop {
        let total: usize = m.iter().sum();
        if total <= max_degree {
            let k = m.iter().zip(&per_var).fold(BigRational::one(), |acc, (&e, p)| acc * &p.0[e]);
            out.push((m.clone(), k));
        }
        let mut i = 0;
        loop {
            if i == m.len() {
                return out;
            }
            m[i] += 1;
            if m.iter().sum::<usize>() <= max_degree {
                break;
            }
            m[i] = 0;
            i += 1;
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Upper bound `N^{‖λ‖} · 2^{‖m‖+N} · N! · (max(1, N − deg λ))!` on `K_m`.
pub fn expansion_bound(lambda: &[BigInt], m_norm: usize) -> BigInt {
    let n_pts = lambda.len();
    let norm: BigInt = lambda.iter().map(|l| l.abs()).sum();
    let deg: BigInt = lambda.iter().sum();
    let norm = u32::try_from(norm).expect("norm fits");
    let slack = BigInt::from(n_pts) - deg;
    let slack = usize::try_from(slack.max(BigInt::one())).expect("fits");
    BigInt::from(n_pts).pow(norm) * BigInt::from(2).pow((m_norm + n_pts) as u32) * factorial(n_pts) * factorial(slack)
}

/// Whether every `K_m` (for `‖m‖ ≤ max_degree`) is nonnegative and within [`expansion_bound`].
pub fn estimate_holds(lambda: &[BigInt], max_degree: usize) -> bool {
    expansion_coefficients(lambda, max_degree).iter().all(|(m, k)| {
        let bound = BigRational::from_integer(expansion_bound(lambda, m.iter().sum()));
        !k.is_negative() && *k <= bound
    })
}

/// `Q_λ` rebuilt from the `K_m`: `(−1)^P Σ (−1)^{‖m‖} K_m c^m` with `P = Σ_{λ_j<0} |λ_j|`.
pub fn coefficient_from_expansion(ring: &GradedAlgebra, lambda: &[BigInt]) -> AlgebraElement {
    let p: BigInt = lambda.iter().filter(|l| l.is_negative()).map(|l| -l).sum();
    let negs = usize::from(num_integer::Integer::is_odd(&p));
    let mut out = ring.zero();
    for (m, k) in expansion_coefficients(lambda, ring.rank().saturating_sub(1)) {
        let sign = if (negs + m.iter().sum::<usize>()) % 2 == 0 { k } else { -k };
        if sign.is_zero() {
            continue;
        }
        let mono: Vec<u32> = m.iter().map(|&e| e as u32).collect();
        out = out.add(&ring.monomial(&mono).scale(&sign));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ints;
    use crate::srring::tests::ring_t1;

    #[test]
    fn zero_exponent_gives_unit() {
        let r = ring_t1();
        assert_eq!(gamma_coefficient(&r, &ints(&[0; 6])), r.one());
    }

    #[test]
    fn single_negative_entry() {
        let r = ring_t1();
        assert_eq!(gamma_coefficient(&r, &ints(&[0, 0, 0, -1, 0, 0])), r.generator(3));
    }

    #[test]
    fn fast_path_agrees_with_full_computation() {
        let r = ring_t1();
        let e = CoefficientEngine::new(&r);
        for l in [ints(&[-1, 0, 0, 0, 0, -1]), ints(&[-1, 0, 0, 0, -1, 2]), ints(&[0, -2, 1, 0, 0, 1]), ints(&[-1, 0, -1, 2, 0, 0])] {
            assert_eq!(e.gamma_coefficient(&l), e.gamma_coefficient_fast(&l), "{l:?}");
        }
        assert!(e.gamma_coefficient(&ints(&[-1, 0, 0, 0, 0, -1])).is_zero());
    }

    #[test]
    fn expansion_reproduces_coefficient() {
        let r = ring_t1();
        for l in [ints(&[1, 0, 0, -3, 0, 1]), ints(&[2, 1, 2, -8, 1, 2]), ints(&[-1, 1, 1, -2, 0, 1])] {
            assert_eq!(coefficient_from_expansion(&r, &l), gamma_coefficient(&r, &l));
            assert!(estimate_holds(&l, 3));
        }
        let r2 = ring_t1();
        let l = ints(&[0, 0, 0, -2, 1, 1]);
        assert_eq!(coefficient_from_expansion(&r2, &l), gamma_coefficient(&r2, &l));
    }

    #[test]
    fn truncated_inverse() {
        let p = Trunc::inverse_linear(4, &rat(2), &rat(1));
        let q = p.mul(&Trunc::linear(4, rat(2), rat(1)));
        assert_eq!(q, Trunc::one(4));
    }
}

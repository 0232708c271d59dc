//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`] and [`BigRational`]; there is no
//! floating point anywhere in this module. Lattice computations (kernel
//! bases, particular integer solutions) go through a unimodular row
//! reduction of `[Aᵗ | I]`, so the kernel basis returned is saturated.

mod int;
mod rat;
pub mod serial;

pub use int::{
    hermite_normal_form, kernel_basis, solve_particular, square_inverse, IntMatrix,
};
pub use rat::RatMatrix;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Rational vector with entries in lowest terms (guaranteed by `BigRational`).
pub type RatVector = Vec<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactLaError {
    #[error("no integer solution: right-hand side is not in the column lattice")]
    NoIntegerSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

pub type Result<T> = std::result::Result<T, ExactLaError>;

/// Integer dot product.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rational dot product.
pub fn rat_dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Pairing of an integer vector with a rational one.
pub fn mixed_dot(a: &[BigInt], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| {
        acc + y * BigRational::from_integer(x.clone())
    })
}

pub fn gcd_slice(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divide out the content of an integer vector. The zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = gcd_slice(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clear denominators and divide by the content, keeping the direction.
pub fn primitive_from_rational(v: &[BigRational]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive(&ints)
}

/// Primitive scaling with the sign fixed so that the first nonzero entry is positive.
pub fn canonical_line(v: &[BigInt]) -> Vec<BigInt> {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => p.iter().map(|x| -x).collect(),
        _ => p,
    }
}

pub fn to_rat(v: &[BigInt]) -> RatVector {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Rational vector from small integers, handy in tests and examples.
pub fn rats(v: &[i64]) -> RatVector {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// Returns the integer entries of `v` if all denominators are one.
pub fn as_integers(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if m.rows() != m.cols() {
        return Err(ExactLaError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_and_canonical() {
        assert_eq!(primitive(&ints(&[4, -6, 0])), ints(&[2, -3, 0]));
        assert_eq!(canonical_line(&ints(&[0, -4, 6])), ints(&[0, 2, -3]));
        assert_eq!(primitive(&ints(&[0, 0])), ints(&[0, 0]));
        let r = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-1).into(), 3.into()),
        ];
        assert_eq!(primitive_from_rational(&r), ints(&[3, -2]));
    }

    #[test]
    fn bareiss_matches_small_cases() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(det(&m).unwrap(), BigInt::from(2));
        let m = IntMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]);
        // cofactor expansion: 0*(0+9) - 1*(8-12) + 2*(-3-0) = -2
        assert_eq!(det(&m).unwrap(), BigInt::from(-2));
        let s = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(det(&s).unwrap().is_zero());
    }
}

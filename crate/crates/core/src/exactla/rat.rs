use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ExactLaError, RatVector, Result};

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { BigRational::one() } else { BigRational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[RatVector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned());
        }
        Self { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> RatVector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<RatVector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(BigRational::zero(), |acc, k| acc + self.get(r, k) * other.get(k, c))
        })
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> RatVector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..self.cols {
            if top == self.rows {
                break;
            }
            let Some(p) = (top..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            self.swap_rows(top, p);
            let inv = self.get(top, c).recip();
            for k in c..self.cols {
                let v = self.get(top, k) * &inv;
                self.set(top, k, v);
            }
            for r in 0..self.rows {
                if r == top || self.get(r, c).is_zero() {
                    continue;
                }
                let f = self.get(r, c).clone();
                for k in c..self.cols {
                    let v = self.get(r, k) - &f * self.get(top, k);
                    self.set(r, k, v);
                }
            }
            pivots.push(c);
            top += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(ExactLaError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zeros(0, 0));
        }
        let mut aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(ExactLaError::Singular);
        }
        Ok(Self::from_fn(n, n, |r, c| aug.get(r, n + c).clone()))
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(ExactLaError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut m = self.clone();
        let mut acc = BigRational::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                acc = -acc;
            }
            let piv = m.get(c, c).clone();
            acc *= &piv;
            for r in c + 1..m.rows {
                if m.get(r, c).is_zero() {
                    continue;
                }
                let f = m.get(r, c) / &piv;
                for k in c..m.cols {
                    let v = m.get(r, k) - &f * m.get(c, k);
                    m.set(r, k, v);
                }
            }
        }
        Ok(acc)
    }

    /// Some solution `x` of `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[BigRational]) -> Option<RatVector> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of `{x : self · x = 0}` (one vector per free column).
    pub fn nullspace(&self) -> Vec<RatVector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        write!(f, "RatMatrix{rows:?}")
    }
}

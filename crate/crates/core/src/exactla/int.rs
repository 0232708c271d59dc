use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{det, dot, ExactLaError, RatMatrix, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_big_rows(&big, rows.first().map_or(0, Vec::len))
    }

    /// Build from rows of arbitrary-precision entries. `cols` is needed for the zero-row case.
    pub fn from_big_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
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

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(ExactLaError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let v: BigInt = (0..self.cols).map(|k| self.get(r, k) * other.get(k, c)).sum();
                out.set(r, c, v);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(ExactLaError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    /// Row vector times matrix: `v · M`.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.rows {
            return Err(ExactLaError::DimensionMismatch { expected: self.rows, got: v.len() });
        }
        Ok((0..self.cols)
            .map(|c| (0..self.rows).map(|r| &v[r] * self.get(r, c)).sum())
            .collect())
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                m.set(r, k, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|&r| self.row(r).to_vec()).collect();
        Self::from_big_rows(&big, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |r, c| {
            BigRational::from_integer(self.get(r, c).clone())
        })
    }

    pub fn rank(&self) -> usize {
        self.to_rat().rank()
    }

    pub fn det(&self) -> Result<BigInt> {
        det(self)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Row echelon form by unimodular row operations on the first `lead` columns.
///
/// Returns the number of pivot rows and their pivot columns. Operations are
/// applied to whole rows, so trailing columns record the transform.
fn integer_echelon(rows: &mut [Vec<BigInt>], lead: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..lead {
        if top == rows.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below `top`
            let best = (top..rows.len())
                .filter(|&r| !rows[r][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let q = rows[r][c].div_floor(&rows[top][c]);
                let (head, tail) = rows.split_at_mut(r);
                for (x, y) in tail[0].iter_mut().zip(&head[top]) {
                    *x -= &q * y;
                }
                if !rows[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !rows[top][c].is_zero() {
            if rows[top][c].is_negative() {
                for x in rows[top].iter_mut() {
                    *x = -&*x;
                }
            }
            pivots.push(c);
            top += 1;
        }
    }
    pivots
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Zero rows are dropped; pivots are positive and entries above each pivot
/// are reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>], cols: usize) -> IntMatrix {
    let mut work: Vec<Vec<BigInt>> = rows.to_vec();
    let pivots = integer_echelon(&mut work, cols);
    work.truncate(pivots.len());
    for (k, &c) in pivots.iter().enumerate() {
        for r in 0..k {
            let q = work[r][c].div_floor(&work[k][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = work.split_at_mut(k);
            for (x, y) in head[r].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
    }
    IntMatrix::from_big_rows(&work, cols)
}

/// Augmented reduction of `[Aᵗ | I]`. Returns (echelon rows, pivot columns).
fn reduce_transpose(a: &IntMatrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let (n, big_n) = (a.rows(), a.cols());
    let mut rows: Vec<Vec<BigInt>> = (0..big_n)
        .map(|j| {
            let mut r = a.col(j);
            r.extend((0..big_n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let pivots = integer_echelon(&mut rows, n);
    (rows, pivots)
}

/// Basis (as rows) of the saturated lattice `{ℓ ∈ Zᴺ : Aℓ = 0}`, in Hermite normal form.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let (n, big_n) = (a.rows(), a.cols());
    let (rows, pivots) = reduce_transpose(a);
    let kernel: Vec<Vec<BigInt>> = rows[pivots.len()..]
        .iter()
        .map(|r| r[n..].to_vec())
        .collect();
    hermite_normal_form(&kernel, big_n)
}

fn l1(v: &[BigInt]) -> BigInt {
    v.iter().map(Signed::abs).sum()
}

/// An integer `γ` with `Aγ = β`, reduced greedily in ℓ¹ norm over the kernel lattice.
pub fn solve_particular(a: &IntMatrix, beta: &[BigInt]) -> Result<Vec<BigInt>> {
    let (n, big_n) = (a.rows(), a.cols());
    if beta.len() != n {
        return Err(ExactLaError::DimensionMismatch { expected: n, got: beta.len() });
    }
    let (rows, pivots) = reduce_transpose(a);
    // H (r x n) = rows[..r][..n], with U_top rows[..r][n..], and A·U_topᵗ = Hᵗ.
    let mut y: Vec<BigInt> = Vec::with_capacity(pivots.len());
    for (k, &p) in pivots.iter().enumerate() {
        let acc: BigInt = (0..k).map(|kk| &rows[kk][p] * &y[kk]).sum();
        let rhs = &beta[p] - acc;
        let (q, rem) = rhs.div_rem(&rows[k][p]);
        if !rem.is_zero() {
            return Err(ExactLaError::NoIntegerSolution);
        }
        y.push(q);
    }
    let mut gamma = vec![BigInt::zero(); big_n];
    for (k, yk) in y.iter().enumerate() {
        for j in 0..big_n {
            gamma[j] += yk * &rows[k][n + j];
        }
    }
    if a.mul_vec(&gamma)? != beta {
        return Err(ExactLaError::NoIntegerSolution);
    }
    let kernel: Vec<Vec<BigInt>> = rows[pivots.len()..].iter().map(|r| r[n..].to_vec()).collect();
    Ok(reduce_l1(gamma, &kernel))
}

/// Local search: add ±k_i or ±k_i±k_j while the ℓ¹ norm strictly drops.
fn reduce_l1(mut v: Vec<BigInt>, kernel: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut moves: Vec<Vec<BigInt>> = Vec::new();
    for (i, ki) in kernel.iter().enumerate() {
        moves.push(ki.clone());
        moves.push(ki.iter().map(|x| -x).collect());
        for kj in &kernel[i + 1..] {
            for (si, sj) in [(1i32, 1i32), (1, -1), (-1, 1), (-1, -1)] {
                moves.push(
                    ki.iter()
                        .zip(kj)
                        .map(|(a, b)| a * BigInt::from(si) + b * BigInt::from(sj))
                        .collect(),
                );
            }
        }
    }
    let mut best = l1(&v);
    loop {
        let mut improved = false;
        for m in &moves {
            let cand: Vec<BigInt> = v.iter().zip(m).map(|(a, b)| a + b).collect();
            let norm = l1(&cand);
            if norm < best {
                best = norm;
                v = cand;
                improved = true;
            }
        }
        if !improved {
            return v;
        }
    }
}

/// Exact inverse of a square integer matrix together with its determinant.
pub fn square_inverse(m: &IntMatrix) -> Result<(RatMatrix, BigInt)> {
    let d = det(m)?;
    if d.is_zero() {
        return Err(ExactLaError::Singular);
    }
    let inv = m.to_rat().inverse()?;
    Ok((inv, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ints;

    fn pentagon_a() -> IntMatrix {
        IntMatrix::from_rows(&[
            vec![1, 1, 1, 1, 1, 1],
            vec![0, 1, -1, 0, 1, 0],
            vec![1, 1, 0, 0, 0, -1],
        ])
    }

    fn pentagon_b() -> IntMatrix {
        IntMatrix::from_rows(&[
            vec![1, 0, 0, -2, 0, 1],
            vec![0, 1, 1, -3, 0, 1],
            vec![0, 0, 1, -2, 1, 0],
        ])
    }

    /// Express each row of `x` as an integer combination of rows of `basis`.
    fn integer_coords(basis: &IntMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let bt = basis.transpose();
        let sol = bt.to_rat().solve(&crate::exactla::to_rat(x))?;
        crate::exactla::as_integers(&sol)
    }

    #[test]
    fn kernel_spans_reference_relations() {
        let a = pentagon_a();
        let k = kernel_basis(&a);
        assert_eq!(k.rows(), 3);
        assert!(a.mul(&k.transpose()).unwrap().is_zero());
        let b = pentagon_b();
        for r in 0..3 {
            assert!(integer_coords(&k, b.row(r)).is_some(), "B row {r} not in span of kernel");
            assert!(integer_coords(&b, k.row(r)).is_some(), "kernel row {r} not in span of B");
        }
    }

    #[test]
    fn kernel_trivial_cases() {
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).rows(), 0);
        let k = kernel_basis(&IntMatrix::from_rows(&[vec![1, 1]]));
        assert_eq!(k.to_rows(), vec![ints(&[1, -1])]);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2ℓ_1 + 4ℓ_2 = 0 has kernel generated by (2,-1), not (4,-2)
        let k = kernel_basis(&IntMatrix::from_rows(&[vec![2, 4]]));
        assert_eq!(k.to_rows(), vec![ints(&[2, -1])]);
    }

    #[test]
    fn particular_solutions() {
        let a = pentagon_a();
        assert_eq!(solve_particular(&a, &ints(&[0, 0, 0])).unwrap(), ints(&[0; 6]));
        assert_eq!(solve_particular(&a, &a.col(3)).unwrap(), ints(&[0, 0, 0, 1, 0, 0]));
        let b: Vec<BigInt> = a.col(0).iter().zip(a.col(1)).map(|(x, y)| x + y).collect();
        assert_eq!(solve_particular(&a, &b).unwrap(), ints(&[1, 1, 0, 0, 0, 0]));
    }

    #[test]
    fn particular_solution_detects_non_lattice_rhs() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(solve_particular(&a, &ints(&[1, 0])), Err(ExactLaError::NoIntegerSolution));
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(solve_particular(&a, &ints(&[1, 2])), Err(ExactLaError::NoIntegerSolution));
    }

    #[test]
    fn inverse_and_determinant() {
        let a = pentagon_a();
        let sub = a.select_columns(&[0, 1, 3]);
        let (inv, d) = square_inverse(&sub).unwrap();
        // cofactor expansion of |(1,1,1),(0,1,0),(1,1,0)| along row 2 gives -1
        assert_eq!(d, BigInt::from(-1));
        assert_eq!(inv.mul(&sub.to_rat()), RatMatrix::identity(3));

        let (inv, d) = square_inverse(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]])).unwrap();
        assert_eq!(d, BigInt::from(2));
        assert_eq!(inv.get(0, 0), &BigRational::new(1.into(), 2.into()));
        assert!(matches!(
            square_inverse(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]])),
            Err(ExactLaError::Singular)
        ));
    }

    #[test]
    fn hnf_of_reference_relations() {
        let h = hermite_normal_form(&pentagon_b().to_rows(), 6);
        assert_eq!(
            h.to_rows(),
            vec![ints(&[1, 0, 0, -2, 0, 1]), ints(&[0, 1, 0, -1, -1, 1]), ints(&[0, 0, 1, -2, 1, 0])]
        );
    }
}

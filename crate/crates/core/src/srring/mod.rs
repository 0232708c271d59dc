//! The graded ring `R_{A,T}` as a finite-dimensional algebra over `Q`.
//!
//! The ring is the polynomial ring in `c_1..c_N` modulo monomials whose
//! support is not a simplex of `T` and the linear forms `Σ_j a_ij c_j`.
//! Each degree is reduced by exact Gaussian elimination; the standard
//! monomials of degree `k` are the non-pivot columns when monomials are
//! ordered lexicographically from largest to smallest.

mod element;
mod report;

pub use element::AlgebraElement;
pub use report::{PoincareCheck, RingReport};

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactla::{RatMatrix, RatVector};
use crate::triang::{PointConfiguration, Simplex, Triangulation};

pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring rank {got} differs from the number of maximal simplices {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("degree {0} component does not vanish")]
    NonVanishingTop(usize),
    #[error("vector is not in general position with respect to the configuration")]
    DegenerateXi,
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Sparse coordinate vector `(basis index, coefficient)`.
pub type Sparse = Vec<(usize, BigRational)>;

#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    cfg: PointConfiguration,
    triangulation: Triangulation,
    bases: Vec<Vec<Monomial>>,
    offsets: Vec<usize>,
    normal_forms: HashMap<Monomial, Sparse>,
    table: Vec<Vec<Sparse>>,
}

fn degree(m: &[u32]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

fn support(m: &[u32]) -> Vec<usize> {
    m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
}

/// All exponent vectors of length `vars` and total degree `k`, largest first in lex order.
fn monomials_of_degree(vars: usize, k: usize) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0..vars)
        .combinations_with_replacement(k)
        .map(|c| {
            let mut m = vec![0u32; vars];
            for i in c {
                m[i] += 1;
            }
            m
        })
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn add_monomials(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl GradedAlgebra {
    /// Build `R_{A,T}` degree by degree and verify its rank and top-degree vanishing.
    pub fn build(cfg: &PointConfiguration, t: &Triangulation) -> Result<Self, RingError> {
        let n = cfg.rank();
        let vars = cfg.npoints();
        let a = cfg.a();
        let mut bases: Vec<Vec<Monomial>> = Vec::new();
        let mut normal_forms: HashMap<Monomial, Sparse> = HashMap::new();
        let mut offsets = Vec::new();
        let mut offset = 0usize;
        let mut prev_span: Vec<Monomial> = Vec::new();

        for k in 0..=n {
            let span: Vec<Monomial> = monomials_of_degree(vars, k)
                .into_iter()
                .filter(|m| t.is_face(&support(m)))
                .collect();
            let col_of: HashMap<&Monomial, usize> = span.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows: Vec<RatVector> = Vec::new();
            if k > 0 {
                for i in 0..n {
                    for m in &prev_span {
                        let mut row = vec![BigRational::zero(); span.len()];
                        let mut any = false;
                        for j in 0..vars {
                            if a.get(i, j).is_zero() {
                                continue;
                            }
                            let mut mm = m.clone();
                            mm[j] += 1;
                            if let Some(&c) = col_of.get(&mm) {
                                row[c] += BigRational::from_integer(a.get(i, j).clone());
                                any = true;
                            }
                        }
                        if any {
                            rows.push(row);
                        }
                    }
                }
            }
            let mut mat = RatMatrix::from_rows(&rows, span.len());
            let pivots = mat.rref();
            let free: Vec<usize> = (0..span.len()).filter(|c| !pivots.contains(c)).collect();
            let basis: Vec<Monomial> = free.iter().map(|&c| span[c].clone()).collect();
            if k == n && !basis.is_empty() {
                return Err(RingError::NonVanishingTop(n));
            }
            let local: HashMap<usize, usize> = free.iter().enumerate().map(|(p, &c)| (c, p)).collect();
            for (c, m) in span.iter().enumerate() {
                let nf: Sparse = if let Some(&p) = local.get(&c) {
                    vec![(offset + p, BigRational::one())]
                } else {
                    let r = pivots.iter().position(|&pc| pc == c).expect("pivot column");
                    free.iter()
                        .enumerate()
                        .filter(|(_, &f)| !mat.get(r, f).is_zero())
                        .map(|(p, &f)| (offset + p, -mat.get(r, f).clone()))
                        .collect()
                };
                normal_forms.insert(m.clone(), nf);
            }
            offsets.push(offset);
            offset += basis.len();
            bases.push(basis);
            prev_span = span;
        }

        let total = offset;
        let expected = t.maximal().len();
        if total != expected {
            return Err(RingError::RankMismatch { expected, got: total });
        }
        let flat: Vec<Monomial> = bases.iter().flatten().cloned().collect();
        let mut ring = GradedAlgebra {
            cfg: cfg.clone(),
            triangulation: t.clone(),
            bases,
            offsets,
            normal_forms,
            table: Vec::new(),
        };
        ring.table = flat
            .iter()
            .map(|x| flat.iter().map(|y| ring.monomial_sparse(&add_monomials(x, y))).collect())
            .collect();
        Ok(ring)
    }

    fn monomial_sparse(&self, m: &[u32]) -> Sparse {
        if degree(m) >= self.rank() {
            return Vec::new();
        }
        self.normal_forms.get(m).cloned().unwrap_or_default()
    }

    pub fn config(&self) -> &PointConfiguration {
        &self.cfg
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    /// `n`; every component of degree `≥ n` vanishes.
    pub fn rank(&self) -> usize {
        self.cfg.rank()
    }

    pub fn npoints(&self) -> usize {
        self.cfg.npoints()
    }

    pub fn total_dim(&self) -> usize {
        self.bases.iter().map(Vec::len).sum()
    }

    /// `dim R^{(k)}` for `k = 0..=n` (the last entry is always 0).
    pub fn dims_per_degree(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// Standard monomials of degree `k`.
    pub fn basis(&self, k: usize) -> &[Monomial] {
        self.bases.get(k).map_or(&[], Vec::as_slice)
    }

    /// Position of the first degree-`k` coordinate.
    pub fn offset(&self, k: usize) -> usize {
        self.offsets.get(k).copied().unwrap_or(self.total_dim())
    }

    pub fn basis_monomials(&self) -> Vec<Monomial> {
        self.bases.iter().flatten().cloned().collect()
    }

    /// Degree of each basis coordinate.
    pub fn coordinate_degrees(&self) -> Vec<usize> {
        self.bases.iter().enumerate().flat_map(|(k, b)| std::iter::repeat_n(k, b.len())).collect()
    }

    /// Product of basis elements `i` and `j` as a sparse vector.
    pub fn structure(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i][j]
    }

    fn element_of(&self, s: &Sparse) -> AlgebraElement {
        let mut v = vec![BigRational::zero(); self.total_dim()];
        for (i, c) in s {
            v[*i] += c;
        }
        AlgebraElement::new(v)
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::new(vec![BigRational::zero(); self.total_dim()])
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(BigRational::one())
    }

    pub fn scalar(&self, c: BigRational) -> AlgebraElement {
        let mut v = self.zero();
        v.0[0] = c;
        v
    }

    /// The class of an arbitrary monomial.
    pub fn monomial(&self, m: &[u32]) -> AlgebraElement {
        self.element_of(&self.monomial_sparse(m))
    }

    /// The generator `c_j` (0-based `j`).
    pub fn generator(&self, j: usize) -> AlgebraElement {
        let mut m = vec![0u32; self.npoints()];
        m[j] = 1;
        self.monomial(&m)
    }

    /// `Σ_j λ_j c_j`.
    pub fn linear_form(&self, coeffs: &[BigRational]) -> AlgebraElement {
        let mut out = self.zero();
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.generator(j).scale(c));
            }
        }
        out
    }

    /// `Π_{i ∈ s} c_i`.
    pub fn simplex_monomial(&self, s: &Simplex) -> AlgebraElement {
        let mut m = vec![0u32; self.npoints()];
        for &i in s.indices() {
            m[i] += 1;
        }
        self.monomial(&m)
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let d = self.total_dim();
        let mut out = vec![BigRational::zero(); d];
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.0.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in &self.table[i][j] {
                    out[*k] += &c * s;
                }
            }
        }
        AlgebraElement::new(out)
    }

    pub fn pow(&self, x: &AlgebraElement, e: u32) -> AlgebraElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// Inverse of `u + x` with `u` a nonzero scalar and `x` nilpotent, by a finite geometric series.
    pub fn inverse(&self, x: &AlgebraElement) -> Result<AlgebraElement, RingError> {
        let u = x.0[0].clone();
        if u.is_zero() {
            return Err(RingError::NotNilpotent);
        }
        let nil = x.sub(&self.scalar(u.clone())).scale(&u.recip());
        let mut term = self.one();
        let mut sum = self.one();
        for _ in 1..self.rank() {
            term = self.mul(&term, &nil).neg();
            sum = sum.add(&term);
        }
        Ok(sum.scale(&u.recip()))
    }

    /// `exp(x) = Σ x^k / k!` for nilpotent `x`.
    pub fn exp_element(&self, x: &AlgebraElement) -> Result<AlgebraElement, RingError> {
        if !x.0[0].is_zero() {
            return Err(RingError::NotNilpotent);
        }
        let mut term = self.one();
        let mut sum = self.one();
        for k in 1..self.rank() {
            term = self.mul(&term, x).scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            sum = sum.add(&term);
        }
        Ok(sum)
    }

    /// Matrix of multiplication by `x`; column `k` is `x · e_k`.
    pub fn multiplication_matrix(&self, x: &AlgebraElement) -> RatMatrix {
        let d = self.total_dim();
        let cols: Vec<AlgebraElement> = (0..d).map(|k| self.mul(x, &self.unit_vector(k))).collect();
        RatMatrix::from_fn(d, d, |r, c| cols[c].0[r].clone())
    }

    pub fn unit_vector(&self, k: usize) -> AlgebraElement {
        let mut v = self.zero();
        v.0[k] = BigRational::one();
        v
    }

    /// `c_core = Π_{i ∈ core T} c_i` (the unit when the core is empty).
    pub fn core_element(&self) -> AlgebraElement {
        self.simplex_monomial(&self.triangulation.core())
    }

    /// Basis of `Ann(x) = {y : x·y = 0}`.
    pub fn annihilator(&self, x: &AlgebraElement) -> Vec<AlgebraElement> {
        self.multiplication_matrix(x).nullspace().into_iter().map(AlgebraElement::new).collect()
    }

    /// Basis of the principal ideal `x·R`.
    pub fn ideal(&self, x: &AlgebraElement) -> Vec<AlgebraElement> {
        let m = self.multiplication_matrix(x).transpose();
        let mut r = m.clone();
        let rank = r.rref().len();
        (0..rank).map(|i| AlgebraElement::new(r.row(i).to_vec())).collect()
    }

    /// Some `z` with `x·z = y`, if `y ∈ x·R`.
    pub fn divide(&self, x: &AlgebraElement, y: &AlgebraElement) -> Option<AlgebraElement> {
        self.multiplication_matrix(x).solve(&y.0).map(AlgebraElement::new)
    }

    pub fn in_ideal(&self, x: &AlgebraElement, y: &AlgebraElement) -> bool {
        self.divide(x, y).is_some()
    }

    /// Check that multiplication by `x` induces a bijection `R/Ann(x) → x·R`.
    pub fn coriso_check(&self, x: &AlgebraElement) -> CorisoCheck {
        let m = self.multiplication_matrix(x);
        let ann = m.nullspace().len();
        let image = m.rank();
        let d = self.total_dim();
        let mut ann_basis = RatMatrix::from_rows(&m.nullspace(), d);
        let ann_pivots = ann_basis.rref();
        let complement: Vec<usize> = (0..d).filter(|c| !ann_pivots.contains(c)).collect();
        let images: Vec<RatVector> = complement.iter().map(|&c| m.col(c)).collect();
        let injective = RatMatrix::from_rows(&images, d).rank() == complement.len();
        CorisoCheck { quotient_dim: d - ann, ideal_dim: image, injective }
    }

    /// `{λ ∈ Q^N : Σ λ_j c_j = 0}`.
    pub fn degree_one_relations(&self) -> Vec<RatVector> {
        let gens: Vec<RatVector> = (0..self.npoints()).map(|j| self.generator(j).0).collect();
        let m = RatMatrix::from_rows(&gens, self.total_dim()).transpose();
        m.nullspace()
    }

    /// The basis `c_I = Π_{i ∈ I, x_i < 0} c_i` from the expansion `ξ = Σ_{i∈I} x_i a_i`.
    pub fn distinguished_basis(&self, xi: &[BigRational]) -> Result<Vec<(Simplex, AlgebraElement)>, RingError> {
        let n = self.rank();
        if xi.len() != n {
            return Err(RingError::DimensionMismatch { expected: n, got: xi.len() });
        }
        let a = self.cfg.a();
        for s in (0..self.npoints()).combinations(n.saturating_sub(1)) {
            let mut cols: Vec<RatVector> = s.iter().map(|&i| crate::exactla::to_rat(&a.col(i))).collect();
            if RatMatrix::from_rows(&cols, n).rank() < s.len() {
                continue;
            }
            cols.push(xi.to_vec());
            if RatMatrix::from_rows(&cols, n).rank() < n {
                return Err(RingError::DegenerateXi);
            }
        }
        let mut out = Vec::new();
        for s in self.triangulation.maximal() {
            let inv = a.select_columns(s.indices()).to_rat().inverse().map_err(|_| RingError::DegenerateXi)?;
            let x = inv.mul_vec(xi);
            let neg = Simplex::new(
                s.indices().iter().zip(&x).filter(|(_, v)| v.is_negative()).map(|(&i, _)| i).collect(),
            );
            out.push((s.clone(), self.simplex_monomial(&neg)));
        }
        let rows: Vec<RatVector> = out.iter().map(|(_, e)| e.0.clone()).collect();
        if RatMatrix::from_rows(&rows, self.total_dim()).rank() != out.len() {
            return Err(RingError::InternalInconsistency("distinguished elements are dependent".into()));
        }
        Ok(out)
    }

    /// Ring-side and simplex-side Poincaré polynomials.
    pub fn poincare_check(&self) -> PoincareCheck {
        let n = self.rank();
        let ring: Vec<i64> = self.dims_per_degree().iter().map(|&d| d as i64).collect();
        let counts = self.triangulation.simplex_counts();
        let mut simplex = vec![0i64; n + 1];
        for (m, &cnt) in counts.iter().enumerate() {
            // cnt · τ^m · (1 − τ)^{n−m}
            let e = n - m;
            let mut binom = 1i64;
            for i in 0..=e {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                simplex[m + i] += cnt as i64 * sign * binom;
                binom = binom * (e - i) as i64 / (i + 1) as i64;
            }
        }
        let mut ring_padded = ring.clone();
        ring_padded.resize(n + 1, 0);
        PoincareCheck { equal: ring_padded == simplex, ring, simplex }
    }

    pub fn report(&self) -> RingReport {
        report::build_report(self)
    }
}

/// Outcome of the `R/Ann(x) → x·R` check.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CorisoCheck {
    pub quotient_dim: usize,
    pub ideal_dim: usize,
    pub injective: bool,
}

impl CorisoCheck {
    pub fn holds(&self) -> bool {
        self.injective && self.quotient_dim == self.ideal_dim
    }
}

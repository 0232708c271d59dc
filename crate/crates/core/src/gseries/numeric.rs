//! Floating-point evaluation of truncated series on the convergence domain.

use std::f64::consts::PI;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::series::{l1_norm, TruncatedSeries};
use super::{expansion_bound, SeriesError};
use crate::exactla::RatMatrix;
use crate::srring::{AlgebraElement, GradedAlgebra};

/// Arithmetic precision used by [`evaluate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Precision {
    Double,
    Extended(usize),
}

impl Precision {
    pub fn bits(self) -> usize {
        match self {
            Precision::Double => 53,
            Precision::Extended(p) => p,
        }
    }

    /// 53 bits maps to double precision, anything else to the extended path.
    pub fn from_bits(bits: usize) -> Self {
        if bits <= 53 {
            Precision::Double
        } else {
            Precision::Extended(bits)
        }
    }
}

/// Complex coordinates with respect to the ring basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexRingElement(pub Vec<Complex64>);

impl ComplexRingElement {
    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    pub fn from_exact(x: &AlgebraElement) -> Self {
        ComplexRingElement(x.coords().iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect())
    }

    /// Max-norm of the coordinates.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexRingElement(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexRingElement(self.0.iter().map(|a| a * s).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// `‖self − o‖ / ‖o‖`.
    pub fn relative_error(&self, o: &Self) -> f64 {
        self.sub(o).norm() / o.norm().max(f64::MIN_POSITIVE)
    }

    /// Pairing with a functional given by coordinates in the dual basis.
    pub fn pair(&self, f: &[Complex64]) -> Complex64 {
        self.0.iter().zip(f).map(|(a, b)| a * b).sum()
    }
}

/// Multiplication in `R ⊗ C` with floating structure constants.
pub fn complex_mul(ring: &GradedAlgebra, x: &ComplexRingElement, y: &ComplexRingElement) -> ComplexRingElement {
    let d = ring.total_dim();
    let mut out = vec![Complex64::zero(); d];
    for (i, xi) in x.0.iter().enumerate() {
        for (j, yj) in y.0.iter().enumerate() {
            let p = xi * yj;
            if p.is_zero() {
                continue;
            }
            for (k, s) in ring.structure(i, j) {
                out[*k] += p * s.to_f64().unwrap_or(f64::NAN);
            }
        }
    }
    ComplexRingElement(out)
}

/// `exp(2πi Σ_j μ_j c_j)` in `R ⊗ C`.
pub fn exp_linear(ring: &GradedAlgebra, mu: &[Complex64]) -> ComplexRingElement {
    let mut ar = DoubleArith;
    let table = structure_table(ring, &mut ar);
    exp_linear_with(ring, &mut ar, &table, mu)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainCheck {
    pub in_domain: bool,
    /// Minimum of `p(Im z)·g − (log N / 2π)‖g‖` over the tested rays and ray sums.
    pub margin: f64,
    pub rays_tested: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: ComplexRingElement,
    pub precision_bits: usize,
    pub domain: DomainCheck,
    /// `Σ_{‖λ‖ = L} ‖Q_λ‖·|e^{2πi z·λ}|` over the outermost stored terms.
    pub boundary_magnitude: f64,
    /// The coefficient-estimate bound times `|e^{2πi z·λ}|`, maximised over the outermost exponents.
    pub tail_bound: f64,
}

/// Extreme rays of `C_T^∨` in relation-lattice coordinates, together with their pairwise sums.
fn domain_rays(ring: &GradedAlgebra) -> Vec<Vec<BigInt>> {
    let cone = ring.triangulation().secondary_cone(ring.config()).dualize();
    let rays = cone.extreme_rays().rays;
    let mut out = rays.clone();
    for (i, a) in rays.iter().enumerate() {
        for b in &rays[i + 1..] {
            out.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    out
}

fn domain_threshold(n_points: usize) -> f64 {
    (n_points as f64).ln() / (2.0 * PI)
}

/// Conservative test of `p(Im z) ∈ B_T` on extreme rays of `C_T^∨` and their pairwise sums.
pub fn check_domain(ring: &GradedAlgebra, z: &[Complex64]) -> DomainCheck {
    let cfg = ring.config();
    let b = cfg.b();
    let im: Vec<f64> = z.iter().map(|c| c.im).collect();
    let py: Vec<f64> = (0..b.rows())
        .map(|r| b.row(r).iter().zip(&im).map(|(x, y)| x.to_f64().unwrap_or(f64::NAN) * y).sum())
        .collect();
    let rays = domain_rays(ring);
    let threshold = domain_threshold(cfg.npoints());
    let margin = rays
        .iter()
        .map(|g| {
            let lhs: f64 = py.iter().zip(g).map(|(p, x)| p * x.to_f64().unwrap_or(f64::NAN)).sum();
            let l = cfg.relation(g);
            lhs - threshold * l1_norm(&l).to_f64().unwrap_or(f64::INFINITY)
        })
        .fold(f64::INFINITY, f64::min);
    DomainCheck { in_domain: margin > 0.0, margin, rays_tested: rays.len() }
}

/// Imaginary parts `y = Bᵗ(BBᵗ)^{-1}·s·w` for `w` interior to `C_T`, scaled `factor` times past the domain boundary.
fn imaginary_part_along(ring: &GradedAlgebra, w: &[f64], factor: f64) -> Vec<f64> {
    let cfg = ring.config();
    let threshold = domain_threshold(cfg.npoints());
    let s0 = domain_rays(ring)
        .iter()
        .map(|g| {
            let wg: f64 = w.iter().zip(g).map(|(a, b)| a * b.to_f64().unwrap_or(f64::NAN)).sum();
            threshold * l1_norm(&cfg.relation(g)).to_f64().unwrap_or(f64::INFINITY) / wg
        })
        .fold(0.0, f64::max);
    let s = factor * s0.max(f64::MIN_POSITIVE);
    let b = cfg.b().to_rat();
    let bbt: RatMatrix = b.mul(&b.transpose());
    let inv = bbt.inverse().expect("basis rows are independent");
    let invf: Vec<Vec<f64>> = inv.to_rows().iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect();
    let u: Vec<f64> = invf.iter().map(|r| r.iter().zip(w).map(|(a, b)| a * b * s).sum()).collect();
    (0..cfg.npoints())
        .map(|j| (0..b.rows()).map(|r| b.get(r, j).to_f64().unwrap_or(f64::NAN) * u[r]).sum())
        .collect()
}

/// Imaginary part along the certificate weight of `T`.
pub fn deep_imaginary_part(ring: &GradedAlgebra, factor: f64) -> Vec<f64> {
    let w: Vec<f64> = ring.triangulation().weight().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    imaginary_part_along(ring, &w, factor)
}

/// Seeded deep-domain sample: random real parts in `[0,1)`, imaginary part along a random interior
/// direction of `C_T`, plus a random element of the row space of `A` (which leaves `p(Im z)` unchanged).
pub fn deep_point(ring: &GradedAlgebra, factor: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rays = ring.triangulation().secondary_cone(ring.config()).extreme_rays();
    let mut w = vec![0.0; ring.config().corank()];
    let mut terms: Vec<(&Vec<BigInt>, f64)> = rays.rays.iter().map(|r| (r, rng.gen_range(0.5..1.5))).collect();
    terms.extend(rays.lineality.iter().map(|r| (r, rng.gen_range(-1.0..1.0))));
    for (r, weight) in terms {
        for (a, x) in w.iter_mut().zip(r) {
            *a += weight * x.to_f64().unwrap_or(f64::NAN);
        }
    }
    let y = imaginary_part_along(ring, &w, factor);
    let a = ring.config().a();
    let shift: Vec<f64> = (0..a.rows()).map(|_| rng.gen_range(-0.5..0.5)).collect();
    (0..a.cols())
        .map(|j| {
            let extra: f64 = (0..a.rows()).map(|i| shift[i] * a.get(i, j).to_f64().unwrap_or(f64::NAN)).sum();
            Complex64::new(rng.gen_range(0.0..1.0), y[j] + extra)
        })
        .collect()
}

/// `Σ_λ Q_λ e^{2πi z·λ}` times `exp(2πi Σ z_j c_j)`.
pub fn evaluate(
    ring: &GradedAlgebra,
    series: &TruncatedSeries,
    z: &[Complex64],
    check: bool,
    precision: Precision,
) -> Result<Evaluation, SeriesError> {
    let n = ring.npoints();
    if z.len() != n {
        return Err(SeriesError::DimensionMismatch { expected: n, got: z.len() });
    }
    let domain = check_domain(ring, z);
    if check && !domain.in_domain {
        return Err(SeriesError::OutsideDomain);
    }
    let value = match precision {
        Precision::Double => evaluate_with(ring, series, z, &mut DoubleArith),
        Precision::Extended(p) => evaluate_with(ring, series, z, &mut ExtArith::new(p)),
    };
    let mut boundary_magnitude = 0.0;
    let mut tail_bound: f64 = 0.0;
    for (l, q) in &series.terms {
        if l1_norm(l).to_usize() != Some(series.order_bound) {
            continue;
        }
        let phase = phase_magnitude(z, l);
        let qn = q.coords().iter().map(|c| c.to_f64().unwrap_or(f64::NAN).abs()).fold(0.0, f64::max);
        boundary_magnitude += qn * phase;
        let bound = expansion_bound(l, ring.rank().saturating_sub(1)).to_f64().unwrap_or(f64::INFINITY);
        tail_bound = tail_bound.max(bound * phase);
    }
    Ok(Evaluation { value, precision_bits: precision.bits(), domain, boundary_magnitude, tail_bound })
}

fn phase_magnitude(z: &[Complex64], l: &[BigInt]) -> f64 {
    let y: f64 = z.iter().zip(l).map(|(c, x)| c.im * x.to_f64().unwrap_or(f64::NAN)).sum();
    (-2.0 * PI * y).exp()
}

/// `z ↦ F(Φ(z))` for a functional `F` given in the dual basis.
pub struct FunctionalProbe<'a> {
    ring: &'a GradedAlgebra,
    series: &'a TruncatedSeries,
    functional: Vec<Complex64>,
    precision: Precision,
}

impl FunctionalProbe<'_> {
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64, SeriesError> {
        Ok(evaluate(self.ring, self.series, z, false, self.precision)?.value.pair(&self.functional))
    }
}

pub fn functional_probe<'a>(
    ring: &'a GradedAlgebra,
    series: &'a TruncatedSeries,
    functional: Vec<Complex64>,
    precision: Precision,
) -> FunctionalProbe<'a> {
    FunctionalProbe { ring, series, functional, precision }
}

/// Ratio of the smallest to the largest singular value of `M[p][k] = F_k(values[p])`.
pub fn evaluation_rank(values: &[ComplexRingElement], functionals: &[Vec<Complex64>]) -> f64 {
    let m = DMatrix::from_fn(values.len(), functionals.len(), |p, k| values[p].pair(&functionals[k]));
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if max == 0.0 {
        0.0
    } else {
        min / max
    }
}

/// Scalar arithmetic shared by the double and extended evaluation paths.
trait Arith {
    type S: Clone;
    fn zero(&mut self) -> Self::S;
    fn add(&mut self, a: &Self::S, b: &Self::S) -> Self::S;
    fn mul(&mut self, a: &Self::S, b: &Self::S) -> Self::S;
    fn rat(&mut self, q: &BigRational) -> Self::S;
    fn c64(&mut self, c: Complex64) -> Self::S;
    /// `e^{2πi x}`.
    fn expi(&mut self, x: &Self::S) -> Self::S;
    fn two_pi_i(&mut self) -> Self::S;
    fn is_zero(&self, a: &Self::S) -> bool;
    fn to_c64(&mut self, a: &Self::S) -> Complex64;
}

struct DoubleArith;

impl Arith for DoubleArith {
    type S = Complex64;
    fn zero(&mut self) -> Complex64 {
        Complex64::zero()
    }
    fn add(&mut self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn mul(&mut self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn rat(&mut self, q: &BigRational) -> Complex64 {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn c64(&mut self, c: Complex64) -> Complex64 {
        c
    }
    fn expi(&mut self, x: &Complex64) -> Complex64 {
        (Complex64::i() * 2.0 * PI * x).exp()
    }
    fn two_pi_i(&mut self) -> Complex64 {
        Complex64::new(0.0, 2.0 * PI)
    }
    fn is_zero(&self, a: &Complex64) -> bool {
        a.is_zero()
    }
    fn to_c64(&mut self, a: &Complex64) -> Complex64 {
        *a
    }
}

struct ExtArith {
    p: usize,
    rm: RoundingMode,
    cc: Consts,
}

impl ExtArith {
    fn new(p: usize) -> Self {
        Self { p, rm: RoundingMode::ToEven, cc: Consts::new().expect("constant cache") }
    }

    fn parse(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, self.p, self.rm, &mut self.cc)
    }

    fn as_f64(&mut self, x: &BigFloat) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        x.format(Radix::Dec, self.rm, &mut self.cc)
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .unwrap_or(f64::NAN)
    }
}

impl Arith for ExtArith {
    type S = (BigFloat, BigFloat);
    fn zero(&mut self) -> Self::S {
        (BigFloat::from_i64(0, self.p), BigFloat::from_i64(0, self.p))
    }
    fn add(&mut self, a: &Self::S, b: &Self::S) -> Self::S {
        (a.0.add(&b.0, self.p, self.rm), a.1.add(&b.1, self.p, self.rm))
    }
    fn mul(&mut self, a: &Self::S, b: &Self::S) -> Self::S {
        let (p, rm) = (self.p, self.rm);
        let re = a.0.mul(&b.0, p, rm).sub(&a.1.mul(&b.1, p, rm), p, rm);
        let im = a.0.mul(&b.1, p, rm).add(&a.1.mul(&b.0, p, rm), p, rm);
        (re, im)
    }
    fn rat(&mut self, q: &BigRational) -> Self::S {
        let num = self.parse(&q.numer().to_string());
        let den = self.parse(&q.denom().to_string());
        (num.div(&den, self.p, self.rm), BigFloat::from_i64(0, self.p))
    }
    fn c64(&mut self, c: Complex64) -> Self::S {
        (BigFloat::from_f64(c.re, self.p), BigFloat::from_f64(c.im, self.p))
    }
    fn expi(&mut self, x: &Self::S) -> Self::S {
        let (p, rm) = (self.p, self.rm);
        let two_pi = self.cc.pi(p, rm).mul(&BigFloat::from_i64(2, p), p, rm);
        let ang = x.0.mul(&two_pi, p, rm);
        let damp = x.1.mul(&two_pi, p, rm).neg().exp(p, rm, &mut self.cc);
        let c = ang.cos(p, rm, &mut self.cc);
        let s = ang.sin(p, rm, &mut self.cc);
        (damp.mul(&c, p, rm), damp.mul(&s, p, rm))
    }
    fn two_pi_i(&mut self) -> Self::S {
        let (p, rm) = (self.p, self.rm);
        let two_pi = self.cc.pi(p, rm).mul(&BigFloat::from_i64(2, p), p, rm);
        (BigFloat::from_i64(0, p), two_pi)
    }
    fn is_zero(&self, a: &Self::S) -> bool {
        a.0.is_zero() && a.1.is_zero()
    }
    fn to_c64(&mut self, a: &Self::S) -> Complex64 {
        let re = self.as_f64(&a.0);
        let im = self.as_f64(&a.1);
        Complex64::new(re, im)
    }
}

type Table<S> = Vec<Vec<Vec<(usize, S)>>>;

fn structure_table<A: Arith>(ring: &GradedAlgebra, ar: &mut A) -> Table<A::S> {
    let d = ring.total_dim();
    (0..d)
        .map(|i| (0..d).map(|j| ring.structure(i, j).iter().map(|(k, s)| (*k, ar.rat(s))).collect()).collect())
        .collect()
}

fn ring_mul<A: Arith>(ar: &mut A, table: &Table<A::S>, x: &[A::S], y: &[A::S]) -> Vec<A::S> {
    let mut out: Vec<A::S> = (0..x.len()).map(|_| ar.zero()).collect();
    for (i, xi) in x.iter().enumerate() {
        if ar.is_zero(xi) {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if ar.is_zero(yj) {
                continue;
            }
            let p = ar.mul(xi, yj);
            for (k, s) in &table[i][j] {
                let t = ar.mul(&p, s);
                out[*k] = ar.add(&out[*k], &t);
            }
        }
    }
    out
}

fn exp_linear_generic<A: Arith>(ring: &GradedAlgebra, ar: &mut A, table: &Table<A::S>, mu: &[A::S]) -> Vec<A::S> {
    let d = ring.total_dim();
    let mut x: Vec<A::S> = (0..d).map(|_| ar.zero()).collect();
    let tpi = ar.two_pi_i();
    for (j, m) in mu.iter().enumerate() {
        let s = ar.mul(&tpi, m);
        for (k, c) in ring.generator(j).coords().iter().enumerate() {
            if !c.is_zero() {
                let cc = ar.rat(c);
                let t = ar.mul(&s, &cc);
                x[k] = ar.add(&x[k], &t);
            }
        }
    }
    let mut term: Vec<A::S> = (0..d).map(|_| ar.zero()).collect();
    term[0] = ar.c64(Complex64::new(1.0, 0.0));
    let mut sum = term.clone();
    for k in 1..ring.rank().max(1) {
        term = ring_mul(ar, table, &term, &x);
        let inv = ar.rat(&BigRational::new(1.into(), BigInt::from(k)));
        term = term.iter().map(|t| ar.mul(t, &inv)).collect();
        sum = sum.iter().zip(&term).map(|(a, b)| ar.add(a, b)).collect();
    }
    sum
}

fn exp_linear_with(ring: &GradedAlgebra, ar: &mut DoubleArith, table: &Table<Complex64>, mu: &[Complex64]) -> ComplexRingElement {
    ComplexRingElement(exp_linear_generic(ring, ar, table, mu))
}

fn evaluate_with<A: Arith>(ring: &GradedAlgebra, series: &TruncatedSeries, z: &[Complex64], ar: &mut A) -> ComplexRingElement {
    let d = ring.total_dim();
    let table = structure_table(ring, ar);
    let zs: Vec<A::S> = z.iter().map(|c| ar.c64(*c)).collect();
    let mut acc: Vec<A::S> = (0..d).map(|_| ar.zero()).collect();
    for (l, q) in &series.terms {
        let mut dotp = ar.zero();
        for (zj, lj) in zs.iter().zip(l) {
            if lj.is_zero() {
                continue;
            }
            let lq = ar.rat(&BigRational::from_integer(lj.clone()));
            let t = ar.mul(zj, &lq);
            dotp = ar.add(&dotp, &t);
        }
        let phase = ar.expi(&dotp);
        for (k, c) in q.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cq = ar.rat(c);
            let t = ar.mul(&phase, &cq);
            acc[k] = ar.add(&acc[k], &t);
        }
    }
    let e = exp_linear_generic(ring, ar, &table, &zs);
    let prod = ring_mul(ar, &table, &acc, &e);
    ComplexRingElement(prod.iter().map(|x| ar.to_c64(x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ints;
    use crate::gseries::build_series;
    use crate::srring::tests::ring_t1;

    #[test]
    fn deep_point_is_certified() {
        let r = ring_t1();
        let z = deep_point(&r, 2.0, 3);
        assert!(check_domain(&r, &z).in_domain);
        let shallow: Vec<Complex64> = z.iter().map(|c| Complex64::new(c.re, 0.0)).collect();
        assert!(!check_domain(&r, &shallow).in_domain);
    }

    #[test]
    fn outside_domain_is_rejected() {
        let r = ring_t1();
        let s = build_series(&r, &ints(&[0, 0, 0]), 2).unwrap();
        let z = vec![Complex64::zero(); 6];
        assert_eq!(evaluate(&r, &s, &z, true, Precision::Double).unwrap_err(), SeriesError::OutsideDomain);
        assert!(evaluate(&r, &s, &z, false, Precision::Double).is_ok());
    }

    #[test]
    fn monodromy_and_character() {
        let r = ring_t1();
        let s = build_series(&r, &ints(&[-1, 0, 0]), 6).unwrap();
        let z = deep_point(&r, 2.0, 7);
        let v = evaluate(&r, &s, &z, true, Precision::Double).unwrap().value;
        let mu = [1.0, 0.0, -2.0, 1.0, 0.0, 3.0];
        let shifted: Vec<Complex64> = z.iter().zip(mu).map(|(a, m)| a + m).collect();
        let lhs = evaluate(&r, &s, &shifted, true, Precision::Double).unwrap().value;
        let factor = exp_linear(&r, &mu.map(|m| Complex64::new(m, 0.0)));
        assert!(lhs.relative_error(&complex_mul(&r, &factor, &v)) < 1e-9);

        let m = [0.3, -0.2, 0.7];
        let a = r.config().a();
        let moved: Vec<Complex64> = (0..6)
            .map(|j| z[j] + (0..3).map(|i| m[i] * a.get(i, j).to_f64().unwrap()).sum::<f64>())
            .collect();
        let lhs = evaluate(&r, &s, &moved, true, Precision::Double).unwrap().value;
        let phase = (Complex64::i() * 2.0 * PI * (-m[0])).exp();
        assert!(lhs.relative_error(&v.scale(phase)) < 1e-9);
    }

    #[test]
    fn extended_precision_agrees() {
        let r = ring_t1();
        let s = build_series(&r, &ints(&[0, 0, 0]), 4).unwrap();
        let z = deep_point(&r, 2.0, 1);
        let a = evaluate(&r, &s, &z, true, Precision::Double).unwrap();
        let b = evaluate(&r, &s, &z, true, Precision::Extended(128)).unwrap();
        assert!(a.value.relative_error(&b.value) < 1e-12);
        assert_eq!(b.precision_bits, 128);
    }

    #[test]
    fn zero_functional_and_rank() {
        let r = ring_t1();
        let s = build_series(&r, &ints(&[0, 0, 0]), 6).unwrap();
        let z = deep_point(&r, 2.0, 0);
        let probe = functional_probe(&r, &s, vec![Complex64::zero(); 5], Precision::Double);
        assert_eq!(probe.eval(&z).unwrap(), Complex64::zero());
        let values: Vec<ComplexRingElement> = (0..5)
            .map(|k| evaluate(&r, &s, &deep_point(&r, 1.5 + 0.5 * k as f64, 10 + k as u64), true, Precision::Double).unwrap().value)
            .collect();
        let duals: Vec<Vec<Complex64>> = (0..5)
            .map(|k| (0..5).map(|i| if i == k { Complex64::new(1.0, 0.0) } else { Complex64::zero() }).collect())
            .collect();
        assert!(evaluation_rank(&values, &duals) > 1e-6);
    }

    #[test]
    fn dominant_term_at_great_depth() {
        let r = ring_t1();
        let s = build_series(&r, &ints(&[0, 0, 0]), 6).unwrap();
        let z = deep_point(&r, 40.0, 2);
        let e = evaluate(&r, &s, &z, true, Precision::Double).unwrap();
        let lead = exp_linear(&r, &z);
        assert!(e.value.relative_error(&lead) < 1e-9);
        assert!(e.tail_bound < 1e-6);
    }
}

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coeff::{falling, substitute, generator_powers, CoefficientEngine};
use super::SeriesError;
use crate::exactla::{self, solve_particular};
use crate::polycone::RationalCone;
use crate::srring::{AlgebraElement, GradedAlgebra};
use crate::triang::{PointConfiguration, Triangulation};

pub fn l1_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}

fn norm_usize(v: &[BigInt]) -> usize {
    l1_norm(v).to_usize().unwrap_or(usize::MAX)
}

/// A truncated Γ-series `Σ_λ Q_λ(c) v^{λ+c}` over `‖λ‖ ≤ order_bound`, nonzero terms only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub beta: Vec<BigInt>,
    pub gamma0: Vec<BigInt>,
    pub order_bound: usize,
    pub terms: BTreeMap<Vec<BigInt>, AlgebraElement>,
}

/// Lattice points of the L1 ball of radius `r` in dimension `d`.
fn l1_ball(d: usize, r: i64) -> Vec<Vec<i64>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for x in -r..=r {
        for mut rest in l1_ball(d - 1, r - x.abs()) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// All `λ` with `Aλ = β`, `‖λ‖ ≤ L` and negative support a simplex of `T`.
pub fn enumerate_support(
    cfg: &PointConfiguration,
    t: &Triangulation,
    beta: &[BigInt],
    order_bound: usize,
) -> Result<Vec<Vec<BigInt>>, SeriesError> {
    let gamma0 = solve_particular(cfg.a(), beta)?;
    let k = cfg.corank();
    let b = cfg.b();
    if k == 0 {
        let ok = norm_usize(&gamma0) <= order_bound && t.is_face(&negative_support(&gamma0));
        return Ok(if ok { vec![gamma0] } else { Vec::new() });
    }
    // Coordinates K on which the relation lattice projects injectively, with minimal index.
    let (cols, inv) = (0..cfg.npoints())
        .combinations(k)
        .filter_map(|c| {
            let m = b.select_columns(&c);
            let (inv, det) = exactla::square_inverse(&m).ok()?;
            Some((det.abs(), c, inv))
        })
        .min_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)))
        .map(|(_, c, inv)| (c, inv))
        .expect("relation lattice has full rank");
    let r = i64::try_from(order_bound).expect("order bound fits");
    let mut out: Vec<Vec<BigInt>> = l1_ball(k, r)
        .into_par_iter()
        .filter_map(|lk| {
            let diff: Vec<BigRational> = cols
                .iter()
                .zip(&lk)
                .map(|(&c, &x)| BigRational::from_integer(BigInt::from(x) - &gamma0[c]))
                .collect();
            let m = exactla::as_integers(&inv.transpose().mul_vec(&diff))?;
            let l = cfg.relation(&m);
            let lambda: Vec<BigInt> = gamma0.iter().zip(&l).map(|(g, x)| g + x).collect();
            (norm_usize(&lambda) <= order_bound && t.is_face(&negative_support(&lambda))).then_some(lambda)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

pub(crate) fn negative_support(v: &[BigInt]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, x)| x.is_negative()).map(|(i, _)| i).collect()
}

/// `Φ_{T,β}` truncated at `‖λ‖ ≤ order_bound`.
pub fn build_series(
    ring: &GradedAlgebra,
    beta: &[BigInt],
    order_bound: usize,
) -> Result<TruncatedSeries, SeriesError> {
    let cfg = ring.config();
    let gamma0 = solve_particular(cfg.a(), beta)?;
    let support = enumerate_support(cfg, ring.triangulation(), beta, order_bound)?;
    let engine = CoefficientEngine::new(ring);
    let terms: BTreeMap<Vec<BigInt>, AlgebraElement> = support
        .par_iter()
        .map(|l| (l.clone(), engine.gamma_coefficient(l)))
        .filter(|(_, q)| !q.is_zero())
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(TruncatedSeries { beta: beta.to_vec(), gamma0, order_bound, terms })
}

/// Result of applying a GKZ operator formally; `terms` holds the nonzero residual coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub terms: BTreeMap<Vec<BigInt>, AlgebraElement>,
    /// Exponents whose residual must vanish (all source terms lie inside the truncation).
    pub interior_nonzero: usize,
    pub boundary_nonzero: usize,
    /// Residual exponents with `‖μ‖` up to this value are guaranteed interior.
    pub interior_bound: i64,
}

impl Residual {
    pub fn interior_vanishes(&self) -> bool {
        self.interior_nonzero == 0
    }
}

impl TruncatedSeries {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, lambda: &[BigInt]) -> Option<&AlgebraElement> {
        self.terms.get(lambda)
    }

    /// `(−β_i + Σ_j a_ij v_j ∂_j)` applied to the series; exact, no truncation slack.
    pub fn apply_euler(&self, ring: &GradedAlgebra, i: usize) -> Residual {
        let a = ring.config().a();
        let row: Vec<BigRational> = (0..a.cols()).map(|j| BigRational::from_integer(a.get(i, j).clone())).collect();
        let ac = ring.linear_form(&row);
        let terms: BTreeMap<Vec<BigInt>, AlgebraElement> = self
            .terms
            .iter()
            .filter_map(|(l, q)| {
                let s: BigInt = (0..a.cols()).map(|j| a.get(i, j) * &l[j]).sum::<BigInt>() - &self.beta[i];
                let factor = ring.scalar(BigRational::from_integer(s)).add(&ac);
                let r = ring.mul(&factor, q);
                (!r.is_zero()).then(|| (l.clone(), r))
            })
            .collect();
        let n = terms.len();
        Residual { terms, interior_nonzero: n, boundary_nonzero: 0, interior_bound: self.order_bound as i64 }
    }

    /// `Π_{ℓ_j>0} ∂_j^{ℓ_j} − Π_{ℓ_j<0} ∂_j^{−ℓ_j}` applied to the series.
    pub fn apply_box(&self, ring: &GradedAlgebra, l: &[BigInt]) -> Result<Residual, SeriesError> {
        let cfg = ring.config();
        if l.len() != cfg.npoints() || cfg.a().mul_vec(l).map_or(true, |v| v.iter().any(|x| !x.is_zero())) {
            return Err(SeriesError::NotInLattice);
        }
        let len = ring.rank().max(1);
        let powers = generator_powers(ring);
        let plus: Vec<BigInt> = l.iter().map(|x| x.max(&BigInt::zero()).clone()).collect();
        let minus: Vec<BigInt> = l.iter().map(|x| (-x).max(BigInt::zero())).collect();
        let derivative = |lambda: &[BigInt], q: &AlgebraElement, shift: &[BigInt]| -> (Vec<BigInt>, AlgebraElement) {
            let mut acc = q.clone();
            for (j, s) in shift.iter().enumerate() {
                let k = s.to_u64().expect("small exponent");
                if k > 0 {
                    let f = substitute(ring, &powers, j, &falling(len, &lambda[j], k));
                    acc = ring.mul(&acc, &f);
                }
            }
            let mu = lambda.iter().zip(shift).map(|(a, b)| a - b).collect();
            (mu, acc)
        };
        let mut acc: BTreeMap<Vec<BigInt>, AlgebraElement> = BTreeMap::new();
        for (lambda, q) in &self.terms {
            let (mu, v) = derivative(lambda, q, &plus);
            let e = acc.entry(mu).or_insert_with(|| ring.zero());
            *e = e.add(&v);
            let (mu, v) = derivative(lambda, q, &minus);
            let e = acc.entry(mu).or_insert_with(|| ring.zero());
            *e = e.sub(&v);
        }
        let bound = self.order_bound as i64;
        let mut interior_nonzero = 0;
        let mut boundary_nonzero = 0;
        let terms: BTreeMap<Vec<BigInt>, AlgebraElement> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        for mu in terms.keys() {
            let src_plus: Vec<BigInt> = mu.iter().zip(&plus).map(|(a, b)| a + b).collect();
            let src_minus: Vec<BigInt> = mu.iter().zip(&minus).map(|(a, b)| a + b).collect();
            if norm_usize(&src_plus) <= self.order_bound && norm_usize(&src_minus) <= self.order_bound {
                interior_nonzero += 1;
            } else {
                boundary_nonzero += 1;
            }
        }
        let interior_bound = bound - l1_norm(l).to_i64().unwrap_or(i64::MAX);
        Ok(Residual { terms, interior_nonzero, boundary_nonzero, interior_bound })
    }

    /// Formal `∂/∂v_i`: a series for `β − a_i`, complete up to order `order_bound − 1`.
    pub fn differentiate(&self, ring: &GradedAlgebra, i: usize) -> TruncatedSeries {
        let cfg = ring.config();
        let len = ring.rank().max(1);
        let powers = generator_powers(ring);
        let order = self.order_bound.saturating_sub(1);
        let terms = self
            .terms
            .iter()
            .filter_map(|(l, q)| {
                let mut mu = l.clone();
                mu[i] -= 1;
                if norm_usize(&mu) > order {
                    return None;
                }
                let f = substitute(ring, &powers, i, &falling(len, &l[i], 1));
                let v = ring.mul(q, &f);
                (!v.is_zero()).then_some((mu, v))
            })
            .collect();
        let beta = self.beta.iter().zip(cfg.point(i)).map(|(b, a)| b - a).collect();
        let mut gamma0 = self.gamma0.clone();
        gamma0[i] -= 1;
        TruncatedSeries { beta, gamma0, order_bound: order, terms }
    }

    /// Terms restricted to `‖λ‖ ≤ bound`.
    pub fn truncate(&self, bound: usize) -> TruncatedSeries {
        TruncatedSeries {
            beta: self.beta.clone(),
            gamma0: self.gamma0.clone(),
            order_bound: bound.min(self.order_bound),
            terms: self.terms.iter().filter(|(l, _)| norm_usize(l) <= bound).map(|(l, q)| (l.clone(), q.clone())).collect(),
        }
    }

    /// Whether every coefficient lies in the principal ideal `x·R`.
    pub fn coefficients_in_ideal(&self, ring: &GradedAlgebra, x: &AlgebraElement) -> bool {
        let m = ring.multiplication_matrix(x);
        self.terms.values().all(|q| m.solve(q.coords()).is_some())
    }

    pub fn to_record(&self) -> SeriesRecord {
        SeriesRecord {
            beta: self.beta.clone(),
            gamma0: self.gamma0.clone(),
            order_bound: self.order_bound,
            terms: self
                .terms
                .iter()
                .map(|(l, q)| TermRecord { lambda: l.clone(), coeff_coords: q.clone() })
                .collect(),
        }
    }

    pub fn from_record(rec: &SeriesRecord) -> TruncatedSeries {
        TruncatedSeries {
            beta: rec.beta.clone(),
            gamma0: rec.gamma0.clone(),
            order_bound: rec.order_bound,
            terms: rec.terms.iter().map(|t| (t.lambda.clone(), t.coeff_coords.clone())).collect(),
        }
    }
}

/// `λ − p_I(λ) ∈ C_T^∨` for some maximal `I` whose index set contains the negative support of `λ`.
pub fn support_lemma_holds(cfg: &PointConfiguration, t: &Triangulation, dual: &RationalCone, lambda: &[BigInt]) -> bool {
    let a = cfg.a();
    let alambda = exactla::to_rat(&a.mul_vec(lambda).expect("length N"));
    let bt = cfg.b().transpose().to_rat();
    t.maximal().iter().any(|s| {
        let Ok(inv) = a.select_columns(s.indices()).to_rat().inverse() else {
            return false;
        };
        let coords = inv.mul_vec(&alambda);
        let mut l: Vec<BigRational> = exactla::to_rat(lambda);
        for (pos, &i) in s.indices().iter().enumerate() {
            l[i] -= &coords[pos];
        }
        match bt.solve(&l) {
            Some(m) => dual.contains(&m),
            None => false,
        }
    })
}

/// Series JSON: `{beta, gamma0, order_bound, terms: [{lambda, coeff_coords}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    #[serde(with = "crate::exactla::serial::int_vec")]
    pub beta: Vec<BigInt>,
    #[serde(with = "crate::exactla::serial::int_vec")]
    pub gamma0: Vec<BigInt>,
    pub order_bound: usize,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    #[serde(with = "crate::exactla::serial::int_vec")]
    pub lambda: Vec<BigInt>,
    pub coeff_coords: AlgebraElement,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ints;
    use crate::srring::tests::ring_t1;

    fn minus_a4() -> Vec<BigInt> {
        ints(&[-1, 0, 0])
    }

    #[test]
    fn zero_order_support() {
        let r = ring_t1();
        let s = enumerate_support(r.config(), r.triangulation(), &ints(&[0, 0, 0]), 0).unwrap();
        assert_eq!(s, vec![ints(&[0; 6])]);
    }

    #[test]
    fn shifted_support() {
        let r = ring_t1();
        let s = enumerate_support(r.config(), r.triangulation(), &minus_a4(), 4).unwrap();
        assert!(!s.contains(&ints(&[0; 6])));
        assert!(s.contains(&ints(&[0, 0, 0, -1, 0, 0])));
        for l in &s {
            assert_eq!(r.config().a().mul_vec(l).unwrap(), minus_a4());
        }
    }

    #[test]
    fn support_matches_brute_force() {
        let r = ring_t1();
        let cfg = r.config();
        let beta = minus_a4();
        let got = enumerate_support(cfg, r.triangulation(), &beta, 4).unwrap();
        let mut brute = Vec::new();
        for m in l1_ball(6, 4) {
            let l = ints(&m);
            if cfg.a().mul_vec(&l).unwrap() == beta && r.triangulation().is_face(&negative_support(&l)) {
                brute.push(l);
            }
        }
        brute.sort();
        assert_eq!(got, brute);
    }

    #[test]
    fn unit_leading_term_and_residuals() {
        let r = ring_t1();
        let s = build_series(&r, &ints(&[0, 0, 0]), 4).unwrap();
        assert_eq!(s.get(&ints(&[0; 6])), Some(&r.one()));
        for i in 0..3 {
            assert!(s.apply_euler(&r, i).terms.is_empty());
        }
        for row in r.config().b().to_rows() {
            assert!(s.apply_box(&r, &row).unwrap().interior_vanishes());
        }
        assert!(s.apply_box(&r, &ints(&[0; 6])).unwrap().terms.is_empty());
        assert_eq!(s.apply_box(&r, &ints(&[1, 0, 0, 0, 0, 0])), Err(SeriesError::NotInLattice));
    }

    #[test]
    fn derivative_matches_shifted_series() {
        let r = ring_t1();
        let s = build_series(&r, &ints(&[0, 0, 0]), 5).unwrap();
        let d = s.differentiate(&r, 3);
        let t = build_series(&r, &minus_a4(), 4).unwrap();
        assert_eq!(d.beta, minus_a4());
        assert_eq!(d.terms, t.terms);
    }

    #[test]
    fn record_round_trip() {
        let r = ring_t1();
        let s = build_series(&r, &minus_a4(), 3).unwrap();
        let json = serde_json::to_string(&s.to_record()).unwrap();
        let back: SeriesRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(TruncatedSeries::from_record(&back), s);
    }
}

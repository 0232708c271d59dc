//! Exact polyhedral cones via the double description method.
//!
//! A [`RationalCone`] carries a generator side (rays plus a lineality basis)
//! and an inequality side (facet normals plus an equation basis). Either side
//! may be missing on construction; [`RationalCone::complete`] fills in the
//! other and minimizes both. All arithmetic is on primitive integer vectors.

mod chambers;
mod dd;

pub use chambers::{chamber_sign_vectors, chambers, Chamber, Sign, SignVector};

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{self, canonical_line, dot, mixed_dot, primitive, primitive_from_rational, RatMatrix, RatVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Generators of a cone: `cone(rays) + span(lineality)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtremeRays {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

impl ExtremeRays {
    fn as_constraints(&self) -> Vec<Vec<BigInt>> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }

    /// Canonical form: RREF lineality basis, rays reduced modulo lineality, sorted.
    fn canonical(dim: usize, rays: Vec<Vec<BigInt>>, lineality: Vec<Vec<BigInt>>) -> Self {
        let lineality = canonical_subspace_basis(dim, &lineality);
        let rays: BTreeSet<Vec<BigInt>> = rays
            .into_iter()
            .map(|r| project_out(&r, &lineality))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        Self { rays: rays.into_iter().collect(), lineality }
    }
}

/// RREF basis of the span, each row scaled to a primitive integer vector.
fn canonical_subspace_basis(dim: usize, vs: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let mut m = RatMatrix::from_rows(&vs.iter().map(|v| exactla::to_rat(v)).collect::<Vec<_>>(), dim);
    let rank = m.rref().len();
    (0..rank)
        .map(|r| canonical_line(&primitive_from_rational(m.row(r))))
        .collect()
}

/// Orthogonal projection onto the complement of `span(basis)`, scaled to primitive integers.
fn project_out(v: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    if basis.is_empty() {
        return primitive(v);
    }
    let k = basis.len();
    let gram = RatMatrix::from_fn(k, k, |i, j| BigRational::from_integer(dot(&basis[i], &basis[j])));
    let rhs: RatVector = basis.iter().map(|b| BigRational::from_integer(dot(b, v))).collect();
    let coef = gram.solve(&rhs).expect("gram matrix of a basis is invertible");
    let mut out: RatVector = exactla::to_rat(v);
    for (c, b) in coef.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o -= c * BigRational::from_integer(x.clone());
        }
    }
    primitive_from_rational(&out)
}

/// Exact rational polyhedral cone with a (possibly partial) double-description pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCone {
    dim: usize,
    generators: Option<ExtremeRays>,
    inequalities: Option<ExtremeRays>,
}

fn check_len(dim: usize, vs: &[RatVector]) -> Result<(), ConeError> {
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(ConeError::DimensionMismatch { expected: dim, got: v.len() }),
        None => Ok(()),
    }
}

fn nonzero_primitive(vs: &[RatVector]) -> Vec<Vec<BigInt>> {
    vs.iter()
        .map(|v| primitive_from_rational(v))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect()
}

impl RationalCone {
    /// The cone `{ Σ t_i g_i : t_i ≥ 0 }`.
    pub fn from_generators(dim: usize, generators: &[RatVector]) -> Result<Self, ConeError> {
        check_len(dim, generators)?;
        Ok(Self {
            dim,
            generators: Some(ExtremeRays { rays: nonzero_primitive(generators), lineality: Vec::new() }),
            inequalities: None,
        })
    }

    /// The cone `{ x : h·x ≥ 0 for every row h }`.
    pub fn from_inequalities(dim: usize, rows: &[RatVector]) -> Result<Self, ConeError> {
        check_len(dim, rows)?;
        Ok(Self {
            dim,
            generators: None,
            inequalities: Some(ExtremeRays { rays: nonzero_primitive(rows), lineality: Vec::new() }),
        })
    }

    pub fn from_integer_generators(dim: usize, generators: &[Vec<BigInt>]) -> Result<Self, ConeError> {
        let g: Vec<RatVector> = generators.iter().map(|v| exactla::to_rat(v)).collect();
        Self::from_generators(dim, &g)
    }

    pub fn from_integer_inequalities(dim: usize, rows: &[Vec<BigInt>]) -> Result<Self, ConeError> {
        let h: Vec<RatVector> = rows.iter().map(|v| exactla::to_rat(v)).collect();
        Self::from_inequalities(dim, &h)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn is_complete(&self) -> bool {
        self.generators.is_some() && self.inequalities.is_some()
    }

    /// Fill in the missing side and minimize both.
    pub fn complete(&self) -> RationalCone {
        let dim = self.dim;
        match (&self.generators, &self.inequalities) {
            (_, Some(h)) => {
                let v = dd::double_description(dim, &h.as_constraints());
                let h = dd::double_description(dim, &v.as_constraints());
                Self { dim, generators: Some(v), inequalities: Some(h) }
            }
            (Some(v), None) => {
                let h = dd::double_description(dim, &v.as_constraints());
                let v = dd::double_description(dim, &h.as_constraints());
                Self { dim, generators: Some(v), inequalities: Some(h) }
            }
            (None, None) => unreachable!("cone constructed without either side"),
        }
    }

    fn completed_view(&self) -> std::borrow::Cow<'_, RationalCone> {
        if self.is_complete() {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.complete())
        }
    }

    /// The dual cone `{ y : y·x ≥ 0 for all x in the cone }`, with both sides filled in.
    pub fn dualize(&self) -> RationalCone {
        let c = self.completed_view();
        RationalCone {
            dim: self.dim,
            generators: c.inequalities.clone(),
            inequalities: c.generators.clone(),
        }
    }

    /// Minimal generators: primitive extreme rays plus a lineality basis.
    pub fn extreme_rays(&self) -> ExtremeRays {
        self.completed_view().generators.clone().expect("completed")
    }

    /// Minimal inequality description: facet normals plus an equation basis.
    pub fn facets(&self) -> ExtremeRays {
        self.completed_view().inequalities.clone().expect("completed")
    }

    /// Generators as a flat list, lineality directions included as ± pairs.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.extreme_rays().as_constraints()
    }

    /// Inequalities as a flat list, equations included as ± pairs.
    pub fn inequalities(&self) -> Vec<Vec<BigInt>> {
        self.facets().as_constraints()
    }

    pub fn dimension(&self) -> usize {
        self.dim - self.facets().lineality.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.facets().lineality.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.extreme_rays().lineality.is_empty()
    }

    /// Membership; `Err` carries a separating inequality `h` with `h·x < 0`.
    pub fn contains_with_certificate(&self, x: &[BigRational]) -> Result<(), Vec<BigInt>> {
        assert_eq!(x.len(), self.dim, "point has wrong dimension");
        let h = self.facets();
        for f in &h.rays {
            if mixed_dot(f, x).is_negative() {
                return Err(f.clone());
            }
        }
        for e in &h.lineality {
            let v = mixed_dot(e, x);
            if v.is_negative() {
                return Err(e.clone());
            }
            if v.is_positive() {
                return Err(e.iter().map(|t| -t).collect());
            }
        }
        Ok(())
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.contains_with_certificate(x).is_ok()
    }

    pub fn contains_integer(&self, x: &[BigInt]) -> bool {
        self.contains(&exactla::to_rat(x))
    }

    /// Strict interior membership (requires a full-dimensional cone).
    pub fn contains_in_interior(&self, x: &[BigRational]) -> bool {
        let h = self.facets();
        h.lineality.is_empty() && h.rays.iter().all(|f| mixed_dot(f, x).is_positive())
    }

    /// Sum of the extreme rays: a point of the relative interior (the apex for `{0}` and subspaces).
    pub fn relative_interior_point(&self) -> Vec<BigInt> {
        let g = self.extreme_rays();
        let mut s = vec![BigInt::zero(); self.dim];
        for r in &g.rays {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        s
    }

    /// Intersection, computed from the union of the inequality descriptions.
    pub fn intersect(&self, other: &RationalCone) -> Result<RationalCone, ConeError> {
        if self.dim != other.dim {
            return Err(ConeError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut rows = self.inequalities();
        rows.extend(other.inequalities());
        Ok(RationalCone {
            dim: self.dim,
            generators: None,
            inequalities: Some(ExtremeRays { rays: rows, lineality: Vec::new() }),
        }
        .complete())
    }

    pub fn to_record(&self) -> ConeRecord {
        let rat = |vs: Vec<Vec<BigInt>>| vs.iter().map(|v| exactla::to_rat(v)).collect();
        ConeRecord {
            ambient_dim: self.dim,
            generators: rat(self.generators()),
            inequalities: rat(self.inequalities()),
        }
    }

    pub fn from_record(rec: &ConeRecord) -> Result<Self, ConeError> {
        Ok(Self::from_inequalities(rec.ambient_dim, &rec.inequalities)?.complete())
    }
}

/// JSON form `{ambient_dim, generators, inequalities}` with `"p/q"` entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeRecord {
    pub ambient_dim: usize,
    #[serde(with = "crate::exactla::serial::rat_vecs")]
    pub generators: Vec<RatVector>,
    #[serde(with = "crate::exactla::serial::rat_vecs")]
    pub inequalities: Vec<RatVector>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{ints, rats};

    fn orthant(d: usize) -> RationalCone {
        let gens: Vec<RatVector> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { 1 } else { 0 }).collect::<Vec<i64>>())
            .map(|v| rats(&v))
            .collect();
        RationalCone::from_generators(d, &gens).unwrap()
    }

    #[test]
    fn orthant_is_self_dual() {
        let c = orthant(3);
        let d = c.dualize();
        assert_eq!(d.extreme_rays().rays, c.extreme_rays().rays);
        assert_eq!(d.extreme_rays().rays.len(), 3);
        assert!(d.is_pointed() && d.is_full_dimensional());
    }

    #[test]
    fn dual_of_single_ray_is_halfplane() {
        let c = RationalCone::from_generators(2, &[rats(&[1, 0])]).unwrap();
        let d = c.dualize();
        let g = d.extreme_rays();
        assert_eq!(g.rays, vec![ints(&[1, 0])]);
        assert_eq!(g.lineality, vec![ints(&[0, 1])]);
        let mut flat = d.generators();
        flat.sort();
        assert_eq!(flat, vec![ints(&[0, -1]), ints(&[0, 1]), ints(&[1, 0])]);
        assert!(d.contains(&rats(&[0, -5])));
        assert!(!d.contains(&rats(&[-1, 0])));
    }

    #[test]
    fn halfplane_extreme_rays() {
        let c = RationalCone::from_inequalities(2, &[rats(&[1, 0])]).unwrap();
        let g = c.extreme_rays();
        assert_eq!(g.rays, vec![ints(&[1, 0])]);
        assert_eq!(g.lineality, vec![ints(&[0, 1])]);
        assert!(!c.is_pointed());
    }

    #[test]
    fn orthant_membership() {
        let c = orthant(3);
        assert!(c.contains(&rats(&[0, 0, 0])));
        assert!(!c.contains(&rats(&[-1, 0, 0])));
        let cert = c.contains_with_certificate(&rats(&[-1, 0, 0])).unwrap_err();
        assert!(dot(&cert, &ints(&[-1, 0, 0])).is_negative());
        assert!(c.contains_in_interior(&rats(&[1, 2, 3])));
        assert!(!c.contains_in_interior(&rats(&[1, 0, 3])));
    }

    #[test]
    fn redundant_generators_are_pruned() {
        let c = RationalCone::from_generators(
            2,
            &[rats(&[1, 0]), rats(&[0, 1]), rats(&[1, 1]), rats(&[2, 0])],
        )
        .unwrap();
        assert_eq!(c.extreme_rays().rays, vec![ints(&[0, 1]), ints(&[1, 0])]);
        assert_eq!(c.facets().rays.len(), 2);
    }

    #[test]
    fn lower_dimensional_cone_has_equations() {
        let c = RationalCone::from_generators(3, &[rats(&[1, 0, 0]), rats(&[0, 1, 0])]).unwrap();
        assert_eq!(c.dimension(), 2);
        assert_eq!(c.facets().lineality, vec![ints(&[0, 0, 1])]);
        assert!(!c.contains(&rats(&[1, 1, 1])));
    }

    #[test]
    fn whole_space_and_origin() {
        let all = RationalCone::from_inequalities(2, &[]).unwrap();
        assert_eq!(all.extreme_rays().lineality.len(), 2);
        let origin = all.dualize();
        assert_eq!(origin.dimension(), 0);
        assert!(origin.contains(&rats(&[0, 0])));
        assert!(!origin.contains(&rats(&[0, 1])));
    }

    #[test]
    fn record_round_trip() {
        let c = orthant(2).complete();
        let json = serde_json::to_string(&c.to_record()).unwrap();
        let back: ConeRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(RationalCone::from_record(&back).unwrap(), c);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert_eq!(
            RationalCone::from_generators(3, &[rats(&[1, 0])]),
            Err(ConeError::DimensionMismatch { expected: 3, got: 2 })
        );
    }
}

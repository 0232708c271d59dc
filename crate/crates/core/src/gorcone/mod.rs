//! Reflexive Gorenstein cones built from a triangulation with a nonempty interior core.

mod fan;

pub use fan::{projected_fan, FanReport};

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{self, dot};
use crate::polycone::RationalCone;
use crate::triang::{PointConfiguration, Simplex, TriangError, Triangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// The core is nonempty.
    CoreNonempty,
    /// The core is not contained in a proper face of `Δ`.
    CoreInterior,
    /// Every maximal simplex is unimodular.
    Unimodular,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Condition::CoreNonempty => "core is empty",
            Condition::CoreInterior => "core lies in the boundary of the polytope",
            Condition::Unimodular => "triangulation is not unimodular",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GorensteinError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(Condition),
    #[error("simplex {0} is not a maximal simplex of the triangulation")]
    NotMaximal(String),
    #[error(transparent)]
    Triang(#[from] TriangError),
}

pub fn find_a0vee(cfg: &PointConfiguration) -> Result<Vec<BigInt>, GorensteinError> {
    Ok(crate::triang::solve_degree_functional(cfg.a())?)
}

pub fn check_preconditions(cfg: &PointConfiguration, t: &Triangulation) -> Result<Simplex, GorensteinError> {
    let core = t.verified_core(cfg)?;
    if core.is_empty() {
        return Err(GorensteinError::PreconditionFailed(Condition::CoreNonempty));
    }
    if cfg.in_boundary(core.indices()) {
        return Err(GorensteinError::PreconditionFailed(Condition::CoreInterior));
    }
    if !t.is_unimodular() {
        return Err(GorensteinError::PreconditionFailed(Condition::Unimodular));
    }
    Ok(core)
}

/// A dual generator `a∨_{I,i}`: the row of `A_I^{-1}` belonging to the core index `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualGenerator {
    /// Core index, 1-based.
    pub core_index: usize,
    #[serde(with = "crate::exactla::serial::int_vec")]
    pub row: Vec<BigInt>,
}

/// Whether `w` pairs `≥ 0` with every column, `1` with `a_i` and `0` with the other core columns.
pub fn splitting_pattern_holds(cfg: &PointConfiguration, core: &[usize], i: usize, w: &[BigInt]) -> bool {
    (0..cfg.npoints()).all(|j| {
        let v = dot(w, &cfg.point(j));
        if j == i {
            v.is_one()
        } else if core.contains(&j) {
            v.is_zero()
        } else {
            !v.is_negative()
        }
    })
}

/// The deduplicated dual generators, each checked against the splitting sign pattern.
pub fn dual_generators(cfg: &PointConfiguration, t: &Triangulation) -> Result<Vec<DualGenerator>, GorensteinError> {
    let core = check_preconditions(cfg, t)?;
    let mut out = BTreeSet::new();
    for s in t.maximal() {
        let (inv, _) = exactla::square_inverse(&cfg.a().select_columns(s.indices()))
            .map_err(|_| TriangError::InvalidSimplex(s.to_string()))?;
        for (pos, &i) in s.indices().iter().enumerate() {
            if !core.contains(i) {
                continue;
            }
            let row = exactla::as_integers(inv.row(pos))
                .ok_or_else(|| TriangError::InternalInconsistency("non-integral dual generator".into()))?;
            if !splitting_pattern_holds(cfg, core.indices(), i, &row) {
                return Err(TriangError::InternalInconsistency(format!("dual generator {row:?} breaks the splitting pattern")).into());
            }
            out.insert(DualGenerator { core_index: i + 1, row });
        }
    }
    Ok(out.into_iter().collect())
}

/// Lattice points of one box `□_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxPoints {
    pub core_index: usize,
    #[serde(with = "crate::exactla::serial::int_vecs")]
    pub points: Vec<Vec<BigInt>>,
    /// Lattice points of the bounding box that satisfy the splitting pattern but lie outside the hull.
    #[serde(with = "crate::exactla::serial::int_vecs")]
    pub pattern_only: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinReport {
    #[serde(with = "crate::exactla::serial::int_vec")]
    pub a0vee: Vec<BigInt>,
    #[serde(with = "crate::exactla::serial::int_vec")]
    pub a0: Vec<BigInt>,
    pub index: usize,
    /// 1-based.
    pub core: Vec<usize>,
    pub dual_generators: Vec<DualGenerator>,
    pub is_reflexive: bool,
    pub is_completely_split: bool,
    pub boxes: Vec<BoxPoints>,
}

fn bounding_box(points: &[Vec<BigInt>]) -> Vec<(i64, i64)> {
    let dim = points.first().map_or(0, Vec::len);
    (0..dim)
        .map(|c| {
            let lo = points.iter().map(|p| &p[c]).min().and_then(|x| i64::try_from(x).ok()).unwrap_or(0);
            let hi = points.iter().map(|p| &p[c]).max().and_then(|x| i64::try_from(x).ok()).unwrap_or(0);
            (lo, hi)
        })
        .collect()
}

fn lattice_box(bounds: &[(i64, i64)]) -> Vec<Vec<BigInt>> {
    bounds
        .iter()
        .map(|&(lo, hi)| (lo..=hi).map(BigInt::from))
        .multi_cartesian_product()
        .collect()
}

/// `x ∈ conv(points)` via the homogenised cone `cone{(p, 1)}`.
fn in_hull(points: &[Vec<BigInt>], x: &[BigInt]) -> bool {
    let lift = |p: &[BigInt]| {
        let mut v = p.to_vec();
        v.push(BigInt::one());
        v
    };
    let gens: Vec<Vec<BigInt>> = points.iter().map(|p| lift(p)).collect();
    RationalCone::from_integer_generators(x.len() + 1, &gens)
        .map(|c| c.contains_integer(&lift(x)))
        .unwrap_or(false)
}

pub fn gorenstein_report(cfg: &PointConfiguration, t: &Triangulation) -> Result<GorensteinReport, GorensteinError> {
    let core = check_preconditions(cfg, t)?;
    let gens = dual_generators(cfg, t)?;
    let a0vee = find_a0vee(cfg)?;
    let n = cfg.rank();
    let mut a0 = vec![BigInt::zero(); n];
    for &i in core.indices() {
        for (x, y) in a0.iter_mut().zip(cfg.point(i)) {
            *x += y;
        }
    }
    let index = usize::try_from(dot(&a0vee, &a0)).unwrap_or(0);
    let is_reflexive = gens.iter().all(|g| dot(&g.row, &a0).is_one());

    let mut boxes = Vec::new();
    for &i in core.indices() {
        let verts: Vec<Vec<BigInt>> = gens.iter().filter(|g| g.core_index == i + 1).map(|g| g.row.clone()).collect();
        let mut points = Vec::new();
        let mut pattern_only = Vec::new();
        for x in lattice_box(&bounding_box(&verts)) {
            let pattern = splitting_pattern_holds(cfg, core.indices(), i, &x);
            let hull = in_hull(&verts, &x);
            if hull && pattern {
                points.push(x);
            } else if pattern {
                pattern_only.push(x);
            } else if hull {
                return Err(TriangError::InternalInconsistency(format!("hull point {x:?} breaks the splitting pattern")).into());
            }
        }
        boxes.push(BoxPoints { core_index: i + 1, points, pattern_only });
    }
    let is_completely_split = boxes.iter().all(|b| b.pattern_only.is_empty())
        && gens.iter().all(|g| splitting_pattern_holds(cfg, core.indices(), g.core_index - 1, &g.row));
    Ok(GorensteinReport {
        a0vee,
        a0,
        index,
        core: core.one_based(),
        dual_generators: gens,
        is_reflexive,
        is_completely_split,
        boxes,
    })
}

/// Check `interior(Λ) ∩ Z^n = a_0 + (Λ ∩ Z^n)` in degrees `1..=degree_bound`, using the dual generators as inequalities of `Λ`.
pub fn interior_identity_check(cfg: &PointConfiguration, t: &Triangulation, degree_bound: usize) -> Result<bool, GorensteinError> {
    let report = gorenstein_report(cfg, t)?;
    let ineqs: Vec<Vec<BigInt>> = report.dual_generators.iter().map(|g| g.row.clone()).collect();
    let columns: Vec<Vec<BigInt>> = (0..cfg.npoints()).map(|j| cfg.point(j)).collect();
    Ok(interior_identity_from_inequalities(&report.a0vee, &report.a0, &columns, &ineqs, degree_bound))
}

/// Graded interior identity for the cone `{x : h·x ≥ 0 for h ∈ ineqs}`; false when the inequalities do not cut out a pointed cone.
pub fn interior_identity_from_inequalities(
    a0vee: &[BigInt],
    a0: &[BigInt],
    columns: &[Vec<BigInt>],
    ineqs: &[Vec<BigInt>],
    degree_bound: usize,
) -> bool {
    let n = a0vee.len();
    let rank = exactla::IntMatrix::from_big_rows(ineqs, n).rank();
    if rank < n {
        return false;
    }
    let reach = columns.iter().flatten().map(|x| x.abs()).max().unwrap_or_default();
    let reach = i64::try_from(reach).unwrap_or(0) * degree_bound as i64;
    let bounds = vec![(-reach, reach); n];
    let degree = |x: &[BigInt]| dot(a0vee, x);
    let in_cone = |x: &[BigInt]| ineqs.iter().all(|h| !dot(h, x).is_negative());
    let in_interior = |x: &[BigInt]| ineqs.iter().all(|h| dot(h, x).is_positive());
    let kappa = degree(a0);
    let pts: Vec<Vec<BigInt>> = lattice_box(&bounds).into_iter().filter(|x| in_cone(x)).collect();
    (1..=degree_bound as i64).all(|d| {
        let d = BigInt::from(d);
        let interior: BTreeSet<Vec<BigInt>> = pts.iter().filter(|x| degree(x) == d && in_interior(x)).cloned().collect();
        let shifted: BTreeSet<Vec<BigInt>> = pts
            .iter()
            .filter(|y| degree(y) == &d - &kappa)
            .map(|y| y.iter().zip(a0).map(|(p, q)| p + q).collect())
            .filter(|x: &Vec<BigInt>| x.iter().all(|c| c.abs() <= BigInt::from(reach)))
            .collect();
        interior == shifted
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ints;
    use crate::triang::enumerate_regular;
    use crate::triang::tests::{pentagon, t1};

    #[test]
    fn degree_functional() {
        assert_eq!(find_a0vee(&pentagon()).unwrap(), ints(&[1, 0, 0]));
        let bad = PointConfiguration::new(exactla::IntMatrix::from_rows(&[vec![1, 2], vec![0, 1]]), Some(ints(&[1, 0])));
        assert!(bad.is_err());
    }

    #[test]
    fn pentagon_report() {
        let c = pentagon();
        let t = t1(&c);
        let g = dual_generators(&c, &t).unwrap();
        assert!(!g.is_empty() && g.len() <= 5);
        let r = gorenstein_report(&c, &t).unwrap();
        assert_eq!(r.index, 1);
        assert_eq!(r.a0, ints(&[1, 0, 0]));
        assert!(r.is_reflexive);
        assert!(r.is_completely_split);
        assert_eq!(r.core, vec![4]);
    }

    #[test]
    fn inverse_rows_are_dual() {
        let c = pentagon();
        let t = t1(&c);
        for s in t.maximal() {
            let (inv, _) = exactla::square_inverse(&c.a().select_columns(s.indices())).unwrap();
            for (pos, _) in s.indices().iter().enumerate() {
                let row = exactla::as_integers(inv.row(pos)).unwrap();
                for (q, &j) in s.indices().iter().enumerate() {
                    assert_eq!(dot(&row, &c.point(j)), BigInt::from(i64::from(pos == q)));
                }
            }
        }
    }

    #[test]
    fn preconditions_across_all_triangulations() {
        let c = pentagon();
        let e = enumerate_regular(&c, 0).unwrap();
        let mut passing = 0;
        for t in &e.triangulations {
            match gorenstein_report(&c, t) {
                Ok(r) => {
                    passing += 1;
                    assert_eq!((r.index, r.a0.clone()), (1, ints(&[1, 0, 0])));
                }
                Err(GorensteinError::PreconditionFailed(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert_eq!(passing, 1);
    }

    #[test]
    fn interior_identity() {
        let c = pentagon();
        assert!(interior_identity_check(&c, &t1(&c), 3).unwrap());
    }

    #[test]
    fn slab_is_rejected() {
        let cols = vec![ints(&[1, 0]), ints(&[1, 1])];
        assert!(!interior_identity_from_inequalities(&ints(&[1, 0]), &ints(&[1, 0]), &cols, &[ints(&[0, 1])], 2));
    }
}

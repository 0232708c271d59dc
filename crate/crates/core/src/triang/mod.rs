//! Regular triangulations of `Δ = conv{a_1, …, a_N}` and their secondary cones.
//!
//! Index sets are 0-based internally. Weights live in the dual of the
//! relation lattice and are written in coordinates dual to the rows of
//! [`PointConfiguration::b`].

mod config;
mod enumerate;

pub use config::{solve_degree_functional, ConfigRecord, PointConfiguration};
pub use enumerate::{enumerate_regular, Enumeration, EnumerationRecord};

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{self, dot, mixed_dot, RatMatrix, RatVector};
use crate::polycone::RationalCone;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangError {
    #[error("heights are degenerate: a lifted point lies on a supporting hyperplane")]
    DegenerateHeights,
    #[error("heights must be strictly positive")]
    NonPositiveHeights,
    #[error("weight lies on a wall of the secondary fan arrangement")]
    WallWeight,
    #[error("the given simplices do not form a regular triangulation: {0}")]
    NotRegular(String),
    #[error("invalid simplex {0}")]
    InvalidSimplex(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("columns do not lie on an integral affine hyperplane a0vee·x = 1")]
    NoDegreeFunctional,
    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Strictly increasing list of point indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut idx: Vec<usize>) -> Self {
        idx.sort_unstable();
        idx.dedup();
        Simplex(idx)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&i| other.contains(i)).collect())
    }

    /// 1-based indices, as used in artifacts.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn from_one_based(idx: &[usize]) -> Result<Self, TriangError> {
        if idx.contains(&0) {
            return Err(TriangError::InvalidSimplex(format!("{idx:?}: indices start at 1")));
        }
        Ok(Simplex::new(idx.iter().map(|i| i - 1).collect()))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.one_based().iter().join(","))
    }
}

/// A regular triangulation: maximal simplices with a weight certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    rank: usize,
    maximal: Vec<Simplex>,
    weight: RatVector,
    volumes: Vec<BigInt>,
}

fn check_weight(cfg: &PointConfiguration, w: &[BigRational]) -> Result<(), TriangError> {
    if w.len() != cfg.corank() {
        return Err(TriangError::DimensionMismatch { expected: cfg.corank(), got: w.len() });
    }
    if cfg.wall_normals().iter().any(|h| mixed_dot(h, w).is_zero()) {
        return Err(TriangError::WallWeight);
    }
    Ok(())
}

impl Triangulation {
    fn assemble(cfg: &PointConfiguration, mut maximal: Vec<Simplex>, weight: RatVector) -> Self {
        maximal.sort();
        let volumes = maximal.iter().map(|s| cfg.volume(s)).collect();
        Triangulation { rank: cfg.rank(), maximal, weight, volumes }
    }

    /// Maximal simplices `I` with `w` in the cone spanned by `b_j`, `j ∉ I`.
    pub fn from_weight(cfg: &PointConfiguration, w: &[BigRational]) -> Result<Self, TriangError> {
        check_weight(cfg, w)?;
        let k = cfg.corank();
        let n_pts = cfg.npoints();
        let maximal: Vec<Simplex> = (0..n_pts)
            .combinations(k)
            .filter_map(|j| {
                let inv = cfg.coordinate_cone_inequalities(&j)?;
                let y = inv.mul_vec(w);
                y.iter().all(Signed::is_positive).then(|| Simplex::new(cfg.complement(&j)))
            })
            .collect();
        Ok(Self::assemble(cfg, maximal, w.to_vec()))
    }

    /// Lower-hull construction from heights: points `d_i^{-1} a_i` together with the origin.
    pub fn from_heights(cfg: &PointConfiguration, d: &[BigRational]) -> Result<Self, TriangError> {
        let n_pts = cfg.npoints();
        let n = cfg.rank();
        if d.len() != n_pts {
            return Err(TriangError::DimensionMismatch { expected: n_pts, got: d.len() });
        }
        if d.iter().any(|x| !x.is_positive()) {
            return Err(TriangError::NonPositiveHeights);
        }
        let lifted = |i: usize| -> RatVector {
            let mut c = exactla::to_rat(&cfg.point(i));
            c.push(d[i].clone());
            c
        };
        let apex: RatVector = (0..n).map(|_| BigRational::zero()).chain([BigRational::one()]).collect();
        let side = |cols: &[RatVector]| -> BigRational {
            RatMatrix::from_rows(cols, n + 1).transpose().det().expect("square")
        };
        let mut maximal = Vec::new();
        for idx in (0..n_pts).combinations(n) {
            if !cfg.is_independent(&idx) {
                continue;
            }
            let mut cols: Vec<RatVector> = idx.iter().map(|&i| lifted(i)).collect();
            cols.push(apex.clone());
            let origin_side = side(&cols);
            let mut lower = true;
            for j in cfg.complement(&idx) {
                *cols.last_mut().expect("n+1 columns") = lifted(j);
                let s = side(&cols) * &origin_side;
                if s.is_zero() {
                    return Err(TriangError::DegenerateHeights);
                }
                lower &= s.is_positive();
            }
            if lower {
                maximal.push(Simplex::new(idx));
            }
        }
        let weight = cfg.b().to_rat().mul_vec(d);
        Ok(Self::assemble(cfg, maximal, weight))
    }

    /// Recover a triangulation from its maximal simplices, finding a weight certificate.
    pub fn from_maximal(cfg: &PointConfiguration, maximal: &[Simplex]) -> Result<Self, TriangError> {
        let n_pts = cfg.npoints();
        for s in maximal {
            if s.indices().iter().any(|&i| i >= n_pts) || !cfg.is_independent(s.indices()) {
                return Err(TriangError::InvalidSimplex(s.to_string()));
            }
        }
        if maximal.is_empty() {
            return Err(TriangError::NotRegular("no simplices given".into()));
        }
        let cone = intersect_coordinate_cones(cfg, maximal);
        if !cone.is_full_dimensional() {
            return Err(TriangError::NotRegular("secondary cone is not full-dimensional".into()));
        }
        let base = exactla::to_rat(&cone.relative_interior_point());
        let w = generic_point_in_interior(cfg, &cone, &base, 0)
            .ok_or_else(|| TriangError::InternalInconsistency("no generic interior weight found".into()))?;
        let t = Self::from_weight(cfg, &w)?;
        let mut want = maximal.to_vec();
        want.sort();
        want.dedup();
        if t.maximal != want {
            return Err(TriangError::NotRegular("certificate weight yields a different triangulation".into()));
        }
        Ok(t)
    }

    pub fn maximal(&self) -> &[Simplex] {
        &self.maximal
    }

    pub fn weight(&self) -> &[BigRational] {
        &self.weight
    }

    pub fn volumes(&self) -> &[BigInt] {
        &self.volumes
    }

    /// Product of the volumes of the maximal simplices.
    pub fn volume_product(&self) -> BigInt {
        self.volumes.iter().product()
    }

    pub fn total_volume(&self) -> BigInt {
        self.volumes.iter().sum()
    }

    pub fn is_unimodular(&self) -> bool {
        self.volumes.iter().all(One::is_one)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Whether `support` is a face of some maximal simplex.
    pub fn is_face(&self, support: &[usize]) -> bool {
        self.maximal.iter().any(|s| support.iter().all(|&i| s.contains(i)))
    }

    /// All simplices of `T` with `m` vertices.
    pub fn simplices(&self, m: usize) -> Vec<Simplex> {
        let set: BTreeSet<Simplex> = self
            .maximal
            .iter()
            .flat_map(|s| s.indices().iter().copied().combinations(m).map(Simplex::new))
            .collect();
        set.into_iter().collect()
    }

    /// `#T^m` for `m = 0..=n`.
    pub fn simplex_counts(&self) -> Vec<usize> {
        (0..=self.rank).map(|m| self.simplices(m).len()).collect()
    }

    /// Intersection of all maximal simplices.
    pub fn core(&self) -> Simplex {
        let mut it = self.maximal.iter();
        let first = it.next().cloned().unwrap_or_default();
        it.fold(first, |acc, s| acc.intersection(s))
    }

    /// The core, cross-checked against the dual secondary cone: `j` is in the
    /// core exactly when `ℓ_j ≤ 0` on all of `C_T^∨`.
    pub fn verified_core(&self, cfg: &PointConfiguration) -> Result<Simplex, TriangError> {
        let core = self.core();
        let dual = self.secondary_cone(cfg).dualize();
        let gens = dual.generators();
        for j in 0..cfg.npoints() {
            let bj = cfg.projection(j);
            let nonpositive = gens.iter().all(|g| !dot(&bj, g).is_positive());
            if nonpositive != core.contains(j) {
                return Err(TriangError::InternalInconsistency(format!(
                    "core membership of point {} disagrees with the dual secondary cone",
                    j + 1
                )));
            }
        }
        Ok(core)
    }

    /// `C_T = ⋂_I cone{b_j : j ∉ I}`.
    pub fn secondary_cone(&self, cfg: &PointConfiguration) -> RationalCone {
        intersect_coordinate_cones(cfg, &self.maximal)
    }

    /// Simplices of `T` not containing the core that are not contained in `∂Δ`.
    pub fn interior_simplices_missing_core(&self, cfg: &PointConfiguration) -> Vec<Simplex> {
        let core = self.core();
        (0..=self.rank)
            .flat_map(|m| self.simplices(m))
            .filter(|s| !core.is_subset_of(s) && !cfg.in_boundary(s.indices()))
            .collect()
    }

    pub fn to_record(&self) -> TriangulationRecord {
        TriangulationRecord {
            maximal: self.maximal.iter().map(Simplex::one_based).collect(),
            weight: self.weight.clone(),
            core: self.core().one_based(),
            volumes: self.volumes.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_record(rank: usize, rec: &TriangulationRecord) -> Result<Self, TriangError> {
        let maximal = rec
            .maximal
            .iter()
            .map(|s| Simplex::from_one_based(s))
            .collect::<Result<Vec<_>, _>>()?;
        let volumes = rec
            .volumes
            .iter()
            .map(|v| v.parse::<BigInt>().map_err(|_| TriangError::InvalidSimplex(format!("bad volume {v}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if volumes.len() != maximal.len() || maximal.iter().any(|s| s.len() != rank) {
            return Err(TriangError::InvalidSimplex("record shape mismatch".into()));
        }
        let mut pairs: Vec<(Simplex, BigInt)> = maximal.into_iter().zip(volumes).collect();
        pairs.sort();
        let (maximal, volumes) = pairs.into_iter().unzip();
        Ok(Triangulation { rank, maximal, weight: rec.weight.clone(), volumes })
    }
}

fn intersect_coordinate_cones(cfg: &PointConfiguration, maximal: &[Simplex]) -> RationalCone {
    let k = cfg.corank();
    let mut rows: Vec<RatVector> = Vec::new();
    for s in maximal {
        let j = cfg.complement(s.indices());
        if let Some(inv) = cfg.coordinate_cone_inequalities(&j) {
            rows.extend(inv.to_rows());
        }
    }
    RationalCone::from_inequalities(k, &rows).expect("rows have length N - n").complete()
}

/// A weight off every wall inside the open cone, obtained by seeded perturbation of `base`.
pub(crate) fn generic_point_in_interior(
    cfg: &PointConfiguration,
    cone: &RationalCone,
    base: &[BigRational],
    seed: u64,
) -> Option<RatVector> {
    let on_wall = |w: &[BigRational]| cfg.wall_normals().iter().any(|h| mixed_dot(h, w).is_zero());
    if cone.contains_in_interior(base) && !on_wall(base) {
        return Some(base.to_vec());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let r: Vec<i64> = (0..cfg.corank()).map(|_| rng.gen_range(-1000..=1000)).collect();
        let mut scale = BigRational::new(BigInt::one(), BigInt::from(1000));
        for _ in 0..64 {
            let w: RatVector = base
                .iter()
                .zip(&r)
                .map(|(b, &x)| b + &scale * BigRational::from_integer(BigInt::from(x)))
                .collect();
            if cone.contains_in_interior(&w) && !on_wall(&w) {
                return Some(w);
            }
            scale /= BigRational::from_integer(BigInt::from(2));
        }
    }
    None
}

/// Triangulation JSON: `{maximal, weight, core, volumes}` with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationRecord {
    pub maximal: Vec<Vec<usize>>,
    #[serde(with = "crate::exactla::serial::rat_vec")]
    pub weight: RatVector,
    pub core: Vec<usize>,
    pub volumes: Vec<String>,
}

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{check_preconditions, GorensteinError};
use crate::exactla::{self, IntMatrix};
use crate::polycone::RationalCone;
use crate::triang::{PointConfiguration, Simplex, TriangError, Triangulation};

/// The fan `F′` on the non-core points after projecting along a maximal simplex `I0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanReport {
    /// 1-based.
    pub i0: Vec<usize>,
    pub dim: usize,
    /// `(j, u_j)` with `j` 1-based and not in the core.
    pub rays: Vec<(usize, Vec<String>)>,
    /// Maximal cones as 1-based point indices.
    pub maximal_cones: Vec<Vec<usize>>,
    pub complete: bool,
    pub smooth: bool,
}

fn ray_vectors(cfg: &PointConfiguration, i0: &Simplex, core: &Simplex) -> Result<Vec<(usize, Vec<BigInt>)>, GorensteinError> {
    let (inv, _) = exactla::square_inverse(&cfg.a().select_columns(i0.indices()))
        .map_err(|_| TriangError::InvalidSimplex(i0.to_string()))?;
    let keep: Vec<usize> = i0.indices().iter().enumerate().filter(|(_, i)| !core.contains(**i)).map(|(p, _)| p).collect();
    let mut out = Vec::new();
    for j in (0..cfg.npoints()).filter(|j| !core.contains(*j)) {
        let col = inv.mul_vec(&exactla::to_rat(&cfg.point(j)));
        let u: Vec<_> = keep.iter().map(|&p| col[p].clone()).collect();
        let u = exactla::as_integers(&u)
            .ok_or_else(|| TriangError::InternalInconsistency(format!("projected point {} is not integral", j + 1)))?;
        out.push((j, u));
    }
    Ok(out)
}

/// `0` is a combination of the `u_j` with all coefficients strictly positive.
fn positively_spanning(dim: usize, u: &[Vec<BigInt>]) -> bool {
    let m = u.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for c in 0..dim {
        let eq: Vec<BigInt> = u.iter().map(|v| v[c].clone()).collect();
        rows.push(eq.iter().map(|x| -x).collect());
        rows.push(eq);
    }
    for j in 0..m {
        let mut e = vec![BigInt::zero(); m];
        e[j] = 1.into();
        rows.push(e);
    }
    let Ok(cone) = RationalCone::from_integer_inequalities(m, &rows) else {
        return false;
    };
    let p = cone.relative_interior_point();
    p.len() == m && p.iter().all(Signed::is_positive)
}

pub fn projected_fan(cfg: &PointConfiguration, t: &Triangulation, i0: &Simplex) -> Result<FanReport, GorensteinError> {
    let core = check_preconditions(cfg, t)?;
    if !t.maximal().contains(i0) {
        return Err(GorensteinError::NotMaximal(i0.to_string()));
    }
    let rays = ray_vectors(cfg, i0, &core)?;
    let dim = cfg.rank() - core.len();
    let u = |j: usize| rays.iter().find(|(k, _)| *k == j).map(|(_, v)| v.clone()).expect("non-core index");
    let cones: Vec<Vec<usize>> = t
        .maximal()
        .iter()
        .map(|s| s.indices().iter().copied().filter(|j| !core.contains(*j)).collect())
        .collect();
    let smooth = cones.iter().all(|c: &Vec<usize>| {
        let rows: Vec<Vec<BigInt>> = c.iter().map(|&j| u(j)).collect();
        IntMatrix::from_big_rows(&rows, dim).det().map(|d| d.abs() == BigInt::from(1)).unwrap_or(false)
    });
    let all: Vec<Vec<BigInt>> = rays.iter().map(|(_, v)| v.clone()).collect();
    let complete = positively_spanning(dim, &all);
    Ok(FanReport {
        i0: i0.one_based(),
        dim,
        rays: rays.iter().map(|(j, v)| (j + 1, v.iter().map(ToString::to_string).collect())).collect(),
        maximal_cones: cones.iter().map(|c| c.iter().map(|j| j + 1).collect()).collect(),
        complete,
        smooth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ints;
    use crate::triang::tests::{pentagon, t1};

    #[test]
    fn pentagon_fan_is_complete_and_smooth() {
        let c = pentagon();
        let t = t1(&c);
        let f = projected_fan(&c, &t, &Simplex::from_one_based(&[1, 2, 4]).unwrap()).unwrap();
        assert_eq!(f.dim, 2);
        assert_eq!(f.maximal_cones.len(), 5);
        assert!(f.complete && f.smooth);
    }

    #[test]
    fn one_sided_rays_are_not_complete() {
        assert!(!positively_spanning(2, &[ints(&[1, 0]), ints(&[0, 1])]));
        assert!(positively_spanning(1, &[ints(&[1]), ints(&[-2])]));
    }

    #[test]
    fn foreign_simplex_is_rejected() {
        let c = pentagon();
        let t = t1(&c);
        let r = projected_fan(&c, &t, &Simplex::from_one_based(&[1, 2, 3]).unwrap());
        assert!(matches!(r, Err(GorensteinError::NotMaximal(_))));
    }
}

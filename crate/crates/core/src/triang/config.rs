use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Simplex, TriangError};
use crate::exactla::{self, dot, kernel_basis, IntMatrix, RatMatrix};
use crate::polycone::RationalCone;

/// Integer point configuration `A` (n×N) with its degree functional and relation lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    a: IntMatrix,
    a0vee: Vec<BigInt>,
    b: IntMatrix,
    walls: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
}

/// Solve `a0vee · a_j = 1` for every column; the solution must be integral.
pub fn solve_degree_functional(a: &IntMatrix) -> Result<Vec<BigInt>, TriangError> {
    let at = a.transpose().to_rat();
    let ones = vec![BigRational::one(); a.cols()];
    let y = at.solve(&ones).ok_or(TriangError::NoDegreeFunctional)?;
    exactla::as_integers(&y).ok_or(TriangError::NoDegreeFunctional)
}

impl PointConfiguration {
    /// Build from `A`, computing the degree functional when it is not supplied.
    pub fn new(a: IntMatrix, a0vee: Option<Vec<BigInt>>) -> Result<Self, TriangError> {
        let n = a.rows();
        if a.rank() != n {
            return Err(TriangError::RankDeficient { rank: a.rank(), rows: n });
        }
        let a0vee = match a0vee {
            Some(v) => {
                if v.len() != n {
                    return Err(TriangError::DimensionMismatch { expected: n, got: v.len() });
                }
                v
            }
            None => solve_degree_functional(&a)?,
        };
        for j in 0..a.cols() {
            if !dot(&a0vee, &a.col(j)).is_one() {
                return Err(TriangError::NoDegreeFunctional);
            }
        }
        let b = kernel_basis(&a);
        let walls = wall_normals(&b);
        let facets = support_cone(&a).facets().rays;
        Ok(Self { a, a0vee, b, walls, facets })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, TriangError> {
        Self::new(IntMatrix::from_rows(rows), None)
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn a0vee(&self) -> &[BigInt] {
        &self.a0vee
    }

    /// Basis of the relation lattice, one relation per row.
    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    /// `n`, the rank of the configuration.
    pub fn rank(&self) -> usize {
        self.a.rows()
    }

    /// `N`, the number of points.
    pub fn npoints(&self) -> usize {
        self.a.cols()
    }

    /// `N − n`, the rank of the relation lattice.
    pub fn corank(&self) -> usize {
        self.b.rows()
    }

    pub fn point(&self, j: usize) -> Vec<BigInt> {
        self.a.col(j)
    }

    /// Image `b_j` of the j-th unit vector in the dual of the relation lattice.
    pub fn projection(&self, j: usize) -> Vec<BigInt> {
        self.b.col(j)
    }

    pub fn projections(&self) -> Vec<Vec<BigInt>> {
        (0..self.npoints()).map(|j| self.projection(j)).collect()
    }

    /// Lattice vector `ℓ = m · B` for coordinates `m` in the relation basis.
    pub fn relation(&self, m: &[BigInt]) -> Vec<BigInt> {
        self.b.left_mul_vec(m).expect("coordinate length equals corank")
    }

    /// Coordinates of a relation `ℓ` in the basis rows, if `ℓ` lies in the lattice.
    pub fn relation_coordinates(&self, l: &[BigInt]) -> Option<Vec<BigInt>> {
        if l.len() != self.npoints() {
            return None;
        }
        let bt = self.b.transpose().to_rat();
        let m = bt.solve(&exactla::to_rat(l))?;
        let m = exactla::as_integers(&m)?;
        (self.relation(&m) == l).then_some(m)
    }

    pub fn is_independent(&self, idx: &[usize]) -> bool {
        idx.len() == self.rank() && !self.a.select_columns(idx).det().unwrap_or_default().is_zero()
    }

    /// `|det(a_i : i ∈ I)|` for a maximal index set.
    pub fn volume(&self, s: &Simplex) -> BigInt {
        use num_traits::Signed;
        self.a.select_columns(s.indices()).det().map(|d| d.abs()).unwrap_or_default()
    }

    /// Complement of an index set in `{0..N}`.
    pub fn complement(&self, idx: &[usize]) -> Vec<usize> {
        (0..self.npoints()).filter(|j| !idx.contains(j)).collect()
    }

    /// The cone `cone{b_j : j ∈ J}` as inequalities `rows(B_J^{-1}) ≥ 0`, for `|J| = N − n` independent.
    pub fn coordinate_cone_inequalities(&self, j: &[usize]) -> Option<RatMatrix> {
        let bj = self.b.select_columns(j);
        exactla::square_inverse(&bj).ok().map(|(inv, _)| inv)
    }

    /// Normals of the walls `H_J` for every `(N−n−1)`-subset `J` with independent `b_j`.
    pub fn wall_normals(&self) -> &[Vec<BigInt>] {
        &self.walls
    }

    /// The cone `Λ = cone{a_j}` in `Z^n`.
    pub fn cone(&self) -> RationalCone {
        support_cone(&self.a)
    }

    /// Facet normals of `Λ`; their zero sets are the facets of `Δ`.
    pub fn facet_normals(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    /// Whether all points of the index set lie on a common proper face of `Δ`.
    pub fn in_boundary(&self, idx: &[usize]) -> bool {
        self.facet_normals()
            .iter()
            .any(|f| idx.iter().all(|&i| dot(f, &self.point(i)).is_zero()))
    }

    pub fn to_record(&self) -> ConfigRecord {
        ConfigRecord { a: self.a.clone(), a0vee: Some(self.a0vee.clone()) }
    }

    pub fn from_record(rec: &ConfigRecord) -> Result<Self, TriangError> {
        Self::new(rec.a.clone(), rec.a0vee.clone())
    }
}

fn wall_normals(b: &IntMatrix) -> Vec<Vec<BigInt>> {
    let k = b.rows();
    if k == 0 {
        return Vec::new();
    }
    let bs: Vec<Vec<BigInt>> = (0..b.cols()).map(|j| b.col(j)).collect();
    let mut out: Vec<Vec<BigInt>> = (0..b.cols())
        .combinations(k - 1)
        .filter_map(|j| {
            let rows: Vec<Vec<BigInt>> = j.iter().map(|&i| bs[i].clone()).collect();
            let ns = IntMatrix::from_big_rows(&rows, k).to_rat().nullspace();
            (ns.len() == 1).then(|| exactla::canonical_line(&exactla::primitive_from_rational(&ns[0])))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn support_cone(a: &IntMatrix) -> RationalCone {
    let cols: Vec<Vec<BigInt>> = (0..a.cols()).map(|j| a.col(j)).collect();
    RationalCone::from_integer_generators(a.rows(), &cols)
        .expect("columns have length n")
        .complete()
}

/// Configuration JSON: `{"A": [[...]], "a0vee": [...]}` with `a0vee` optional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigRecord {
    #[serde(rename = "A")]
    pub a: IntMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_int_vec")]
    pub a0vee: Option<Vec<BigInt>>,
}

mod opt_int_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => crate::exactla::serial::int_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "crate::exactla::serial::int_vec")] Vec<BigInt>);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ints;
    use crate::triang::tests::pentagon;

    #[test]
    fn degree_functional_and_kernel() {
        let c = pentagon();
        assert_eq!(c.a0vee(), ints(&[1, 0, 0]).as_slice());
        assert_eq!(c.corank(), 3);
        for r in c.b().to_rows() {
            assert!(r.iter().sum::<BigInt>().is_zero());
        }
    }

    #[test]
    fn non_homogeneous_columns_rejected() {
        let r = PointConfiguration::from_rows(&[vec![1, 2], vec![0, 1]]);
        assert_eq!(r.unwrap().a0vee(), ints(&[1, -1]).as_slice());
        let r = PointConfiguration::from_rows(&[vec![1, 1, 1], vec![0, 1, 3], vec![0, 0, 0]]);
        assert!(matches!(r, Err(TriangError::RankDeficient { .. })));
        let r = PointConfiguration::from_rows(&[vec![1, 1, 2], vec![0, 1, 0]]);
        assert_eq!(r.unwrap_err(), TriangError::NoDegreeFunctional);
    }

    #[test]
    fn relation_coordinates_round_trip() {
        let c = pentagon();
        let l = c.relation(&ints(&[2, -1, 3]));
        assert_eq!(c.relation_coordinates(&l).unwrap(), ints(&[2, -1, 3]));
        assert!(c.relation_coordinates(&ints(&[1, 0, 0, 0, 0, 0])).is_none());
    }

    #[test]
    fn pentagon_boundary() {
        let c = pentagon();
        assert_eq!(c.facet_normals().len(), 5);
        assert!(c.in_boundary(&[0, 1]));
        assert!(!c.in_boundary(&[3]));
        assert!(!c.in_boundary(&[0, 5]));
    }

    #[test]
    fn record_round_trip() {
        let c = pentagon();
        let s = serde_json::to_string(&c.to_record()).unwrap();
        let back: ConfigRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(PointConfiguration::from_record(&back).unwrap(), c);
        let bare: ConfigRecord = serde_json::from_str(r#"{"A": [[1,1],[0,1]]}"#).unwrap();
        assert!(bare.a0vee.is_none());
    }
}

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{PointConfiguration, Simplex, TriangError, Triangulation, TriangulationRecord};
use crate::exactla::{dot, mixed_dot, RatVector};

/// All regular triangulations, sorted by their maximal simplices, with the
/// flip adjacency of their secondary cones (pairs of indices into `triangulations`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub triangulations: Vec<Triangulation>,
    pub adjacency: Vec<(usize, usize)>,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.triangulations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangulations.is_empty()
    }

    pub fn find(&self, maximal: &[Simplex]) -> Option<usize> {
        let mut want = maximal.to_vec();
        want.sort();
        self.triangulations.iter().position(|t| t.maximal() == want.as_slice())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.triangulations.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.adjacency {
                let next = if a == v { b } else if b == v { a } else { continue };
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_record(&self) -> EnumerationRecord {
        EnumerationRecord {
            count: self.len(),
            triangulations: self.triangulations.iter().map(Triangulation::to_record).collect(),
            adjacency: self.adjacency.iter().map(|&(a, b)| (a + 1, b + 1)).collect(),
            connected: self.is_connected(),
        }
    }
}

/// Enumeration JSON; adjacency pairs use the 1-based positions in `triangulations`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationRecord {
    pub count: usize,
    pub triangulations: Vec<TriangulationRecord>,
    pub adjacency: Vec<(usize, usize)>,
    pub connected: bool,
}

fn random_vector(rng: &mut ChaCha8Rng, k: usize, range: i64) -> Vec<i64> {
    (0..k).map(|_| rng.gen_range(-range..=range)).collect()
}

fn to_rat(v: &[i64]) -> RatVector {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// Cross the facet `{f·w = 0}` of `C_T` at the point `p` of its relative interior.
fn cross_facet(
    cfg: &PointConfiguration,
    p: &[BigInt],
    f: &[BigInt],
    rng: &mut ChaCha8Rng,
) -> Result<Triangulation, TriangError> {
    let k = cfg.corank();
    let p_rat: RatVector = p.iter().cloned().map(BigRational::from_integer).collect();
    for _ in 0..16 {
        let r = to_rat(&random_vector(rng, k, 1000));
        let mut eps = BigRational::one();
        for _ in 0..80 {
            let eps2 = &eps * &eps / BigRational::from_integer(BigInt::from(1000));
            let w: RatVector = (0..k)
                .map(|i| &p_rat[i] - &eps * BigRational::from_integer(f[i].clone()) + &eps2 * &r[i])
                .collect();
            eps /= BigRational::from_integer(BigInt::from(2));
            if !mixed_dot(f, &w).is_negative() {
                continue;
            }
            let t = match Triangulation::from_weight(cfg, &w) {
                Ok(t) => t,
                Err(TriangError::WallWeight) => continue,
                Err(e) => return Err(e),
            };
            if t.secondary_cone(cfg).contains(&p_rat) {
                return Ok(t);
            }
        }
    }
    Err(TriangError::InternalInconsistency("could not cross a secondary cone facet".into()))
}

/// Breadth-first traversal of the secondary fan from a seeded generic weight.
pub fn enumerate_regular(cfg: &PointConfiguration, seed: u64) -> Result<Enumeration, TriangError> {
    let k = cfg.corank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    log::debug!("enumerating regular triangulations with seed {seed}");
    let start = loop {
        let w = to_rat(&random_vector(&mut rng, k, 50));
        match Triangulation::from_weight(cfg, &w) {
            Ok(t) => break t,
            Err(TriangError::WallWeight) => continue,
            Err(e) => return Err(e),
        }
    };

    let mut found: Vec<Triangulation> = vec![start.clone()];
    let mut index: BTreeMap<Vec<Simplex>, usize> = BTreeMap::new();
    index.insert(start.maximal().to_vec(), 0);
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut queue: VecDeque<usize> = VecDeque::from([0]);

    while let Some(cur) = queue.pop_front() {
        let cone = found[cur].secondary_cone(cfg);
        let rays = cone.extreme_rays().rays;
        for f in cone.facets().rays {
            let mut p = vec![BigInt::zero(); k];
            for r in rays.iter().filter(|r| dot(&f, r).is_zero()) {
                for (a, b) in p.iter_mut().zip(r) {
                    *a += b;
                }
            }
            let t = cross_facet(cfg, &p, &f, &mut rng)?;
            let idx = match index.get(t.maximal()) {
                Some(&i) => i,
                None => {
                    found.push(t.clone());
                    index.insert(t.maximal().to_vec(), found.len() - 1);
                    queue.push_back(found.len() - 1);
                    found.len() - 1
                }
            };
            if idx != cur {
                edges.insert((cur.min(idx), cur.max(idx)));
            }
        }
    }

    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&a, &b| found[a].maximal().cmp(found[b].maximal()));
    let mut rank = vec![0; found.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let mut adjacency: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(a, b)| (rank[a].min(rank[b]), rank[a].max(rank[b])))
        .collect();
    adjacency.sort();
    let triangulations = order.into_iter().map(|i| found[i].clone()).collect();
    Ok(Enumeration { triangulations, adjacency })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triang::tests::{pentagon, simplices};

    #[test]
    fn pentagon_has_ten_triangulations() {
        let c = pentagon();
        let e = enumerate_regular(&c, 0).unwrap();
        assert_eq!(e.len(), 10);
        assert!(e.is_connected());
        for t in &e.triangulations {
            assert_eq!(t.total_volume(), BigInt::from(5));
            assert!(t.secondary_cone(&c).contains_in_interior(t.weight()));
        }
        assert!(e.find(&simplices(&[&[1, 2, 4], &[1, 3, 4], &[2, 4, 5], &[3, 4, 6], &[4, 5, 6]])).is_some());
    }

    #[test]
    fn seed_does_not_change_the_set() {
        let c = pentagon();
        let a = enumerate_regular(&c, 1).unwrap();
        let b = enumerate_regular(&c, 99).unwrap();
        let ma: Vec<_> = a.triangulations.iter().map(|t| t.maximal().to_vec()).collect();
        let mb: Vec<_> = b.triangulations.iter().map(|t| t.maximal().to_vec()).collect();
        assert_eq!(ma, mb);
        assert_eq!(a.adjacency, b.adjacency);
    }

    #[test]
    fn small_cases() {
        let seg = PointConfiguration::from_rows(&[vec![1, 1, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(enumerate_regular(&seg, 0).unwrap().len(), 2);
        let tri = PointConfiguration::from_rows(&[vec![1, 1, 1], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(enumerate_regular(&tri, 0).unwrap().len(), 1);
    }
}

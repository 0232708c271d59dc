use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{AlgebraElement, GradedAlgebra, Monomial};
use crate::exactla::serial::format_rational;
use crate::exactla::{RatMatrix, RatVector};

/// Poincaré polynomials from the ring dimensions and from the simplex counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareCheck {
    pub ring: Vec<i64>,
    pub simplex: Vec<i64>,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub dims_per_degree: Vec<usize>,
    pub total_dim: usize,
    pub basis: Vec<String>,
    pub generators: Vec<String>,
    pub relations_in_reduced_generators: Vec<String>,
    pub poincare: PoincareCheck,
    pub core: Vec<usize>,
    pub c_core_coords: AlgebraElement,
}

fn monomial_name(m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("c{}", i + 1) } else { format!("c{}^{}", i + 1, e) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn polynomial_string(terms: &[(BigRational, Monomial)]) -> String {
    let mut out = String::new();
    for (k, (c, m)) in terms.iter().enumerate() {
        let (neg, abs) = (c.is_negative(), c.abs());
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format_rational(&abs));
            out.push('*');
        }
        out.push_str(&monomial_name(m));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn rank_of(rows: &[RatVector], cols: usize) -> usize {
    RatMatrix::from_rows(rows, cols).rank()
}

/// Minimal relations among the degree-1 basis generators, degree by degree.
fn relations(ring: &GradedAlgebra) -> Vec<String> {
    let vars = ring.npoints();
    let gens: Vec<usize> = ring
        .basis(1)
        .iter()
        .map(|m| m.iter().position(|&e| e == 1).expect("degree one monomial"))
        .collect();
    let g = gens.len();
    let mut out = Vec::new();
    let mut prev_kernel: Vec<RatVector> = Vec::new();
    let mut prev_monos: Vec<Vec<usize>> = Vec::new();
    for k in 2..=ring.rank() {
        let monos: Vec<Vec<usize>> = (0..g).combinations_with_replacement(k).collect();
        let to_full = |c: &[usize]| -> Monomial {
            let mut m = vec![0u32; vars];
            for &i in c {
                m[gens[i]] += 1;
            }
            m
        };
        let images: Vec<RatVector> = monos.iter().map(|c| ring.monomial(&to_full(c)).0).collect();
        let kernel = RatMatrix::from_rows(&images, ring.total_dim()).transpose().nullspace();
        let mut lower: Vec<RatVector> = Vec::new();
        for r in &prev_kernel {
            for v in 0..g {
                let mut row = vec![BigRational::zero(); monos.len()];
                for (c, m) in r.iter().zip(&prev_monos) {
                    if c.is_zero() {
                        continue;
                    }
                    let mut mm = m.clone();
                    mm.push(v);
                    mm.sort_unstable();
                    let pos = monos.iter().position(|x| *x == mm).expect("monomial present");
                    row[pos] += c;
                }
                lower.push(row);
            }
        }
        let mut kmat = RatMatrix::from_rows(&kernel, monos.len());
        let krank = kmat.rref().len();
        let mut acc = lower.clone();
        let mut base = rank_of(&acc, monos.len());
        for r in 0..krank {
            let row = kmat.row(r).to_vec();
            acc.push(row.clone());
            let next = rank_of(&acc, monos.len());
            if next > base {
                base = next;
                let terms: Vec<(BigRational, Monomial)> = row
                    .iter()
                    .zip(&monos)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, m)| (c.clone(), to_full(m)))
                    .collect();
                out.push(polynomial_string(&terms));
            } else {
                acc.pop();
            }
        }
        prev_kernel = kernel;
        prev_monos = monos;
    }
    out
}

pub(super) fn build_report(ring: &GradedAlgebra) -> RingReport {
    RingReport {
        dims_per_degree: ring.dims_per_degree(),
        total_dim: ring.total_dim(),
        basis: ring.basis_monomials().iter().map(|m| monomial_name(m)).collect(),
        generators: ring.basis(1).iter().map(|m| monomial_name(m)).collect(),
        relations_in_reduced_generators: relations(ring),
        poincare: ring.poincare_check(),
        core: ring.triangulation().core().one_based(),
        c_core_coords: ring.core_element(),
    }
}

#[cfg(test)]
mod tests {
    use crate::srring::tests::ring_t1;

    #[test]
    fn t1_report() {
        let r = ring_t1();
        let rep = r.report();
        assert_eq!(rep.total_dim, 5);
        assert_eq!(rep.generators.len(), 3);
        assert_eq!(rep.relations_in_reduced_generators.len(), 5);
        assert_eq!(rep.core, vec![4]);
        let json = serde_json::to_string(&rep).unwrap();
        let back: super::RingReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
    }
}

//! Integer double description: generators of `{x : a·x ≥ 0 for all a}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ExtremeRays;
use crate::exactla::{dot, primitive, IntMatrix};

fn combine(s: &BigInt, u: &[BigInt], t: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    primitive(&u.iter().zip(v).map(|(x, y)| s * x - t * y).collect::<Vec<_>>())
}

fn rank_of(rows: &[&Vec<BigInt>], dim: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = IntMatrix::from_big_rows(&rows.iter().map(|r| (*r).clone()).collect::<Vec<_>>(), dim);
    m.rank()
}

pub(super) fn double_description(dim: usize, constraints: &[Vec<BigInt>]) -> ExtremeRays {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut processed: Vec<Vec<BigInt>> = Vec::new();

    for a in constraints {
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(pos) = lineality.iter().position(|v| !dot(a, v).is_zero()) {
            let mut v = lineality.remove(pos);
            let mut av = dot(a, &v);
            if av.is_negative() {
                v = v.iter().map(|x| -x).collect();
                av = -av;
            }
            lineality = lineality
                .iter()
                .map(|u| {
                    let au = dot(a, u);
                    if au.is_zero() {
                        u.clone()
                    } else {
                        combine(&av, u, &au, &v)
                    }
                })
                .collect();
            rays = rays
                .iter()
                .map(|r| {
                    let ar = dot(a, r);
                    if ar.is_zero() {
                        r.clone()
                    } else {
                        combine(&av, r, &ar, &v)
                    }
                })
                .collect();
            rays.push(primitive(&v));
            processed.push(a.clone());
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
        let zero_sets: Vec<Vec<bool>> = rays
            .iter()
            .map(|r| processed.iter().map(|c| dot(c, r).is_zero()).collect())
            .collect();
        let target = (dim - lineality.len()).saturating_sub(2);
        let mut next: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        for (r, v) in rays.iter().zip(&vals) {
            if !v.is_negative() {
                next.insert(r.clone());
            }
        }
        for (i, p) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                continue;
            }
            for (j, n) in rays.iter().enumerate() {
                if !vals[j].is_negative() {
                    continue;
                }
                let common: Vec<&Vec<BigInt>> = processed
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| zero_sets[i][*k] && zero_sets[j][*k])
                    .map(|(_, c)| c)
                    .collect();
                if common.len() < target || rank_of(&common, dim) != target {
                    continue;
                }
                next.insert(combine(&vals[i], n, &vals[j], p));
            }
        }
        rays = next.into_iter().collect();
        processed.push(a.clone());
    }
    ExtremeRays::canonical(dim, rays, lineality)
}

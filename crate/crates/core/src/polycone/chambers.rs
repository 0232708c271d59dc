//! Chambers of a central hyperplane arrangement, labelled by sign vectors.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dd::double_description;
use crate::exactla::dot;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: &BigInt) -> Sign {
        if x.is_positive() {
            Sign::Pos
        } else if x.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

/// A sign vector such as `+++-++`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn negate(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.negate()).collect())
    }

    pub fn of_point(vectors: &[Vec<BigInt>], x: &[BigInt]) -> SignVector {
        SignVector(vectors.iter().map(|b| Sign::of(&dot(b, x))).collect())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

impl FromStr for SignVector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(Sign::Pos),
                '-' => Ok(Sign::Neg),
                '0' => Ok(Sign::Zero),
                other => Err(format!("bad sign character {other:?}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignVector)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An open chamber with an integer point strictly inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub signs: SignVector,
    #[serde(with = "crate::exactla::serial::int_vec")]
    pub witness: Vec<BigInt>,
}

/// Integer point `x` with `c·x > 0` for every constraint, if one exists.
fn strict_witness(dim: usize, constraints: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    let g = double_description(dim, constraints);
    let mut w = vec![BigInt::zero(); dim];
    for r in &g.rays {
        for (a, b) in w.iter_mut().zip(r) {
            *a += b;
        }
    }
    constraints.iter().all(|c| dot(c, &w).is_positive()).then_some(w)
}

/// All open chambers of the arrangement `{x : v·x = 0}` for `v` in `vectors`,
/// sorted by sign vector.
pub fn chambers(dim: usize, vectors: &[Vec<BigInt>]) -> Vec<Chamber> {
    let mut partial: Vec<(Vec<Sign>, Vec<Vec<BigInt>>)> = vec![(Vec::new(), Vec::new())];
    for v in vectors {
        let neg: Vec<BigInt> = v.iter().map(|x| -x).collect();
        partial = partial
            .into_par_iter()
            .flat_map_iter(|(signs, cons)| {
                [(Sign::Pos, v.clone()), (Sign::Neg, neg.clone())]
                    .into_iter()
                    .filter_map(move |(s, c)| {
                        let mut cons = cons.clone();
                        cons.push(c);
                        strict_witness(dim, &cons)?;
                        let mut signs = signs.clone();
                        signs.push(s);
                        Some((signs, cons))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out: Vec<Chamber> = partial
        .into_par_iter()
        .map(|(signs, cons)| Chamber {
            signs: SignVector(signs),
            witness: strict_witness(dim, &cons).expect("feasible chamber"),
        })
        .collect();
    out.sort_by(|a, b| a.signs.cmp(&b.signs));
    out
}

pub fn chamber_sign_vectors(dim: usize, vectors: &[Vec<BigInt>]) -> Vec<SignVector> {
    chambers(dim, vectors).into_iter().map(|c| c.signs).collect()
}

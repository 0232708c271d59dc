//! JSON encodings for exact values.
//!
//! Integers are written as decimal strings and rationals as `"p/q"` (or `"p"`
//! when the denominator is one). On input plain JSON integers are accepted too.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::IntMatrix;

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Str(String),
    Int(i64),
}

impl Scalar {
    fn into_int<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            Scalar::Int(i) => Ok(BigInt::from(i)),
            Scalar::Str(s) => BigInt::from_str(s.trim()).map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }

    fn into_rat<E: serde::de::Error>(self) -> Result<BigRational, E> {
        match self {
            Scalar::Int(i) => Ok(BigRational::from_integer(BigInt::from(i))),
            Scalar::Str(s) => parse_rational(&s).ok_or_else(|| E::custom(format!("bad rational {s:?}"))),
        }
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<Vec<Scalar>> = Vec::deserialize(d)?;
        let cols = raw.first().map_or(0, Vec::len);
        let mut rows = Vec::with_capacity(raw.len());
        for r in raw {
            if r.len() != cols {
                return Err(D::Error::custom("ragged matrix rows"));
            }
            rows.push(r.into_iter().map(Scalar::into_int).collect::<Result<Vec<_>, _>>()?);
        }
        Ok(IntMatrix::from_big_rows(&rows, cols))
    }
}

/// `#[serde(with = "int_vec")]` for `Vec<BigInt>`.
pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Scalar>::deserialize(d)?.into_iter().map(Scalar::into_int).collect()
    }
}

/// `#[serde(with = "int_vecs")]` for `Vec<Vec<BigInt>>`.
pub mod int_vecs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<Scalar>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(Scalar::into_int).collect())
            .collect()
    }
}

/// `#[serde(with = "rat_vec")]` for `Vec<BigRational>`.
pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<Scalar>::deserialize(d)?.into_iter().map(Scalar::into_rat).collect()
    }
}

/// `#[serde(with = "rat_vecs")]` for `Vec<Vec<BigRational>>`.
pub mod rat_vecs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(format_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigRational>>, D::Error> {
        Vec::<Vec<Scalar>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(Scalar::into_rat).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_json_uses_strings_and_round_trips() {
        let m = IntMatrix::from_rows(&[vec![1, -2], vec![30, 0]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1","-2"],["30","0"]]"#);
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let loose: IntMatrix = serde_json::from_str("[[1,-2],[30,0]]").unwrap();
        assert_eq!(loose, m);
    }

    #[test]
    fn rational_strings() {
        let x = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&x), "-3/2");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}

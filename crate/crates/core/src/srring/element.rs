use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactla::RatVector;

/// Element of `R_{A,T} ⊗ Q` in coordinates of the standard monomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlgebraElement(#[serde(with = "crate::exactla::serial::rat_vec")] pub RatVector);

impl AlgebraElement {
    pub fn new(coords: RatVector) -> Self {
        AlgebraElement(coords)
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &BigRational) -> AlgebraElement {
        AlgebraElement(self.0.iter().map(|a| a * c).collect())
    }

    pub fn scale_int(&self, c: i64) -> AlgebraElement {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }
}

//! Ring-valued Γ-series `Σ_λ Q_λ(c) v^{λ+c}` attached to a regular triangulation.
//!
//! Coefficients live in `R_{A,T}`; all operator checks are exact. Only
//! [`numeric`] touches floating point.

mod coeff;
pub mod numeric;
mod series;
mod verify;

pub use coeff::{
    coefficient_from_expansion, estimate_holds, expansion_bound, expansion_coefficients, gamma_coefficient,
    CoefficientEngine,
};
pub use numeric::{
    check_domain, complex_mul, deep_imaginary_part, deep_point, evaluate, evaluation_rank, exp_linear, functional_probe,
    ComplexRingElement, DomainCheck, Evaluation, FunctionalProbe, Precision,
};
pub use series::{
    build_series, enumerate_support, l1_norm, support_lemma_holds, Residual, SeriesRecord, TermRecord,
    TruncatedSeries,
};

pub use verify::{
    is_negative_core_combination, random_relations, verify_series, Check, Status, VerificationReport,
};

use thiserror::Error;

use crate::exactla::ExactLaError;
use crate::srring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("no integer solution of A·γ = β")]
    NoIntegerSolution,
    #[error("vector is not a relation among the columns")]
    NotInLattice,
    #[error("evaluation point lies outside the certified convergence domain")]
    OutsideDomain,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl From<ExactLaError> for SeriesError {
    fn from(e: ExactLaError) -> Self {
        match e {
            ExactLaError::DimensionMismatch { expected, got } => SeriesError::DimensionMismatch { expected, got },
            _ => SeriesError::NoIntegerSolution,
        }
    }
}

use thiserror::Error;

use crate::cvs::Variance;
use crate::opalg::OperatorKind;

/// Errors raised by the numeric kernel and the algebra built on top of it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {op} got {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is singular (pivot {pivot:e} below threshold)")]
    Singular { pivot: f64 },

    #[error("matrix is not hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("metric is degenerate: eigenvalue {eigenvalue:e} within zero threshold")]
    DegenerateMetric { eigenvalue: f64 },

    #[error("invalid matrix shape: {0}")]
    InvalidShape(String),

    #[error("wrong variance {got:?} for {op}")]
    WrongVariance { op: &'static str, got: Variance },

    #[error("variance mismatch in {op}: {left:?} against {right:?}")]
    VarianceMismatch {
        op: &'static str,
        left: Variance,
        right: Variance,
    },

    #[error("kind mismatch in {op}: {left:?} against {right:?}")]
    KindMismatch {
        op: &'static str,
        left: OperatorKind,
        right: OperatorKind,
    },

    #[error("operator kind {got:?} not allowed in {op}")]
    WrongKind { op: &'static str, got: OperatorKind },

    #[error("operator is not idempotent (max deviation {deviation:e})")]
    NotIdempotent { deviation: f64 },

    #[error("projector is not semi-hermitian (max deviation {deviation:e})")]
    NotSemiHermitian { deviation: f64 },

    #[error("metric is not diagonal with +-1 entries")]
    NotOrthonormalMetric,

    #[error("generator index ({i}, {j}) out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, dim: usize },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("equal weights j1 = j2 = {twice_j}/2: use build_rep_diag")]
    EqualWeights { twice_j: u32 },

    #[error("wrong representation shape: {0}")]
    WrongRepShape(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

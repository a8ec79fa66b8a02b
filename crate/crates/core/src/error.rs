//! Crate-wide error type.

use thiserror::Error;

use crate::orbit::OrbitReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: expected n = {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("index {i} out of range 0..={max}")]
    IndexOutOfRange { i: i64, max: usize },

    #[error("two-row label k = {k} out of range for n = {n} (need ceil(n/2) <= k <= n)")]
    TwoRowOutOfRange { n: usize, k: usize },

    #[error("partition {0} is not of two-row shape [k, n-k]")]
    NotTwoRow(String),

    #[error("tensor size n = {n} exceeds cap {cap}")]
    TensorCapExceeded { n: usize, cap: usize },

    #[error("operation requires even tensor size, got n = {0}")]
    OddTensorSize(usize),

    #[error("divisor shape has a multiplicity >= 2; no cycle-type model is defined there")]
    MultiplicityUnsupported,

    #[error("shape has total degree {shape_degree}, expected {expected}")]
    DegreeMismatch { shape_degree: usize, expected: usize },

    #[error("invalid zeta data: {0}")]
    InvalidZeta(String),

    #[error("invalid double cover: {0}")]
    InvalidCover(String),

    #[error("invalid curve config: {0}")]
    InvalidConfig(String),

    #[error("restriction failed: subspace is not invariant under the operator")]
    NotInvariant,

    #[error("spectrum of the restricted operator is not an integer multiset; char poly coeffs {0:?}")]
    NonIntegralSpectrum(Vec<String>),

    #[error("matrix class is not invertible")]
    NonInvertible,

    #[error("degenerate class: Tr(alpha * conj(beta)) = 0")]
    Degenerate,

    #[error("unsupported field size q = {q}: {reason}")]
    UnsupportedQ { q: u64, reason: String },

    #[error("orbit identity violated for shape {shape} at r = {r}")]
    IdentityViolation {
        shape: String,
        r: usize,
        report: Box<OrbitReport>,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

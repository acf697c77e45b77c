use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coin is not unitary (largest Gram deviation {deviation:.3e})")]
    NonUnitary { deviation: f64 },

    #[error("coin has a vanishing diagonal entry; its phases cannot be extracted")]
    DegenerateCoin,

    #[error("walk support reached the truncation guard band")]
    TruncationOverflow,

    #[error("Verblunsky coefficient {index} has modulus {modulus} >= 1")]
    InvalidVerblunsky { index: usize, modulus: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("characteristic roots coincide at z = {re}{im:+}i (band edge)")]
    DegenerateRoots { re: f64, im: f64 },

    #[error("no square-root branch gives a Caratheodory value at z = {re}{im:+}i")]
    BranchFailure { re: f64, im: f64 },

    #[error("Laurent polynomial evaluation underflowed")]
    Underflow,

    #[error("theta = {theta} lies outside the absolutely continuous band")]
    OutsideSupport { theta: f64 },

    #[error("no point mass at theta = {theta}")]
    NoAtom { theta: f64 },

    #[error("the spectral measure has no point masses")]
    NoAtoms,

    #[error("quadrature did not stabilise (last change {change:.3e})")]
    QuadratureNonconvergence { change: f64 },

    #[error("invalid initial state: {0}")]
    InvalidInitialState(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

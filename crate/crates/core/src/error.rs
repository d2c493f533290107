use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max |U U^dagger - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix has non-finite entries")]
    NotFinite,

    #[error("invalid density operator: {0}")]
    InvalidState(String),

    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("not a probability table: {0}")]
    NotAProbabilityTable(String),

    #[error("parameters do not describe a physical state: {0}")]
    NotPhysical(String),

    #[error("expected a two-qubit state, got dimension {0}")]
    NotTwoQubit(usize),

    #[error("vectors do not form an orthonormal basis: {0}")]
    NotOrthonormal(String),

    #[error("Pearson correlation undefined: {0}")]
    UndefinedPcc(String),

    #[error("numerical instability: {0}")]
    NumericalInstability(String),

    #[error("marginals are not maximally mixed; state is not in standard form")]
    NotStandardForm,

    #[error("state is not local-unitarily equivalent to a diagonal classical state: {0}")]
    NotClassicalForm(String),

    #[error("local Bloch vector has unit length (|n| = {n_norm}, |s| = {s_norm})")]
    SingularMarginal { n_norm: f64, s_norm: f64 },

    #[error("optimizer did not converge from any start within {max_iters} iterations")]
    NonConvergence { max_iters: usize },

    #[error("invalid state specification: {0}")]
    InvalidSpec(String),

    #[error("invalid option: {0}")]
    InvalidOption(String),
}

pub type Result<T> = std::result::Result<T, Error>;

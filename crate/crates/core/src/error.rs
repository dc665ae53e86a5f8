use thiserror::Error;

use crate::index::MultiIndex;

/// Errors raised by monomial-ideal arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("ideal is not m-primary (no pure power of variable {axis}); colength is infinite")]
    NotMPrimary { axis: usize },
    #[error("the zero ideal has no {0}")]
    ZeroIdeal(&'static str),
    #[error("colon by the zero ideal is rejected")]
    ColonByZero,
    #[error("exponent overflow")]
    Overflow,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// Errors raised while evaluating or certifying a filtration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiltrationError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("filtration needs at least one ideal")]
    Empty,
    #[error("expected a grading vector of arity {expected}, found {found}")]
    GradingArity { expected: usize, found: usize },
    #[error("ideal {index} is not m-primary")]
    NotMPrimary { index: usize },
    #[error("no stabilization inside the box: F(n+e_{axis}) != I_{axis}·F(n) at n = {at}")]
    NoStabilization { at: MultiIndex, axis: usize },
    #[error("stabilization box must be at least 2 in every coordinate, got {0}")]
    BoxTooSmall(MultiIndex),
    #[error("user table is missing the entry at {0}")]
    MissingTableEntry(MultiIndex),
}

/// Errors raised while fitting a Hilbert polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error("fitted polynomial disagrees with the Hilbert function at {at}: P = {polynomial}, H = {hilbert}")]
    VerificationFailed {
        at: MultiIndex,
        polynomial: i128,
        hilbert: i128,
    },
    #[error("coefficient e_{alpha} is not an integer ({value}); the fit grid is pre-asymptotic")]
    NonIntegral { alpha: MultiIndex, value: String },
    #[error("interpolation system is singular")]
    Singular,
    #[error("fitted polynomial has total degree below {0}")]
    DegreeDeficient(usize),
    #[error("mixed multiplicity e_{alpha} = {value} is not positive")]
    NonPositiveMultiplicity { alpha: MultiIndex, value: i64 },
    #[error("coefficient out of range")]
    Overflow,
}

/// Errors raised by the reduction module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error("candidate shape mismatch: {0}")]
    Shape(String),
    #[error("entry {entry} in row {row} is not in I_{row}")]
    NotInIdeal { row: usize, entry: String },
}

/// Errors raised while assembling a correspondence report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
}

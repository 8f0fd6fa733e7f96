use thiserror::Error;

use crate::lattice::LatticeVector;

/// Invalid discrete input data.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("no lattice length: zero vector")]
    NoLatticeLength,
    #[error("degree entry {index} is the zero vector")]
    ZeroEntry { index: usize },
    #[error("degree entries sum to {sum}, not zero")]
    NonZeroSum { sum: LatticeVector },
    #[error("descendant exponent k[{index}] = {value} is negative")]
    NegativeExponent { index: usize, value: i64 },
    #[error("balance equation violated: n - 1 + |delta| = {lhs} but 2n + sum(k) = {rhs}")]
    Balance { lhs: i64, rhs: i64 },
}

/// Misuse of the multiplicity functions.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MultiplicityError {
    #[error("vectors are not balanced: they sum to {sum}")]
    Unbalanced { sum: LatticeVector },
    #[error("need at least {min} vectors, got {got}")]
    TooFew { min: usize, got: usize },
    #[error("an unpointed trivalent vertex needs exactly 3 non-zero vectors, got {got}")]
    WrongArity { got: usize },
}

/// Failures of the counting pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CountError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("point configuration has {got} points, expected {expected}")]
    PointCount { expected: usize, got: usize },
    #[error("point configuration is not generic after {attempts} attempt(s): {diagnostics}")]
    NotGeneric { attempts: usize, diagnostics: String },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

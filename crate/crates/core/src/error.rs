use thiserror::Error;

use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building or solving a game.
///
/// Variants fall in two families: input validation failures, and internal
/// bound violations (a certified bound that the computation failed to honour).
/// [`Error::is_internal`] tells them apart.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] crate::format::ParseError),

    #[error("invalid game: {0}")]
    InvalidGame(#[from] crate::game::GameError),

    #[error("{multiple} is not a positive multiple of the game denominator {denominator}")]
    DenominatorMismatch { multiple: num_bigint::BigUint, denominator: num_bigint::BigUint },

    #[error("bit-size of a negative integer ({0}) is undefined")]
    NegativeBitsize(num_bigint::BigInt),

    #[error("division by zero")]
    DivisionByZero,

    #[error("discount factor {0} is outside (0, 1]")]
    DiscountOutOfRange(Rational),

    #[error("state {state} is outside 1..={states}")]
    StateOutOfRange { state: usize, states: usize },

    #[error("profile {0} does not fit the game's action sets")]
    InvalidProfile(String),

    #[error("matrix must be non-empty and rectangular")]
    MalformedMatrix,

    #[error("matrix of size {rows}x{cols} exceeds the limit {max}")]
    DimensionTooLarge { rows: usize, cols: usize, max: usize },

    #[error("precision must be at least {min} bits, got {got}")]
    PrecisionTooLow { got: u64, min: u64 },

    #[error("exact solvers need a game whose normalization is the identity map")]
    NotNormalized,

    #[error("tolerance must be positive")]
    NonPositiveTolerance,

    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,

    #[error("lattice basis is linearly dependent")]
    DependentBasis,

    #[error("polynomial {poly} has no real root near {near}")]
    NoRootNear { poly: String, near: String },

    #[error("simplex exceeded its pivot bound of {0}")]
    PivotBound(u128),

    #[error("value iteration did not settle within {0} iterations")]
    IterationCap(u64),

    #[error("algebraic reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("internal bound violated: {0}")]
    BoundViolation(String),
}

impl Error {
    /// True for failures that indicate a violated internal guarantee rather
    /// than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::PivotBound(_)
                | Error::IterationCap(_)
                | Error::Reconstruction(_)
                | Error::BoundViolation(_)
        )
    }
}

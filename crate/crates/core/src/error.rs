use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("log of zero")]
    LogOfZero,

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty series: every coefficient is zero")]
    EmptySeries,

    #[error("empty point set")]
    EmptyPointSet,

    #[error("derivative is zero polynomial")]
    ZeroDerivative,

    #[error("parameter out of supported range: {0}")]
    OutOfRange(String),

    #[error("profile not resolved: gap {gap} exceeds tolerance {tol}")]
    ProfileNotResolved { gap: f64, tol: f64 },

    #[error("convexity violated: {0}")]
    NonConvex(String),

    #[error("root set did not converge")]
    Unconverged,

    #[error("atom at the center: angle undefined")]
    AtomAtCenter,

    #[error("measures have unequal mass: {0} vs {1}")]
    UnequalMass(f64, f64),

    #[error("problem too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;

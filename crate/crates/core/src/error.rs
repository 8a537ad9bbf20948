use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value: {0}")]
    NonFinite(&'static str),

    #[error("invalid shape parameter w={w} for leash T={leash}: {reason}")]
    InvalidParams {
        w: f64,
        leash: f64,
        reason: &'static str,
    },

    #[error("arc length s={s} outside the domain [0, {limit}]")]
    OutOfDomain { s: f64, limit: f64 },

    #[error("argument {value} outside admissible range for {what}")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("polyline needs at least two distinct points")]
    TooFewPoints,

    #[error("duplicate consecutive polyline points at index {0}")]
    DuplicatePoint(usize),

    #[error("curve pieces do not join at piece {0}")]
    Disconnected(usize),

    #[error("corner turn {0} rad is degenerate (|turn| >= pi)")]
    DegenerateCorner(f64),

    #[error("cusp coincides with a corner at l={0}")]
    CuspAtCorner(f64),

    #[error("step rejected at l={l}: step size underflow")]
    StepRejected { l: f64 },

    #[error("leash went slack at l={l} before completing the period")]
    Slack { l: f64 },

    #[error("leash T={leash} violates the contraction bound T < {bound}")]
    ContractionBound { leash: f64, bound: f64 },

    #[error(
        "fixed-point iteration did not converge in {iterations} iterations (residual {residual})"
    )]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("curve is not periodic")]
    NotPeriodic,

    #[error("closed form overflowed at s={0}")]
    Overflow(f64),

    #[error("point coincides with the inversion center")]
    AtCenter,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

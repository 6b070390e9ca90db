use thiserror::Error;

/// Errors raised by space construction, norm evaluation and the theorem harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid transformation: {0}")]
    InvalidTransformation(String),

    /// A representation was combined with a space it does not live on.
    #[error("{what} is not defined on a {space} space")]
    SpaceMismatch { what: &'static str, space: &'static str },

    #[error("cannot evaluate {what} at {point}")]
    Evaluation { what: &'static str, point: String },

    #[error("eps = {eps} lies outside (0, {upper})")]
    EpsOutOfRange { eps: f64, upper: f64 },

    #[error("theta must be positive, got {0}")]
    InvalidTheta(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Doubling/halving from 1 left the representable range before the modular crossed 1.
    #[error("Luxemburg bracketing left [2^-1024, 2^1024]")]
    BracketOverflow,

    #[error("Luxemburg bisection did not reach rel_tol {rel_tol} within {iterations} iterations")]
    IterationCap { rel_tol: f64, iterations: usize },

    #[error("limit average unavailable: {0}")]
    LimitUnavailable(String),

    /// A theorem hypothesis failed; `check` names which one.
    #[error("hypothesis `{check}` failed: {detail}")]
    Hypothesis { check: HypothesisCheck, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisCheck {
    MeasurePreserving,
    ExponentInvariant,
}

impl std::fmt::Display for HypothesisCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HypothesisCheck::MeasurePreserving => "measure_preserving",
            HypothesisCheck::ExponentInvariant => "exponent_invariant",
        })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

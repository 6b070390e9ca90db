//! Variable-exponent and grand variable-exponent Lebesgue norms on probability
//! spaces, with Birkhoff averages and a harness that checks the ergodic theorem
//! in the grand space numerically.
//!
//! The main entry points are [`norms::luxemburg_norm`], [`norms::grand_norm`],
//! [`norms::vanishing_limit`], [`dynamics::birkhoff_average`] and
//! [`ergodic::verify_theorem`].

// NaN must fail validation, so `!(x > 0.0)` is intended.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod ergodic;
pub mod error;
pub mod extended;
pub mod norms;
pub mod quadrature;
pub mod random;
pub mod space;

pub use error::{Error, HypothesisCheck, Result};
pub use extended::ExtendedReal;
pub use quadrature::QuadratureSpec;
pub use space::{integrate, Exponent, ExponentKind, ExponentPiece, FunctionRep, Point, ProbabilitySpace};

//! Exact scalar arithmetic: arbitrary-precision rationals and power series in
//! the deformation parameter `z`, truncated at a fixed order.

mod rational;
mod series;

pub use rational::{parse_rational, rational_to_f64, Rational};
pub use series::{SeriesFunction, ZSeries};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("unknown series function `{0}`")]
    UnknownFunction(String),
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
}

/// Truncation order used when none is requested explicitly.
pub const DEFAULT_ORDER: usize = 6;

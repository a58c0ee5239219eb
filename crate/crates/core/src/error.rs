//! Error types shared across the crate.

use crate::numerics::{QuadResult, SeriesResult};
use thiserror::Error;

/// Everything that can go wrong while evaluating spectra, traces, or zeta routes.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature ran out of its evaluation budget. The best
    /// estimate obtained so far is carried along.
    #[error("quadrature budget exceeded (best estimate {:.6e} ± {:.3e} after {} evaluations)",
            best.value, best.abs_error_estimate, best.evaluations)]
    QuadBudget { best: QuadResult },

    /// Series summation ran out of its term budget before the tail bound
    /// fell below the requested tolerance.
    #[error("series budget exceeded (partial sum {:.6e}, tail bound {:.3e} after {} terms)",
            best.value, best.tail_bound, best.terms_used)]
    SeriesBudget { best: SeriesResult },

    /// An integrand produced a non-finite sample.
    #[error("non-finite integrand sample at t = {at:e}")]
    NonFiniteSample { at: f64 },

    /// Gamma function evaluated at a pole (non-positive integer).
    #[error("gamma function pole at s = {s}")]
    GammaPole { s: f64 },

    /// The continued zeta function has a simple pole at s = 1.
    #[error("zeta function pole at s = 1")]
    ZetaPole,

    /// The direct lattice sum only converges for Re(s) > 1.
    #[error("direct sum diverges for Re(s) = {re_s} <= 1")]
    DirectSumDiverges { re_s: f64 },
}

impl Error {
    /// True for budget-style failures (as opposed to domain errors).
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::QuadBudget { .. } | Error::SeriesBudget { .. })
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

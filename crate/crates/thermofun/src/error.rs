//! Error types shared across the library.

use thiserror::Error;

/// Errors produced by special-function and integral evaluation.
#[derive(Debug, Clone, Error)]
pub enum EvalError {
    /// Argument landed on (or within tolerance of) a gamma-function pole.
    #[error("gamma pole at or near {argument}")]
    Pole { argument: String },

    /// A series or quadrature failed to converge within its work budget.
    #[error("no convergence after {work} terms/levels (last residual {residual:e})")]
    NoConvergence { work: usize, residual: f64 },

    /// Input violates a stated domain condition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Pole chains coincide; the simple-pole residue series does not apply.
    #[error("coincident poles at {location} (multiplicity {multiplicity})")]
    CoincidentPoles { location: String, multiplicity: usize },

    /// No vertical line separates the left and right pole chains.
    #[error("no separating contour line (rightmost left pole {left}, leftmost right pole {right})")]
    NoSeparatingLine { left: f64, right: f64 },

    /// The two evaluation routes disagree beyond the requested tolerance.
    #[error("cross-check failed: closed-form {closed}, oracle {oracle}, relative discrepancy {discrepancy:e}")]
    CrossCheckFailed {
        closed: f64,
        oracle: f64,
        discrepancy: f64,
    },

    /// A closed form produced a negative value for a manifestly positive
    /// integrand. Carries the value so callers can inspect the magnitude.
    #[error("sign anomaly: closed form returned {value} for a positive integrand")]
    SignAnomaly { value: f64 },

    /// Successive series terms grew instead of shrinking.
    #[error("divergent series: terms grew for {terms} consecutive indices")]
    DivergentSeries { terms: usize },
}

pub type Result<T> = std::result::Result<T, EvalError>;

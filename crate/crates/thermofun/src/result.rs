//! Evaluation result carrier shared by the series, contour, and quadrature
//! evaluators.

use num_complex::Complex64;

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ResidueSeries,
    Contour,
    Quadrature,
    ClosedForm,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::ResidueSeries => "residue-series",
            Method::Contour => "contour",
            Method::Quadrature => "quadrature",
            Method::ClosedForm => "closed-form",
        };
        f.write_str(s)
    }
}

/// Value plus convergence metadata.
#[derive(Debug, Clone, Copy)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub method: Method,
    /// Terms summed or nodes evaluated.
    pub work: usize,
    pub converged: bool,
}

impl EvalResult {
    pub fn new(value: Complex64, err: f64, method: Method, work: usize, converged: bool) -> Self {
        EvalResult {
            value,
            abs_error_estimate: err,
            method,
            work,
            converged,
        }
    }

    pub fn real(value: f64, err: f64, method: Method, work: usize, converged: bool) -> Self {
        Self::new(Complex64::new(value, 0.0), err, method, work, converged)
    }

    /// Real part of the value; the thermonuclear functions are real for real
    /// parameters and any residual imaginary part is numerical noise.
    pub fn re(&self) -> f64 {
        self.value.re
    }
}

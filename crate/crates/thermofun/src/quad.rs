//! Double-exponential (tanh-sinh / exp-sinh) adaptive quadrature.
//!
//! This is the independent oracle the closed-form evaluators are checked
//! against. The integrands of interest decay essentially at both endpoints
//! (factors like exp[-y - z y^{-1/2}]), which the double-exponential family
//! handles without special weights.

use once_cell::sync::Lazy;

use crate::error::{EvalError, Result};
use crate::result::{EvalResult, Method};

/// Endpoint behaviour hints for an integrand on (0, d).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingularityHint {
    /// f(y) -> 0 as y -> 0 (e.g. essential decay from exp(-z y^{-rho})).
    DecaysAtZero,
    /// f(y) ~ y^e as y -> 0 with e > -1; handled by the node clustering.
    AlgebraicAtZero(f64),
}

/// Callable integrand on (0, d) with endpoint hints.
pub struct Integrand<'a> {
    f: &'a dyn Fn(f64) -> f64,
    pub hint: SingularityHint,
}

impl<'a> Integrand<'a> {
    pub fn new(f: &'a dyn Fn(f64) -> f64, hint: SingularityHint) -> Self {
        Integrand { f, hint }
    }

    #[inline]
    pub fn eval(&self, y: f64) -> f64 {
        (self.f)(y)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub max_levels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-12,
            max_levels: 12,
        }
    }
}

/// Exponent clamp: exp(x) underflows to an exact 0 below this, avoiding
/// 0 * inf products in integrand wrappers.
pub fn safe_exp(x: f64) -> f64 {
    if x < -745.0 {
        0.0
    } else {
        x.exp()
    }
}

const U_MAX: f64 = 6.9;
const MAX_TABLE_LEVELS: usize = 13;

struct Node {
    /// Abscissa on the unit interval (tanh-sinh), stored from the left edge.
    x01: f64,
    /// Weight on the unit interval.
    w01: f64,
    /// Abscissa for the exp-sinh map onto (0, inf).
    xe: f64,
    /// Weight for the exp-sinh map.
    we: f64,
}

/// Per-level node tables; level k holds only the nodes new at step h = 2^-k.
static TABLES: Lazy<Vec<Vec<Node>>> = Lazy::new(|| {
    let mut levels = Vec::with_capacity(MAX_TABLE_LEVELS);
    for level in 0..MAX_TABLE_LEVELS {
        let h = 0.5f64.powi(level as i32);
        let mut nodes = Vec::new();
        let mut j: u64 = if level == 0 { 0 } else { 1 };
        loop {
            let u = j as f64 * h;
            if u > U_MAX {
                break;
            }
            for &su in &[u, -u] {
                if su == 0.0 && j != 0 {
                    continue;
                }
                let s = std::f64::consts::FRAC_PI_2 * su.sinh();
                let ch = std::f64::consts::FRAC_PI_2 * su.cosh();
                // tanh-sinh on (0,1): x = 1/(1+e^{-2s}) computed from the
                // nearer endpoint to keep small abscissas exact.
                let e = safe_exp(-2.0 * s.abs());
                let x01 = if s < 0.0 { e / (1.0 + e) } else { 1.0 / (1.0 + e) };
                let w01 = 2.0 * ch * e / ((1.0 + e) * (1.0 + e));
                // exp-sinh on (0,inf): x = e^s, w = x * ch.
                let xe = safe_exp(s);
                let we = xe * ch;
                nodes.push(Node { x01, w01, xe, we });
                if su == 0.0 {
                    break;
                }
            }
            j += if level == 0 { 1 } else { 2 };
        }
        levels.push(nodes);
    }
    levels
});

fn refine<F: Fn(&Node) -> f64>(cfg: &QuadratureConfig, term: F) -> Result<EvalResult> {
    let max_levels = cfg.max_levels.min(MAX_TABLE_LEVELS);
    let mut sum = 0.0f64;
    let mut prev = f64::NAN;
    let mut work = 0usize;
    let mut err = f64::INFINITY;
    for level in 0..max_levels {
        let h = 0.5f64.powi(level as i32);
        let mut new = 0.0f64;
        for node in &TABLES[level] {
            let t = term(node);
            if t.is_finite() {
                new += t;
            }
            work += 1;
        }
        sum = if level == 0 { new } else { sum / 2.0 + h * new };
        if level >= 2 {
            err = (sum - prev).abs();
            let scale = sum.abs().max(f64::MIN_POSITIVE);
            if err <= cfg.rel_tol * scale {
                return Ok(EvalResult::real(sum, err, Method::Quadrature, work, true));
            }
        }
        prev = sum;
    }
    Err(EvalError::NoConvergence {
        work,
        residual: err,
    })
}

/// Tanh-sinh quadrature of f over (0, d), doubling the node density until two
/// successive levels agree within `rel_tol`.
pub fn integrate_finite(f: &Integrand, d: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(EvalError::Domain(format!("upper limit d={d} must be positive and finite")));
    }
    refine(cfg, |n| {
        let x = d * n.x01;
        if x <= 0.0 || x >= d {
            return 0.0;
        }
        d * n.w01 * f.eval(x)
    })
}

/// Exp-sinh quadrature of f over (0, inf); f must decay at infinity.
pub fn integrate_semiinfinite(f: &Integrand, cfg: &QuadratureConfig) -> Result<EvalResult> {
    refine(cfg, |n| {
        if n.xe <= 0.0 || !n.xe.is_finite() {
            return 0.0;
        }
        n.we * f.eval(n.xe)
    })
}

/// Quadrature of f over (d, inf) via the shift y = d + u.
pub fn integrate_from(f: &Integrand, d: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    refine(cfg, |n| {
        if n.xe <= 0.0 || !n.xe.is_finite() {
            return 0.0;
        }
        n.we * f.eval(d + n.xe)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn unit_constant() {
        let f = |_: f64| 1.0;
        let r = integrate_finite(&Integrand::new(&f, SingularityHint::AlgebraicAtZero(0.0)), 1.0, &cfg()).unwrap();
        assert!((r.re() - 1.0).abs() < 1e-12, "{}", r.re());
    }

    #[test]
    fn y_exp_minus_y_on_0_1() {
        // int_0^1 y e^-y dy = 1 - 2/e
        let f = |y: f64| y * (-y).exp();
        let r = integrate_finite(&Integrand::new(&f, SingularityHint::AlgebraicAtZero(1.0)), 1.0, &cfg()).unwrap();
        let exact = 1.0 - 2.0 * (-1.0f64).exp();
        assert!((r.re() - exact).abs() < 1e-12 * exact.abs());
    }

    #[test]
    fn exp_decay_semiinfinite() {
        let f = |y: f64| (-y).exp();
        let r = integrate_semiinfinite(&Integrand::new(&f, SingularityHint::AlgebraicAtZero(0.0)), &cfg()).unwrap();
        assert!((r.re() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_2_5_semiinfinite() {
        let f = |y: f64| y.powf(1.5) * (-y).exp();
        let r = integrate_semiinfinite(&Integrand::new(&f, SingularityHint::AlgebraicAtZero(1.5)), &cfg()).unwrap();
        let exact = 0.75 * std::f64::consts::PI.sqrt(); // Gamma(2.5)
        assert!((r.re() - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn split_additivity() {
        // I1 integrand, z=1, nu=2: (0,inf) = (0,d) + (d,inf)
        let f = |y: f64| y * safe_exp(-y - 1.0 / y.sqrt());
        let g = Integrand::new(&f, SingularityHint::DecaysAtZero);
        let whole = integrate_semiinfinite(&g, &cfg()).unwrap();
        let a = integrate_finite(&g, 2.0, &cfg()).unwrap();
        let b = integrate_from(&g, 2.0, &cfg()).unwrap();
        let err = whole.abs_error_estimate + a.abs_error_estimate + b.abs_error_estimate;
        assert!((whole.re() - a.re() - b.re()).abs() <= 10.0 * err.max(1e-13));
    }

    #[test]
    fn frozen_fixture_integrals() {
        use crate::fixtures;
        // int_0^2 y^{1/2} exp(-y - y^{-1/2}) dy
        let f = |y: f64| y.sqrt() * safe_exp(-y - 1.0 / y.sqrt());
        let r = integrate_finite(&Integrand::new(&f, SingularityHint::DecaysAtZero), 2.0, &cfg()).unwrap();
        assert!((r.re() - fixtures::QUAD_SQRT_EXP_D2).abs() < 1e-12 * fixtures::QUAD_SQRT_EXP_D2);
        // int_0^inf exp(-y - 1/y) dy = 2 K_1(2)
        let g = |y: f64| safe_exp(-y - 1.0 / y);
        let r = integrate_semiinfinite(&Integrand::new(&g, SingularityHint::DecaysAtZero), &cfg()).unwrap();
        assert!((r.re() - fixtures::QUAD_EXP_Y_INV_Y).abs() < 1e-12 * fixtures::QUAD_EXP_Y_INV_Y);
    }

    #[test]
    fn nonconvergence_reported() {
        // A nasty oscillatory integrand the DE rule cannot settle at tight tol.
        let f = |y: f64| (1e6 * y).sin() / (1.0 + y * y);
        let cfg = QuadratureConfig {
            rel_tol: 1e-14,
            max_levels: 5,
        };
        let r = integrate_finite(&Integrand::new(&f, SingularityHint::AlgebraicAtZero(0.0)), 1.0, &cfg);
        assert!(matches!(r, Err(EvalError::NoConvergence { .. })));
    }
}

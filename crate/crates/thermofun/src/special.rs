//! Complex gamma machinery and confluent hypergeometric functions.

use num_complex::Complex64;

use crate::error::{EvalError, Result};
use crate::quad::{self, Integrand, QuadratureConfig, SingularityHint};
use crate::result::{EvalResult, Method};

pub const LN_2PI_HALF: f64 = 0.918938533204672741780329736406; // ln(2*pi)/2

/// Stirling coefficients B_{2n} / (2n (2n-1)).
const STIRLING: [f64; 10] = [
    8.333333333333333e-2,
    -2.777777777777778e-3,
    7.936507936507937e-4,
    -5.952380952380953e-4,
    8.417508417508418e-4,
    -1.917526917526918e-3,
    6.410256410256410e-3,
    -2.955065359477124e-2,
    1.796443723688306e-1,
    -1.392432216905901,
];

fn near_nonpositive_integer(z: Complex64, tol: f64) -> bool {
    if z.re > 0.5 {
        return false;
    }
    let n = z.re.round();
    n <= 0.0 && (z.re - n).abs() <= tol && z.im.abs() <= tol
}

/// log(sin(pi z)) computed from the nearer exponential to avoid overflow for
/// large |Im z|. Branch is consistent under exp().
fn log_sin_pi(z: Complex64) -> Complex64 {
    let w = Complex64::new(std::f64::consts::PI, 0.0) * z;
    if w.im >= 0.0 {
        // sin w = e^{-iw} (e^{2iw} - 1) / (2i)
        let e = (Complex64::i() * w * 2.0).exp();
        -Complex64::i() * w + (Complex64::new(0.0, 0.5) * (Complex64::new(1.0, 0.0) - e)).ln()
    } else {
        log_sin_pi(z.conj()).conj()
    }
}

/// Principal-branch log Gamma by argument-shifted Stirling with reflection
/// for Re z < 0.5. No pole check; callers that need one use [`log_gamma`].
pub fn log_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
        let lnpi = Complex64::new(std::f64::consts::PI.ln(), 0.0);
        return lnpi - log_sin_pi(z) - log_gamma_unchecked(Complex64::new(1.0, 0.0) - z);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm_sqr() < 144.0 {
        shift += w.ln();
        w += 1.0;
    }
    let mut series = Complex64::new(0.0, 0.0);
    let w2 = w * w;
    let mut p = w;
    for c in STIRLING {
        series += c / p;
        p *= w2;
    }
    (w - 0.5) * w.ln() - w + LN_2PI_HALF + series - shift
}

/// Principal-branch log Gamma(z), rejecting arguments within 1e-14 of a
/// non-positive integer.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if near_nonpositive_integer(z, 1e-14) {
        return Err(EvalError::Pole {
            argument: format!("{z}"),
        });
    }
    Ok(log_gamma_unchecked(z))
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// Right-hand side of the Gauss multiplication formula:
/// (2 pi)^{(1-m)/2} m^{mz-1/2} Gamma(z) Gamma(z+1/m) ... Gamma(z+(m-1)/m).
pub fn gauss_multiply(z: Complex64, m: u32) -> Result<Complex64> {
    if m == 0 {
        return Err(EvalError::Domain("m must be a positive integer".into()));
    }
    let mf = m as f64;
    if near_nonpositive_integer(z * mf, 1e-14) {
        return Err(EvalError::Pole {
            argument: format!("{}", z * mf),
        });
    }
    let mut log = Complex64::new(
        (1.0 - mf) / 2.0 * (2.0 * std::f64::consts::PI).ln(),
        0.0,
    );
    log += (mf * z - 0.5) * mf.ln();
    for j in 0..m {
        log += log_gamma(z + j as f64 / mf)?;
    }
    Ok(log.exp())
}

/// Parameters for the confluent hypergeometric series.
#[derive(Debug, Clone, Copy)]
pub struct GammaSeriesParams {
    pub a: Complex64,
    pub c: Complex64,
    pub z: Complex64,
    pub tol: f64,
    pub max_terms: usize,
}

impl GammaSeriesParams {
    pub fn new(a: Complex64, c: Complex64, z: Complex64) -> Self {
        GammaSeriesParams {
            a,
            c,
            z,
            tol: 1e-14,
            max_terms: 10_000,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(EvalError::Domain(format!("tol {} outside (0,1)", self.tol)));
        }
        if self.max_terms == 0 {
            return Err(EvalError::Domain("max_terms must be >= 1".into()));
        }
        Ok(())
    }
}

/// Kummer's confluent hypergeometric function Phi(a, c; z) by its power
/// series, terminated once three consecutive terms fall below the relative
/// tolerance.
pub fn kummer_phi(p: &GammaSeriesParams) -> Result<EvalResult> {
    p.validate()?;
    if near_nonpositive_integer(p.c, 1e-14) {
        return Err(EvalError::Pole {
            argument: format!("{}", p.c),
        });
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0usize;
    for r in 0..p.max_terms {
        let rf = r as f64;
        term *= (p.a + rf) * p.z / ((p.c + rf) * (rf + 1.0));
        sum += term;
        if term.norm() < p.tol * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok(EvalResult::new(
                    sum,
                    term.norm(),
                    Method::ResidueSeries,
                    r + 1,
                    true,
                ));
            }
        } else {
            small = 0;
        }
    }
    Err(EvalError::NoConvergence {
        work: p.max_terms,
        residual: term.norm(),
    })
}

fn is_near_integer(z: Complex64, tol: f64) -> bool {
    (z.re - z.re.round()).abs() <= tol && z.im.abs() <= tol
}

/// Tricomi's confluent function Psi(a, c; z) via the two-Phi combination for
/// non-integer c.
pub fn tricomi_psi_series(p: &GammaSeriesParams) -> Result<EvalResult> {
    p.validate()?;
    if is_near_integer(p.c, 1e-10) {
        return Err(EvalError::Domain(format!(
            "Psi series form needs non-integer c, got {}",
            p.c
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let phi1 = kummer_phi(p)?;
    let p2 = GammaSeriesParams {
        a: p.a - p.c + one,
        c: 2.0 * one - p.c,
        ..*p
    };
    let phi2 = kummer_phi(&p2)?;
    let c1 = (log_gamma(one - p.c)? - log_gamma(p.a - p.c + one)?).exp();
    let c2 = (log_gamma(p.c - one)? - log_gamma(p.a)?).exp();
    let zpow = ((one - p.c) * p.z.ln()).exp();
    let value = c1 * phi1.value + c2 * zpow * phi2.value;
    let err = c1.norm() * phi1.abs_error_estimate + (c2 * zpow).norm() * phi2.abs_error_estimate;
    Ok(EvalResult::new(
        value,
        err,
        Method::ResidueSeries,
        phi1.work + phi2.work,
        true,
    ))
}

/// Psi(a, c; z) by the integral representation
/// (1/Gamma(a)) int_0^inf x^{a-1} e^{-zx} (1+x)^{c-a-1} dx, for real
/// parameters with a > 0, z > 0.
pub fn tricomi_psi_integral(p: &GammaSeriesParams) -> Result<EvalResult> {
    p.validate()?;
    if p.a.im.abs() > 1e-13 || p.c.im.abs() > 1e-13 || p.z.im.abs() > 1e-13 {
        return Err(EvalError::Domain(
            "Psi integral route implemented for real parameters only".into(),
        ));
    }
    let (a, c, z) = (p.a.re, p.c.re, p.z.re);
    if !(a > 0.0 && z > 0.0) {
        return Err(EvalError::Domain(format!(
            "Psi integral route needs a > 0 and z > 0, got a={a}, z={z}"
        )));
    }
    let f = move |x: f64| x.powf(a - 1.0) * quad::safe_exp(-z * x) * (1.0 + x).powf(c - a - 1.0);
    let integrand = Integrand::new(&f, SingularityHint::AlgebraicAtZero(a - 1.0));
    let cfg = QuadratureConfig::default();
    let q = quad::integrate_semiinfinite(&integrand, &cfg)?;
    let ga = log_gamma(Complex64::new(a, 0.0))?.exp();
    Ok(EvalResult::new(
        q.value / ga,
        q.abs_error_estimate / ga.norm(),
        Method::Quadrature,
        q.work,
        q.converged,
    ))
}

/// Psi(a, c; z): series route when c is non-integer, integral route
/// otherwise.
pub fn tricomi_psi(p: &GammaSeriesParams) -> Result<EvalResult> {
    if !is_near_integer(p.c, 1e-10) {
        tricomi_psi_series(p)
    } else {
        tricomi_psi_integral(p)
    }
}

/// int_0^d e^{-a y} y^{nu-1} dy by the factorial series for finite d, the
/// closed form Gamma(nu)/a^nu for d = inf.
pub fn lower_incomplete_gamma_series(
    nu: Complex64,
    a: Complex64,
    d: f64,
) -> Result<EvalResult> {
    if nu.re <= 0.0 {
        return Err(EvalError::Domain(format!("Re(nu) = {} must be > 0", nu.re)));
    }
    if a.re <= 0.0 {
        return Err(EvalError::Domain(format!("Re(a) = {} must be > 0", a.re)));
    }
    if d.is_infinite() {
        let v = (log_gamma(nu)? - nu * a.ln()).exp();
        return Ok(EvalResult::new(v, v.norm() * 1e-15, Method::ClosedForm, 1, true));
    }
    if !(d > 0.0) {
        return Err(EvalError::Domain(format!("d = {d} must be positive")));
    }
    if (a * d).norm() > 30.0 {
        // Kummer-transformed form of the same series, all terms positive for
        // real inputs: d^nu e^{-ad} sum_r (ad)^r / (nu (nu+1) ... (nu+r)).
        // The alternating form loses all significance once a d is large.
        let mut term = Complex64::new(1.0, 0.0) / nu;
        let mut sum = term;
        for r in 0..10_000usize {
            term *= a * d / (nu + (r + 1) as f64);
            sum += term;
            if term.norm() < 1e-16 * sum.norm() {
                let v = (nu * Complex64::new(d, 0.0).ln() - a * d).exp() * sum;
                return Ok(EvalResult::new(
                    v,
                    term.norm(),
                    Method::ResidueSeries,
                    r + 1,
                    true,
                ));
            }
        }
        return Err(EvalError::NoConvergence {
            work: 10_000,
            residual: term.norm(),
        });
    }
    // d^nu sum_r (-a d)^r / ((nu + r) r!)
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term / nu;
    let mut small = 0usize;
    let max_terms = 10_000usize;
    for r in 0..max_terms {
        let rf = r as f64;
        term *= -a * d / (rf + 1.0);
        let contrib = term / (nu + rf + 1.0);
        sum += contrib;
        if contrib.norm() < 1e-15 * sum.norm() {
            small += 1;
            if small >= 3 {
                let v = (nu * Complex64::new(d, 0.0).ln()).exp() * sum;
                return Ok(EvalResult::new(
                    v,
                    contrib.norm(),
                    Method::ResidueSeries,
                    r + 1,
                    true,
                ));
            }
        } else {
            small = 0;
        }
    }
    Err(EvalError::NoConvergence {
        work: max_terms,
        residual: term.norm(),
    })
}

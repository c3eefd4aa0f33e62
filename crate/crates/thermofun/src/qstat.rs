//! Tsallis nonextensive statistics: the entropy S_q, the q-deformed
//! logarithm/exponential pair, escort means, q-weights, and the
//! q-generalised reaction-rate integrand connecting the cut-off (q < 1) and
//! depleted (q > 1) energy distributions to the I2 and I4 families.
//!
//! Eq-4-style weights are self-consistent (the probabilities appear on both
//! sides through beta_q and U_q); this module evaluates the weight for an
//! externally supplied U_q and does not solve the fixed point.

use crate::error::{EvalError, Result};
use crate::quad::{integrate_finite, integrate_semiinfinite, safe_exp, Integrand, QuadratureConfig, SingularityHint};
use crate::result::EvalResult;

/// Width of the q = 1 limit branch.
const Q_ONE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct QStatParams {
    pub q: f64,
    /// Boltzmann constant; defaults to 1.
    pub k: f64,
    /// Inverse temperature beta = 1/kT.
    pub beta: f64,
    pub probabilities: Vec<f64>,
    pub energies: Vec<f64>,
}

impl QStatParams {
    pub fn new(q: f64, probabilities: Vec<f64>, energies: Vec<f64>) -> Result<Self> {
        let p = QStatParams {
            q,
            k: 1.0,
            beta: 1.0,
            probabilities,
            energies,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.probabilities.is_empty() || self.probabilities.len() != self.energies.len() {
            return Err(EvalError::Domain(
                "probability and energy vectors must be non-empty and of equal length".into(),
            ));
        }
        if !(self.k > 0.0) || !(self.beta > 0.0) {
            return Err(EvalError::Domain(format!(
                "k={} and beta={} must be positive",
                self.k, self.beta
            )));
        }
        if self.probabilities.iter().any(|&p| !(p >= 0.0)) {
            return Err(EvalError::Domain("probabilities must be non-negative".into()));
        }
        let total: f64 = self.probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(EvalError::Domain(format!(
                "probabilities sum to {total}, expected 1 within 1e-12"
            )));
        }
        Ok(())
    }

    fn sum_p_pow_q(&self) -> f64 {
        self.probabilities
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p.powf(self.q))
            .sum()
    }
}

/// S_q = k (1 - sum p_i^q)/(q - 1), Shannon at q = 1 (0 ln 0 := 0).
pub fn tsallis_entropy(params: &QStatParams) -> Result<f64> {
    params.validate()?;
    if (params.q - 1.0).abs() < Q_ONE_TOL {
        let s: f64 = params
            .probabilities
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.ln())
            .sum();
        return Ok(params.k * s);
    }
    Ok(params.k * (1.0 - params.sum_p_pow_q()) / (params.q - 1.0))
}

/// ln_q W = (W^{1-q} - 1)/(1 - q), with the q = 1 limit ln W.
pub fn ln_q(w: f64, q: f64) -> Result<f64> {
    if !(w > 0.0) {
        return Err(EvalError::Domain(format!("ln_q requires W>0, got {w}")));
    }
    if (q - 1.0).abs() < Q_ONE_TOL {
        return Ok(w.ln());
    }
    Ok((w.powf(1.0 - q) - 1.0) / (1.0 - q))
}

/// e_q^x = [1 + (1-q) x]^{1/(1-q)}; 0 in the q < 1 cut-off region; e^x at
/// q = 1. For q > 1 the same boundary is a divergence and errors instead.
pub fn exp_q(x: f64, q: f64) -> Result<f64> {
    if (q - 1.0).abs() < Q_ONE_TOL {
        return Ok(safe_exp(x));
    }
    let base = 1.0 + (1.0 - q) * x;
    if base <= 0.0 {
        if q < 1.0 {
            return Ok(0.0);
        }
        return Err(EvalError::Domain(format!(
            "exp_q divergence boundary: 1+(1-q)x = {base} <= 0 with q={q} > 1"
        )));
    }
    Ok(base.powf(1.0 / (1.0 - q)))
}

/// Escort mean U_q = sum p_i^q E_i / sum p_j^q.
pub fn escort_mean(params: &QStatParams) -> Result<f64> {
    params.validate()?;
    let denom = params.sum_p_pow_q();
    if !(denom > 0.0) {
        return Err(EvalError::Domain("escort denominator sum p^q vanished".into()));
    }
    let num: f64 = params
        .probabilities
        .iter()
        .zip(&params.energies)
        .filter(|(&p, _)| p > 0.0)
        .map(|(&p, &e)| p.powf(params.q) * e)
        .sum();
    Ok(num / denom)
}

/// Normalised q-weights p_i = e_q^{-beta_q (E_i - U_q)} / Z_q with
/// beta_q = beta / sum p_j^q; sums to 1 by construction.
pub fn q_weights(params: &QStatParams, u_q: f64) -> Result<Vec<f64>> {
    params.validate()?;
    let denom = params.sum_p_pow_q();
    if !(denom > 0.0) {
        return Err(EvalError::Domain("beta_q denominator sum p^q vanished".into()));
    }
    let beta_q = params.beta / denom;
    let mut w = Vec::with_capacity(params.energies.len());
    for &e in &params.energies {
        w.push(exp_q(-beta_q * (e - u_q), params.q)?);
    }
    let z: f64 = w.iter().sum();
    if !(z > 0.0) {
        return Err(EvalError::Domain(
            "all q-weights fell in the cut-off region; partition sum vanished".into(),
        ));
    }
    for v in &mut w {
        *v /= z;
    }
    Ok(w)
}

/// Tail classification of the energy distribution by q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailClass {
    /// q > 1: "depleted" family, the I4 structure.
    PowerLawTail,
    /// q = 1: Boltzmann-Gibbs, the I1/I3 structure.
    Exponential,
    /// q < 1: "cut-off" family, the I2 structure.
    CutOff,
}

pub fn classify_tail(q: f64) -> TailClass {
    if (q - 1.0).abs() < Q_ONE_TOL {
        TailClass::Exponential
    } else if q > 1.0 {
        TailClass::PowerLawTail
    } else {
        TailClass::CutOff
    }
}

/// Parameters of the q-generalised rate integrand
/// y^{nu-1} e_q^{-y} exp(-z y^{-1/2}).
///
/// For q = 1 this is exactly the I1 integrand; for q < 1 the q-exponential
/// truncates the support at y_cut = 1/(1-q) (an I2-type cut-off); for q > 1
/// the tail decays like y^{-1/(q-1)}, so normalisability requires
/// nu < 1/(q-1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QRateIntegrand {
    pub nu: f64,
    pub z: f64,
    pub q: f64,
}

impl QRateIntegrand {
    /// `z = 0` is admitted as the Gamow-free limit.
    pub fn new(nu: f64, z: f64, q: f64) -> Result<Self> {
        if !(nu > 0.0) || z < 0.0 {
            return Err(EvalError::Domain(format!(
                "q-rate requires nu>0 and z>=0, got nu={nu} z={z}"
            )));
        }
        if q > 1.0 + Q_ONE_TOL && nu >= 1.0 / (q - 1.0) {
            return Err(EvalError::Domain(format!(
                "q-rate integrand not normalisable: nu={nu} >= 1/(q-1)={}",
                1.0 / (q - 1.0)
            )));
        }
        Ok(QRateIntegrand { nu, z, q })
    }

    /// Upper support limit: finite only in the cut-off regime.
    pub fn y_cut(&self) -> Option<f64> {
        if self.q < 1.0 - Q_ONE_TOL {
            Some(1.0 / (1.0 - self.q))
        } else {
            None
        }
    }

    pub fn eval(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        let gamow = if self.z > 0.0 { self.z / y.sqrt() } else { 0.0 };
        // exp_q(-y) cannot hit the q>1 divergence boundary for y > 0.
        let eq = exp_q(-y, self.q).unwrap_or(0.0);
        eq * safe_exp((self.nu - 1.0) * y.ln() - gamow)
    }
}

/// The q-generalised rate: quadrature of the integrand over its support.
pub fn q_rate(p: &QRateIntegrand, cfg: &QuadratureConfig) -> Result<EvalResult> {
    let f = |y: f64| p.eval(y);
    let hint = if p.z > 0.0 {
        SingularityHint::DecaysAtZero
    } else {
        SingularityHint::AlgebraicAtZero(p.nu - 1.0)
    };
    let g = Integrand::new(&f, hint);
    match p.y_cut() {
        Some(d) => integrate_finite(&g, d, cfg),
        None => integrate_semiinfinite(&g, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn uniform(w: usize) -> QStatParams {
        QStatParams::new(1.0, vec![1.0 / w as f64; w], vec![0.0; w]).unwrap()
    }

    #[test]
    fn entropy_trivia() {
        let mut p = QStatParams::new(2.0, vec![1.0, 0.0, 0.0], vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(tsallis_entropy(&p).unwrap(), 0.0);
        p.q = 0.3;
        assert_eq!(tsallis_entropy(&p).unwrap(), 0.0);

        let mut u = uniform(4);
        assert!((tsallis_entropy(&u).unwrap() - 4.0f64.ln()).abs() < 1e-14);
        u.q = 2.0;
        assert!((tsallis_entropy(&u).unwrap() - 0.75).abs() < 1e-14);
    }

    #[test]
    fn entropy_continuity_at_one() {
        let p = vec![0.5, 0.2, 0.2, 0.05, 0.05];
        let e = vec![0.0; 5];
        let shannon: f64 = p.iter().map(|&x: &f64| -x * x.ln()).sum();
        for q in [1.0 - 1e-6, 1.0 + 1e-6] {
            let params = QStatParams::new(q, p.clone(), e.clone()).unwrap();
            assert!((tsallis_entropy(&params).unwrap() - shannon).abs() <= 1e-5);
        }
    }

    #[test]
    fn ln_q_values() {
        assert_eq!(ln_q(1.0, 0.3).unwrap(), 0.0);
        assert!((ln_q(std::f64::consts::E, 1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((ln_q(4.0, 0.5).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn uniform_identity_as_composed() {
        for w in 2..=10usize {
            for q in [0.5, 0.9, 1.0, 1.1, 2.0] {
                let mut u = uniform(w);
                u.q = q;
                let s = tsallis_entropy(&u).unwrap();
                let l = ln_q(w as f64, q).unwrap();
                assert!(
                    (s - l).abs() <= 1e-12 * l.abs().max(1.0),
                    "W={w} q={q}: S={s} ln_q={l}"
                );
            }
        }
    }

    #[test]
    fn exp_q_branches() {
        assert_eq!(exp_q(0.0, 0.3).unwrap(), 1.0);
        assert!((exp_q(-2.0, 1.0).unwrap() - (-2.0f64).exp()).abs() < 1e-14);
        assert!((exp_q(-1.0, 0.5).unwrap() - 0.25).abs() < 1e-14);
        // support boundary for q=0.5 sits at x=-2
        assert_eq!(exp_q(-2.1, 0.5).unwrap(), 0.0);
        assert_eq!(exp_q(-3.0, 0.5).unwrap(), 0.0);
        assert!(exp_q(1.5, 2.0).is_err());
    }

    #[test]
    fn exp_q_matches_exp_near_one() {
        let mut x = -20.0;
        while x <= 5.0 {
            let e = exp_q(x, 1.0).unwrap();
            assert!((e - x.exp()).abs() <= 1e-12 * x.exp());
            x += 1.3;
        }
    }

    #[test]
    fn escort_mean_cases() {
        let p = QStatParams::new(1.0, vec![0.3, 0.7], vec![1.0, 2.0]).unwrap();
        assert!((escort_mean(&p).unwrap() - 1.7).abs() < 1e-14);
        let p = QStatParams::new(3.0, vec![1.0, 0.0], vec![5.0, 99.0]).unwrap();
        assert_eq!(escort_mean(&p).unwrap(), 5.0);
        let p = QStatParams::new(2.0, vec![0.5, 0.5], vec![0.0, 1.0]).unwrap();
        assert!((escort_mean(&p).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn q_weights_boltzmann_limit() {
        let p = QStatParams::new(1.0, vec![0.5, 0.5], vec![0.0, 1.0]).unwrap();
        let w = q_weights(&p, 0.0).unwrap();
        let z = 1.0 + (-1.0f64).exp();
        assert!((w[0] - 1.0 / z).abs() < 1e-14);
        assert!((w[1] - (-1.0f64).exp() / z).abs() < 1e-14);
    }

    #[test]
    fn q_weights_cutoff_states() {
        // beta_q = 1/sum p^q = 1/(2*sqrt(0.5)); far states fall past the cut
        let p = QStatParams::new(0.5, vec![0.5, 0.5], vec![0.0, 10.0]).unwrap();
        let w = q_weights(&p, 0.0).unwrap();
        assert_eq!(w[1], 0.0);
        assert!((w[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn tail_classes() {
        assert_eq!(classify_tail(1.0), TailClass::Exponential);
        assert_eq!(classify_tail(0.9), TailClass::CutOff);
        assert_eq!(classify_tail(1.1), TailClass::PowerLawTail);
    }

    #[test]
    fn q_rate_matches_i1_at_q_one() {
        let p = QRateIntegrand::new(2.0, 1.0, 1.0).unwrap();
        let r = q_rate(&p, &QuadratureConfig::default()).unwrap();
        assert!((r.re() - fixtures::I1_Z1_NU2).abs() < 1e-10);
    }

    #[test]
    fn q_rate_polynomial_case() {
        // q=0.5, z=0, nu=2: int_0^2 y (1-y/2)^2 dy = 4 B(2,3) = 1/3
        let p = QRateIntegrand::new(2.0, 0.0, 0.5).unwrap();
        let r = q_rate(&p, &QuadratureConfig::default()).unwrap();
        assert!((r.re() - 1.0 / 3.0).abs() < 1e-10, "{}", r.re());
    }

    #[test]
    fn q_rate_cutoff_fixture() {
        let p = QRateIntegrand::new(2.0, 1.0, 0.9).unwrap();
        let r = q_rate(&p, &QuadratureConfig::default()).unwrap();
        assert!(
            (r.re() - fixtures::QRATE_NU2_Z1_Q09).abs() < 1e-10,
            "{}",
            r.re()
        );
    }

    #[test]
    fn q_rate_rejects_non_normalisable() {
        assert!(QRateIntegrand::new(2.0, 1.0, 1.6).is_err());
        assert!(QRateIntegrand::new(2.0, 1.0, 1.4).is_ok());
    }

    proptest! {
        #[test]
        fn entropy_non_negative(probs in proptest::collection::vec(0.0f64..1.0, 1..16), q in 0.1f64..3.0) {
            let total: f64 = probs.iter().sum();
            prop_assume!(total > 1e-6);
            let probs: Vec<f64> = probs.iter().map(|p| p / total).collect();
            let n = probs.len();
            let params = QStatParams { q, k: 1.0, beta: 1.0, probabilities: probs, energies: vec![0.0; n] };
            prop_assume!(params.validate().is_ok());
            let s = tsallis_entropy(&params).unwrap();
            prop_assert!(s >= -1e-12);
        }

        #[test]
        fn q_weights_are_probabilities(
            energies in proptest::collection::vec(-3.0f64..3.0, 2..8),
            q in 0.3f64..1.8,
        ) {
            let n = energies.len();
            let params = QStatParams {
                q, k: 1.0, beta: 1.0,
                probabilities: vec![1.0 / n as f64; n],
                energies,
            };
            let u = escort_mean(&params).unwrap();
            if let Ok(w) = q_weights(&params, u) {
                let total: f64 = w.iter().sum();
                prop_assert!((total - 1.0).abs() < 1e-12);
                prop_assert!(w.iter().all(|&x| x >= 0.0));
            }
        }
    }
}

//! Python bindings for the thermofun library: the four thermonuclear
//! functions, the general integral, the Kraetzel kernel, and the Tsallis
//! q-statistics helpers. Each evaluation returns a dict mirroring the CLI's
//! output record: value, abs_err, method, work, converged.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use thermofun::quad::QuadratureConfig;
use thermofun::thermo::{self, EvalMode, ThermoRequest};
use thermofun::{qstat, EvalResult};

fn mode_from(mode: &str, rtol: f64) -> PyResult<EvalMode> {
    match mode {
        "closed" => Ok(EvalMode::ClosedForm),
        "oracle" => Ok(EvalMode::Oracle),
        "crosscheck" => Ok(EvalMode::CrossCheck(rtol)),
        other => Err(PyValueError::new_err(format!(
            "mode '{other}' is not closed|oracle|crosscheck"
        ))),
    }
}

fn to_dict<'py>(py: Python<'py>, r: EvalResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new_bound(py);
    d.set_item("value", r.re())?;
    d.set_item("abs_err", r.abs_error_estimate)?;
    d.set_item("method", r.method.to_string())?;
    d.set_item("work", r.work)?;
    d.set_item("converged", r.converged)?;
    Ok(d)
}

fn run<'py>(py: Python<'py>, req: ThermoRequest, mode: &str, rtol: f64) -> PyResult<Bound<'py, PyDict>> {
    let mode = mode_from(mode, rtol)?;
    let r = thermo::eval(&req, mode).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_dict(py, r)
}

#[pyfunction]
#[pyo3(signature = (z, nu, mode="closed", rtol=1e-8))]
fn eval_i1<'py>(py: Python<'py>, z: f64, nu: f64, mode: &str, rtol: f64) -> PyResult<Bound<'py, PyDict>> {
    run(py, ThermoRequest::I1 { z, nu }, mode, rtol)
}

#[pyfunction]
#[pyo3(signature = (z, d, nu, mode="closed", rtol=1e-8))]
fn eval_i2<'py>(py: Python<'py>, z: f64, d: f64, nu: f64, mode: &str, rtol: f64) -> PyResult<Bound<'py, PyDict>> {
    run(py, ThermoRequest::I2 { z, d, nu }, mode, rtol)
}

#[pyfunction]
#[pyo3(signature = (z, t, nu, mu=0.5, mode="closed", rtol=1e-8))]
fn eval_i3<'py>(py: Python<'py>, z: f64, t: f64, nu: f64, mu: f64, mode: &str, rtol: f64) -> PyResult<Bound<'py, PyDict>> {
    run(py, ThermoRequest::I3 { z, t, nu, mu }, mode, rtol)
}

#[pyfunction]
#[pyo3(signature = (z, delta, b, nu, mode="closed", rtol=1e-8))]
fn eval_i4<'py>(py: Python<'py>, z: f64, delta: f64, b: f64, nu: f64, mode: &str, rtol: f64) -> PyResult<Bound<'py, PyDict>> {
    run(py, ThermoRequest::I4 { z, delta, b, nu }, mode, rtol)
}

/// I^d(nu-1, a, z, rho); pass d=None for the d=infinity branch and a
/// negative rho for the negative-exponent representation.
#[pyfunction]
#[pyo3(signature = (nu, a, z, rho, d=None, mode="closed", rtol=1e-8))]
fn eval_general<'py>(py: Python<'py>, nu: f64, a: f64, z: f64, rho: f64, d: Option<f64>, mode: &str, rtol: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = |v: f64| num_complex::Complex64::new(v, 0.0);
    run(
        py,
        ThermoRequest::GeneralI {
            nu: c(nu),
            a: c(a),
            z: c(z),
            rho,
            d,
        },
        mode,
        rtol,
    )
}

#[pyfunction]
#[pyo3(signature = (nu, rho, x, mode="closed", rtol=1e-8))]
fn eval_kratzel<'py>(py: Python<'py>, nu: f64, rho: f64, x: f64, mode: &str, rtol: f64) -> PyResult<Bound<'py, PyDict>> {
    run(py, ThermoRequest::Kratzel { nu, rho, x }, mode, rtol)
}

#[pyfunction]
fn ln_q(w: f64, q: f64) -> PyResult<f64> {
    qstat::ln_q(w, q).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn exp_q(x: f64, q: f64) -> PyResult<f64> {
    qstat::exp_q(x, q).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn tsallis_entropy(q: f64, probabilities: Vec<f64>) -> PyResult<f64> {
    let energies = vec![0.0; probabilities.len()];
    let p = qstat::QStatParams::new(q, probabilities, energies)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    qstat::tsallis_entropy(&p).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn q_weights(q: f64, probabilities: Vec<f64>, energies: Vec<f64>, u_q: f64) -> PyResult<Vec<f64>> {
    let p = qstat::QStatParams::new(q, probabilities, energies)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    qstat::q_weights(&p, u_q).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Reaction rate with the q-deformed Boltzmann factor,
/// int y^{nu-1} e_q(-y) exp(-z y^{-1/2}) dy over the distribution's support.
#[pyfunction]
fn q_rate(nu: f64, z: f64, q: f64) -> PyResult<f64> {
    let p = qstat::QRateIntegrand::new(nu, z, q).map_err(|e| PyValueError::new_err(e.to_string()))?;
    qstat::q_rate(&p, &QuadratureConfig::default())
        .map(|r| r.re())
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn thermofun_py(_py: Python<'_>, m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(eval_i1, m)?)?;
    m.add_function(wrap_pyfunction!(eval_i2, m)?)?;
    m.add_function(wrap_pyfunction!(eval_i3, m)?)?;
    m.add_function(wrap_pyfunction!(eval_i4, m)?)?;
    m.add_function(wrap_pyfunction!(eval_general, m)?)?;
    m.add_function(wrap_pyfunction!(eval_kratzel, m)?)?;
    m.add_function(wrap_pyfunction!(ln_q, m)?)?;
    m.add_function(wrap_pyfunction!(exp_q, m)?)?;
    m.add_function(wrap_pyfunction!(tsallis_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(q_weights, m)?)?;
    m.add_function(wrap_pyfunction!(q_rate, m)?)?;
    Ok(())
}

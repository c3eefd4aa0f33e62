//! Output records and their CSV / JSON-lines encodings.
//!
//! Floats are printed with 17 significant digits (`{:.16e}`) so every value
//! round-trips exactly through either format. The CSV header is fixed:
//! `family,nu,z,d,t,mu,b,delta,rho,a,q,value,abs_err,method,work,converged`.

use thermofun::EvalError;

pub const CSV_HEADER: &str = "family,nu,z,d,t,mu,b,delta,rho,a,q,value,abs_err,method,work,converged";

/// The parameter slots shared by every family, in CSV column order.
/// Unused slots stay `None` and encode as empty CSV fields / JSON nulls.
#[derive(Debug, Clone, Copy, Default)]
pub struct Params {
    pub nu: Option<f64>,
    pub z: Option<f64>,
    pub d: Option<f64>,
    pub t: Option<f64>,
    pub mu: Option<f64>,
    pub b: Option<f64>,
    pub delta: Option<f64>,
    pub rho: Option<f64>,
    pub a: Option<f64>,
    pub q: Option<f64>,
}

/// One evaluated grid point. `value`/`abs_err` are `None` when no route
/// produced a number; `method` then carries the error marker instead.
#[derive(Debug, Clone)]
pub struct Record {
    pub family: String,
    pub params: Params,
    pub value: Option<f64>,
    pub abs_err: Option<f64>,
    pub method: String,
    pub work: usize,
    pub converged: bool,
}

/// 17-significant-digit float encoding used everywhere a number is emitted.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt17(v: Option<f64>) -> String {
    v.map(fmt17).unwrap_or_default()
}

fn json_num(v: Option<f64>) -> String {
    match v {
        Some(v) if v.is_finite() => fmt17(v),
        _ => "null".to_string(),
    }
}

/// Short marker naming an evaluation error in a sweep row's `method` column.
pub fn error_marker(e: &EvalError) -> &'static str {
    match e {
        EvalError::Pole { .. } => "Pole",
        EvalError::NoConvergence { .. } => "NoConvergence",
        EvalError::Domain(_) => "Domain",
        EvalError::CoincidentPoles { .. } => "CoincidentPoles",
        EvalError::NoSeparatingLine { .. } => "NoSeparatingLine",
        EvalError::CrossCheckFailed { .. } => "CrossCheckFailed",
        EvalError::SignAnomaly { .. } => "SignAnomaly",
        EvalError::DivergentSeries { .. } => "DivergentSeries",
    }
}

impl Record {
    pub fn csv_row(&self) -> String {
        let p = &self.params;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.family,
            opt17(p.nu),
            opt17(p.z),
            opt17(p.d),
            opt17(p.t),
            opt17(p.mu),
            opt17(p.b),
            opt17(p.delta),
            opt17(p.rho),
            opt17(p.a),
            opt17(p.q),
            opt17(self.value),
            opt17(self.abs_err),
            self.method,
            self.work,
            self.converged
        )
    }

    /// One JSON object. `wall_time_ms` is appended only for single `eval`
    /// output; sweep rows omit it so reruns are bit-identical.
    pub fn json_line(&self, wall_time_ms: Option<f64>) -> String {
        let p = &self.params;
        let mut s = format!(
            "{{\"family\":\"{}\",\"nu\":{},\"z\":{},\"d\":{},\"t\":{},\"mu\":{},\"b\":{},\"delta\":{},\"rho\":{},\"a\":{},\"q\":{},\"value\":{},\"abs_err\":{},\"method\":\"{}\",\"work\":{},\"converged\":{}",
            self.family,
            json_num(p.nu),
            json_num(p.z),
            json_num(p.d),
            json_num(p.t),
            json_num(p.mu),
            json_num(p.b),
            json_num(p.delta),
            json_num(p.rho),
            json_num(p.a),
            json_num(p.q),
            json_num(self.value),
            json_num(self.abs_err),
            self.method,
            self.work,
            self.converged
        );
        if let Some(ms) = wall_time_ms {
            s.push_str(&format!(",\"wall_time_ms\":{ms:.3}"));
        }
        s.push('}');
        s
    }
}

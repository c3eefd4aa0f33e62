//! Sweep specification: per-parameter ranges, config-file merging, and the
//! deterministic grid walk.
//!
//! Grid order is lexicographic over the axes taken in the fixed canonical
//! parameter order (`nu, z, d, t, mu, b, delta, rho, a, q`), independent of
//! the order ranges were supplied in, so reruns are bit-identical.

use std::collections::BTreeMap;

use crate::record::Params;

/// Canonical parameter order; also the CSV column order.
pub const PARAM_ORDER: [&str; 10] = ["nu", "z", "d", "t", "mu", "b", "delta", "rho", "a", "q"];

#[derive(Debug, Clone, Copy)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl Axis {
    /// Parses `start:stop:count[:lin|log]`.
    pub fn parse(text: &str) -> Result<Axis, String> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(format!("range '{text}' is not start:stop:count[:lin|log]"));
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| format!("range '{text}': '{s}' is not a number"))
        };
        let start = num(parts[0])?;
        let stop = num(parts[1])?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| format!("range '{text}': count '{}' is not an integer", parts[2]))?;
        let log = match parts.get(3).copied().unwrap_or("lin") {
            "lin" | "linear" => false,
            "log" => true,
            other => return Err(format!("range '{text}': spacing '{other}' is not lin|log")),
        };
        if count < 1 {
            return Err(format!("range '{text}': count must be >= 1"));
        }
        if start > stop {
            return Err(format!("range '{text}': start must be <= stop"));
        }
        if log && start <= 0.0 {
            return Err(format!("range '{text}': log spacing requires start > 0"));
        }
        Ok(Axis {
            start,
            stop,
            count,
            log,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let f = i as f64 / n;
                if self.log {
                    (self.start.ln() + f * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + f * (self.stop - self.start)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub enum ParamSpec {
    Fixed(f64),
    Range(Axis),
}

/// Fully resolved sweep: family, one spec per supplied parameter, and the
/// output/mode settings after flags-over-file-over-defaults merging.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: String,
    pub params: BTreeMap<&'static str, ParamSpec>,
    pub mode: String,
    pub rtol: f64,
    pub format: String,
}

impl SweepSpec {
    pub fn set_param(&mut self, name: &str, spec: ParamSpec) -> Result<(), String> {
        let key = PARAM_ORDER
            .iter()
            .find(|&&k| k == name)
            .ok_or_else(|| format!("unknown parameter '{name}'"))?;
        self.params.insert(key, spec);
        Ok(())
    }

    /// The swept axes in canonical order.
    pub fn axes(&self) -> Vec<(&'static str, Vec<f64>)> {
        PARAM_ORDER
            .iter()
            .filter_map(|&name| match self.params.get(name) {
                Some(ParamSpec::Range(ax)) => Some((name, ax.values())),
                _ => None,
            })
            .collect()
    }

    /// All grid points in lexicographic index order (last axis fastest),
    /// each materialised as a filled parameter set.
    pub fn grid(&self) -> Vec<Params> {
        let mut base = Params::default();
        for (&name, &spec) in &self.params {
            if let ParamSpec::Fixed(v) = spec {
                assign(&mut base, name, v);
            }
        }
        let axes = self.axes();
        if axes.is_empty() {
            return vec![base];
        }
        let total: usize = axes.iter().map(|(_, v)| v.len()).product();
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0usize; axes.len()];
        loop {
            let mut p = base;
            for (k, (name, values)) in axes.iter().enumerate() {
                assign(&mut p, name, values[idx[k]]);
            }
            out.push(p);
            // odometer increment, last axis fastest
            let mut k = axes.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < axes[k].1.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

fn assign(p: &mut Params, name: &str, v: f64) {
    match name {
        "nu" => p.nu = Some(v),
        "z" => p.z = Some(v),
        "d" => p.d = Some(v),
        "t" => p.t = Some(v),
        "mu" => p.mu = Some(v),
        "b" => p.b = Some(v),
        "delta" => p.delta = Some(v),
        "rho" => p.rho = Some(v),
        "a" => p.a = Some(v),
        "q" => p.q = Some(v),
        _ => unreachable!("parameter names validated at parse time"),
    }
}

/// Parses the flat key=value config format. `#` starts a comment; parameter
/// values containing `:` are ranges, bare numbers are fixed values.
pub fn apply_config(spec: &mut SweepSpec, text: &str) -> Result<(), String> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "family" => spec.family = value.to_string(),
            "mode" => spec.mode = value.to_string(),
            "format" => spec.format = value.to_string(),
            "rtol" => {
                spec.rtol = value
                    .parse()
                    .map_err(|_| format!("config line {}: bad rtol '{value}'", lineno + 1))?
            }
            name => {
                let ps = if value.contains(':') {
                    ParamSpec::Range(Axis::parse(value)?)
                } else {
                    ParamSpec::Fixed(
                        value
                            .parse()
                            .map_err(|_| format!("config line {}: bad value '{value}'", lineno + 1))?,
                    )
                };
                spec.set_param(name, ps)
                    .map_err(|e| format!("config line {}: {e}", lineno + 1))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parse_and_values() {
        let ax = Axis::parse("1:3:3").unwrap();
        assert_eq!(ax.values(), vec![1.0, 2.0, 3.0]);
        let ax = Axis::parse("0.1:10:3:log").unwrap();
        let v = ax.values();
        assert!((v[1] - 1.0).abs() < 1e-12);
        assert!(Axis::parse("3:1:2").is_err());
        assert!(Axis::parse("0:1:2:log").is_err());
        assert!(Axis::parse("1:2:0").is_err());
        assert_eq!(Axis::parse("5:9:1").unwrap().values(), vec![5.0]);
    }

    #[test]
    fn grid_order_is_canonical() {
        let mut spec = SweepSpec {
            family: "i1".into(),
            params: BTreeMap::new(),
            mode: "closed".into(),
            rtol: 1e-8,
            format: "json".into(),
        };
        // supplied z-first; the walk must still order nu before z
        spec.set_param("z", ParamSpec::Range(Axis::parse("1:2:2").unwrap()))
            .unwrap();
        spec.set_param("nu", ParamSpec::Range(Axis::parse("1:3:3").unwrap()))
            .unwrap();
        let g = spec.grid();
        assert_eq!(g.len(), 6);
        assert_eq!((g[0].nu, g[0].z), (Some(1.0), Some(1.0)));
        assert_eq!((g[1].nu, g[1].z), (Some(1.0), Some(2.0)));
        assert_eq!((g[2].nu, g[2].z), (Some(2.0), Some(1.0)));
    }

    #[test]
    fn config_merging() {
        let mut spec = SweepSpec {
            family: String::new(),
            params: BTreeMap::new(),
            mode: "closed".into(),
            rtol: 1e-8,
            format: "json".into(),
        };
        apply_config(
            &mut spec,
            "# demo\nfamily = i2\nz = 0.5:2:4:log\nd = 2\nnu = 2\nmode = crosscheck\nrtol = 1e-9\n",
        )
        .unwrap();
        assert_eq!(spec.family, "i2");
        assert_eq!(spec.mode, "crosscheck");
        assert_eq!(spec.rtol, 1e-9);
        assert_eq!(spec.grid().len(), 4);
        assert!(apply_config(&mut spec, "bogus 1\n").is_err());
        assert!(apply_config(&mut spec, "w = 1:2\n").is_err());
    }
}

//! Scenario documents: one flat TOML table per file.
//!
//! ```toml
//! kind = "pms"
//! seed = 7
//! format = "csv"
//! output = "pms-resonant"
//! n_blocks = 21
//! xi1 = 0.3
//! xi2 = 0.01
//! ```

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

pub const KINDS: [Kind; 5] = [
    Kind::Pms,
    Kind::Helical,
    Kind::ResonanceCurve,
    Kind::EmCheck,
    Kind::LorentzCheck,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Pms,
    Helical,
    ResonanceCurve,
    EmCheck,
    LorentzCheck,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Pms => "pms",
            Kind::Helical => "helical",
            Kind::ResonanceCurve => "resonance-curve",
            Kind::EmCheck => "em-check",
            Kind::LorentzCheck => "lorentz-check",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        KINDS.into_iter().find(|k| k.name() == s)
    }

    pub fn describe(self) -> &'static str {
        match self {
            Kind::Pms => "spin chain through a periodic magnetic structure (n_blocks, xi1, xi2 [, theta])",
            Kind::Helical => "spin in a helical field (gamma, omega, delta, t_max, dt [, method, branch])",
            Kind::ResonanceCurve => "spin-flip probability versus detuning (gamma, delta_min, delta_max, n_points [, t_pass])",
            Kind::EmCheck => "finite-difference Maxwell and wave residuals (field [, h, samples, c, k, q])",
            Kind::LorentzCheck => "field invariants under random rotations and boosts ([n_cases, max_ops, max_rapidity])",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PmsParams {
    pub n_blocks: usize,
    pub xi1: f64,
    pub xi2: f64,
    pub theta: f64,
    pub phase_scale: f64,
    pub p0: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    Ode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchSel {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HelicalScenario {
    pub gamma: f64,
    pub omega: f64,
    pub delta: f64,
    pub t_max: f64,
    pub dt: f64,
    pub method: Method,
    pub branch: BranchSel,
    pub p0: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResonanceParams {
    pub gamma: f64,
    pub delta_min: f64,
    pub delta_max: f64,
    pub n_points: usize,
    pub t_pass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    PlaneWave,
    PointCharge,
    Constant,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmCheckParams {
    pub field: FieldKind,
    pub h: Vec<f64>,
    pub samples: usize,
    pub c: f64,
    pub k: f64,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LorentzCheckParams {
    pub n_cases: usize,
    pub max_ops: usize,
    pub max_rapidity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Params {
    Pms(PmsParams),
    Helical(HelicalScenario),
    ResonanceCurve(ResonanceParams),
    EmCheck(EmCheckParams),
    LorentzCheck(LorentzCheckParams),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub kind: Kind,
    pub seed: u64,
    pub output: String,
    pub format: Format,
    pub params: Params,
}

/// One invalid field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Every problem found in a scenario document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub Vec<FieldError>);

impl ConfigError {
    pub fn single(field: &str, message: impl Into<String>) -> Self {
        Self(vec![FieldError {
            field: field.to_string(),
            message: message.into(),
        }])
    }

    pub fn fields(&self) -> Vec<&str> {
        self.0.iter().map(|e| e.field.as_str()).collect()
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigError {}

/// Typed access to the raw table that records every key it reads and every
/// violation it finds.
struct Fields<'a> {
    table: &'a toml::Table,
    used: BTreeSet<&'static str>,
    errors: Vec<FieldError>,
}

impl<'a> Fields<'a> {
    fn new(table: &'a toml::Table) -> Self {
        Self {
            table,
            used: BTreeSet::new(),
            errors: Vec::new(),
        }
    }

    fn error(&mut self, field: &str, message: impl Into<String>) {
        self.errors.push(FieldError {
            field: field.to_string(),
            message: message.into(),
        });
    }

    fn raw(&mut self, key: &'static str) -> Option<&'a toml::Value> {
        self.used.insert(key);
        self.table.get(key)
    }

    fn float(
        &mut self,
        key: &'static str,
        default: Option<f64>,
        check: impl Fn(f64) -> Option<&'static str>,
    ) -> f64 {
        let v = match self.raw(key) {
            None => match default {
                Some(d) => return d,
                None => {
                    self.error(key, "required");
                    return f64::NAN;
                }
            },
            Some(toml::Value::Float(f)) => *f,
            Some(toml::Value::Integer(i)) => *i as f64,
            Some(_) => {
                self.error(key, "expected a number");
                return f64::NAN;
            }
        };
        if !v.is_finite() {
            self.error(key, "must be finite");
        } else if let Some(msg) = check(v) {
            self.error(key, msg);
        }
        v
    }

    fn count(
        &mut self,
        key: &'static str,
        default: Option<usize>,
        min: usize,
        max: usize,
    ) -> usize {
        match self.raw(key) {
            None => default.unwrap_or_else(|| {
                self.error(key, "required");
                0
            }),
            Some(toml::Value::Integer(i)) if *i >= min as i64 && *i <= max as i64 => *i as usize,
            Some(toml::Value::Integer(_)) => {
                self.error(key, format!("must be an integer in [{min}, {max}]"));
                0
            }
            Some(_) => {
                self.error(key, "expected an integer");
                0
            }
        }
    }

    fn string(&mut self, key: &'static str, default: &str) -> Option<String> {
        match self.raw(key) {
            None => Some(default.to_string()),
            Some(toml::Value::String(s)) => Some(s.clone()),
            Some(_) => {
                self.error(key, "expected a string");
                None
            }
        }
    }

    fn choice<T: Copy>(&mut self, key: &'static str, default: T, options: &[(&str, T)]) -> T {
        let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
        match self.raw(key) {
            None => default,
            Some(toml::Value::String(s)) => match options.iter().find(|(n, _)| n == s) {
                Some((_, v)) => *v,
                None => {
                    self.error(
                        key,
                        format!(
                            "unknown value \"{s}\"; expected one of {}",
                            names.join(", ")
                        ),
                    );
                    default
                }
            },
            Some(_) => {
                self.error(key, "expected a string");
                default
            }
        }
    }

    fn float_list(&mut self, key: &'static str, default: &[f64]) -> Vec<f64> {
        match self.raw(key) {
            None => default.to_vec(),
            Some(toml::Value::Array(items)) => {
                let mut out = Vec::with_capacity(items.len());
                for item in items {
                    match item {
                        toml::Value::Float(f) => out.push(*f),
                        toml::Value::Integer(i) => out.push(*i as f64),
                        _ => {
                            self.error(key, "expected an array of numbers");
                            return out;
                        }
                    }
                }
                if out.is_empty() {
                    self.error(key, "must not be empty");
                } else if out.iter().any(|h| !(h.is_finite() && *h > 0.0)) {
                    self.error(key, "every step must be positive and finite");
                }
                out
            }
            Some(toml::Value::Float(f)) => vec![*f],
            Some(_) => {
                self.error(key, "expected an array of numbers");
                Vec::new()
            }
        }
    }

    fn unit_vector(&mut self, prefix: [&'static str; 3], default: [f64; 3]) -> [f64; 3] {
        let v = [
            self.float(prefix[0], Some(default[0]), |_| None),
            self.float(prefix[1], Some(default[1]), |_| None),
            self.float(prefix[2], Some(default[2]), |_| None),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n.is_finite() && (n - 1.0).abs() > 1e-9 {
            self.error(
                prefix[0],
                format!(
                    "({}, {}, {}) must be a unit vector, |p0| = {n}",
                    prefix[0], prefix[1], prefix[2]
                ),
            );
        }
        v
    }

    /// Unknown keys are only reported once the kind, and so the key set, is known.
    fn finish(mut self, check_unknown: bool) -> Vec<FieldError> {
        let unknown: Vec<String> = self
            .table
            .keys()
            .filter(|k| check_unknown && !self.used.contains(k.as_str()))
            .cloned()
            .collect();
        for k in unknown {
            self.error(&k, "unknown key");
        }
        self.errors
    }
}

fn positive(v: f64) -> Option<&'static str> {
    (v <= 0.0).then_some("must be positive")
}

fn non_negative(v: f64) -> Option<&'static str> {
    (v < 0.0).then_some("must be non-negative")
}

fn any(_: f64) -> Option<&'static str> {
    None
}

fn valid_stem(s: &str) -> bool {
    !s.is_empty()
        && s != "."
        && s != ".."
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
}

/// Parse TOML text into a table, reporting syntax errors as a config error.
pub fn parse_document(text: &str) -> Result<toml::Table, ConfigError> {
    text.parse::<toml::Table>()
        .map_err(|e| ConfigError::single("document", e.message().to_string()))
}

/// Check every field of a raw document and build the typed scenario.
pub fn validate_scenario(raw: &toml::Table) -> Result<Scenario, ConfigError> {
    let mut f = Fields::new(raw);
    let kind = match f.raw("kind") {
        None => {
            f.error("kind", "required");
            None
        }
        Some(toml::Value::String(s)) => {
            let k = Kind::parse(s);
            if k.is_none() {
                let allowed: Vec<&str> = KINDS.iter().map(|k| k.name()).collect();
                f.error(
                    "kind",
                    format!(
                        "unknown kind \"{s}\"; allowed kinds: {}",
                        allowed.join(", ")
                    ),
                );
            }
            k
        }
        Some(_) => {
            f.error("kind", "expected a string");
            None
        }
    };

    let seed = match f.raw("seed") {
        None => 0,
        Some(toml::Value::Integer(i)) if *i >= 0 => *i as u64,
        Some(_) => {
            f.error("seed", "expected a non-negative integer");
            0
        }
    };
    let format = match f.string("format", "csv") {
        Some(s) => Format::parse(&s).unwrap_or_else(|| {
            f.error(
                "format",
                format!("unknown format \"{s}\"; expected csv or json"),
            );
            Format::Csv
        }),
        None => Format::Csv,
    };
    let output = f
        .string("output", kind.map_or("out", Kind::name))
        .unwrap_or_default();
    if !valid_stem(&output) {
        f.error(
            "output",
            "must be a plain file stem of letters, digits, '-', '_' or '.'",
        );
    }

    let params = kind.map(|k| match k {
        Kind::Pms => {
            let n_blocks = f.count("n_blocks", None, 1, 1_000_000);
            let xi1 = f.float("xi1", None, any);
            let xi2 = f.float("xi2", None, any);
            let default_theta = if n_blocks > 0 {
                PI / n_blocks as f64
            } else {
                0.0
            };
            let theta = f.float("theta", Some(default_theta), any);
            let phase_scale = f.float("phase_scale", Some(1.0), positive);
            let p0 = f.unit_vector(["p0_x", "p0_y", "p0_z"], [0.0, 0.0, 1.0]);
            Params::Pms(PmsParams {
                n_blocks,
                xi1,
                xi2,
                theta,
                phase_scale,
                p0,
            })
        }
        Kind::Helical => {
            let gamma = f.float("gamma", None, non_negative);
            let omega = f.float("omega", None, any);
            let delta = f.float("delta", None, any);
            let t_max = f.float("t_max", None, positive);
            let dt = f.float("dt", None, positive);
            if dt.is_finite() && t_max.is_finite() && dt > 0.0 && t_max / dt > 1e8 {
                f.error("dt", "more than 1e8 steps requested");
            }
            if gamma == 0.0 && delta == 0.0 {
                f.error("gamma", "gamma and delta cannot both be zero");
            }
            let method = f.choice(
                "method",
                Method::Analytic,
                &[("analytic", Method::Analytic), ("ode", Method::Ode)],
            );
            let branch = f.choice(
                "branch",
                BranchSel::Plus,
                &[("plus", BranchSel::Plus), ("minus", BranchSel::Minus)],
            );
            let p0 = f.unit_vector(["p0_x", "p0_y", "p0_z"], [0.0, 0.0, 1.0]);
            if method == Method::Ode && dt.is_finite() {
                let rate = gamma.hypot(omega - delta);
                if dt * rate > spinquat::spin::MAX_STEP_PHASE {
                    f.error(
                        "dt",
                        format!(
                            "dt * |Omega| = {} exceeds {}",
                            dt * rate,
                            spinquat::spin::MAX_STEP_PHASE
                        ),
                    );
                }
            }
            Params::Helical(HelicalScenario {
                gamma,
                omega,
                delta,
                t_max,
                dt,
                method,
                branch,
                p0,
            })
        }
        Kind::ResonanceCurve => {
            let gamma = f.float("gamma", None, positive);
            let delta_min = f.float("delta_min", None, any);
            let delta_max = f.float("delta_max", None, any);
            if delta_min.is_finite() && delta_max.is_finite() && delta_max <= delta_min {
                f.error("delta_max", "must exceed delta_min");
            }
            let n_points = f.count("n_points", None, 2, 10_000_000);
            let default_t = if gamma > 0.0 { PI / gamma } else { 0.0 };
            let t_pass = f.float("t_pass", Some(default_t), non_negative);
            Params::ResonanceCurve(ResonanceParams {
                gamma,
                delta_min,
                delta_max,
                n_points,
                t_pass,
            })
        }
        Kind::EmCheck => {
            let field = f.choice(
                "field",
                FieldKind::PlaneWave,
                &[
                    ("plane-wave", FieldKind::PlaneWave),
                    ("point-charge", FieldKind::PointCharge),
                    ("constant", FieldKind::Constant),
                ],
            );
            let h = f.float_list("h", &[0.02, 0.01, 0.005]);
            if h.iter().any(|v| *v > 0.1) {
                f.error("h", "steps above 0.1 would reach the point charge");
            }
            let samples = f.count("samples", Some(8), 1, 100_000);
            let c = f.float("c", Some(1.0), positive);
            let k = f.float("k", Some(2.0), positive);
            let q = f.float("q", Some(1.0), any);
            Params::EmCheck(EmCheckParams {
                field,
                h,
                samples,
                c,
                k,
                q,
            })
        }
        Kind::LorentzCheck => {
            let n_cases = f.count("n_cases", Some(1000), 1, 10_000_000);
            let max_ops = f.count("max_ops", Some(5), 1, 64);
            let max_rapidity = f.float("max_rapidity", Some(2.0), non_negative);
            if max_rapidity > 10.0 {
                f.error("max_rapidity", "must not exceed 10");
            }
            Params::LorentzCheck(LorentzCheckParams {
                n_cases,
                max_ops,
                max_rapidity,
            })
        }
    });

    let errors = f.finish(kind.is_some());
    match (kind, params) {
        (Some(kind), Some(params)) if errors.is_empty() => Ok(Scenario {
            kind,
            seed,
            output,
            format,
            params,
        }),
        _ => Err(ConfigError(errors)),
    }
}

/// Parse and validate in one step.
pub fn load_scenario(text: &str) -> Result<Scenario, ConfigError> {
    validate_scenario(&parse_document(text)?)
}

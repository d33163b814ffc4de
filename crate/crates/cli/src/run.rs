//! Scenario execution.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use spinquat::em::{
    em_tensor, energy_quadratic, lorentz_invariants, maxwell_residual, wave_residual,
    EmFieldSample, Event, FourCurrent,
};
use spinquat::lorentz::{
    boost_field_closed, boost_generator, eb_boost, rotate_field_closed, rotation_generator,
    transform_tensor, FieldTriple, LorentzQuat,
};
use spinquat::spin::{
    analytic_helical, branch_polarization, helical_rate, integrate_spin, pms_propagate,
    resonance_curve, Branch, HelicalParams, PmsConfig, PolarizationVector,
};
use spinquat::{UnitQuaternion, Vector3};

use crate::output::{Cell, Table};
use crate::scenario::{
    BranchSel, ConfigError, EmCheckParams, FieldKind, Format, HelicalScenario, LorentzCheckParams,
    Method, Params, PmsParams, ResonanceParams, Scenario,
};

pub const TRAJECTORY_COLUMNS: [&str; 12] = [
    "step", "t", "s0", "sx", "sy", "sz", "px", "py", "pz", "px_mid", "py_mid", "pz_mid",
];
pub const RESONANCE_COLUMNS: [&str; 3] = ["delta", "p_down", "p_up"];
pub const RESIDUAL_COLUMNS: [&str; 3] = ["h", "residual_name", "value"];
pub const LORENTZ_COLUMNS: [&str; 10] = [
    "case",
    "n_ops",
    "i1",
    "i2",
    "i1_after",
    "i2_after",
    "invariant_rel_err",
    "closed_form_err",
    "w0",
    "w0_after",
];

/// Residuals at or below this are treated as exact when estimating convergence.
pub const RESIDUAL_FLOOR: f64 = 1e-12;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl From<spinquat::Error> for ConfigError {
    fn from(e: spinquat::Error) -> Self {
        ConfigError::single("params", e.to_string())
    }
}

/// Summary statistics of one run, keyed by name.
pub type Summary = BTreeMap<String, f64>;

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub scenario: Scenario,
    pub summary: Summary,
    pub files: Vec<PathBuf>,
    pub rows: usize,
    pub duration_s: f64,
}

/// Compute the table and summary of a scenario without touching the disk.
///
/// `threads = None` uses the available parallelism.
pub fn compute(s: &Scenario, threads: Option<usize>) -> Result<(Table, Summary), ConfigError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| ConfigError::single("threads", e.to_string()))?;
    pool.install(|| match &s.params {
        Params::Pms(p) => run_pms(p),
        Params::Helical(p) => run_helical(p),
        Params::ResonanceCurve(p) => run_resonance(p),
        Params::EmCheck(p) => run_em_check(p, s.seed),
        Params::LorentzCheck(p) => run_lorentz_check(p, s.seed),
    })
}

/// Run a scenario and write `<output>.<csv|json>` and `<output>.summary.json`
/// into `out_dir`.
pub fn run_scenario(
    s: &Scenario,
    out_dir: &Path,
    threads: Option<usize>,
) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let (table, summary) = compute(s, threads)?;

    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| RunError::Io { path, source }
    };
    fs::create_dir_all(out_dir).map_err(io(out_dir))?;
    let data_name = format!("{}.{}", s.output, s.format.extension());
    let summary_name = format!("{}.summary.json", s.output);
    let data_path = out_dir.join(&data_name);
    let summary_path = out_dir.join(&summary_name);

    let bytes = table.encode(s.format).map_err(io(&data_path))?;
    fs::write(&data_path, bytes).map_err(io(&data_path))?;
    let doc = json!({
        "scenario": s,
        "summary": summary,
        "files": [data_name, summary_name],
        "rows": table.rows.len(),
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("json values always serialize");
    text.push('\n');
    fs::write(&summary_path, text).map_err(io(&summary_path))?;

    Ok(RunReport {
        scenario: s.clone(),
        summary,
        files: vec![data_path, summary_path],
        rows: table.rows.len(),
        duration_s: start.elapsed().as_secs_f64(),
    })
}

fn vec3(a: [f64; 3]) -> Vector3<f64> {
    Vector3::new(a[0], a[1], a[2])
}

fn trajectory_row(
    step: usize,
    t: f64,
    s: UnitQuaternion<f64>,
    p: Vector3<f64>,
    mid: Vector3<f64>,
) -> Vec<Cell> {
    let q = s.quaternion();
    vec![
        step.into(),
        t.into(),
        q.s0.into(),
        q.sx.into(),
        q.sy.into(),
        q.sz.into(),
        p.x.into(),
        p.y.into(),
        p.z.into(),
        mid.x.into(),
        mid.y.into(),
        mid.z.into(),
    ]
}

/// Rows alternate between block boundaries `(u₂u₁)ⁿ` at `t = n` and the
/// point after the bar, `u₁(u₂u₁)ⁿ` at `t = n + ½`, giving `2N + 2` rows.
fn run_pms(p: &PmsParams) -> Result<(Table, Summary), ConfigError> {
    let cfg = PmsConfig::new(p.n_blocks, p.xi1, p.xi2, p.theta)?.with_phase_scale(p.phase_scale);
    let traj = pms_propagate(&cfg, vec3(p.p0))?;
    let polar = traj.polar.as_ref().expect("pms_propagate records arrows");
    let (s1, c1) = (cfg.xi1 / 2.0).sin_cos();
    let (st, ct) = cfg.theta.sin_cos();
    let u1 = UnitQuaternion::new(spinquat::Quaternion::new(c1, s1 * ct, s1 * st, 0.0))?;

    let mut table = Table::new(&TRAJECTORY_COLUMNS);
    for (n, (state, (pn, mid))) in traj.states.iter().zip(polar).enumerate() {
        table.push(trajectory_row(2 * n, n as f64, *state, *pn, *mid));
        table.push(trajectory_row(
            2 * n + 1,
            n as f64 + 0.5,
            u1 * *state,
            *mid,
            *mid,
        ));
    }

    let mut summary = Summary::new();
    let last = polar.last().expect("at least one row").0;
    summary.insert(
        "closure_distance".into(),
        traj.closure_distance(Vector3::unit_z()).unwrap_or(f64::NAN),
    );
    summary.insert("final_px".into(), last.x);
    summary.insert("final_py".into(), last.y);
    summary.insert("final_pz".into(), last.z);
    summary.insert(
        "min_pz".into(),
        polar.iter().map(|(q, _)| q.z).fold(f64::INFINITY, f64::min),
    );
    Ok((table, summary))
}

/// `*_mid` holds the opposite sign branch of `P(t)` so both curves of the
/// helical motion come out of one run.
fn run_helical(p: &HelicalScenario) -> Result<(Table, Summary), ConfigError> {
    let params = HelicalParams::new(p.gamma, p.delta, p.omega)?;
    let p0 = PolarizationVector::new(vec3(p.p0))?;
    let (branch, other) = match p.branch {
        BranchSel::Plus => (Branch::Plus, Branch::Minus),
        BranchSel::Minus => (Branch::Minus, Branch::Plus),
    };

    let n = (p.t_max / p.dt).ceil().max(1.0) as usize;
    let h = p.t_max / n as f64;
    let times: Vec<f64> = (0..=n)
        .map(|i| if i == n { p.t_max } else { h * i as f64 })
        .collect();
    let analytic: Vec<UnitQuaternion<f64>> = times
        .par_iter()
        .map(|t| analytic_helical(&params, *t))
        .collect::<Result<_, _>>()?;

    let mut summary = Summary::new();
    let states = match p.method {
        Method::Analytic => analytic,
        Method::Ode => {
            let traj = integrate_spin(
                |t| helical_rate(&params, t),
                UnitQuaternion::identity(),
                0.0,
                p.t_max,
                p.dt,
            )?;
            let dev = traj
                .states
                .iter()
                .zip(&analytic)
                .map(|(a, b)| a.quaternion().max_abs_diff(b.quaternion()))
                .fold(0.0, f64::max);
            summary.insert("max_deviation_from_analytic".into(), dev);
            summary.insert("max_norm_defect".into(), traj.max_norm_defect());
            traj.states
        }
    };

    let rows: Vec<Vec<Cell>> = states
        .par_iter()
        .zip(times.par_iter())
        .enumerate()
        .map(|(i, (s, t))| {
            let pv = branch_polarization(*s, branch, p0).vector();
            let mid = branch_polarization(*s, other, p0).vector();
            trajectory_row(i, *t, *s, pv, mid)
        })
        .collect();
    let mut table = Table::new(&TRAJECTORY_COLUMNS);
    let mut min_pz = f64::INFINITY;
    for row in rows {
        if let Cell::Float(pz) = row[8] {
            min_pz = min_pz.min(pz);
        }
        table.push(row);
    }
    let last =
        branch_polarization(*states.last().expect("at least one state"), branch, p0).vector();
    summary.insert("final_px".into(), last.x);
    summary.insert("final_py".into(), last.y);
    summary.insert("final_pz".into(), last.z);
    summary.insert("min_pz".into(), min_pz);
    Ok((table, summary))
}

fn run_resonance(p: &ResonanceParams) -> Result<(Table, Summary), ConfigError> {
    let curve = resonance_curve(p.gamma, p.delta_min, p.delta_max, p.n_points, p.t_pass)?;
    let mut table = Table::new(&RESONANCE_COLUMNS);
    let mut peak = curve[0];
    let mut defect: f64 = 0.0;
    for pt in &curve {
        if pt.p_down > peak.p_down {
            peak = *pt;
        }
        defect = defect.max((pt.p_down + pt.p_up - 1.0).abs());
        table.push(vec![pt.delta.into(), pt.p_down.into(), pt.p_up.into()]);
    }
    let mut summary = Summary::new();
    summary.insert("peak_p_down".into(), peak.p_down);
    summary.insert("peak_delta".into(), peak.delta);
    summary.insert("max_sum_defect".into(), defect);
    Ok((table, summary))
}

/// Analytic test fields for the finite-difference checks.
#[derive(Debug, Clone, Copy)]
pub struct TestField {
    pub kind: FieldKind,
    pub c: f64,
    pub k: f64,
    pub q: f64,
}

impl TestField {
    pub fn from_params(p: &EmCheckParams) -> Self {
        Self {
            kind: p.field,
            c: p.c,
            k: p.k,
            q: p.q,
        }
    }

    /// Vacuum fields; the point charge sits at the origin.
    pub fn sample(&self, p: Event<f64>) -> EmFieldSample<f64> {
        let r = Vector3::new(p[1], p[2], p[3]);
        match self.kind {
            FieldKind::PlaneWave => {
                // oblique, so no axis is special for the difference errors
                let n = Vector3::new(1.0, 2.0, 2.0).scale(1.0 / 3.0);
                let e0 = Vector3::new(2.0, -1.0, 0.0).scale(1.0 / 5f64.sqrt());
                let amp = (self.k * (n.dot(r) - self.c * p[0])).cos();
                EmFieldSample::new(e0.scale(amp), n.cross(e0).scale(amp))
            }
            FieldKind::PointCharge => {
                let d = r.norm();
                EmFieldSample::new(r.scale(self.q / (d * d * d)), Vector3::zeros())
            }
            FieldKind::Constant => {
                EmFieldSample::new(Vector3::new(1.0, -2.0, 0.3), Vector3::new(0.5, 0.25, 4.0))
            }
        }
    }

    /// Sample events: `t, x, y, z ∈ [−1, 1]`, and `0.5 ≤ |r| ≤ 1.5` around the charge.
    pub fn sample_events(&self, seed: u64, n: usize) -> Vec<Event<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let t = rng.gen_range(-1.0..1.0);
            let ev = match self.kind {
                FieldKind::PointCharge => {
                    let r = Vector3::new(
                        rng.gen_range(-1.5..1.5),
                        rng.gen_range(-1.5..1.5),
                        rng.gen_range(-1.5..1.5),
                    );
                    let d = r.norm();
                    if !(0.5..=1.5).contains(&d) {
                        continue;
                    }
                    [t, r.x, r.y, r.z]
                }
                _ => [
                    t,
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ],
            };
            out.push(ev);
        }
        out
    }
}

pub const RESIDUAL_NAMES: [&str; 5] = ["gauss_b", "faraday", "ampere", "gauss_e", "wave"];

/// Largest residual of each law over `events`, in [`RESIDUAL_NAMES`] order.
pub fn residuals_at_step(
    field: &TestField,
    events: &[Event<f64>],
    h: f64,
) -> Result<[f64; 5], ConfigError> {
    let per_event: Vec<[f64; 5]> = events
        .par_iter()
        .map(|ev| -> Result<[f64; 5], spinquat::Error> {
            let m = maxwell_residual(
                |p| field.sample(p),
                |_| FourCurrent::zero(),
                *ev,
                h,
                field.c,
            )?;
            let w = wave_residual(|p| field.sample(p), *ev, h, field.c)?.max_abs();
            let [a, b, c, d] = m.named();
            Ok([a.1, b.1, c.1, d.1, w])
        })
        .collect::<Result<_, _>>()?;
    let mut out = [0.0f64; 5];
    for r in per_event {
        for (o, v) in out.iter_mut().zip(r) {
            *o = o.max(v);
        }
    }
    Ok(out)
}

/// Smallest reduction factor and empirical order over successive steps.
/// Pairs where both residuals sit at the rounding floor are skipped.
pub fn convergence(hs: &[f64], residuals: &[[f64; 5]]) -> Option<(f64, f64)> {
    let mut worst: Option<(f64, f64)> = None;
    for i in 1..hs.len() {
        for j in 0..5 {
            let (a, b) = (residuals[i - 1][j], residuals[i][j]);
            if a <= RESIDUAL_FLOOR && b <= RESIDUAL_FLOOR {
                continue;
            }
            let ratio = a / b;
            let order = ratio.ln() / (hs[i - 1] / hs[i]).ln();
            worst = Some(match worst {
                None => (ratio, order),
                Some((r, o)) => (r.min(ratio), o.min(order)),
            });
        }
    }
    worst
}

fn run_em_check(p: &EmCheckParams, seed: u64) -> Result<(Table, Summary), ConfigError> {
    let field = TestField::from_params(p);
    let events = field.sample_events(seed, p.samples);
    let residuals: Vec<[f64; 5]> =
        p.h.iter()
            .map(|h| residuals_at_step(&field, &events, *h))
            .collect::<Result<_, _>>()?;

    let mut table = Table::new(&RESIDUAL_COLUMNS);
    for (h, r) in p.h.iter().zip(&residuals) {
        for (name, v) in RESIDUAL_NAMES.iter().zip(r) {
            table.push(vec![(*h).into(), Cell::Text(name), (*v).into()]);
        }
    }
    let mut summary = Summary::new();
    let finest =
        p.h.iter()
            .enumerate()
            .fold(0, |best, (i, h)| if *h < p.h[best] { i } else { best });
    summary.insert(
        "max_residual".into(),
        residuals[finest].iter().copied().fold(0.0, f64::max),
    );
    if let Some((ratio, order)) = convergence(&p.h, &residuals) {
        summary.insert("min_reduction".into(), ratio);
        summary.insert("min_order".into(), order);
    }
    Ok((table, summary))
}

pub fn random_unit(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n < 1.0 {
            return v.scale(1.0 / n);
        }
    }
}

pub fn random_field(rng: &mut ChaCha8Rng) -> EmFieldSample<f64> {
    let mut v = || {
        Vector3::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        )
    };
    EmFieldSample::new(v(), v())
}

/// Outcome of one random Lorentz-check case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzCase {
    pub n_ops: usize,
    pub before: (f64, f64),
    pub after: (f64, f64),
    /// `max |ΔI| / max(W₀, W₀′)`: the invariants are computed from components of size `W₀′`.
    pub invariant_rel_err: f64,
    /// Largest gap between the closed forms, `eb_boost` and matrix conjugation.
    pub closed_form_err: f64,
    pub w0: f64,
    pub w0_after: f64,
}

/// Case `index` draws from its own ChaCha stream, so results do not depend on
/// how cases are scheduled.
pub fn lorentz_case(
    p: &LorentzCheckParams,
    seed: u64,
    index: u64,
) -> Result<LorentzCase, spinquat::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let s = random_field(&mut rng);
    let t = em_tensor(&s);

    let n_ops = rng.gen_range(1..=p.max_ops);
    let mut f = t;
    for _ in 0..n_ops {
        let m = random_unit(&mut rng);
        let l: LorentzQuat<f64> = if rng.gen_bool(0.5) {
            rotation_generator(m, rng.gen_range(-PI..PI))?
        } else if p.max_rapidity > 0.0 {
            boost_generator(m, rng.gen_range(-p.max_rapidity..=p.max_rapidity))?
        } else {
            boost_generator(m, 0.0)?
        };
        f = transform_tensor(&l, &f);
    }
    let after = f.sample();
    let before = lorentz_invariants(&s);
    let inv_after = lorentz_invariants(&after);
    let w0 = energy_quadratic(&s).0;
    let w0_after = energy_quadratic(&after).0;
    let scale = w0.max(w0_after);
    let invariant_rel_err = if scale > 0.0 {
        (before.0 - inv_after.0)
            .abs()
            .max((before.1 - inv_after.1).abs())
            / scale
    } else {
        0.0
    };

    let ft = FieldTriple::from_tensor(&t);
    let m = random_unit(&mut rng);
    let alpha = rng.gen_range(-PI..PI);
    let rot = FieldTriple::from_tensor(&transform_tensor(&rotation_generator(m, alpha)?, &t));
    let mut closed_form_err = rotate_field_closed(&ft, m, alpha)?.max_abs_diff(&rot);
    let phi = if p.max_rapidity > 0.0 {
        rng.gen_range(-p.max_rapidity..=p.max_rapidity)
    } else {
        0.0
    };
    let boosted = FieldTriple::from_tensor(&transform_tensor(&boost_generator(m, phi)?, &t));
    let closed = boost_field_closed(&ft, m, phi)?;
    closed_form_err = closed_form_err.max(closed.max_abs_diff(&boosted));
    let (e2, b2) = eb_boost(s.e, s.b, m.scale(phi.tanh()), 1.0)?;
    closed_form_err = closed_form_err
        .max(FieldTriple::from_fields(&EmFieldSample::new(e2, b2)).max_abs_diff(&boosted));

    Ok(LorentzCase {
        n_ops,
        before,
        after: inv_after,
        invariant_rel_err,
        closed_form_err,
        w0,
        w0_after,
    })
}

fn run_lorentz_check(p: &LorentzCheckParams, seed: u64) -> Result<(Table, Summary), ConfigError> {
    let cases: Vec<LorentzCase> = (0..p.n_cases as u64)
        .into_par_iter()
        .map(|i| lorentz_case(p, seed, i))
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(&LORENTZ_COLUMNS);
    let (mut inv, mut closed, mut dw) = (0.0f64, 0.0f64, 0.0f64);
    for (i, c) in cases.iter().enumerate() {
        inv = inv.max(c.invariant_rel_err);
        closed = closed.max(c.closed_form_err);
        dw = dw.max((c.w0_after - c.w0).abs() / c.w0);
        table.push(vec![
            i.into(),
            c.n_ops.into(),
            c.before.0.into(),
            c.before.1.into(),
            c.after.0.into(),
            c.after.1.into(),
            c.invariant_rel_err.into(),
            c.closed_form_err.into(),
            c.w0.into(),
            c.w0_after.into(),
        ]);
    }
    let mut summary = Summary::new();
    summary.insert("max_invariant_rel_err".into(), inv);
    summary.insert("max_closed_form_err".into(), closed);
    summary.insert("max_w0_rel_change".into(), dw);
    Ok((table, summary))
}

/// Override the scenario's own format.
pub fn with_format(s: &Scenario, format: Option<Format>) -> Scenario {
    let mut s = s.clone();
    if let Some(f) = format {
        s.format = f;
    }
    s
}

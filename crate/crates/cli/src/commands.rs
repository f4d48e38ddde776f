use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use femtolb::analytic::{find_dmax, Evaluator};
use femtolb::config::ConfigFile;
use femtolb::optimizer::{report_conditions, solve, Mode};
use femtolb::report::Metric;
use femtolb::simulator::{calibrate_colb, calibrate_div, default_colb_grid, Campaign, Scheme};
use femtolb::{Config, Error};
use rayon::prelude::*;

use crate::args::{Axis, Common, Task};
use crate::output::{ResultRow, ValidationRow, VALIDATION_SCHEMA};

/// Command failure, mapped to the process exit code.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Infeasible(String),
    Threshold(String),
    Runtime(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Runtime(_) => 1,
            Failure::Config(_) => 2,
            Failure::Infeasible(_) => 3,
            Failure::Threshold(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "configuration error: {m}"),
            Failure::Infeasible(m) => write!(f, "infeasible: {m}"),
            Failure::Threshold(m) => write!(f, "validation failed: {m}"),
            Failure::Runtime(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(m) => Failure::Config(m),
            Error::Domain { op: "control", detail } => Failure::Config(detail),
            Error::Infeasible(_) | Error::Degenerate { .. } => Failure::Infeasible(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

pub type Outcome<T> = Result<T, Failure>;

/// Configuration file (or defaults) with `--set`, `--seed` and `--drops` applied.
pub fn load(c: &Common) -> Outcome<ConfigFile> {
    let base = match &c.config {
        Some(p) => ConfigFile::from_path(p)?,
        None => ConfigFile::default(),
    };
    let mut overrides = c.overrides.clone();
    if let Some(s) = c.seed {
        overrides.push(format!("seed={s}"));
    }
    if let Some(d) = c.drops {
        overrides.push(format!("drops={d}"));
    }
    Ok(base.with_overrides(&overrides)?)
}

fn network(file: &ConfigFile) -> Outcome<Config> {
    Ok(file.network_config()?)
}

fn mode_of(scheme: Scheme) -> Option<Mode> {
    match scheme {
        Scheme::Oa => Some(Mode::Oa),
        Scheme::OaThin => Some(Mode::OaThin),
        Scheme::Ha => Some(Mode::Ha),
        Scheme::HaThin => Some(Mode::HaThin),
        _ => None,
    }
}

/// Analytic report at the configured operating point. A radius outside
/// `[D_h, D_max]` marks the row infeasible.
pub fn analyze(file: &ConfigFile) -> Outcome<ResultRow> {
    let start = Instant::now();
    let cfg = network(file)?;
    let control = file.control::<f64>();
    control.validate()?;
    let label = file.run.mode.as_str();
    if control.service_radius < cfg.home_radius {
        let reason =
            format!("service radius {} m is below the home radius {} m", control.service_radius, cfg.home_radius);
        return Ok(ResultRow::failed("analyze", label, reason).with_control(&control, cfg.fbs_density()));
    }
    let report = Evaluator::new(&cfg, control.theta)?.report(&control)?;
    let dmax = find_dmax(&cfg, control.theta)?;
    let mut row = ResultRow::new("analyze", label).with_control(&control, cfg.fbs_density()).with_report(&report);
    row.dmax = Some(dmax.radius);
    row.infeasible = Some(dmax.infeasible || control.service_radius > dmax.radius);
    row.runtime_s = start.elapsed().as_secs_f64();
    Ok(row)
}

pub fn optimize(file: &ConfigFile) -> Outcome<ResultRow> {
    let start = Instant::now();
    let cfg = network(file)?;
    let mode = file.mode()?;
    let opt = solve(&cfg, mode, &file.solver_spec())?;
    let mut row = ResultRow::new("optimize", mode.name()).with_optimum(&opt, cfg.fbs_density());
    row.runtime_s = start.elapsed().as_secs_f64();
    Ok(row)
}

/// Runs the configured scheme, optionally tuning it first, and writes the
/// per-drop records when asked.
pub fn simulate(file: &ConfigFile, calibrate: bool, records: Option<&Path>) -> Outcome<ResultRow> {
    let start = Instant::now();
    let cfg = network(file)?;
    let mut spec = file.scheme_spec()?;
    spec.validate()?;
    let settings = file.sim_settings();
    let (drops, seed) = (file.run.drops, file.run.seed);
    let mut status = String::from("ok");
    if calibrate {
        match spec.scheme {
            Scheme::DivRssi | Scheme::DivCa => {
                let cal = calibrate_div(&cfg, spec.scheme, drops, seed, &settings)?;
                spec.control.rho = cal.rho;
                if !cal.feasible {
                    status = "no band split meets the subscriber requirement".into();
                }
            }
            Scheme::CoLb => {
                spec.colb_delta_db = calibrate_colb(&cfg, &default_colb_grid(), drops, seed, &settings)?.delta_db;
            }
            Scheme::CoRssi | Scheme::CoCa => {}
            proposed => {
                let mode = mode_of(proposed).expect("proposed schemes have a mode");
                let opt = solve(&cfg, mode, &file.solver_spec())?;
                if opt.diagnostics.infeasible {
                    return Err(Failure::Infeasible("outage cap violated at the home radius".into()));
                }
                spec.control = opt.control;
            }
        }
    }
    if spec.scheme.is_proposed() && spec.control.service_radius < cfg.home_radius {
        return Err(Failure::Infeasible(format!(
            "service radius {} m is below the home radius {} m",
            spec.control.service_radius, cfg.home_radius
        )));
    }
    let campaign = Campaign::run(&spec, &cfg, drops, seed, &settings)?;
    if let Some(path) = records {
        let mut out = io::BufWriter::new(File::create(path)?);
        campaign.write_records(&mut out)?;
        out.flush()?;
    }
    let estimate = campaign.estimate();
    let mut control = spec.control;
    control.beta = spec.beta();
    control.theta = spec.theta();
    let mut row = ResultRow::new("simulate", spec.scheme.name())
        .with_control(&control, cfg.fbs_density())
        .with_estimate(&estimate, seed);
    row.status = status;
    row.runtime_s = start.elapsed().as_secs_f64();
    Ok(row)
}

/// Analytic and simulated means side by side at each radius.
pub fn validate(file: &ConfigFile, radii: &[f64]) -> Outcome<Vec<ValidationRow>> {
    let cfg = network(file)?;
    let base = file.scheme_spec()?;
    if !base.scheme.is_proposed() {
        return Err(Failure::Config(format!("validate needs OA, OA-Thin, HA or HA-Thin, not {}", base.scheme.name())));
    }
    let radii = if radii.is_empty() { vec![file.control.service_radius] } else { radii.to_vec() };
    let threshold = file.run.validate_threshold;
    let settings = file.sim_settings();
    let mut rows = Vec::new();
    for d in radii {
        if !(d >= cfg.home_radius && d.is_finite()) {
            return Err(Failure::Infeasible(format!(
                "service radius {d} m is below the home radius {} m",
                cfg.home_radius
            )));
        }
        let mut spec = base;
        spec.control.service_radius = d;
        spec.validate()?;
        let mut control = spec.control;
        control.beta = spec.beta();
        control.theta = spec.theta();
        let analytic = Evaluator::new(&cfg, control.theta)?.report(&control)?;
        let sim = Campaign::run(&spec, &cfg, file.run.drops, file.run.seed, &settings)?.estimate();
        let half = sim.report.half_widths.unwrap_or_default();
        for m in Metric::MEANS {
            let (a, s) = (analytic.get(m), sim.report.get(m));
            let rel_error = if a == 0.0 { (s - a).abs() } else { (s - a).abs() / a.abs() };
            rows.push(ValidationRow {
                schema: VALIDATION_SCHEMA.into(),
                scheme: spec.scheme.name().into(),
                service_radius: d,
                drops: sim.drops,
                seed: file.run.seed,
                metric: m.name().into(),
                analytic: a,
                simulated: s,
                rel_error,
                std_error: sim.std_errors.get(m),
                half_width: half.get(m),
                threshold,
                pass: rel_error <= threshold,
            });
        }
    }
    Ok(rows)
}

/// Runs `task` at every value of `axis`, in parallel, keeping input order.
/// Configuration errors abort before any work; per-point failures become
/// rows with a non-`ok` status.
pub fn sweep(file: &ConfigFile, axis: Axis, values: &[f64], task: Task) -> Outcome<Vec<ResultRow>> {
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(Failure::Config("sweep values must be finite and non-empty".into()));
    }
    let points = values
        .iter()
        .map(|&v| {
            let assignment = axis.assignment(v).map_err(Failure::Config)?;
            Ok((v, file.with_overrides(&[assignment])?))
        })
        .collect::<Outcome<Vec<_>>>()?;
    let done = AtomicUsize::new(0);
    let total = points.len();
    let rows = points
        .par_iter()
        .map(|(v, point)| {
            let result = match task {
                Task::Analyze => analyze(point),
                Task::Optimize => optimize(point),
                Task::Simulate => simulate(point, false, None),
            };
            let verb = match task {
                Task::Analyze => "analyze",
                Task::Optimize => "optimize",
                Task::Simulate => "simulate",
            };
            let row = result.unwrap_or_else(|e| ResultRow::failed(verb, "", e.to_string()));
            let k = done.fetch_add(1, Ordering::Relaxed) + 1;
            eprintln!("[{k}/{total}] {}={v} {}", axis.name(), row.status);
            row.at(axis.name(), *v)
        })
        .collect();
    Ok(rows)
}

/// Whether a row should turn the exit status into "infeasible".
pub fn is_infeasible(row: &ResultRow) -> bool {
    row.status != "ok" || row.infeasible == Some(true)
}

pub fn conditions(file: &ConfigFile, out: &mut dyn Write) -> Outcome<()> {
    let cfg = network(file)?;
    let report = report_conditions(&cfg, file.control.theta)?;
    write!(out, "{report}")?;
    out.flush()?;
    Ok(())
}

//! CSV tables and gnuplot series.
//!
//! Floats are written in shortest round-trip form, so reading a table back
//! reproduces every value bit for bit. Missing values are empty fields.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use femtolb::model::ControlParams;
use femtolb::report::{Metric, Metrics, ThroughputReport};
use femtolb::simulator::SimEstimate;
use femtolb::Optimum;
use serde::{Deserialize, Serialize};

/// Value of the `schema` column of result tables.
pub const RESULT_SCHEMA: &str = "femtolb-result-v1";
/// Value of the `schema` column of validation tables.
pub const VALIDATION_SCHEMA: &str = "femtolb-validation-v1";

/// One operating point: analytic, optimized or simulated.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ResultRow {
    pub schema: String,
    pub verb: String,
    pub scheme: String,
    pub sweep_var: String,
    pub sweep_value: Option<f64>,
    /// `ok`, or the reason the point has no values.
    pub status: String,
    pub rho: Option<f64>,
    pub service_radius: Option<f64>,
    pub beta: Option<f64>,
    pub theta: Option<f64>,
    pub area: Option<f64>,
    pub source: String,
    pub drops: Option<usize>,
    pub seed: Option<u64>,
    pub se_fms: Option<f64>,
    pub se_mms: Option<f64>,
    pub se_oms: Option<f64>,
    pub tput_fms: Option<f64>,
    pub tput_mms: Option<f64>,
    pub tput_oms: Option<f64>,
    pub outage_oms: Option<f64>,
    pub slack_fms: Option<f64>,
    pub slack_oms: Option<f64>,
    pub hw_se_fms: Option<f64>,
    pub hw_se_mms: Option<f64>,
    pub hw_se_oms: Option<f64>,
    pub hw_tput_fms: Option<f64>,
    pub hw_tput_mms: Option<f64>,
    pub hw_tput_oms: Option<f64>,
    pub hw_outage_oms: Option<f64>,
    pub dmax: Option<f64>,
    pub binding: String,
    pub fms_limited: Option<bool>,
    pub coverage_condition: Option<bool>,
    pub convexity_verified: Option<bool>,
    pub infeasible: Option<bool>,
    pub runtime_s: f64,
}

impl ResultRow {
    pub fn new(verb: &str, scheme: &str) -> Self {
        ResultRow {
            schema: RESULT_SCHEMA.into(),
            verb: verb.into(),
            scheme: scheme.into(),
            status: "ok".into(),
            ..Default::default()
        }
    }

    pub fn failed(verb: &str, scheme: &str, reason: String) -> Self {
        ResultRow { status: reason, ..Self::new(verb, scheme) }
    }

    pub fn with_control(mut self, c: &ControlParams<f64>, fbs_density: f64) -> Self {
        self.rho = Some(c.rho);
        self.service_radius = Some(c.service_radius);
        self.beta = Some(c.beta);
        self.theta = Some(c.theta);
        self.area = Some(c.service_area(fbs_density));
        self
    }

    pub fn with_report(mut self, r: &ThroughputReport<f64>) -> Self {
        let v = &r.values;
        self.source = r.source.as_str().into();
        self.se_fms = Some(v.se_fms);
        self.se_mms = Some(v.se_mms);
        self.se_oms = Some(v.se_oms);
        self.tput_fms = Some(v.tput_fms);
        self.tput_mms = Some(v.tput_mms);
        self.tput_oms = Some(v.tput_oms);
        self.outage_oms = Some(v.outage_oms);
        self.slack_fms = Some(r.slack_fms);
        self.slack_oms = Some(r.slack_oms);
        if let Some(h) = &r.half_widths {
            self.set_half_widths(h);
        }
        self
    }

    fn set_half_widths(&mut self, h: &Metrics<f64>) {
        self.hw_se_fms = Some(h.se_fms);
        self.hw_se_mms = Some(h.se_mms);
        self.hw_se_oms = Some(h.se_oms);
        self.hw_tput_fms = Some(h.tput_fms);
        self.hw_tput_mms = Some(h.tput_mms);
        self.hw_tput_oms = Some(h.tput_oms);
        self.hw_outage_oms = Some(h.outage_oms);
    }

    pub fn with_optimum(mut self, opt: &Optimum, fbs_density: f64) -> Self {
        self = self.with_control(&opt.control, fbs_density).with_report(&opt.report);
        let d = &opt.diagnostics;
        self.area = Some(opt.area);
        self.dmax = Some(d.dmax.radius);
        self.binding = d.binding.name().into();
        self.fms_limited = Some(d.fms_limited || d.fms_limited_direct);
        self.coverage_condition = Some(d.coverage_condition);
        self.convexity_verified = d.convexity_verified;
        self.infeasible = Some(d.infeasible);
        self
    }

    pub fn with_estimate(mut self, e: &SimEstimate, seed: u64) -> Self {
        self = self.with_report(&e.report);
        self.drops = Some(e.drops);
        self.seed = Some(seed);
        self
    }

    pub fn at(mut self, var: &str, value: f64) -> Self {
        self.sweep_var = var.into();
        self.sweep_value = Some(value);
        self
    }

    pub fn metric(&self, m: Metric) -> Option<f64> {
        match m {
            Metric::SeFms => self.se_fms,
            Metric::SeMms => self.se_mms,
            Metric::SeOms => self.se_oms,
            Metric::TputFms => self.tput_fms,
            Metric::TputMms => self.tput_mms,
            Metric::TputOms => self.tput_oms,
            Metric::OutageOms => self.outage_oms,
        }
    }
}

/// One metric of an analysis/simulation comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationRow {
    pub schema: String,
    pub scheme: String,
    pub service_radius: f64,
    pub drops: usize,
    pub seed: u64,
    pub metric: String,
    pub analytic: f64,
    pub simulated: f64,
    pub rel_error: f64,
    pub std_error: f64,
    pub half_width: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Opens `path`, or standard output when `None`.
pub fn sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_table<R: Serialize>(out: impl Write, rows: &[R]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

type Column = Box<dyn Fn(&ResultRow) -> Option<f64>>;

/// Writes one `<metric>.dat` file per reported metric plus the operating
/// point columns, each holding `sweep_value value` lines for the rows that
/// carry the metric.
pub fn write_series(dir: &Path, axis: &str, rows: &[ResultRow]) -> io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut columns: Vec<(&str, Column)> =
        Metric::ALL.iter().map(|&m| (m.name(), Box::new(move |r: &ResultRow| r.metric(m)) as Column)).collect();
    columns.push(("rho", Box::new(|r| r.rho)));
    columns.push(("service_radius", Box::new(|r| r.service_radius)));
    columns.push(("beta", Box::new(|r| r.beta)));
    columns.push(("theta", Box::new(|r| r.theta)));
    for (name, get) in &columns {
        let mut f = io::BufWriter::new(File::create(dir.join(format!("{name}.dat")))?);
        writeln!(f, "# {axis} {name}")?;
        for r in rows {
            if let (Some(x), Some(y)) = (r.sweep_value, get(r)) {
                writeln!(f, "{x} {y}")?;
            }
        }
        f.flush()?;
    }
    Ok(())
}

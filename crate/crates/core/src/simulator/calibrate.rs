use super::campaign::{Campaign, SimEstimate};
use super::scheme::{Scheme, SchemeSpec, SimSettings};
use crate::analytic::find_dmax;
use crate::error::Error;
use crate::model::{ControlParams, NetworkConfig};
use crate::optimizer::{grid, rho_from_terms, AbcdTerms};
use crate::Result;

/// Band split chosen for a `Div*` scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct DivCalibration {
    pub rho: f64,
    /// Some grid point met the constraints.
    pub feasible: bool,
    pub estimate: SimEstimate,
}

/// Picks `rho` on a 0.01 grid maximizing the simulated mMS throughput
/// subject to `T_f >= M T_m` (and `T_f >= K T_o` for `DivRSSI`).
///
/// Association under a `Div*` scheme does not depend on `rho`, so one
/// campaign serves the whole grid. Without a feasible point the result
/// reports `rho = 1`.
pub fn calibrate_div(
    cfg: &NetworkConfig<f64>,
    scheme: Scheme,
    drops: usize,
    base_seed: u64,
    settings: &SimSettings,
) -> Result<DivCalibration> {
    if !matches!(scheme, Scheme::DivRssi | Scheme::DivCa) {
        return Err(Error::Config(format!("{} is not a Div scheme", scheme.name())));
    }
    let spec = SchemeSpec::new(scheme, ControlParams::open(0.5, cfg.home_radius));
    let camp = Campaign::run(&spec, cfg, drops, base_seed, settings)?;
    let mut best: Option<(f64, SimEstimate)> = None;
    for i in 0..=100 {
        let rho = i as f64 / 100.0;
        let e = camp.estimate_at(rho, 0.0);
        let r = &e.report;
        let ok = r.tput_fms() >= cfg.benefit_ratio * r.tput_mms()
            && (scheme == Scheme::DivCa || r.tput_fms() >= cfg.oms_ratio * r.tput_oms());
        if ok && best.as_ref().is_none_or(|(_, b)| r.tput_mms() > b.report.tput_mms()) {
            best = Some((rho, e));
        }
    }
    Ok(match best {
        Some((rho, estimate)) => DivCalibration { rho, feasible: true, estimate },
        None => DivCalibration { rho: 1.0, feasible: false, estimate: camp.estimate_at(1.0, 0.0) },
    })
}

/// One point of the CoLB bias sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ColbPoint {
    pub delta_db: f64,
    pub outage: f64,
    pub std_error: f64,
    pub estimate: SimEstimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColbCalibration {
    /// Largest grid bias whose simulated oMS outage meets the cap; 0 dB if none.
    pub delta_db: f64,
    pub points: Vec<ColbPoint>,
}

/// Bias grid 0, 0.25, ..., 10 dB.
pub fn default_colb_grid() -> Vec<f64> {
    (0..=40).map(|i| 0.25 * f64::from(i)).collect()
}

/// Sweeps the CoLB bias over `grid_db`. Every point reuses the same drops.
pub fn calibrate_colb(
    cfg: &NetworkConfig<f64>,
    grid_db: &[f64],
    drops: usize,
    base_seed: u64,
    settings: &SimSettings,
) -> Result<ColbCalibration> {
    let mut points = Vec::with_capacity(grid_db.len());
    for &delta_db in grid_db {
        let mut spec = SchemeSpec::new(Scheme::CoLb, ControlParams::open(0.0, cfg.home_radius));
        spec.colb_delta_db = delta_db;
        let estimate = Campaign::run(&spec, cfg, drops, base_seed, settings)?.estimate();
        points.push(ColbPoint {
            delta_db,
            outage: estimate.report.values.outage_oms,
            std_error: estimate.std_errors.outage_oms,
            estimate,
        });
    }
    let delta_db = points.iter().filter(|p| p.outage <= cfg.outage_cap).map(|p| p.delta_db).fold(0.0, f64::max);
    Ok(ColbCalibration { delta_db, points })
}

/// One candidate service radius of the capped-admission experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct CapPoint {
    pub service_radius: f64,
    /// Terms measured by simulation.
    pub terms: AbcdTerms<f64>,
    pub rho: f64,
    pub beta: f64,
    pub estimate: SimEstimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapExperiment {
    pub best: CapPoint,
    pub points: Vec<CapPoint>,
}

/// `n` service radii from `D_h` to the analytic `D_max` at activity `theta`.
pub fn default_radius_grid(cfg: &NetworkConfig<f64>, theta: f64, n: usize) -> Result<Vec<f64>> {
    let dmax = find_dmax(cfg, theta)?.radius;
    if dmax <= cfg.home_radius || n < 2 {
        return Ok(vec![cfg.home_radius]);
    }
    Ok(grid(cfg.home_radius, dmax, n))
}

/// Simulate-then-optimize over quantized service radii: for each radius the
/// measured terms give `rho*` (and `beta*` for hybrid access); the radius
/// with the largest simulated mMS throughput wins.
pub fn optimize_by_simulation(
    cfg: &NetworkConfig<f64>,
    base: &SchemeSpec,
    radii: &[f64],
    drops: usize,
    base_seed: u64,
    settings: &SimSettings,
) -> Result<CapExperiment> {
    if !base.scheme.is_proposed() {
        return Err(Error::Config(format!("{} has no service radius", base.scheme.name())));
    }
    if radii.is_empty() {
        return Err(Error::Config("empty service radius grid".into()));
    }
    let hybrid = matches!(base.scheme, Scheme::Ha | Scheme::HaThin);
    let mut points = Vec::with_capacity(radii.len());
    for &d in radii {
        let mut spec = *base;
        spec.control.service_radius = d;
        let camp = Campaign::run(&spec, cfg, drops, base_seed, settings)?;
        let terms = camp.terms();
        let ((t_m, t_fo), beta) = if hybrid { (terms.hybrid(), terms.beta()) } else { (terms.open(), 0.0) };
        let rho = if t_m + t_fo > 0.0 { rho_from_terms(t_m, t_fo) } else { 0.0 };
        let estimate = camp.estimate_at(rho, beta);
        points.push(CapPoint { service_radius: d, terms, rho, beta, estimate });
    }
    let best = points
        .iter()
        .fold(None::<&CapPoint>, |acc, p| match acc {
            Some(b) if b.estimate.report.tput_mms() >= p.estimate.report.tput_mms() => Some(b),
            _ => Some(p),
        })
        .cloned()
        .ok_or_else(|| Error::Config("empty service radius grid".into()))?;
    Ok(CapExperiment { best, points })
}

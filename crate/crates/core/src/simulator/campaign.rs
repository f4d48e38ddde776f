use std::io::{self, Write};

use rayon::prelude::*;

use super::association::{associate, Server};
use super::drop::generate_drop;
use super::evaluate::{evaluate_drop, UserClass, UserResult};
use super::scheme::{SchemeSpec, SimSettings};
use crate::model::NetworkConfig;
use crate::optimizer::AbcdTerms;
use crate::report::{Metric, Metrics, Source, ThroughputReport};
use crate::Result;

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// Per-drop sums over the users of one class.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClassSums {
    pub count: f64,
    /// Sum of spectral efficiencies.
    pub se: f64,
    /// Sum of `se * share`.
    pub shared: f64,
    /// Sum of outage probabilities.
    pub outage: f64,
}

impl ClassSums {
    fn add(&mut self, r: &UserResult) {
        self.count += 1.0;
        self.se += r.se;
        self.shared += r.se * r.share;
        self.outage += r.outage;
    }
}

/// Sufficient statistics of one drop; any `(rho, beta)` can be applied
/// afterwards without re-simulating.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DropSums {
    pub index: u64,
    pub mms: ClassSums,
    pub fms: ClassSums,
    pub oms: ClassSums,
    pub fbs: usize,
    pub tagged_fbs: usize,
    pub users_inside: usize,
    pub offloaded_inside: usize,
}

/// Mean number of counted users of each class per drop.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClassCounts {
    pub mms: f64,
    pub fms: f64,
    pub oms: f64,
}

/// Simulated report with its uncertainty.
#[derive(Debug, Clone, PartialEq)]
pub struct SimEstimate {
    /// Pooled per-user means; `half_widths` holds 95% intervals.
    pub report: ThroughputReport<f64>,
    pub drops: usize,
    pub std_errors: Metrics<f64>,
    pub mean_counts: ClassCounts,
    /// Fraction of users inside the macrocell served by a femtocell.
    pub offloaded_fraction: f64,
    /// Simulated oMS outage does not exceed the outage cap.
    pub outage_within_cap: bool,
}

/// All drops of one campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct Campaign {
    pub spec: SchemeSpec,
    pub base_seed: u64,
    pub bandwidth: f64,
    pub benefit_ratio: f64,
    pub oms_ratio: f64,
    pub outage_cap: f64,
    pub drops: Vec<DropSums>,
}

/// Pooled ratio `sum y / sum n` and its delta-method standard error.
fn ratio(y: impl Fn(&DropSums) -> f64, n: impl Fn(&DropSums) -> f64, drops: &[DropSums]) -> (f64, f64) {
    let sy: f64 = drops.iter().map(&y).sum();
    let sn: f64 = drops.iter().map(&n).sum();
    if sn <= 0.0 {
        return (0.0, 0.0);
    }
    let r = sy / sn;
    let d = drops.len() as f64;
    if drops.len() < 2 {
        return (r, f64::INFINITY);
    }
    let ss: f64 = drops.iter().map(|s| (y(s) - r * n(s)).powi(2)).sum();
    (r, (d * ss / (d - 1.0)).sqrt() / sn)
}

impl Campaign {
    /// Simulates `drops` drops of `spec` in parallel. The result is
    /// bit-identical for any number of worker threads.
    pub fn run(
        spec: &SchemeSpec,
        cfg: &NetworkConfig<f64>,
        drops: usize,
        base_seed: u64,
        settings: &SimSettings,
    ) -> Result<Campaign> {
        spec.validate()?;
        let sums = (0..drops as u64)
            .into_par_iter()
            .map(|i| simulate_drop(spec, cfg, settings, base_seed, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Campaign {
            spec: *spec,
            base_seed,
            bandwidth: cfg.bandwidth,
            benefit_ratio: cfg.benefit_ratio,
            oms_ratio: cfg.oms_ratio,
            outage_cap: cfg.outage_cap,
            drops: sums,
        })
    }

    /// Estimate at the campaign's own operating point.
    pub fn estimate(&self) -> SimEstimate {
        self.estimate_for(&self.spec)
    }

    /// Estimate after replacing the band split and owner dedication.
    pub fn estimate_at(&self, rho: f64, beta: f64) -> SimEstimate {
        let mut spec = self.spec;
        spec.control.rho = rho;
        spec.control.beta = beta;
        self.estimate_for(&spec)
    }

    fn estimate_for(&self, spec: &SchemeSpec) -> SimEstimate {
        let d = &self.drops;
        let w = self.bandwidth;
        let (beta, theta) = (spec.beta(), spec.theta());
        let f_scale = theta * spec.femto_band() * w;
        let m_scale = spec.macro_band() * w;
        let mut values = Metrics::default();
        let mut se = Metrics::default();
        let mut put = |m: Metric, (v, s): (f64, f64), scale: f64| {
            values.set(m, scale * v);
            se.set(m, scale * s);
        };
        put(Metric::SeFms, ratio(|s| s.fms.se, |s| s.fms.count, d), 1.0);
        put(Metric::SeMms, ratio(|s| s.mms.se, |s| s.mms.count, d), 1.0);
        put(Metric::SeOms, ratio(|s| s.oms.se, |s| s.oms.count, d), 1.0);
        put(Metric::TputFms, ratio(|s| beta * s.fms.se + (1.0 - beta) * s.fms.shared, |s| s.fms.count, d), f_scale);
        put(Metric::TputMms, ratio(|s| s.mms.shared, |s| s.mms.count, d), m_scale);
        put(Metric::TputOms, ratio(|s| s.oms.shared, |s| s.oms.count, d), f_scale * (1.0 - beta));
        put(Metric::OutageOms, ratio(|s| s.oms.outage, |s| s.oms.count, d), 1.0);

        let mut report = ThroughputReport::new(values, self.benefit_ratio, self.oms_ratio, Source::Simulated);
        let mut hw = Metrics::default();
        for m in Metric::ALL {
            hw.set(m, Z95 * se.get(m));
        }
        report.half_widths = Some(hw);
        let n = d.len().max(1) as f64;
        let mean = |f: fn(&DropSums) -> f64| d.iter().map(f).sum::<f64>() / n;
        let inside: usize = d.iter().map(|s| s.users_inside).sum();
        let offloaded: usize = d.iter().map(|s| s.offloaded_inside).sum();
        SimEstimate {
            drops: d.len(),
            std_errors: se,
            mean_counts: ClassCounts {
                mms: mean(|s| s.mms.count),
                fms: mean(|s| s.fms.count),
                oms: mean(|s| s.oms.count),
            },
            offloaded_fraction: if inside > 0 { offloaded as f64 / inside as f64 } else { 0.0 },
            outage_within_cap: values.outage_oms <= self.outage_cap,
            report,
        }
    }

    /// Bandwidth-normalized terms measured by the campaign, in the same
    /// units as the analytic ones. `D` is infinite when `K = 0` or no
    /// offloaded user was observed.
    pub fn terms(&self) -> AbcdTerms<f64> {
        let d = &self.drops;
        let theta = self.spec.theta();
        let m = self.benefit_ratio;
        let a = ratio(|s| s.mms.shared, |s| s.mms.count, d).0;
        let b = theta * ratio(|s| s.fms.se, |s| s.fms.count, d).0 / m;
        let c = theta * ratio(|s| s.fms.shared, |s| s.fms.count, d).0 / m;
        let oms: f64 = d.iter().map(|s| s.oms.count).sum();
        let dd = if self.oms_ratio == 0.0 || oms == 0.0 {
            f64::INFINITY
        } else {
            theta * ratio(|s| s.oms.shared, |s| s.oms.count, d).0 / self.oms_ratio
        };
        AbcdTerms { a, b, c, d: dd }
    }

    /// Writes one line per drop: seed, index, counts and per-class means.
    pub fn write_records<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mean = |c: &ClassSums, v: f64| if c.count > 0.0 { v / c.count } else { 0.0 };
        for s in &self.drops {
            writeln!(
                out,
                "seed={} drop={} fbs={} tagged={} n_mms={} n_fms={} n_oms={} se_mms={:.16e} se_fms={:.16e} se_oms={:.16e} outage_oms={:.16e}",
                self.base_seed,
                s.index,
                s.fbs,
                s.tagged_fbs,
                s.mms.count,
                s.fms.count,
                s.oms.count,
                mean(&s.mms, s.mms.se),
                mean(&s.fms, s.fms.se),
                mean(&s.oms, s.oms.se),
                mean(&s.oms, s.oms.outage),
            )?;
        }
        Ok(())
    }
}

/// Generates, associates and evaluates drop `index`.
pub fn simulate_drop(
    spec: &SchemeSpec,
    cfg: &NetworkConfig<f64>,
    settings: &SimSettings,
    base_seed: u64,
    index: u64,
) -> Result<DropSums> {
    let drop = generate_drop(cfg, settings, base_seed, index)?;
    let assignment = associate(&drop, spec, cfg);
    let mut sums = DropSums { index, fbs: drop.fbs.len(), tagged_fbs: drop.tagged_count(), ..DropSums::default() };
    for r in evaluate_drop(&drop, &assignment, spec, cfg, settings.fading_samples) {
        match r.class {
            UserClass::Mms => sums.mms.add(&r),
            UserClass::Fms => sums.fms.add(&r),
            UserClass::Oms => sums.oms.add(&r),
        }
    }
    for (u, srv) in drop.users.iter().zip(&assignment.users) {
        if drop.inside_macro(u.pos) {
            sums.users_inside += 1;
            sums.offloaded_inside += matches!(srv, Server::Femto(_)) as usize;
        }
    }
    Ok(sums)
}

/// Runs a campaign and summarizes it at the scheme's operating point.
pub fn run_campaign(
    spec: &SchemeSpec,
    cfg: &NetworkConfig<f64>,
    drops: usize,
    base_seed: u64,
    settings: &SimSettings,
) -> Result<SimEstimate> {
    Ok(Campaign::run(spec, cfg, drops, base_seed, settings)?.estimate())
}

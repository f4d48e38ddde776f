use std::fmt;

use rayon::prelude::*;

use super::terms::{rho_from_terms, TermModel};
use crate::analytic::{
    find_dmax_with, oms_share_factor, service_area, service_radius, sharing_factor, Dmax, Evaluator,
};
use crate::model::NetworkConfig;
use crate::numerics::QuadratureSpec;
use crate::{Result, Scalar};

const CONVEXITY_SLACK: f64 = -1e-9;

/// Feasible service-area interval `[X_min, X_max]` for one thinning probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct AreaBounds<T> {
    pub dmax: Dmax<T>,
    pub xmin: T,
    pub xmax: T,
    /// Radius matching `xmax`; below `D_max` only when the area was clamped.
    pub radius_max: T,
}

pub(crate) fn area_bounds<T: Scalar>(eval: &Evaluator<T>) -> Result<AreaBounds<T>> {
    let cfg = eval.cfg();
    let dmax = find_dmax_with(cfg, eval.theta(), eval.quadrature())?;
    let lf = cfg.fbs_density();
    let xmin = service_area(cfg.home_radius, lf);
    let mut xmax = service_area(dmax.radius, lf).max(xmin);
    let mut radius_max = dmax.radius;
    // Keep a sliver of macrocell area when the search saturates.
    let cap = (T::one() - T::lit(1e-9)) / lf;
    if lf > T::zero() && xmax > cap {
        xmax = cap;
        radius_max = service_radius(cap, lf)?;
    }
    Ok(AreaBounds { dmax, xmin, xmax, radius_max })
}

pub(crate) fn grid<T: Scalar>(lo: T, hi: T, n: usize) -> Vec<T> {
    let n = n.max(2);
    let step = (hi - lo) / T::from_usize_lossy(n - 1);
    (0..n).map(|i| if i + 1 == n { hi } else { lo + step * T::from_usize_lossy(i) }).collect()
}

/// Subscriber-limited regime test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FmsLimited<T> {
    /// Closed-form sufficient condition `ratio <= bound`.
    pub sufficient: bool,
    /// `C(x) <= D(x)` at every point of the area grid.
    pub direct: bool,
    /// `B_f C'(n_o(X_min)) / (B_o(X_max) D'(n_o(X_min)))`.
    pub ratio: T,
    /// `M / K`, infinite when `K = 0`.
    pub bound: T,
}

impl<T> FmsLimited<T> {
    pub fn holds(&self) -> bool {
        self.sufficient || self.direct
    }
}

pub(crate) fn fms_limited_on<T: Scalar>(
    eval: &Evaluator<T>,
    b: &AreaBounds<T>,
    points: usize,
) -> Result<FmsLimited<T>> {
    let cfg = eval.cfg();
    let k = cfg.oms_ratio;
    let bound = if k == T::zero() { T::infinity() } else { cfg.benefit_ratio / k };
    let n_o = eval.population(b.xmin)?.oms;
    let ratio = eval.se_fms() * sharing_factor(n_o) / (eval.se_oms(b.xmax)? * oms_share_factor(n_o));
    if k == T::zero() {
        return Ok(FmsLimited { sufficient: true, direct: true, ratio, bound });
    }
    let model = TermModel::new(eval);
    let checks = grid(b.xmin, b.xmax, points)
        .into_par_iter()
        .map(|x| model.terms(x).map(|t| t.c <= t.d))
        .collect::<Result<Vec<bool>>>()?;
    Ok(FmsLimited { sufficient: ratio <= bound, direct: checks.into_iter().all(|ok| ok), ratio, bound })
}

/// Evaluates the subscriber-limited sufficient condition and its direct
/// grid counterpart on the feasible area range.
pub fn fms_limited_check<T: Scalar>(cfg: &NetworkConfig<T>, theta: T) -> Result<FmsLimited<T>> {
    let eval = Evaluator::new(cfg, theta)?;
    let b = area_bounds(&eval)?;
    fms_limited_on(&eval, &b, 200)
}

/// Minimum scaled second differences of the reduced objective `1/A + 1/C`
/// and of each of its two terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityReport<T> {
    pub points: usize,
    pub min_total: T,
    /// Owner term `1/C`.
    pub min_fms_term: T,
    /// Macrocell term `1/A`.
    pub min_mms_term: T,
    pub verified: bool,
}

fn scaled_second_difference<T: Scalar>(f: [T; 3]) -> T {
    let scale = f[0].abs() + T::lit(2.0) * f[1].abs() + f[2].abs();
    if scale == T::zero() {
        return T::zero();
    }
    (f[0] - T::lit(2.0) * f[1] + f[2]) / scale
}

pub(crate) fn convexity_on<T: Scalar>(
    eval: &Evaluator<T>,
    b: &AreaBounds<T>,
    points: usize,
) -> Result<ConvexityReport<T>> {
    let model = TermModel::new(eval);
    let xs = grid(b.xmin, b.xmax, points.max(3));
    let parts = xs
        .par_iter()
        .map(|&x| model.abc(x).map(|(a, _, c)| (a.recip(), c.recip())))
        .collect::<Result<Vec<(T, T)>>>()?;
    let inf = T::infinity();
    let (mut total, mut fms, mut mms) = (inf, inf, inf);
    if b.xmax > b.xmin {
        for w in parts.windows(3) {
            let m = [w[0].0, w[1].0, w[2].0];
            let f = [w[0].1, w[1].1, w[2].1];
            mms = mms.min(scaled_second_difference(m));
            fms = fms.min(scaled_second_difference(f));
            total = total.min(scaled_second_difference([m[0] + f[0], m[1] + f[1], m[2] + f[2]]));
        }
    }
    let slack = T::lit(CONVEXITY_SLACK);
    Ok(ConvexityReport {
        points: xs.len(),
        min_total: total,
        min_fms_term: fms,
        min_mms_term: mms,
        verified: !(total < slack),
    })
}

/// Checks convexity of the reduced objective on a 1000-point area grid.
pub fn verify_convexity<T: Scalar>(cfg: &NetworkConfig<T>, theta: T) -> Result<ConvexityReport<T>> {
    let eval = Evaluator::new(cfg, theta)?;
    let b = area_bounds(&eval)?;
    convexity_on(&eval, &b, 1000)
}

/// Inputs of the maximum-coverage sufficient condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CoverageCondition<T> {
    /// `theta N_f B_f / (M B_m)`.
    pub quantity: T,
    pub macro_users: T,
    pub femto_users: T,
    pub holds: bool,
}

pub(crate) fn coverage_condition<T: Scalar>(
    eval: &Evaluator<T>,
    b: &AreaBounds<T>,
    fms: &FmsLimited<T>,
) -> Result<CoverageCondition<T>> {
    let cfg = eval.cfg();
    let quantity = eval.theta() * cfg.fbs_mean * eval.se_fms() / (cfg.benefit_ratio * eval.se_mms());
    let pop = eval.population(b.xmax)?;
    let holds = quantity > T::one() && fms.holds() && pop.mms >= pop.oms;
    Ok(CoverageCondition { quantity, macro_users: pop.mms, femto_users: pop.oms, holds })
}

/// Status of one deployment suitability item.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChecklistStatus {
    Met,
    NotMet,
    RequiresOperatorInput,
}

impl ChecklistStatus {
    pub fn name(self) -> &'static str {
        match self {
            ChecklistStatus::Met => "met",
            ChecklistStatus::NotMet => "not met",
            ChecklistStatus::RequiresOperatorInput => "requires operator input",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChecklistItem {
    pub label: &'static str,
    pub status: ChecklistStatus,
}

/// Diagnostic summary of the structural conditions for one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport<T> {
    pub theta: T,
    pub fms: FmsLimited<T>,
    pub coverage_quantity: T,
    pub macro_users: T,
    pub femto_users: T,
    pub coverage_condition: bool,
    /// `X_max` when the maximum-coverage condition holds.
    pub predicted_area: Option<T>,
    pub dmax: Dmax<T>,
    pub area_min: T,
    pub area_max: T,
    /// Open access split at `X_max`.
    pub rho_at_max: T,
    pub checklist: Vec<ChecklistItem>,
}

/// Evaluates the regime and coverage conditions at thinning probability `theta`.
pub fn report_conditions<T: Scalar>(cfg: &NetworkConfig<T>, theta: T) -> Result<ConditionReport<T>> {
    report_conditions_with(cfg, theta, &QuadratureSpec::default(), 200)
}

pub(crate) fn report_conditions_with<T: Scalar>(
    cfg: &NetworkConfig<T>,
    theta: T,
    quad: &QuadratureSpec<T>,
    points: usize,
) -> Result<ConditionReport<T>> {
    let eval = Evaluator::with_quadrature(cfg, theta, *quad)?;
    let b = area_bounds(&eval)?;
    let fms = fms_limited_on(&eval, &b, points)?;
    let cov = coverage_condition(&eval, &b, &fms)?;
    let (t_m, t_fo) = TermModel::new(&eval).terms(b.xmax)?.open();
    let rho_at_max = rho_from_terms(t_m, t_fo);
    let flag = |ok: bool| if ok { ChecklistStatus::Met } else { ChecklistStatus::NotMet };
    let operator = ChecklistStatus::RequiresOperatorInput;
    let checklist = vec![
        ChecklistItem { label: "macrocell load calls for heavy offloading", status: operator },
        ChecklistItem { label: "femtocells must fill macrocell coverage holes", status: operator },
        ChecklistItem {
            label: "subscriber requirement leaves macrocell bandwidth (rho < 1 at X_max)",
            status: flag(rho_at_max < T::one()),
        },
        ChecklistItem { label: "subscriber revenue from femtocell sales is modest", status: operator },
        ChecklistItem { label: "macrocell cost savings are significant", status: operator },
    ];
    Ok(ConditionReport {
        theta,
        fms,
        coverage_quantity: cov.quantity,
        macro_users: cov.macro_users,
        femto_users: cov.femto_users,
        coverage_condition: cov.holds,
        predicted_area: cov.holds.then_some(b.xmax),
        dmax: b.dmax,
        area_min: b.xmin,
        area_max: b.xmax,
        rho_at_max,
        checklist,
    })
}

impl<T: Scalar> fmt::Display for ConditionReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "theta                          {}", self.theta)?;
        writeln!(f, "D_max (m)                      {:.3}", self.dmax.radius.as_f64())?;
        writeln!(f, "outage at home radius          {:.6}", self.dmax.home_outage.as_f64())?;
        writeln!(f, "infeasible                     {}", yes_no(self.dmax.infeasible))?;
        writeln!(f, "area range (m^2)               [{:.3}, {:.3}]", self.area_min.as_f64(), self.area_max.as_f64())?;
        writeln!(f, "fms-limited ratio vs M/K       {:.6} vs {}", self.fms.ratio.as_f64(), self.fms.bound.as_f64())?;
        writeln!(f, "fms-limited (sufficient)       {}", yes_no(self.fms.sufficient))?;
        writeln!(f, "fms-limited (grid check)       {}", yes_no(self.fms.direct))?;
        writeln!(f, "theta N_f B_f / (M B_m) vs 1   {:.6}", self.coverage_quantity.as_f64())?;
        writeln!(
            f,
            "macro users vs femto users     {:.3} vs {:.3}",
            self.macro_users.as_f64(),
            self.femto_users.as_f64()
        )?;
        writeln!(f, "maximum coverage optimal       {}", yes_no(self.coverage_condition))?;
        match self.predicted_area {
            Some(x) => writeln!(f, "predicted x* = X_max (m^2)     {:.3}", x.as_f64())?,
            None => writeln!(f, "predicted x*                   undetermined")?,
        }
        writeln!(f, "open access rho at X_max       {:.6}", self.rho_at_max.as_f64())?;
        writeln!(f, "deployment checklist:")?;
        for item in &self.checklist {
            writeln!(f, "  - {}: {}", item.label, item.status.name())?;
        }
        Ok(())
    }
}

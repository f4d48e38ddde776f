use std::cmp::Ordering;

use rayon::prelude::*;

use super::conditions::{area_bounds, convexity_on, coverage_condition, fms_limited_on};
use super::terms::{rho_from_terms, AbcdTerms, TermModel};
use super::{Binding, Diagnostics, Mode, OptimizationResult};
use crate::analytic::{service_radius, Evaluator};
use crate::error::Error;
use crate::model::{ControlParams, NetworkConfig};
use crate::numerics::{try_minimize_1d, MinimizeSpec, QuadratureSpec};
use crate::{Result, Scalar};

const BINDING_TOL: f64 = 1e-6;
const THETA_TIE: f64 = 1e-9;

/// Search resolution and numerical settings of the optimizer.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverSpec<T> {
    /// Grid and refinement settings of the open access area search.
    pub minimize: MinimizeSpec<T>,
    /// Uniform area grid size of the hybrid access search.
    pub ha_grid_points: usize,
    /// Thinning probability used by the unthinned modes.
    pub theta: T,
    /// Candidate thinning probabilities of the thinned modes.
    pub theta_grid: Vec<T>,
    /// Area grid size of the direct subscriber-limited check.
    pub condition_grid_points: usize,
    /// Area grid size of the convexity check.
    pub convexity_points: usize,
    pub quadrature: QuadratureSpec<T>,
}

impl<T: Scalar> Default for SolverSpec<T> {
    fn default() -> Self {
        SolverSpec {
            minimize: MinimizeSpec::default(),
            ha_grid_points: 2000,
            theta: T::one(),
            theta_grid: default_theta_grid(),
            condition_grid_points: 200,
            convexity_points: 1000,
            quadrature: QuadratureSpec::default(),
        }
    }
}

/// `{0.05, 0.10, ..., 1.00}`.
pub fn default_theta_grid<T: Scalar>() -> Vec<T> {
    (1..=20).map(|i| T::from_usize_lossy(i) / T::lit(20.0)).collect()
}

impl<T: Scalar> SolverSpec<T> {
    pub fn validate(&self) -> Result<()> {
        self.quadrature.validate()?;
        let ok = |t: T| t > T::zero() && t <= T::one();
        if !ok(self.theta) {
            return Err(Error::Config(format!("theta = {} outside (0, 1]", self.theta)));
        }
        if self.theta_grid.is_empty() || !self.theta_grid.iter().all(|&t| ok(t)) {
            return Err(Error::Config("theta grid must be non-empty and inside (0, 1]".into()));
        }
        if self.ha_grid_points < 3 || self.minimize.grid_points < 3 {
            return Err(Error::Config("area grids need at least 3 points".into()));
        }
        Ok(())
    }
}

/// Solves the load balancing problem in the given mode.
pub fn solve<T: Scalar>(cfg: &NetworkConfig<T>, mode: Mode, spec: &SolverSpec<T>) -> Result<OptimizationResult<T>> {
    spec.validate()?;
    if mode.is_thinned() {
        solve_sweep(cfg, mode, &spec.theta_grid, spec)
    } else {
        solve_fixed(cfg, mode, spec.theta, spec)
    }
}

/// Open access at a fixed thinning probability.
pub fn solve_oa<T: Scalar>(cfg: &NetworkConfig<T>, theta: T) -> Result<OptimizationResult<T>> {
    solve(cfg, Mode::Oa, &SolverSpec { theta, ..SolverSpec::default() })
}

/// Hybrid access at a fixed thinning probability.
pub fn solve_ha<T: Scalar>(cfg: &NetworkConfig<T>, theta: T) -> Result<OptimizationResult<T>> {
    solve(cfg, Mode::Ha, &SolverSpec { theta, ..SolverSpec::default() })
}

/// Open access, best over the candidate thinning probabilities.
pub fn solve_oa_thin<T: Scalar>(cfg: &NetworkConfig<T>, theta_grid: &[T]) -> Result<OptimizationResult<T>> {
    solve(cfg, Mode::OaThin, &SolverSpec { theta_grid: theta_grid.to_vec(), ..SolverSpec::default() })
}

/// Hybrid access, best over the candidate thinning probabilities.
pub fn solve_ha_thin<T: Scalar>(cfg: &NetworkConfig<T>, theta_grid: &[T]) -> Result<OptimizationResult<T>> {
    solve(cfg, Mode::HaThin, &SolverSpec { theta_grid: theta_grid.to_vec(), ..SolverSpec::default() })
}

fn solve_sweep<T: Scalar>(
    cfg: &NetworkConfig<T>,
    mode: Mode,
    grid: &[T],
    spec: &SolverSpec<T>,
) -> Result<OptimizationResult<T>> {
    let results = grid.par_iter().map(|&theta| solve_fixed(cfg, mode, theta, spec)).collect::<Result<Vec<_>>>()?;
    let feasible = results.iter().filter(|r| !r.diagnostics.infeasible);
    let best = feasible.max_by(|a, b| compare_theta_candidates(a, b));
    match best {
        Some(r) => Ok(r.clone()),
        None => {
            let mut r = solve_fixed(cfg, mode, T::one(), spec)?;
            r.mode = mode;
            Ok(r)
        }
    }
}

/// Larger objective wins; near-ties go to the larger thinning probability.
fn compare_theta_candidates<T: Scalar>(a: &OptimizationResult<T>, b: &OptimizationResult<T>) -> Ordering {
    let scale = a.objective.abs().max(b.objective.abs());
    if (a.objective - b.objective).abs() <= T::lit(THETA_TIE) * scale {
        return a.control.theta.partial_cmp(&b.control.theta).unwrap_or(Ordering::Equal);
    }
    a.objective.partial_cmp(&b.objective).unwrap_or(Ordering::Equal)
}

fn solve_fixed<T: Scalar>(
    cfg: &NetworkConfig<T>,
    mode: Mode,
    theta: T,
    spec: &SolverSpec<T>,
) -> Result<OptimizationResult<T>> {
    let hybrid = mode.is_hybrid();
    let eval = Evaluator::with_quadrature(cfg, theta, spec.quadrature)?;
    let bounds = area_bounds(&eval)?;
    let fms = fms_limited_on(&eval, &bounds, spec.condition_grid_points)?;
    let model = TermModel::new(&eval);
    let (xmin, xmax) = (bounds.xmin, bounds.xmax);

    let mut convexity_verified = None;
    let x = if bounds.dmax.infeasible {
        xmin
    } else if !hybrid && fms.holds() {
        convexity_verified = Some(convexity_on(&eval, &bounds, spec.convexity_points)?.verified);
        try_minimize_1d(|x| model.reduced_objective(x), xmin, xmax, &spec.minimize)?.x
    } else {
        let objective = |x: T| {
            let t = model.terms(x)?;
            let (t_m, t_fo) = if hybrid { t.hybrid() } else { t.open() };
            Ok(-AbcdTerms::objective(t_m, t_fo))
        };
        let mut search = spec.minimize;
        if hybrid {
            search.grid_points = spec.ha_grid_points;
        }
        try_minimize_1d(objective, xmin, xmax, &search)?.x
    };

    let terms = model.terms(x)?;
    let (t_m, t_fo) = if hybrid { terms.hybrid() } else { terms.open() };
    let rho = rho_from_terms(t_m, t_fo);
    let beta = if hybrid { terms.beta() } else { T::zero() };
    let radius = if x == xmin {
        cfg.home_radius
    } else if x == xmax {
        bounds.radius_max
    } else {
        service_radius(x, cfg.fbs_density())?.max(cfg.home_radius).min(bounds.radius_max)
    };
    let control = ControlParams { rho, service_radius: radius, beta, theta };
    let report = eval.report(&control)?;
    let coverage = coverage_condition(&eval, &bounds, &fms)?;

    let t_m = report.tput_mms();
    let tight = |v: T| (v - t_m).abs() <= T::lit(BINDING_TOL) * t_m.abs().max(T::min_positive_value());
    let fms_tight = tight(report.tput_fms() / cfg.benefit_ratio);
    let oms_tight = cfg.oms_ratio > T::zero() && tight(report.tput_oms() / cfg.oms_ratio);
    let binding = match (fms_tight, oms_tight) {
        (true, true) => Binding::Both,
        (false, true) => Binding::Oms,
        _ => Binding::Fms,
    };

    Ok(OptimizationResult {
        mode,
        control,
        area: x,
        objective: t_m,
        report,
        diagnostics: Diagnostics {
            fms_limited: fms.sufficient,
            fms_limited_direct: fms.direct,
            coverage_condition: coverage.holds,
            convexity_verified,
            binding,
            infeasible: bounds.dmax.infeasible,
            dmax: bounds.dmax,
            area_min: xmin,
            area_max: xmax,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{service_area, tput_mms};
    use crate::model::NetworkSpec;

    fn cfg() -> NetworkConfig<f64> {
        NetworkConfig::defaults()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn theta_grid_is_twenty_steps() {
        let g: Vec<f64> = default_theta_grid();
        assert_eq!(g.len(), 20);
        assert_eq!(g[0], 0.05);
        assert_eq!(g[19], 1.0);
    }

    #[test]
    fn oa_defaults_use_full_coverage() {
        let r = solve_oa(&cfg(), 1.0).unwrap();
        let d = r.diagnostics;
        assert!(d.fms_limited || d.fms_limited_direct);
        assert!(d.coverage_condition);
        assert_eq!(d.convexity_verified, Some(true));
        assert_eq!(r.area, d.area_max);
        assert!((r.control.service_radius - d.dmax.radius).abs() < 1e-9);
        assert_eq!(r.control.beta, 0.0);
        assert!(r.control.rho > 0.0 && r.control.rho < 1.0);
        assert!(matches!(d.binding, Binding::Fms | Binding::Both));
    }

    #[test]
    fn objective_matches_independent_recomputation() {
        let c = cfg();
        for r in [solve_oa(&c, 1.0).unwrap(), solve_ha(&c, 1.0).unwrap()] {
            let x = service_area(r.control.service_radius, c.fbs_density());
            let direct = tput_mms(r.control.rho, x, &c).unwrap();
            assert!(rel(r.objective, direct) < 1e-10, "{}", r.mode.name());
        }
    }

    #[test]
    fn constraints_tight_at_optimum() {
        let c = cfg();
        for r in [solve_oa(&c, 1.0).unwrap(), solve_ha(&c, 1.0).unwrap()] {
            let tm = r.report.tput_mms();
            let f = r.report.tput_fms() / c.benefit_ratio;
            let o = r.report.tput_oms() / c.oms_ratio;
            assert!(f >= tm * (1.0 - 1e-9) && o >= tm * (1.0 - 1e-9), "{}", r.mode.name());
            assert!(rel(f.min(o), tm) < 1e-8, "{}", r.mode.name());
        }
    }

    #[test]
    fn hybrid_balances_all_three_classes() {
        let c = cfg();
        let r = solve_ha(&c, 1.0).unwrap();
        let eval = Evaluator::new(&c, 1.0).unwrap();
        let t = TermModel::new(&eval).terms(r.area).unwrap();
        if t.d >= t.c {
            let tm = r.report.tput_mms();
            assert!(rel(r.report.tput_fms() / c.benefit_ratio, tm) < 1e-8);
            assert!(rel(r.report.tput_oms() / c.oms_ratio, tm) < 1e-8);
            assert_eq!(r.diagnostics.binding, Binding::Both);
        }
        assert!(r.control.beta >= 0.0 && r.control.beta <= 1.0);
    }

    #[test]
    fn hybrid_dominates_open() {
        for m in [2.0, 10.0, 40.0] {
            let c = cfg().with_benefit_ratio(m);
            let oa = solve_oa(&c, 1.0).unwrap();
            let ha = solve_ha(&c, 1.0).unwrap();
            assert!(ha.objective >= oa.objective * (1.0 - 1e-9), "M={m}");
        }
    }

    #[test]
    fn rho_increases_with_benefit_ratio() {
        let mut prev_rho = 0.0;
        let mut prev_obj = f64::INFINITY;
        for m in [1.0, 2.0, 5.0, 10.0, 20.0] {
            let r = solve_oa(&cfg().with_benefit_ratio(m), 1.0).unwrap();
            assert!(r.control.rho >= prev_rho, "M={m}");
            assert!(r.objective <= prev_obj * (1.0 + 1e-12), "M={m}");
            prev_rho = r.control.rho;
            prev_obj = r.objective;
        }
    }

    #[test]
    fn oa_against_area_rho_grid() {
        let c = cfg().with_benefit_ratio(4.0);
        let r = solve_oa(&c, 1.0).unwrap();
        let eval = Evaluator::new(&c, 1.0).unwrap();
        let (xmin, xmax) = (r.diagnostics.area_min, r.diagnostics.area_max);
        let mut best = 0.0_f64;
        for i in 0..60 {
            let x = xmin + (xmax - xmin) * i as f64 / 59.0;
            let pop = eval.population(x).unwrap();
            let se_o = eval.se_oms(x).unwrap();
            for j in 0..=2000 {
                let rho = j as f64 / 2000.0;
                let tm = eval.tput_mms_at(rho, &pop);
                let ok = eval.tput_fms_at(rho, 0.0, &pop) >= c.benefit_ratio * tm
                    && eval.tput_oms_at(rho, 0.0, &pop, se_o) >= c.oms_ratio * tm;
                if ok {
                    best = best.max(tm);
                }
            }
        }
        assert!(r.objective >= best * (1.0 - 1e-9));
        assert!(rel(r.objective, best) < 2e-3, "{} vs {best}", r.objective);
    }

    #[test]
    fn infeasible_pins_home_radius() {
        let mut s = NetworkSpec::default();
        s.outage_cap = 1e-9;
        let c = NetworkConfig::<f64>::from_spec(&s).unwrap();
        let r = solve_oa(&c, 1.0).unwrap();
        assert!(r.diagnostics.infeasible);
        assert_eq!(r.control.service_radius, c.home_radius);
        assert!(r.objective > 0.0);
    }

    #[test]
    fn zero_k_dedicates_everything_in_hybrid() {
        let c = cfg().with_oms_ratio(0.0);
        let r = solve_ha(&c, 1.0).unwrap();
        assert_eq!(r.control.beta, 1.0);
        assert_eq!(r.report.tput_oms(), 0.0);
    }

    #[test]
    fn thinning_never_hurts() {
        let c = cfg().with_fbs_mean(50.0).with_benefit_ratio(2.0);
        let grid = [0.25, 0.5, 0.75, 1.0];
        let oa = solve_oa(&c, 1.0).unwrap();
        let thin = solve_oa_thin(&c, &grid).unwrap();
        assert_eq!(thin.mode, Mode::OaThin);
        assert!(thin.objective >= oa.objective * (1.0 - 1e-12));
        assert!(grid.contains(&thin.control.theta));
    }

    #[test]
    fn spec_validation() {
        let mut s = SolverSpec::<f64>::default();
        assert!(s.validate().is_ok());
        s.theta_grid = vec![0.0];
        assert!(s.validate().is_err());
        s.theta_grid = vec![];
        assert!(s.validate().is_err());
        let s = SolverSpec::<f64> { theta: 1.5, ..SolverSpec::default() };
        assert!(s.validate().is_err());
    }
}

//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line
//! followed by its individual checks, then asserts.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Poisson};

use femtolb::analytic::{
    avg_se_mms, avg_se_mms_quadrature, find_dmax, laplace_arctan, laplace_quadrature, laplace_unbounded,
    oms_share_factor, service_area, sharing_factor, Evaluator, InterferenceField, Population,
};
use femtolb::model::{ControlParams, NetworkConfig, NetworkSpec};
use femtolb::numerics::QuadratureSpec;
use femtolb::optimizer::{
    default_theta_grid, fms_limited_check, optimal_beta, optimal_rho, report_conditions, solve_ha, solve_oa,
    solve_oa_thin, verify_convexity, TermModel,
};
use femtolb::report::Metric;
use femtolb::simulator::{
    calibrate_colb, default_radius_grid, optimize_by_simulation, run_campaign, Campaign, Scheme, SchemeSpec,
    SimEstimate, SimSettings,
};

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), pass, detail: detail.into() }
}

/// Prints the criterion block in one write so parallel tests do not interleave.
fn conclude(n: u32, title: &str, checks: &[Check]) {
    let pass = checks.iter().all(|c| c.pass);
    let mut text = format!("criterion {n}: {} - {title}\n", if pass { "PASS" } else { "FAIL" });
    for c in checks {
        text += &format!("    [{}] {}: {}\n", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).unwrap();
    out.flush().unwrap();
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    assert!(pass, "criterion {n} failed: {failed:?}");
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn defaults() -> NetworkConfig<f64> {
    NetworkConfig::defaults()
}

fn tight() -> QuadratureSpec<f64> {
    QuadratureSpec { abs_tol: 1e-14, rel_tol: 1e-12, max_depth: 50, initial_panels: 16 }
}

// ---------------------------------------------------------------------------
// 1. Analysis against simulation
// ---------------------------------------------------------------------------

fn max_mean_error(analytic: &femtolb::Report, sim: &SimEstimate) -> (f64, &'static str) {
    Metric::MEANS.iter().map(|&m| (rel(sim.report.get(m), analytic.get(m)), m.name())).fold((0.0, ""), |a, b| {
        if b.0 > a.0 {
            b
        } else {
            a
        }
    })
}

#[test]
fn criterion_1_analysis_matches_simulation() {
    let cfg = defaults();
    let eval = Evaluator::new(&cfg, 1.0).unwrap();
    let settings = SimSettings::default();
    let mut checks = Vec::new();
    for d in [20.0, 40.0, 60.0] {
        let control = ControlParams::open(0.5, d);
        let analytic = eval.report(&control).unwrap();
        let spec = SchemeSpec::new(Scheme::Oa, control);
        let full = Campaign::run(&spec, &cfg, 10_000, 2024, &settings).unwrap();
        let (err, worst) = max_mean_error(&analytic, &full.estimate());
        checks.push(check(
            format!("d_f = {d} m, 10^4 drops, 1%"),
            err < 0.01,
            format!("max error {:.3}% ({worst})", 100.0 * err),
        ));

        let desk = Campaign { drops: full.drops[..2000].to_vec(), ..full.clone() };
        let (err, worst) = max_mean_error(&analytic, &desk.estimate());
        checks.push(check(
            format!("d_f = {d} m, 2*10^3 drops, 3%"),
            err < 0.03,
            format!("max error {:.3}% ({worst})", 100.0 * err),
        ));
    }
    // Informational: the same comparison with the spacing rule switched off.
    let plain = SimSettings { min_spacing: 0.0, ..settings };
    let mut worst_plain: f64 = 0.0;
    for d in [20.0, 40.0, 60.0] {
        let control = ControlParams::open(0.5, d);
        let analytic = eval.report(&control).unwrap();
        let sim = run_campaign(&SchemeSpec::new(Scheme::Oa, control), &cfg, 10_000, 2024, &plain).unwrap();
        worst_plain = worst_plain.max(max_mean_error(&analytic, &sim).0);
    }
    checks.push(check(
        "reference: no femtocell spacing, 10^4 drops",
        true,
        format!("max error {:.3}% over all d_f", 100.0 * worst_plain),
    ));
    conclude(1, "analysis/simulation agreement", &checks);
}

// ---------------------------------------------------------------------------
// 2. Closed forms against independent oracles
// ---------------------------------------------------------------------------

/// `sum_n f(n) P[N = n]` for `N ~ Poisson(t)`, truncated far in the tail.
fn poisson_sum(t: f64, f: impl Fn(f64) -> f64) -> f64 {
    let n_max = (t + 40.0 * t.sqrt() + 60.0) as usize;
    let mut p = (-t).exp();
    let mut acc = 0.0;
    for n in 0..=n_max {
        acc += f(n as f64) * p;
        p *= t / (n as f64 + 1.0);
    }
    acc
}

/// Monte Carlo `E[exp(-s I)]` with Rayleigh fading, interferers in the
/// annulus `[D, R]`.
fn laplace_mc(s: f64, field: &InterferenceField<f64>, outer: f64, samples: usize, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inner = field.exclusion_radius;
    let area = std::f64::consts::PI * (outer * outer - inner * inner);
    let count = Poisson::new(field.intensity * area).unwrap();
    let (mut sum, mut sq) = (0.0, 0.0);
    for _ in 0..samples {
        let n = count.sample(&mut rng) as usize;
        let mut i = 0.0;
        for _ in 0..n {
            let u: f64 = rng.random();
            let r = (inner * inner + u * (outer * outer - inner * inner)).sqrt();
            let h: f64 = Exp1.sample(&mut rng);
            i += field.power_density * h * (field.z * r).powf(-field.exponent);
        }
        let v = (-s * i).exp();
        sum += v;
        sq += v * v;
    }
    let n = samples as f64;
    let mean = sum / n;
    (mean, ((sq / n - mean * mean) / n).sqrt())
}

#[test]
fn criterion_2_closed_forms_match_oracles() {
    let mut checks = Vec::new();

    let ts = [1e-6, 1e-3, 0.05, 0.12383, 1.0, 4.0, 17.5, 60.0, 200.0];
    let worst_share =
        ts.iter().map(|&t| rel(sharing_factor(t), poisson_sum(t, |n| 1.0 / (n + 1.0)))).fold(0.0, f64::max);
    checks.push(check("owner/macro share vs Poisson sum", worst_share < 1e-9, format!("max rel {worst_share:.2e}")));
    let worst_oms =
        ts.iter().map(|&t| rel(oms_share_factor(t), poisson_sum(t, |n| n / (t * (n + 1.0))))).fold(0.0, f64::max);
    checks.push(check("offloaded share vs Poisson sum", worst_oms < 1e-9, format!("max rel {worst_oms:.2e}")));

    // Class throughputs against sums over the user count.
    let cfg = defaults();
    let eval = Evaluator::new(&cfg, 1.0).unwrap();
    let mut worst_tput: f64 = 0.0;
    for d in [20.0, 60.0, 140.0] {
        let x = service_area(d, cfg.fbs_density());
        let pop = eval.population(x).unwrap();
        let (rho, beta) = (0.3, 0.25);
        let w = cfg.bandwidth;
        let tm = poisson_sum(pop.mms, |n| (1.0 - rho) * w * eval.se_mms() / (n + 1.0));
        let tf = poisson_sum(pop.oms, |n| rho * w * eval.se_fms() * (beta + (1.0 - beta) / (n + 1.0)));
        let se_o = eval.se_oms(x).unwrap();
        let to = poisson_sum(pop.oms, |n| n / pop.oms * (1.0 - beta) * rho * w * se_o / (n + 1.0));
        worst_tput = worst_tput
            .max(rel(eval.tput_mms(rho, x).unwrap(), tm))
            .max(rel(eval.tput_fms(rho, x, beta).unwrap(), tf))
            .max(rel(eval.tput_oms(rho, x, beta).unwrap(), to));
    }
    checks.push(check("class throughputs vs Poisson sums", worst_tput < 1e-9, format!("max rel {worst_tput:.2e}")));

    let mut worst_mms: f64 = 0.0;
    for (nf, p) in [(30.0, 46.0), (0.0, 46.0), (30.0, 35.0), (50.0, 40.0)] {
        let spec = NetworkSpec { fbs_mean: nf, macro_power_dbm: p, ..NetworkSpec::default() };
        let c = NetworkConfig::<f64>::from_spec(&spec).unwrap();
        worst_mms = worst_mms.max(rel(avg_se_mms(&c).unwrap(), avg_se_mms_quadrature(&c, &tight()).unwrap()));
    }
    checks.push(check(
        "macro efficiency: incomplete gamma vs quadrature",
        worst_mms < 1e-8,
        format!("max rel {worst_mms:.2e}"),
    ));

    let field = |d: f64, alpha: f64| InterferenceField {
        power_density: cfg.femto_power_density,
        exponent: alpha,
        z: cfg.pathloss.get(femtolb::model::LinkClass::IndoorToOutdoor).z(),
        intensity: cfg.fbs_density(),
        exclusion_radius: d,
    };
    let mut worst_lt: f64 = 0.0;
    for (d, alpha) in [(0.0, 3.0), (0.0, 4.0), (0.0, 5.0), (10.0, 4.0), (40.0, 4.0), (120.0, 4.0)] {
        let f = field(d, alpha);
        for r in [10.0_f64, 35.0, 90.0] {
            let s = r.powf(alpha) * f.z.powf(alpha) / f.power_density;
            let closed = if d == 0.0 { laplace_unbounded(s, &f) } else { laplace_arctan(s, &f) }.unwrap();
            worst_lt = worst_lt.max(rel(closed, laplace_quadrature(s, &f, &tight()).unwrap()));
        }
    }
    checks.push(check(
        "interference transform: closed forms vs quadrature",
        worst_lt < 1e-8,
        format!("max rel {worst_lt:.2e}"),
    ));

    // Denser field so that a 300 m window holds the transform to 0.04%.
    let mut worst_mc: f64 = 0.0;
    for (seed, d) in [(1, 5.0), (2, 0.0)] {
        let f = InterferenceField { power_density: 1.0, exponent: 4.0, z: 1.0, intensity: 1e-3, exclusion_radius: d };
        let s = 1.0e4;
        let exact = if d == 0.0 { laplace_unbounded(s, &f) } else { laplace_arctan(s, &f) }.unwrap();
        let (mc, _) = laplace_mc(s, &f, 300.0, 40_000, seed);
        worst_mc = worst_mc.max(rel(mc, exact));
    }
    checks.push(check("interference transform vs Monte Carlo", worst_mc < 0.005, format!("max rel {worst_mc:.2e}")));
    conclude(2, "closed forms vs oracles", &checks);
}

// ---------------------------------------------------------------------------
// 3. Optimizer against brute force
// ---------------------------------------------------------------------------

struct Slice {
    x: f64,
    pop: Population<f64>,
    se_oms: f64,
}

fn slice(eval: &Evaluator<f64>, x: f64) -> Slice {
    Slice { x, pop: eval.population(x).unwrap(), se_oms: eval.se_oms(x).unwrap() }
}

/// mMS throughput at `(rho, beta)` if both constraints hold.
fn feasible_tput(eval: &Evaluator<f64>, s: &Slice, rho: f64, beta: f64) -> Option<f64> {
    let cfg = eval.cfg();
    let tm = eval.tput_mms_at(rho, &s.pop);
    let tf = eval.tput_fms_at(rho, beta, &s.pop);
    let to = eval.tput_oms_at(rho, beta, &s.pop, s.se_oms);
    (tf >= cfg.benefit_ratio * tm && to >= cfg.oms_ratio * tm).then_some(tm)
}

fn lin(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Best grid point over `rho x x x beta`; returns `(T_m, rho, x, beta)`.
fn grid_best(eval: &Evaluator<f64>, rhos: &[f64], xs: &[f64], betas: &[f64]) -> (f64, f64, f64, f64) {
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0, 0.0);
    for &x in xs {
        let s = slice(eval, x);
        for &beta in betas {
            for &rho in rhos {
                if let Some(t) = feasible_tput(eval, &s, rho, beta) {
                    if t > best.0 {
                        best = (t, rho, x, beta);
                    }
                }
            }
        }
    }
    best
}

fn zoom(center: f64, step: f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    lin((center - 2.0 * step).max(lo), (center + 2.0 * step).min(hi), n)
}

/// Smallest feasible `rho` at fixed `beta` (feasibility is monotone in `rho`).
fn rho_min(eval: &Evaluator<f64>, s: &Slice, beta: f64) -> Option<f64> {
    feasible_tput(eval, s, 1.0 - 1e-12, beta)?;
    let (mut lo, mut hi) = (0.0, 1.0 - 1e-12);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if feasible_tput(eval, s, mid, beta).is_some() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

#[test]
fn criterion_3_optimizer_matches_brute_force() {
    let cfg = defaults();
    let eval = Evaluator::new(&cfg, 1.0).unwrap();
    let dmax = find_dmax(&cfg, 1.0).unwrap().radius;
    let (xmin, xmax) = (service_area(cfg.home_radius, cfg.fbs_density()), service_area(dmax, cfg.fbs_density()));
    let mut checks = Vec::new();

    let oa = solve_oa(&cfg, 1.0).unwrap();
    let n = 200;
    let coarse = grid_best(&eval, &lin(0.0, 1.0, n), &lin(xmin, xmax, n), &[0.0]);
    let (dr, dx) = (1.0 / (n - 1) as f64, (xmax - xmin) / (n - 1) as f64);
    let fine = grid_best(&eval, &zoom(coarse.1, dr, 0.0, 1.0, n), &zoom(coarse.2, dx, xmin, xmax, n), &[0.0]);
    let best = coarse.0.max(fine.0);
    let err = rel(best, oa.objective);
    checks.push(check(
        "OA vs 200x200 grid (zoomed second pass), 0.1%",
        err < 1e-3 && best <= oa.objective * (1.0 + 1e-9),
        format!("solver {:.2} grid {:.2} rel {:.2e}", oa.objective, best, err),
    ));

    let ha = solve_ha(&cfg, 1.0).unwrap();
    let n = 40;
    let coarse = grid_best(&eval, &lin(0.0, 1.0, n), &lin(xmin, xmax, n), &lin(0.0, 1.0, n));
    let (dr, dx, db) = (1.0 / (n - 1) as f64, (xmax - xmin) / (n - 1) as f64, 1.0 / (n - 1) as f64);
    let fine = grid_best(
        &eval,
        &zoom(coarse.1, dr, 0.0, 1.0, n),
        &zoom(coarse.2, dx, xmin, xmax, n),
        &zoom(coarse.3, db, 0.0, 1.0, n),
    );
    let best = coarse.0.max(fine.0);
    let err = rel(best, ha.objective);
    checks.push(check(
        "HA vs 40^3 (rho, x, beta) grid (zoomed second pass), 0.2%",
        err < 2e-3 && best <= ha.objective * (1.0 + 1e-9),
        format!("solver {:.2} grid {:.2} rel {:.2e}", ha.objective, best, err),
    ));

    let step = 1e-4;
    let dense: Vec<f64> = (0..=10_000).map(|i| i as f64 * step).collect();
    let mut worst_rho: f64 = 0.0;
    for x in [xmin, 0.5 * (xmin + xmax), xmax] {
        let s = slice(&eval, x);
        for hybrid in [false, true] {
            let beta = if hybrid { optimal_beta(x, &eval).unwrap() } else { 0.0 };
            let grid = dense
                .iter()
                .filter_map(|&r| feasible_tput(&eval, &s, r, beta).map(|t| (t, r)))
                .fold((f64::NEG_INFINITY, 0.0), |a, b| if b.0 > a.0 { b } else { a });
            worst_rho = worst_rho.max((grid.1 - optimal_rho(x, &eval, hybrid).unwrap()).abs());
        }
    }
    checks.push(check(
        "optimal rho vs 10^4-point grid, one step",
        worst_rho <= step,
        format!("max |diff| {worst_rho:.2e}"),
    ));

    let step = 1e-3;
    let mut worst_beta: f64 = 0.0;
    for x in [0.5 * (xmin + xmax), xmax] {
        let s = slice(&eval, x);
        let grid = (0..=1000)
            .map(|i| i as f64 * step)
            .filter_map(|b| rho_min(&eval, &s, b).map(|r| (eval.tput_mms_at(r, &s.pop), b)))
            .fold((f64::NEG_INFINITY, 0.0), |a, b| if b.0 > a.0 { b } else { a });
        worst_beta = worst_beta.max((grid.1 - optimal_beta(s.x, &eval).unwrap()).abs());
    }
    checks.push(check(
        "optimal beta vs 10^3-point grid, one step",
        worst_beta <= step,
        format!("max |diff| {worst_beta:.2e}"),
    ));
    conclude(3, "optimizer vs brute force", &checks);
}

// ---------------------------------------------------------------------------
// 4. Structural results on random configurations
// ---------------------------------------------------------------------------

fn random_configs(count: usize, seed: u64) -> Vec<NetworkConfig<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..500 {
        if out.len() == count {
            break;
        }
        let spec = NetworkSpec {
            fbs_mean: rng.random_range(5.0..60.0),
            user_mean: rng.random_range(50.0..400.0),
            benefit_ratio: rng.random_range(1.0..40.0),
            oms_ratio: rng.random_range(0.25..2.0),
            wall_loss_db: rng.random_range(5.0..15.0),
            home_radius: rng.random_range(10.0..30.0),
            femto_power_dbm: rng.random_range(15.0..26.0),
            outage_cap: rng.random_range(0.1..0.25),
            ..NetworkSpec::default()
        };
        let Ok(cfg) = NetworkConfig::<f64>::from_spec(&spec) else { continue };
        let Ok(dmax) = find_dmax(&cfg, 1.0) else { continue };
        if dmax.infeasible || dmax.saturated {
            continue;
        }
        if fms_limited_check(&cfg, 1.0).map(|f| f.holds()).unwrap_or(false) {
            out.push(cfg);
        }
    }
    out
}

#[test]
fn criterion_4_structural_results() {
    let configs = random_configs(20, 17);
    let mut checks =
        vec![check("random fms-limited configurations", configs.len() >= 20, format!("{} drawn", configs.len()))];
    let (mut convex_ok, mut worst_second) = (0, f64::INFINITY);
    let (mut cov_cases, mut cov_ok, mut worst_area) = (0, 0, 0.0_f64);
    let (mut bal_cases, mut bal_ok, mut worst_bal) = (0, 0, 0.0_f64);
    for cfg in &configs {
        let conv = verify_convexity(cfg, 1.0).unwrap();
        worst_second = worst_second.min(conv.min_total);
        convex_ok += (conv.points >= 1000 && conv.min_total >= -1e-9) as usize;

        let cond = report_conditions(cfg, 1.0).unwrap();
        if cond.coverage_condition {
            cov_cases += 1;
            let oa = solve_oa(cfg, 1.0).unwrap();
            let e = rel(oa.area, cond.area_max);
            worst_area = worst_area.max(e);
            cov_ok += (e < 1e-6) as usize;
        }

        let ha = solve_ha(cfg, 1.0).unwrap();
        let eval = Evaluator::new(cfg, 1.0).unwrap();
        let t = TermModel::new(&eval).terms(ha.area).unwrap();
        if t.d >= t.c {
            bal_cases += 1;
            let r = &ha.report;
            let tm = r.tput_mms();
            let e = rel(r.tput_fms() / cfg.benefit_ratio, tm).max(rel(r.tput_oms() / cfg.oms_ratio, tm));
            worst_bal = worst_bal.max(e);
            bal_ok += (e < 1e-8) as usize;
        }
    }
    checks.push(check(
        "(a) scaled second differences >= -1e-9 on 1000 points",
        convex_ok == configs.len(),
        format!("{convex_ok}/{} convex, min {worst_second:.3e}", configs.len()),
    ));
    checks.push(check(
        "(b) coverage condition => x* = X_max",
        cov_ok == cov_cases,
        format!("{cov_ok}/{cov_cases} cases, max rel {worst_area:.2e}"),
    ));
    checks.push(check(
        "(c) HA with D >= C => T_f/M = T_o/K = T_m within 1e-8",
        bal_ok == bal_cases && bal_cases > 0,
        format!("{bal_ok}/{bal_cases} cases, max rel {worst_bal:.2e}"),
    ));
    conclude(4, "structural results", &checks);
}

// ---------------------------------------------------------------------------
// 5. Qualitative trends
// ---------------------------------------------------------------------------

fn three_se_ge(a: &SimEstimate, b: &SimEstimate) -> bool {
    let se = a.std_errors.tput_mms.hypot(b.std_errors.tput_mms);
    a.report.tput_mms() >= b.report.tput_mms() - 3.0 * se
}

#[test]
fn criterion_5_qualitative_trends() {
    let cfg = defaults();
    let settings = SimSettings::default();
    let mut checks = Vec::new();

    let dmax: Vec<f64> =
        [10.0, 20.0, 30.0, 40.0, 50.0].iter().map(|&n| find_dmax(&cfg.with_fbs_mean(n), 1.0).unwrap().radius).collect();
    checks.push(check(
        "D_max decreasing in N_f (10..50)",
        dmax.windows(2).all(|w| w[1] < w[0]),
        format!("{:?}", dmax.iter().map(|d| format!("{d:.1}")).collect::<Vec<_>>()),
    ));

    let grid = default_theta_grid::<f64>();
    let large_m = solve_oa_thin(&cfg.with_benefit_ratio(50.0), &grid).unwrap().control.theta;
    checks.push(check("theta* = 1 for M = 50", large_m == 1.0, format!("theta* = {large_m}")));
    for nf in [30.0, 50.0] {
        let th = solve_oa_thin(&cfg.with_fbs_mean(nf).with_benefit_ratio(5.0), &grid).unwrap().control.theta;
        checks.push(check(format!("theta* < 1 for N_f = {nf}, M = 5"), th < 1.0, format!("theta* = {th}")));
    }

    let runs: Vec<_> =
        [2.0, 5.0, 10.0, 20.0].iter().map(|&m| (m, solve_oa(&cfg.with_benefit_ratio(m), 1.0).unwrap())).collect();
    let same_d = runs.iter().all(|(_, r)| (r.control.service_radius - runs[0].1.control.service_radius).abs() < 1e-9);
    let increasing = runs.windows(2).all(|w| w[1].1.control.rho > w[0].1.control.rho);
    checks.push(check(
        "rho* increasing in M at fixed d_f* (M = 2, 5, 10, 20)",
        same_d && increasing,
        format!(
            "{:?}",
            runs.iter()
                .map(|(m, r)| format!("M={m}: rho={:.4} d={:.1}", r.control.rho, r.control.service_radius))
                .collect::<Vec<_>>()
        ),
    ));

    let oa = solve_oa(&cfg, 1.0).unwrap();
    let ha = solve_ha(&cfg, 1.0).unwrap();
    let sim = |scheme, control| run_campaign(&SchemeSpec::new(scheme, control), &cfg, 2000, 5, &settings).unwrap();
    let (s_ha, s_oa) = (sim(Scheme::Ha, ha.control), sim(Scheme::Oa, oa.control));
    let s_ca = sim(Scheme::CoCa, ControlParams::open(0.0, cfg.home_radius));
    checks.push(check(
        "T_m(HA) >= T_m(OA) >= T_m(CoCA) within 3 SE",
        three_se_ge(&s_ha, &s_oa) && three_se_ge(&s_oa, &s_ca),
        format!("{:.0} / {:.0} / {:.0} bit/s", s_ha.report.tput_mms(), s_oa.report.tput_mms(), s_ca.report.tput_mms()),
    ));

    let grid_db = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0];
    for nf in [30.0, 50.0] {
        let cal = calibrate_colb(&cfg.with_fbs_mean(nf), &grid_db, 1000, 3, &settings).unwrap();
        let o: Vec<f64> = cal.points.iter().map(|p| p.outage).collect();
        checks.push(check(
            format!("CoLB delta* = 0 dB at N_f = {nf}, outage non-decreasing"),
            cal.delta_db == 0.0 && o.windows(2).all(|w| w[1] >= w[0]),
            format!(
                "delta* = {} dB, outage {:?}",
                cal.delta_db,
                o.iter().map(|v| format!("{v:.3}")).collect::<Vec<_>>()
            ),
        ));
    }

    let radii = default_radius_grid(&cfg, 1.0, 8).unwrap();
    let capped = |n: Option<usize>| {
        let mut base = SchemeSpec::new(Scheme::Oa, ControlParams::open(0.5, cfg.home_radius));
        base.n_max = n;
        optimize_by_simulation(&cfg, &base, &radii, 1000, 11, &settings).unwrap().best.estimate
    };
    let free = capped(None);
    let below: Vec<(usize, SimEstimate)> = [4, 5].iter().map(|&n| (n, capped(Some(n)))).collect();
    let above: Vec<(usize, SimEstimate)> = [8, 10].iter().map(|&n| (n, capped(Some(n)))).collect();
    let fmt = |v: &[(usize, SimEstimate)]| {
        v.iter()
            .map(|(n, e)| {
                format!(
                    "N_max={n}: {:.0} ({:+.1}%)",
                    e.report.tput_mms(),
                    100.0 * (e.report.tput_mms() / free.report.tput_mms() - 1.0)
                )
            })
            .collect::<Vec<_>>()
            .join(", ")
    };
    checks.push(check(
        "N_max < 6 degrades T_m by more than 3 SE",
        below.iter().all(|(_, e)| !three_se_ge(e, &free)),
        format!("uncapped {:.0}; {}", free.report.tput_mms(), fmt(&below)),
    ));
    checks.push(check(
        "N_max >= 8 within 3 SE of uncapped",
        above.iter().all(|(_, e)| three_se_ge(e, &free)),
        fmt(&above),
    ));
    conclude(5, "qualitative trends", &checks);
}

// ---------------------------------------------------------------------------
// 6. Determinism across worker counts
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_determinism_across_workers() {
    let cfg = defaults();
    let cases = [
        (
            SchemeSpec::new(Scheme::Ha, ControlParams { rho: 0.3, service_radius: 90.0, beta: 0.3, theta: 1.0 }),
            SimSettings::default(),
        ),
        (
            SchemeSpec::new(Scheme::OaThin, ControlParams { rho: 0.3, service_radius: 60.0, beta: 0.0, theta: 0.6 }),
            SimSettings { fading_samples: 16, ..SimSettings::default() },
        ),
        (
            SchemeSpec { n_max: Some(4), ..SchemeSpec::new(Scheme::Oa, ControlParams::open(0.3, 120.0)) },
            SimSettings::default(),
        ),
        (
            SchemeSpec { colb_delta_db: 3.0, ..SchemeSpec::new(Scheme::CoLb, ControlParams::open(0.0, 20.0)) },
            SimSettings::default(),
        ),
    ];
    let mut checks = Vec::new();
    for (spec, settings) in &cases {
        let runs: Vec<Campaign> = [1, 4, 16]
            .iter()
            .map(|&threads| {
                let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
                pool.install(|| Campaign::run(spec, &cfg, 300, 99, settings).unwrap())
            })
            .collect();
        let same = runs.windows(2).all(|w| w[0] == w[1] && w[0].estimate() == w[1].estimate());
        let bits = runs[0].estimate().report.tput_mms().to_bits();
        checks.push(check(
            format!("{} on 1, 4, 16 workers", spec.scheme.name()),
            same,
            format!("T_m bits {bits:#018x}"),
        ));
    }
    conclude(6, "determinism", &checks);
}

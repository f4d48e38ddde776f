use super::efficiency::{avg_se_fms, avg_se_mms, avg_se_oms};
use super::geometry::service_area;
use super::outage::avg_outage_oms;
use crate::error::Error;
use crate::model::{ControlParams, NetworkConfig};
use crate::numerics::QuadratureSpec;
use crate::report::{Metrics, Source, ThroughputReport};
use crate::{Result, Scalar};

const TAYLOR_CUTOFF: f64 = 1e-4;

/// `E[1/(N+1)]` for `N ~ Poisson(t)`: `(1 - e^-t) / t`.
pub fn sharing_factor<T: Scalar>(t: T) -> T {
    if t < T::lit(TAYLOR_CUTOFF) {
        let c = |v: f64| T::lit(v);
        T::one() - t / c(2.0) + t * t / c(6.0) - t * t * t / c(24.0)
    } else {
        -(-t).exp_m1() / t
    }
}

/// Size-biased share of an offloaded user, `sum_n n f[n] / (t (n+1))`:
/// `(t + e^-t - 1) / t^2`.
pub fn oms_share_factor<T: Scalar>(t: T) -> T {
    if t < T::lit(TAYLOR_CUTOFF) {
        let c = |v: f64| T::lit(v);
        c(0.5) - t / c(6.0) + t * t / c(24.0) - t * t * t / c(120.0)
    } else {
        (t + (-t).exp_m1()) / (t * t)
    }
}

/// Mean user counts: macrocell users on the macrocell, and foreign users
/// on one femtocell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Population<T> {
    pub mms: T,
    pub oms: T,
}

/// Mean counts when indoor areas carry `k_in` times the outdoor density
/// `lambda_uo`: `N_m = (A_m - lambda_f A_m x) lambda_uo` and
/// `N_o = k_in lambda_uo x(D_h) + lambda_uo (x - x(D_h))`.
pub fn hetero_counts<T: Scalar>(x: T, k_in: T, outdoor_density: T, cfg: &NetworkConfig<T>) -> Result<Population<T>> {
    let lf = cfg.fbs_density();
    let xh = service_area(cfg.home_radius, lf);
    if x < xh * (T::one() - T::lit(1e-12)) {
        return Err(Error::domain("hetero_counts", format!("area {x} below the home area {xh}")));
    }
    if !(k_in >= T::one()) {
        return Err(Error::domain("hetero_counts", format!("k_in = {k_in} below 1")));
    }
    let am = cfg.macro_area();
    Ok(Population {
        mms: (am - lf * am * x) * outdoor_density,
        oms: k_in * outdoor_density * xh + outdoor_density * (x - xh),
    })
}

/// Analytic model for one configuration and thinning probability, with the
/// position-independent spectral efficiencies computed once.
#[derive(Debug, Clone)]
pub struct Evaluator<T> {
    cfg: NetworkConfig<T>,
    theta: T,
    quad: QuadratureSpec<T>,
    se_fms: T,
    se_mms: T,
}

impl<T: Scalar> Evaluator<T> {
    pub fn new(cfg: &NetworkConfig<T>, theta: T) -> Result<Self> {
        Self::with_quadrature(cfg, theta, QuadratureSpec::default())
    }

    pub fn with_quadrature(cfg: &NetworkConfig<T>, theta: T, quad: QuadratureSpec<T>) -> Result<Self> {
        if !(theta > T::zero() && theta <= T::one()) {
            return Err(Error::domain("evaluator", format!("theta = {theta} outside (0, 1]")));
        }
        Ok(Evaluator {
            se_fms: avg_se_fms(cfg, theta, &quad)?,
            se_mms: avg_se_mms(cfg)?,
            cfg: cfg.clone(),
            theta,
            quad,
        })
    }

    pub fn cfg(&self) -> &NetworkConfig<T> {
        &self.cfg
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn quadrature(&self) -> &QuadratureSpec<T> {
        &self.quad
    }

    pub fn se_fms(&self) -> T {
        self.se_fms
    }

    pub fn se_mms(&self) -> T {
        self.se_mms
    }

    pub fn se_oms(&self, x: T) -> Result<T> {
        avg_se_oms(x, &self.cfg, self.theta, &self.quad)
    }

    pub fn outage(&self, d: T) -> Result<T> {
        avg_outage_oms(d, &self.cfg, self.theta, &self.quad)
    }

    /// Mean user counts at service area `x`.
    pub fn population(&self, x: T) -> Result<Population<T>> {
        let cfg = &self.cfg;
        let remaining = T::one() - cfg.fbs_density() * x;
        if !(remaining > T::zero()) {
            return Err(Error::Degenerate { remaining: remaining.as_f64() });
        }
        if cfg.is_heterogeneous() {
            hetero_counts(x, cfg.indoor_factor, cfg.outdoor_user_density(), cfg)
        } else {
            let lu = cfg.user_density();
            Ok(Population { mms: cfg.macro_area() * lu * remaining, oms: lu * x })
        }
    }

    /// Subscriber throughput for given counts.
    pub fn tput_fms_at(&self, rho: T, beta: T, pop: &Population<T>) -> T {
        let share = rho * self.cfg.bandwidth * self.se_fms;
        self.theta * (beta * share + (T::one() - beta) * share * sharing_factor(pop.oms))
    }

    pub fn tput_mms_at(&self, rho: T, pop: &Population<T>) -> T {
        (T::one() - rho) * self.cfg.bandwidth * self.se_mms * sharing_factor(pop.mms)
    }

    pub fn tput_oms_at(&self, rho: T, beta: T, pop: &Population<T>, se_oms: T) -> T {
        self.theta * (T::one() - beta) * rho * self.cfg.bandwidth * se_oms * oms_share_factor(pop.oms)
    }

    pub fn tput_fms(&self, rho: T, x: T, beta: T) -> Result<T> {
        Ok(self.tput_fms_at(rho, beta, &self.population(x)?))
    }

    pub fn tput_mms(&self, rho: T, x: T) -> Result<T> {
        Ok(self.tput_mms_at(rho, &self.population(x)?))
    }

    pub fn tput_oms(&self, rho: T, x: T, beta: T) -> Result<T> {
        let pop = self.population(x)?;
        if beta == T::one() || rho == T::zero() {
            return Ok(T::zero());
        }
        Ok(self.tput_oms_at(rho, beta, &pop, self.se_oms(x)?))
    }

    /// Full report at an operating point.
    pub fn report(&self, control: &ControlParams<T>) -> Result<ThroughputReport<T>> {
        control.validate()?;
        let d = control.service_radius;
        let x = service_area(d, self.cfg.fbs_density());
        let pop = self.population(x)?;
        let se_oms = self.se_oms(x)?;
        let values = Metrics {
            se_fms: self.se_fms,
            se_mms: self.se_mms,
            se_oms,
            tput_fms: self.tput_fms_at(control.rho, control.beta, &pop),
            tput_mms: self.tput_mms_at(control.rho, &pop),
            tput_oms: self.tput_oms_at(control.rho, control.beta, &pop, se_oms),
            outage_oms: self.outage(d)?,
        };
        Ok(ThroughputReport::new(values, self.cfg.benefit_ratio, self.cfg.oms_ratio, Source::Analytic))
    }
}

/// Mean subscriber throughput (bit/s).
pub fn tput_fms<T: Scalar>(rho: T, x: T, beta: T, cfg: &NetworkConfig<T>, theta: T) -> Result<T> {
    Evaluator::new(cfg, theta)?.tput_fms(rho, x, beta)
}

/// Mean macrocell user throughput (bit/s).
pub fn tput_mms<T: Scalar>(rho: T, x: T, cfg: &NetworkConfig<T>) -> Result<T> {
    Evaluator::new(cfg, T::one())?.tput_mms(rho, x)
}

/// Mean offloaded user throughput (bit/s).
pub fn tput_oms<T: Scalar>(rho: T, x: T, beta: T, cfg: &NetworkConfig<T>, theta: T) -> Result<T> {
    Evaluator::new(cfg, theta)?.tput_oms(rho, x, beta)
}

use std::cell::RefCell;

use super::ccdf::{ccdf_fms, ccdf_mms, ccdf_oms_branch, expected_se};
use super::geometry::service_radius;
use crate::error::Error;
use crate::model::{LinkClass, NetworkConfig};
use crate::numerics::{integrate, lower_incomplete_gamma, QuadratureSpec};
use crate::{Result, Scalar};

/// [`integrate`] for an integrand that may fail; the first failure wins.
pub(crate) fn integrate_try<T, F>(f: F, lo: T, hi: T, spec: &QuadratureSpec<T>) -> Result<T>
where
    T: Scalar,
    F: Fn(T) -> Result<T>,
{
    let failure = RefCell::new(None);
    let out = integrate(
        |r| match f(r) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                T::nan()
            }
        },
        lo,
        hi,
        spec,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => out,
    }
}

/// Integrates over `[0, d]`, splitting at the home radius where the link
/// classes change. The flag passed to `f` is true on the indoor piece.
pub(crate) fn integrate_split<T, F>(f: F, d: T, home: T, spec: &QuadratureSpec<T>) -> Result<T>
where
    T: Scalar,
    F: Fn(T, bool) -> Result<T>,
{
    if d <= home {
        integrate_try(|r| f(r, true), T::zero(), d, spec)
    } else {
        let inner = integrate_try(|r| f(r, true), T::zero(), home, spec)?;
        Ok(inner + integrate_try(|r| f(r, false), home, d, spec)?)
    }
}

/// Density of an offloaded user's distance to its femtocell given service
/// area `x`: `2 pi r exp(-pi lambda_f r^2) / x` on `[0, d_f(x)]`.
pub fn oms_distance_density<T: Scalar>(r: T, x: T, fbs_density: T) -> T {
    T::lit(2.0) * T::PI() * r * (-T::PI() * fbs_density * r * r).exp() / x
}

/// Average spectral efficiency of a subscriber, uniform over its home disk.
pub fn avg_se_fms<T: Scalar>(cfg: &NetworkConfig<T>, theta: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let dh = cfg.home_radius;
    let norm = T::lit(2.0) / (dh * dh);
    integrate_try(|r| Ok(expected_se(cfg, |g| ccdf_fms(g, r, cfg, theta))? * r * norm), T::zero(), dh, spec)
}

/// `int_0^D r exp(-beta r^alpha) dr = beta^(-2/alpha)/alpha G(2/alpha, beta D^alpha)`.
fn radial_moment<T: Scalar>(beta: T, alpha: T, d: T) -> Result<T> {
    if beta == T::zero() {
        return Ok(d * d * T::lit(0.5));
    }
    let a = T::lit(2.0) / alpha;
    Ok(beta.powf(-a) / alpha * lower_incomplete_gamma(a, beta * d.powf(alpha))?)
}

/// Average spectral efficiency of a macrocell user, uniform over the
/// macrocell, via the incomplete gamma closed form.
pub fn avg_se_mms<T: Scalar>(cfg: &NetworkConfig<T>) -> Result<T> {
    let e = cfg.pathloss.get(LinkClass::Outdoor);
    let dm = cfg.macro_radius;
    let base = cfg.noise_density * e.fixed_loss_linear() / cfg.macro_power_density;
    let thresholds = cfg.rates.thresholds();
    let mut acc = T::zero();
    let mut upper = T::zero();
    for l in (0..thresholds.len()).rev() {
        let j = radial_moment(base * thresholds[l], e.exponent, dm)?;
        acc = acc + cfg.rates.efficiency(l) * (j - upper);
        upper = j;
    }
    Ok(acc * T::lit(2.0) / (dm * dm))
}

/// [`avg_se_mms`] by direct quadrature over the macrocell radius.
pub fn avg_se_mms_quadrature<T: Scalar>(cfg: &NetworkConfig<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    let dm = cfg.macro_radius;
    let norm = T::lit(2.0) / (dm * dm);
    integrate_try(|r| Ok(expected_se(cfg, |g| Ok(ccdf_mms(g, r, cfg)))? * r * norm), T::zero(), dm, spec)
}

fn check_area<T: Scalar>(x: T, cfg: &NetworkConfig<T>) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::domain("avg_se_oms", format!("service area {x} must be positive")));
    }
    service_radius(x, cfg.fbs_density())
}

/// Average spectral efficiency of an offloaded user for service area `x`.
pub fn avg_se_oms<T: Scalar>(x: T, cfg: &NetworkConfig<T>, theta: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let d = check_area(x, cfg)?;
    let lf = cfg.fbs_density();
    integrate_split(
        |r, indoor| {
            let se = expected_se(cfg, |g| ccdf_oms_branch(g, r, cfg, theta, indoor))?;
            Ok(se * oms_distance_density(r, x, lf))
        },
        d,
        cfg.home_radius,
        spec,
    )
}

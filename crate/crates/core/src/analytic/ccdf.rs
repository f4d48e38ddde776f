use super::laplace::{laplace_interference, InterferenceField};
use crate::error::Error;
use crate::model::{LinkClass, NetworkConfig};
use crate::{Result, Scalar};

fn femto_field<T: Scalar>(cfg: &NetworkConfig<T>, class: LinkClass, theta: T, radius: T) -> InterferenceField<T> {
    let e = cfg.pathloss.get(class);
    InterferenceField {
        power_density: cfg.femto_power_density,
        exponent: e.exponent,
        z: e.z(),
        intensity: theta * cfg.fbs_density(),
        exclusion_radius: radius,
    }
}

/// `s = Gamma / (P_f g)` for a desired link of mean gain `g`.
fn fading_scale<T: Scalar>(gamma: T, cfg: &NetworkConfig<T>, class: LinkClass, r: T) -> T {
    let e = cfg.pathloss.get(class);
    gamma * e.fixed_loss_linear() * r.powf(e.exponent) / cfg.femto_power_density
}

/// SINR CCDF of a subscriber at distance `r <= D_h` from its own femtocell,
/// with co-tier interference from the thinned femtocell field.
pub fn ccdf_fms<T: Scalar>(gamma: T, r: T, cfg: &NetworkConfig<T>, theta: T) -> Result<T> {
    if !(r >= T::zero() && r <= cfg.home_radius) {
        return Err(Error::domain("ccdf_fms", format!("r = {r} outside [0, {}]", cfg.home_radius)));
    }
    if gamma == T::zero() {
        return Ok(T::one());
    }
    let s = fading_scale(gamma, cfg, LinkClass::Indoor, r);
    let field = femto_field(cfg, LinkClass::IndoorToIndoor, theta, T::zero());
    Ok((-s * cfg.noise_density).exp() * laplace_interference(s, &field)?)
}

/// SINR CCDF of a macrocell user at distance `r` (noise limited).
pub fn ccdf_mms<T: Scalar>(gamma: T, r: T, cfg: &NetworkConfig<T>) -> T {
    let e = cfg.pathloss.get(LinkClass::Outdoor);
    let s = gamma * e.fixed_loss_linear() * r.powf(e.exponent) / cfg.macro_power_density;
    (-s * cfg.noise_density).exp()
}

/// SINR CCDF of an offloaded user at distance `r` from its femtocell.
///
/// Users inside the home disk see an indoor desired link and indoor-to-indoor
/// interferers; outside, both are indoor-to-outdoor links. No interferer is
/// closer than the serving femtocell.
pub fn ccdf_oms<T: Scalar>(gamma: T, r: T, cfg: &NetworkConfig<T>, theta: T) -> Result<T> {
    ccdf_oms_branch(gamma, r, cfg, theta, r < cfg.home_radius)
}

/// [`ccdf_oms`] with the indoor/outdoor branch chosen by the caller, so that
/// integrals over one side of the wall can include the boundary point.
pub(crate) fn ccdf_oms_branch<T: Scalar>(gamma: T, r: T, cfg: &NetworkConfig<T>, theta: T, indoor: bool) -> Result<T> {
    if !(r >= T::zero()) {
        return Err(Error::domain("ccdf_oms", format!("negative distance {r}")));
    }
    if gamma == T::zero() {
        return Ok(T::one());
    }
    let (desired, interferer) = if indoor {
        (LinkClass::Indoor, LinkClass::IndoorToIndoor)
    } else {
        (LinkClass::IndoorToOutdoor, LinkClass::IndoorToOutdoor)
    };
    let s = fading_scale(gamma, cfg, desired, r);
    let field = femto_field(cfg, interferer, theta, r);
    Ok((-s * cfg.noise_density).exp() * laplace_interference(s, &field)?)
}

/// Expected spectral efficiency given a CCDF.
pub(crate) fn expected_se<T: Scalar, F>(cfg: &NetworkConfig<T>, mut ccdf: F) -> Result<T>
where
    F: FnMut(T) -> Result<T>,
{
    let thresholds = cfg.rates.thresholds();
    let mut acc = T::zero();
    let mut upper = T::zero();
    for l in (0..thresholds.len()).rev() {
        let f = ccdf(thresholds[l])?;
        acc = acc + cfg.rates.efficiency(l) * (f - upper);
        upper = f;
    }
    Ok(acc)
}

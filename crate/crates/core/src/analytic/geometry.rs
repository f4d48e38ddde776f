use crate::error::Error;
use crate::model::{LinkClass, NetworkConfig};
use crate::{Result, Scalar};

/// Average femtocell service area for service radius `d`:
/// `x = (1 - exp(-pi d^2 lambda_f)) / lambda_f`, or `pi d^2` without femtocells.
pub fn service_area<T: Scalar>(d: T, fbs_density: T) -> T {
    let disk = T::PI() * d * d;
    if fbs_density == T::zero() {
        disk
    } else {
        -(-disk * fbs_density).exp_m1() / fbs_density
    }
}

/// Inverse of [`service_area`]. Requires `0 <= x < 1/lambda_f`.
pub fn service_radius<T: Scalar>(x: T, fbs_density: T) -> Result<T> {
    if !(x >= T::zero()) {
        return Err(Error::domain("service_radius", format!("negative area {x}")));
    }
    if fbs_density == T::zero() {
        return Ok((x / T::PI()).sqrt());
    }
    let covered = fbs_density * x;
    if !(covered < T::one()) {
        return Err(Error::Degenerate { remaining: (T::one() - covered).as_f64() });
    }
    Ok((-(-covered).ln_1p() / (T::PI() * fbs_density)).sqrt())
}

/// Probability that a macrocell user is served by the macrocell,
/// `1 - lambda_f x = exp(-pi lambda_f d^2)`.
pub fn macro_user_probability<T: Scalar>(d: T, fbs_density: T) -> T {
    (-T::PI() * fbs_density * d * d).exp()
}

/// Received femtocell power density at the service radius `d_f` through an
/// outer wall, i.e. the RSS association threshold `P_cs`.
pub fn association_threshold<T: Scalar>(d: T, cfg: &NetworkConfig<T>) -> T {
    cfg.femto_power_density * cfg.pathloss.get(LinkClass::IndoorToOutdoor).gain(d)
}

/// Service geometry at a given radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometrySnapshot<T> {
    pub area: T,
    pub radius: T,
    pub area_min: T,
    pub area_max: T,
    pub dmax: T,
    /// Probability a macrocell user stays on the macrocell.
    pub macro_probability: T,
    /// Association threshold power density (W/Hz).
    pub threshold: T,
}

impl<T: Scalar> GeometrySnapshot<T> {
    /// Snapshot at radius `d` given an already computed `D_max`.
    pub fn at(d: T, cfg: &NetworkConfig<T>, dmax: T) -> Result<Self> {
        let slack = T::lit(1e-9) * dmax.max(cfg.home_radius);
        if d < cfg.home_radius - slack || d > dmax + slack {
            return Err(Error::domain("service_geometry", format!("radius {d} outside [{}, {dmax}]", cfg.home_radius)));
        }
        let lf = cfg.fbs_density();
        Ok(GeometrySnapshot {
            area: service_area(d, lf),
            radius: d,
            area_min: service_area(cfg.home_radius, lf),
            area_max: service_area(dmax, lf),
            dmax,
            macro_probability: macro_user_probability(d, lf),
            threshold: association_threshold(d, cfg),
        })
    }
}

/// Geometry at radius `d_f`, computing `D_max` for thinning probability `theta`.
pub fn service_geometry<T: Scalar>(d: T, cfg: &NetworkConfig<T>, theta: T) -> Result<GeometrySnapshot<T>> {
    let dmax = super::find_dmax(cfg, theta)?;
    GeometrySnapshot::at(d, cfg, dmax.radius)
}

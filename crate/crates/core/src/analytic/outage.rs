use super::ccdf::ccdf_oms_branch;
use super::efficiency::{integrate_split, oms_distance_density};
use super::geometry::service_area;
use crate::model::NetworkConfig;
use crate::numerics::{bisect, Bracket, QuadratureSpec};
use crate::{Result, Scalar};

/// Mean outage probability of offloaded users for service radius `d`.
pub fn avg_outage_oms<T: Scalar>(d: T, cfg: &NetworkConfig<T>, theta: T, spec: &QuadratureSpec<T>) -> Result<T> {
    if d == T::zero() {
        return Ok(T::zero());
    }
    let lf = cfg.fbs_density();
    let x = service_area(d, lf);
    let g1 = cfg.rates.outage_threshold();
    let o = integrate_split(
        |r, indoor| Ok((T::one() - ccdf_oms_branch(g1, r, cfg, theta, indoor)?) * oms_distance_density(r, x, lf)),
        d,
        cfg.home_radius,
        spec,
    )?;
    Ok(o.max(T::zero()).min(T::one()))
}

/// Outcome of the maximum service radius search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dmax<T> {
    pub radius: T,
    /// Mean outage at the home radius.
    pub home_outage: T,
    /// The outage cap is already exceeded at the home radius.
    pub infeasible: bool,
    /// The search reached `5 D_m` without crossing the cap.
    pub saturated: bool,
}

/// Largest service radius whose mean offloaded-user outage stays at or below
/// the cap, to within 1e-3 m.
pub fn find_dmax<T: Scalar>(cfg: &NetworkConfig<T>, theta: T) -> Result<Dmax<T>> {
    find_dmax_with(cfg, theta, &QuadratureSpec::default())
}

pub fn find_dmax_with<T: Scalar>(cfg: &NetworkConfig<T>, theta: T, spec: &QuadratureSpec<T>) -> Result<Dmax<T>> {
    let cap = cfg.outage_cap;
    let dh = cfg.home_radius;
    let excess = |d: T| avg_outage_oms(d, cfg, theta, spec).map(|o| o - cap);
    let home = excess(dh)?;
    let home_outage = home + cap;
    if home >= T::zero() {
        return Ok(Dmax { radius: dh, home_outage, infeasible: home > T::zero(), saturated: false });
    }
    let limit = T::lit(5.0) * cfg.macro_radius;
    let mut lo = dh;
    let mut hi = dh;
    let hi_excess = loop {
        hi = (hi * T::lit(2.0)).min(limit);
        let e = excess(hi)?;
        if e >= T::zero() {
            break e;
        }
        if hi >= limit {
            return Ok(Dmax { radius: limit, home_outage, infeasible: false, saturated: true });
        }
        lo = hi;
    };
    let lo_excess = excess(lo)?;
    let bracket = Bracket { lo, hi, f_lo: lo_excess, f_hi: hi_excess };
    let mut failure = None;
    let radius = bisect(
        |d| match excess(d) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                T::zero()
            }
        },
        bracket,
        T::lit(1e-3),
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Dmax { radius, home_outage, infeasible: false, saturated: false })
}

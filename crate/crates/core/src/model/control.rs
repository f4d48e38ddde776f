use crate::{Error, Result, Scalar};

/// Decision variables of the load-balancing problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlParams<T> {
    /// Fraction of the band dedicated to the femto tier.
    pub rho: T,
    /// Target femtocell service radius `d_f` in meters.
    pub service_radius: T,
    /// Fraction of a hybrid femtocell's resources reserved for its owner.
    pub beta: T,
    /// Probability that a femtocell uses a given resource block.
    pub theta: T,
}

impl<T: Scalar> ControlParams<T> {
    pub fn open(rho: T, service_radius: T) -> Self {
        ControlParams { rho, service_radius, beta: T::zero(), theta: T::one() }
    }

    /// Average femtocell service area `x` for this radius.
    pub fn service_area(&self, fbs_density: T) -> T {
        crate::analytic::service_area(self.service_radius, fbs_density)
    }

    /// Box constraints only; the `[D_h, D_max]` window is checked where `D_max`
    /// is known.
    pub fn validate(&self) -> Result<()> {
        let unit = |v: T| v >= T::zero() && v <= T::one();
        if !unit(self.rho) {
            return Err(Error::domain("control", format!("rho = {} outside [0, 1]", self.rho)));
        }
        if !unit(self.beta) {
            return Err(Error::domain("control", format!("beta = {} outside [0, 1]", self.beta)));
        }
        if !(self.theta > T::zero() && self.theta <= T::one()) {
            return Err(Error::domain("control", format!("theta = {} outside (0, 1]", self.theta)));
        }
        if !(self.service_radius >= T::zero()) {
            return Err(Error::domain("control", "negative service radius"));
        }
        Ok(())
    }
}

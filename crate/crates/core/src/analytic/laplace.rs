use crate::error::Error;
use crate::numerics::{integrate, QuadratureSpec};
use crate::{Result, Scalar};

/// Poisson field of Rayleigh-faded interferers outside a disk around the receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceField<T> {
    /// Transmit power density of each interferer (W/Hz).
    pub power_density: T,
    pub exponent: T,
    /// Linear `Z`: the link gain is `(Z r)^-alpha`.
    pub z: T,
    /// Interferer intensity (per m^2), already thinned where applicable.
    pub intensity: T,
    /// Interferers lie at distance `>= exclusion_radius`.
    pub exclusion_radius: T,
}

impl<T: Scalar> InterferenceField<T> {
    fn check(&self) -> Result<()> {
        if !(self.exponent > T::lit(2.0)) {
            return Err(Error::Divergent { exponent: self.exponent.as_f64() });
        }
        if !(self.intensity >= T::zero()) || !(self.exclusion_radius >= T::zero()) {
            return Err(Error::domain("laplace_interference", "negative intensity or radius"));
        }
        Ok(())
    }

    /// `pi lambda Z^-2 (s P)^(2/alpha)`, the common prefactor.
    fn scale(&self, s: T) -> T {
        let sp = s * self.power_density;
        T::PI() * self.intensity / (self.z * self.z) * sp.powf(T::lit(2.0) / self.exponent)
    }

    /// Lower limit `Z^2 D^2 (s P)^(-2/alpha)` of the interference integral.
    fn lower_limit(&self, s: T) -> T {
        let sp = s * self.power_density;
        let zd = self.z * self.exclusion_radius;
        zd * zd / sp.powf(T::lit(2.0) / self.exponent)
    }
}

/// `E[exp(-s I)]` for the aggregate interference of `field`.
///
/// Uses the closed form for an unbounded field when the exclusion radius is
/// zero, the arctangent form for `alpha = 4`, and quadrature otherwise.
pub fn laplace_interference<T: Scalar>(s: T, field: &InterferenceField<T>) -> Result<T> {
    field.check()?;
    if s == T::zero() || field.intensity == T::zero() {
        return Ok(T::one());
    }
    if !(s > T::zero()) {
        return Err(Error::domain("laplace_interference", format!("s = {s} must be non-negative")));
    }
    if field.exclusion_radius == T::zero() {
        laplace_unbounded(s, field)
    } else if field.exponent == T::lit(4.0) {
        laplace_arctan(s, field)
    } else {
        laplace_quadrature(s, field, &QuadratureSpec::default())
    }
}

/// Closed form with no exclusion disk:
/// `exp(-2 pi^2 lambda Z^-2 (sP)^(2/alpha) / (alpha sin(2 pi / alpha)))`.
pub fn laplace_unbounded<T: Scalar>(s: T, field: &InterferenceField<T>) -> Result<T> {
    field.check()?;
    let two = T::lit(2.0);
    let a = field.exponent;
    let sp = s * field.power_density;
    let arg = two * T::PI() * T::PI() * field.intensity / (field.z * field.z) * sp.powf(two / a)
        / (a * (two * T::PI() / a).sin());
    Ok((-arg).exp())
}

/// Closed form for `alpha = 4` with exclusion radius `D`:
/// `exp(-pi lambda Z^-2 sqrt(sP) (pi/2 - atan(Z^2 D^2 / sqrt(sP))))`.
pub fn laplace_arctan<T: Scalar>(s: T, field: &InterferenceField<T>) -> Result<T> {
    field.check()?;
    if field.exponent != T::lit(4.0) {
        return Err(Error::domain("laplace_arctan", "requires exponent 4"));
    }
    let root = (s * field.power_density).sqrt();
    let zd = field.z * field.exclusion_radius;
    let tail = T::FRAC_PI_2() - (zd * zd / root).atan();
    Ok((-(T::PI() * field.intensity / (field.z * field.z) * root * tail)).exp())
}

/// General form, integrating `int_a^inf du / (1 + u^(alpha/2))` numerically.
pub fn laplace_quadrature<T: Scalar>(s: T, field: &InterferenceField<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    field.check()?;
    if s == T::zero() || field.intensity == T::zero() {
        return Ok(T::one());
    }
    let tail = interference_tail(field.lower_limit(s), field.exponent, spec)?;
    Ok((-(field.scale(s) * tail)).exp())
}

/// `int_a^inf du / (1 + u^(alpha/2))` for `alpha > 2`.
///
/// The part beyond `max(a, 1)` is mapped onto a finite interval with
/// `u = v^-p`, `p = 2/(alpha-2)`, which turns the integrand into
/// `p / (1 + v^(alpha/(alpha-2)))`.
pub fn interference_tail<T: Scalar>(a: T, exponent: T, spec: &QuadratureSpec<T>) -> Result<T> {
    if !(exponent > T::lit(2.0)) {
        return Err(Error::Divergent { exponent: exponent.as_f64() });
    }
    if !(a >= T::zero()) {
        return Err(Error::domain("interference_tail", "negative lower limit"));
    }
    let two = T::lit(2.0);
    let k = exponent / two;
    let p = two / (exponent - two);
    let q = exponent / (exponent - two);
    let mut total = T::zero();
    let start = if a < T::one() {
        total = integrate(|u: T| T::one() / (T::one() + u.powf(k)), a, T::one(), spec)?;
        T::one()
    } else {
        a
    };
    let v_hi = start.powf(-T::one() / p);
    let tail = integrate(
        |v: T| {
            if v == T::zero() {
                p
            } else {
                p / (T::one() + v.powf(q))
            }
        },
        T::zero(),
        v_hi,
        spec,
    )?;
    Ok(total + tail)
}

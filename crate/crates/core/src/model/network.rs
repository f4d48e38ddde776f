use serde::{Deserialize, Serialize};

use crate::model::tables::{PathlossTable, RateTable};
use crate::model::units::dbm_to_watts;
use crate::{Error, Result, Scalar};

/// Deployment parameters as an operator writes them (dB / dBm / totals).
///
/// Defaults reproduce the reference two-tier scenario: an 800 m macrocell,
/// 20 m homes, 2 GHz carrier, 5 MHz, 46/23 dBm transmit powers, 10 dB walls,
/// 30 femtocells and 200 macrocell users on average.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetworkSpec {
    pub macro_radius: f64,
    pub home_radius: f64,
    pub carrier_freq_mhz: f64,
    pub bandwidth_hz: f64,
    pub noise_density_dbm_hz: f64,
    /// Total macro transmit power, spread evenly over the bandwidth.
    pub macro_power_dbm: f64,
    /// Total femto transmit power, spread evenly over the bandwidth.
    pub femto_power_dbm: f64,
    pub wall_loss_db: f64,
    pub fbs_mean: f64,
    pub user_mean: f64,
    pub benefit_ratio: f64,
    pub oms_ratio: f64,
    pub outage_cap: f64,
    /// Indoor-to-outdoor user density ratio; 1 is a uniform population.
    pub indoor_factor: f64,
}

impl Default for NetworkSpec {
    fn default() -> Self {
        NetworkSpec {
            macro_radius: 800.0,
            home_radius: 20.0,
            carrier_freq_mhz: 2000.0,
            bandwidth_hz: 5.0e6,
            noise_density_dbm_hz: -174.0,
            macro_power_dbm: 46.0,
            femto_power_dbm: 23.0,
            wall_loss_db: 10.0,
            fbs_mean: 30.0,
            user_mean: 200.0,
            benefit_ratio: 10.0,
            oms_ratio: 1.0,
            outage_cap: 0.15,
            indoor_factor: 1.0,
        }
    }
}

/// Validated network parameters in linear units (m, Hz, W/Hz).
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig<T> {
    pub macro_radius: T,
    pub home_radius: T,
    pub carrier_freq_mhz: T,
    pub bandwidth: T,
    pub noise_density: T,
    pub macro_power_density: T,
    pub femto_power_density: T,
    pub wall_loss_db: T,
    pub fbs_mean: T,
    pub user_mean: T,
    /// `M`: required fMS / mMS throughput ratio.
    pub benefit_ratio: T,
    /// `K`: required oMS / mMS throughput ratio.
    pub oms_ratio: T,
    pub outage_cap: T,
    pub indoor_factor: T,
    pub pathloss: PathlossTable<T>,
    pub rates: RateTable<T>,
}

impl<T: Scalar> NetworkConfig<T> {
    pub fn defaults() -> Self {
        Self::from_spec(&NetworkSpec::default()).expect("default spec is valid")
    }

    pub fn from_spec(spec: &NetworkSpec) -> Result<Self> {
        spec.validate()?;
        let bw = spec.bandwidth_hz;
        let cfg = NetworkConfig {
            macro_radius: T::lit(spec.macro_radius),
            home_radius: T::lit(spec.home_radius),
            carrier_freq_mhz: T::lit(spec.carrier_freq_mhz),
            bandwidth: T::lit(bw),
            noise_density: dbm_to_watts(T::lit(spec.noise_density_dbm_hz)),
            macro_power_density: dbm_to_watts(T::lit(spec.macro_power_dbm)) / T::lit(bw),
            femto_power_density: dbm_to_watts(T::lit(spec.femto_power_dbm)) / T::lit(bw),
            wall_loss_db: T::lit(spec.wall_loss_db),
            fbs_mean: T::lit(spec.fbs_mean),
            user_mean: T::lit(spec.user_mean),
            benefit_ratio: T::lit(spec.benefit_ratio),
            oms_ratio: T::lit(spec.oms_ratio),
            outage_cap: T::lit(spec.outage_cap),
            indoor_factor: T::lit(spec.indoor_factor),
            pathloss: PathlossTable::standard(T::lit(spec.carrier_freq_mhz), T::lit(spec.wall_loss_db)),
            rates: RateTable::standard(),
        };
        Ok(cfg)
    }

    /// `A_m = pi D_m^2`.
    pub fn macro_area(&self) -> T {
        T::PI() * self.macro_radius * self.macro_radius
    }

    pub fn home_area(&self) -> T {
        T::PI() * self.home_radius * self.home_radius
    }

    /// `lambda_f`, femtocells per m^2.
    pub fn fbs_density(&self) -> T {
        self.fbs_mean / self.macro_area()
    }

    /// `lambda_u`, macrocell users per m^2 averaged over the whole area.
    pub fn user_density(&self) -> T {
        self.user_mean / self.macro_area()
    }

    /// Outdoor density `lambda_{u,o}` such that the mean total user count is
    /// unchanged when indoor areas carry `indoor_factor` times the density.
    pub fn outdoor_user_density(&self) -> T {
        let lf = self.fbs_density();
        let indoor_share =
            if lf > T::zero() { -(-T::PI() * self.home_radius * self.home_radius * lf).exp_m1() } else { T::zero() };
        self.user_density() / (T::one() + (self.indoor_factor - T::one()) * indoor_share)
    }

    pub fn is_heterogeneous(&self) -> bool {
        self.indoor_factor != T::one()
    }

    /// Same configuration with a different femtocell population.
    pub fn with_fbs_mean(&self, fbs_mean: T) -> Self {
        NetworkConfig { fbs_mean, ..self.clone() }
    }

    pub fn with_benefit_ratio(&self, m: T) -> Self {
        NetworkConfig { benefit_ratio: m, ..self.clone() }
    }

    pub fn with_oms_ratio(&self, k: T) -> Self {
        NetworkConfig { oms_ratio: k, ..self.clone() }
    }

    /// Lossless (for f64) conversion to double precision.
    pub fn to_f64(&self) -> NetworkConfig<f64> {
        let c = |v: T| v.as_f64();
        let mut pathloss = PathlossTable::standard(c(self.carrier_freq_mhz), c(self.wall_loss_db));
        for class in crate::model::LinkClass::ALL {
            let e = self.pathloss.get(class);
            pathloss
                .set(class, crate::model::PathlossEntry { exponent: c(e.exponent), fixed_loss_db: c(e.fixed_loss_db) });
        }
        let rates = RateTable::new(
            self.rates
                .entries()
                .iter()
                .map(|e| crate::model::RateEntry { efficiency: c(e.efficiency), sinr_lower_db: c(e.sinr_lower_db) })
                .collect(),
        )
        .expect("rate table already validated");
        NetworkConfig {
            macro_radius: c(self.macro_radius),
            home_radius: c(self.home_radius),
            carrier_freq_mhz: c(self.carrier_freq_mhz),
            bandwidth: c(self.bandwidth),
            noise_density: c(self.noise_density),
            macro_power_density: c(self.macro_power_density),
            femto_power_density: c(self.femto_power_density),
            wall_loss_db: c(self.wall_loss_db),
            fbs_mean: c(self.fbs_mean),
            user_mean: c(self.user_mean),
            benefit_ratio: c(self.benefit_ratio),
            oms_ratio: c(self.oms_ratio),
            outage_cap: c(self.outage_cap),
            indoor_factor: c(self.indoor_factor),
            pathloss,
            rates,
        }
    }
}

impl NetworkSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::Config(msg.to_string()));
        let finite = [
            self.macro_radius,
            self.home_radius,
            self.carrier_freq_mhz,
            self.bandwidth_hz,
            self.noise_density_dbm_hz,
            self.macro_power_dbm,
            self.femto_power_dbm,
            self.wall_loss_db,
            self.fbs_mean,
            self.user_mean,
            self.benefit_ratio,
            self.oms_ratio,
            self.outage_cap,
            self.indoor_factor,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return fail("all parameters must be finite");
        }
        if !(self.home_radius > 0.0 && self.home_radius < self.macro_radius) {
            return fail("need 0 < home_radius < macro_radius");
        }
        if self.bandwidth_hz <= 0.0 {
            return fail("bandwidth_hz must be positive");
        }
        if self.carrier_freq_mhz <= 0.0 {
            return fail("carrier_freq_mhz must be positive");
        }
        if !(self.outage_cap > 0.0 && self.outage_cap < 1.0) {
            return fail("outage_cap must lie in (0, 1)");
        }
        if self.benefit_ratio < 1.0 {
            return fail("benefit_ratio (M) must be at least 1");
        }
        if self.oms_ratio < 0.0 || self.oms_ratio > self.benefit_ratio {
            return fail("oms_ratio (K) must satisfy 0 <= K <= M");
        }
        if self.fbs_mean < 0.0 || self.user_mean <= 0.0 {
            return fail("fbs_mean must be >= 0 and user_mean > 0");
        }
        if self.indoor_factor < 1.0 {
            return fail("indoor_factor must be at least 1");
        }
        if self.wall_loss_db < 0.0 {
            return fail("wall_loss_db must be non-negative");
        }
        Ok(())
    }
}

/// Probability that two or more femtocells fall in a disk of radius
/// `2 D_h`, i.e. that some home regions overlap:
/// `1 - e^-t - t e^-t` with `t = lambda_f 4 pi D_h^2`.
pub fn overlap_probability<T: Scalar>(fbs_density: T, home_radius: T) -> T {
    let t = fbs_density * T::lit(4.0) * T::PI() * home_radius * home_radius;
    // 1 - (1 + t) e^-t, written to keep precision for small t.
    -(-t).exp_m1() - t * (-t).exp()
}

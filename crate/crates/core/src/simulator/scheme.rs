use crate::error::Error;
use crate::model::ControlParams;
use crate::Result;

/// Simulated access scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Open access on an orthogonal split, distance-based association.
    Oa,
    OaThin,
    /// Hybrid access with owner dedication `beta`.
    Ha,
    HaThin,
    /// Co-channel, strongest mean RSS.
    CoRssi,
    /// Co-channel, femtocell RSS biased by `delta_f`.
    CoLb,
    /// Orthogonal split, strongest mean RSS.
    DivRssi,
    /// Co-channel closed access.
    CoCa,
    /// Orthogonal split closed access.
    DivCa,
}

impl Scheme {
    pub const ALL: [Scheme; 9] = [
        Scheme::Oa,
        Scheme::OaThin,
        Scheme::Ha,
        Scheme::HaThin,
        Scheme::CoRssi,
        Scheme::CoLb,
        Scheme::DivRssi,
        Scheme::CoCa,
        Scheme::DivCa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Oa => "OA",
            Scheme::OaThin => "OA-Thin",
            Scheme::Ha => "HA",
            Scheme::HaThin => "HA-Thin",
            Scheme::CoRssi => "CoRSSI",
            Scheme::CoLb => "CoLB",
            Scheme::DivRssi => "DivRSSI",
            Scheme::CoCa => "CoCA",
            Scheme::DivCa => "DivCA",
        }
    }

    pub fn parse(s: &str) -> Option<Scheme> {
        Scheme::ALL.into_iter().find(|m| m.name().eq_ignore_ascii_case(s))
    }

    /// Distance-threshold association on an orthogonal split.
    pub fn is_proposed(self) -> bool {
        matches!(self, Scheme::Oa | Scheme::OaThin | Scheme::Ha | Scheme::HaThin)
    }

    /// Both tiers share the whole band.
    pub fn is_cochannel(self) -> bool {
        matches!(self, Scheme::CoRssi | Scheme::CoLb | Scheme::CoCa)
    }

    /// Only the owner may use its femtocell.
    pub fn is_closed(self) -> bool {
        matches!(self, Scheme::CoCa | Scheme::DivCa)
    }
}

/// A scheme together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeSpec {
    pub scheme: Scheme,
    /// Operating point. Proposed schemes use all four fields, `Div*` only `rho`.
    pub control: ControlParams<f64>,
    /// Association bias of `CoLB` in dB.
    pub colb_delta_db: f64,
    /// Admission cap per femtocell, owner included.
    pub n_max: Option<usize>,
}

impl SchemeSpec {
    pub fn new(scheme: Scheme, control: ControlParams<f64>) -> Self {
        SchemeSpec { scheme, control, colb_delta_db: 0.0, n_max: None }
    }

    pub fn validate(&self) -> Result<()> {
        self.control.validate()?;
        if !(self.colb_delta_db >= 0.0 && self.colb_delta_db.is_finite()) {
            return Err(Error::Config(format!("CoLB bias {} dB must be non-negative", self.colb_delta_db)));
        }
        if self.n_max == Some(0) {
            return Err(Error::Config("n_max must be at least 1".into()));
        }
        Ok(())
    }

    /// Fraction of the band used by the macrocell.
    pub fn macro_band(&self) -> f64 {
        if self.scheme.is_cochannel() {
            1.0
        } else {
            1.0 - self.control.rho
        }
    }

    /// Fraction of the band used by the femtocells.
    pub fn femto_band(&self) -> f64 {
        if self.scheme.is_cochannel() {
            1.0
        } else {
            self.control.rho
        }
    }

    /// Owner dedication; nonzero only for hybrid access.
    pub fn beta(&self) -> f64 {
        match self.scheme {
            Scheme::Ha | Scheme::HaThin => self.control.beta,
            _ => 0.0,
        }
    }

    /// Femtocell activity probability; below one only for the thinned schemes.
    pub fn theta(&self) -> f64 {
        match self.scheme {
            Scheme::OaThin | Scheme::HaThin => self.control.theta,
            _ => 1.0,
        }
    }
}

/// Simulation settings independent of the scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSettings {
    /// Rayleigh samples per link; 0 averages fading exactly.
    pub fading_samples: usize,
    /// Width of the user ring beyond the macrocell edge (m).
    pub user_margin: f64,
    /// Femtocells are dropped up to this multiple of the macro radius.
    pub interference_radius_factor: f64,
    /// Minimum femtocell spacing in home radii; 0 gives a plain Poisson field.
    pub min_spacing: f64,
    /// Rejection sampling budget per femtocell.
    pub max_attempts: usize,
}

impl Default for SimSettings {
    fn default() -> Self {
        SimSettings {
            fading_samples: 0,
            user_margin: 200.0,
            interference_radius_factor: 3.0,
            min_spacing: 2.0,
            max_attempts: 10_000,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(Scheme::parse(s.name()), Some(s));
            assert_eq!(Scheme::parse(&s.name().to_lowercase()), Some(s));
        }
        assert_eq!(Scheme::parse("CoXYZ"), None);
    }

    #[test]
    fn band_split_by_scheme() {
        let control = ControlParams { rho: 0.3, service_radius: 40.0, beta: 0.2, theta: 0.5 };
        let ha = SchemeSpec::new(Scheme::Ha, control);
        assert_eq!((ha.macro_band(), ha.femto_band(), ha.beta(), ha.theta()), (0.7, 0.3, 0.2, 1.0));
        let thin = SchemeSpec::new(Scheme::OaThin, control);
        assert_eq!((thin.beta(), thin.theta()), (0.0, 0.5));
        let co = SchemeSpec::new(Scheme::CoRssi, control);
        assert_eq!((co.macro_band(), co.femto_band()), (1.0, 1.0));
    }

    #[test]
    fn validation() {
        let control = ControlParams::open(0.5, 40.0);
        let mut s = SchemeSpec::new(Scheme::CoLb, control);
        assert!(s.validate().is_ok());
        s.colb_delta_db = -1.0;
        assert!(s.validate().is_err());
        s.colb_delta_db = 0.0;
        s.n_max = Some(0);
        assert!(s.validate().is_err());
    }
}

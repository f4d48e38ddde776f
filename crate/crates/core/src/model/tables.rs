//! Path loss classes and the discrete rate set.

use crate::model::units::db_to_linear;
use crate::{Error, Result, Scalar};

/// Link environment, which selects the path loss exponent and fixed loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkClass {
    Outdoor,
    Indoor,
    OutdoorToIndoor,
    IndoorToOutdoor,
    IndoorToIndoor,
}

impl LinkClass {
    pub const ALL: [LinkClass; 5] = [
        LinkClass::Outdoor,
        LinkClass::Indoor,
        LinkClass::OutdoorToIndoor,
        LinkClass::IndoorToOutdoor,
        LinkClass::IndoorToIndoor,
    ];

    fn index(self) -> usize {
        match self {
            LinkClass::Outdoor => 0,
            LinkClass::Indoor => 1,
            LinkClass::OutdoorToIndoor => 2,
            LinkClass::IndoorToOutdoor => 3,
            LinkClass::IndoorToIndoor => 4,
        }
    }
}

/// Fixed loss `Z^alpha` in dB for a carrier in MHz and a wall loss in dB.
///
/// Indoor links use a constant 37 dB; every wall crossed adds `wall_loss_db`
/// on top of the outdoor `30 log10(f_c) - 71` term.
pub fn fixed_loss_db<T: Scalar>(carrier_mhz: T, wall_loss_db: T, class: LinkClass) -> T {
    let outdoor = T::lit(30.0) * carrier_mhz.log10() - T::lit(71.0);
    match class {
        LinkClass::Outdoor => outdoor,
        LinkClass::Indoor => T::lit(37.0),
        LinkClass::OutdoorToIndoor | LinkClass::IndoorToOutdoor => outdoor + wall_loss_db,
        LinkClass::IndoorToIndoor => outdoor + wall_loss_db + wall_loss_db,
    }
}

/// Path loss parameters of one link class. Channel gain is `Psi (Z d)^-alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathlossEntry<T> {
    pub exponent: T,
    pub fixed_loss_db: T,
}

impl<T: Scalar> PathlossEntry<T> {
    /// `Z^alpha` on a linear scale.
    pub fn fixed_loss_linear(&self) -> T {
        db_to_linear(self.fixed_loss_db)
    }

    /// `Z` itself.
    pub fn z(&self) -> T {
        self.fixed_loss_linear().powf(self.exponent.recip())
    }

    /// Mean channel gain `(Z d)^-alpha` at distance `d`.
    pub fn gain(&self, d: T) -> T {
        (self.fixed_loss_linear() * d.powf(self.exponent)).recip()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathlossTable<T> {
    entries: [PathlossEntry<T>; 5],
}

impl<T: Scalar> PathlossTable<T> {
    /// Default exponents (4 everywhere except 3 indoors).
    pub fn standard(carrier_mhz: T, wall_loss_db: T) -> Self {
        let entry = |class: LinkClass| PathlossEntry {
            exponent: if class == LinkClass::Indoor { T::lit(3.0) } else { T::lit(4.0) },
            fixed_loss_db: fixed_loss_db(carrier_mhz, wall_loss_db, class),
        };
        PathlossTable { entries: LinkClass::ALL.map(entry) }
    }

    pub fn from_entries(entries: [PathlossEntry<T>; 5]) -> Self {
        PathlossTable { entries }
    }

    pub fn get(&self, class: LinkClass) -> &PathlossEntry<T> {
        &self.entries[class.index()]
    }

    pub fn set(&mut self, class: LinkClass, entry: PathlossEntry<T>) {
        self.entries[class.index()] = entry;
    }
}

/// One row of the rate table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEntry<T> {
    /// Spectral efficiency in bit/s/Hz.
    pub efficiency: T,
    /// Lower SINR bound in dB.
    pub sinr_lower_db: T,
}

/// Ordered discrete rates. Index `l` (zero based here) is used when the SINR
/// lies in `[Gamma_l, Gamma_{l+1})`; below the first threshold is outage.
#[derive(Debug, Clone, PartialEq)]
pub struct RateTable<T> {
    entries: Vec<RateEntry<T>>,
    thresholds: Vec<T>,
}

impl<T: Scalar> RateTable<T> {
    /// Variable-rate M-QAM set with six rates from -4 dB to 16 dB in 4 dB steps.
    pub fn standard() -> Self {
        const ROWS: [(f64, f64); 6] =
            [(0.4922, -4.0), (1.3889, 0.0), (2.8962, 4.0), (4.7364, 8.0), (6.6885, 12.0), (8.6711, 16.0)];
        let entries =
            ROWS.iter().map(|&(b, g)| RateEntry { efficiency: T::lit(b), sinr_lower_db: T::lit(g) }).collect();
        Self::new(entries).expect("standard rate table is well formed")
    }

    pub fn new(entries: Vec<RateEntry<T>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Config("rate table is empty".into()));
        }
        for w in entries.windows(2) {
            if !(w[1].efficiency > w[0].efficiency && w[1].sinr_lower_db > w[0].sinr_lower_db) {
                return Err(Error::Config("rate table must be strictly increasing in efficiency and threshold".into()));
            }
        }
        if entries[0].efficiency < T::zero() {
            return Err(Error::Config("negative spectral efficiency".into()));
        }
        let thresholds = entries.iter().map(|e| db_to_linear(e.sinr_lower_db)).collect();
        Ok(RateTable { entries, thresholds })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[RateEntry<T>] {
        &self.entries
    }

    /// Linear SINR thresholds, ascending.
    pub fn thresholds(&self) -> &[T] {
        &self.thresholds
    }

    pub fn efficiency(&self, index: usize) -> T {
        self.entries[index].efficiency
    }

    /// Highest efficiency `b_L`.
    pub fn peak_efficiency(&self) -> T {
        self.entries[self.entries.len() - 1].efficiency
    }

    /// Outage threshold `Gamma_1`, linear.
    pub fn outage_threshold(&self) -> T {
        self.thresholds[0]
    }

    /// Rate index for an SINR in dB, `None` for outage.
    pub fn rate_index_db(&self, sinr_db: T) -> Option<usize> {
        self.entries.iter().rposition(|e| e.sinr_lower_db <= sinr_db)
    }

    /// Rate index for a linear SINR, `None` for outage.
    pub fn rate_index(&self, sinr: T) -> Option<usize> {
        self.thresholds.iter().rposition(|&g| g <= sinr)
    }

    /// Spectral efficiency for a linear SINR (0 in outage).
    pub fn efficiency_at(&self, sinr: T) -> T {
        self.rate_index(sinr).map_or(T::zero(), |l| self.entries[l].efficiency)
    }

    /// Expected efficiency given the CCDF evaluated at every threshold:
    /// `sum_l b_l [F(Gamma_l) - F(Gamma_{l+1})]` with `F(Gamma_{L+1}) = 0`.
    pub fn expected_efficiency(&self, ccdf_at_thresholds: &[T]) -> T {
        debug_assert_eq!(ccdf_at_thresholds.len(), self.len());
        let mut acc = T::zero();
        for (l, entry) in self.entries.iter().enumerate() {
            let upper = ccdf_at_thresholds.get(l + 1).copied().unwrap_or(T::zero());
            acc = acc + entry.efficiency * (ccdf_at_thresholds[l] - upper);
        }
        acc
    }
}

//! Per-class performance summary shared by the analytic model and the simulator.

use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Analytic,
    Simulated,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Analytic => "analytic",
            Source::Simulated => "simulated",
        }
    }
}

/// One of the reported quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    SeFms,
    SeMms,
    SeOms,
    TputFms,
    TputMms,
    TputOms,
    OutageOms,
}

impl Metric {
    pub const ALL: [Metric; 7] = [
        Metric::SeFms,
        Metric::SeMms,
        Metric::SeOms,
        Metric::TputFms,
        Metric::TputMms,
        Metric::TputOms,
        Metric::OutageOms,
    ];

    /// The six efficiency and throughput means compared during validation.
    pub const MEANS: [Metric; 6] =
        [Metric::SeFms, Metric::SeMms, Metric::SeOms, Metric::TputFms, Metric::TputMms, Metric::TputOms];

    pub fn name(self) -> &'static str {
        match self {
            Metric::SeFms => "se_fms",
            Metric::SeMms => "se_mms",
            Metric::SeOms => "se_oms",
            Metric::TputFms => "tput_fms",
            Metric::TputMms => "tput_mms",
            Metric::TputOms => "tput_oms",
            Metric::OutageOms => "outage_oms",
        }
    }
}

/// The seven per-class quantities, used for values and for uncertainties.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Metrics<T> {
    pub se_fms: T,
    pub se_mms: T,
    pub se_oms: T,
    pub tput_fms: T,
    pub tput_mms: T,
    pub tput_oms: T,
    pub outage_oms: T,
}

impl<T: Scalar> Metrics<T> {
    pub fn get(&self, m: Metric) -> T {
        match m {
            Metric::SeFms => self.se_fms,
            Metric::SeMms => self.se_mms,
            Metric::SeOms => self.se_oms,
            Metric::TputFms => self.tput_fms,
            Metric::TputMms => self.tput_mms,
            Metric::TputOms => self.tput_oms,
            Metric::OutageOms => self.outage_oms,
        }
    }

    pub fn set(&mut self, m: Metric, v: T) {
        match m {
            Metric::SeFms => self.se_fms = v,
            Metric::SeMms => self.se_mms = v,
            Metric::SeOms => self.se_oms = v,
            Metric::TputFms => self.tput_fms = v,
            Metric::TputMms => self.tput_mms = v,
            Metric::TputOms => self.tput_oms = v,
            Metric::OutageOms => self.outage_oms = v,
        }
    }
}

/// Throughputs (bit/s), spectral efficiencies (bit/s/Hz) and oMS outage at
/// one operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct ThroughputReport<T> {
    pub values: Metrics<T>,
    /// `T_f - M T_m`.
    pub slack_fms: T,
    /// `T_o - K T_m`.
    pub slack_oms: T,
    pub source: Source,
    /// 95% confidence half-widths for simulated reports.
    pub half_widths: Option<Metrics<T>>,
}

impl<T: Scalar> ThroughputReport<T> {
    pub fn new(values: Metrics<T>, benefit_ratio: T, oms_ratio: T, source: Source) -> Self {
        ThroughputReport {
            slack_fms: values.tput_fms - benefit_ratio * values.tput_mms,
            slack_oms: values.tput_oms - oms_ratio * values.tput_mms,
            values,
            source,
            half_widths: None,
        }
    }

    pub fn get(&self, m: Metric) -> T {
        self.values.get(m)
    }

    pub fn tput_fms(&self) -> T {
        self.values.tput_fms
    }

    pub fn tput_mms(&self) -> T {
        self.values.tput_mms
    }

    pub fn tput_oms(&self) -> T {
        self.values.tput_oms
    }
}

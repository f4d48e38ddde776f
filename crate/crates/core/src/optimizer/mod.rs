//! Load-balancing optimizer for open and hybrid access femtocells.
//!
//! For a fixed service area `x`, the bandwidth split and the owner
//! dedication have closed forms, so every mode reduces to a bounded search
//! over `x` (and an outer sweep over the thinning probability).

mod conditions;
mod solve;
mod terms;

pub(crate) use conditions::grid;
pub use conditions::{
    fms_limited_check, report_conditions, verify_convexity, ChecklistItem, ChecklistStatus, ConditionReport,
    ConvexityReport, FmsLimited,
};
pub use solve::{default_theta_grid, solve, solve_ha, solve_ha_thin, solve_oa, solve_oa_thin, SolverSpec};
pub use terms::{normalized_terms, optimal_beta, optimal_rho, rho_from_terms, AbcdTerms, TermModel};

use crate::analytic::Dmax;
use crate::model::ControlParams;
use crate::report::ThroughputReport;

/// Access mode and whether the thinning probability is optimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Oa,
    OaThin,
    Ha,
    HaThin,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Oa, Mode::OaThin, Mode::Ha, Mode::HaThin];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Oa => "OA",
            Mode::OaThin => "OA-Thin",
            Mode::Ha => "HA",
            Mode::HaThin => "HA-Thin",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        Mode::ALL.into_iter().find(|m| m.name().eq_ignore_ascii_case(s))
    }

    pub fn is_hybrid(self) -> bool {
        matches!(self, Mode::Ha | Mode::HaThin)
    }

    pub fn is_thinned(self) -> bool {
        matches!(self, Mode::OaThin | Mode::HaThin)
    }
}

/// Which throughput requirement is tight at the optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Binding {
    Fms,
    Oms,
    Both,
}

impl Binding {
    pub fn name(self) -> &'static str {
        match self {
            Binding::Fms => "fms",
            Binding::Oms => "oms",
            Binding::Both => "both",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics<T> {
    /// Sufficient condition for the subscriber requirement to be the binding one.
    pub fms_limited: bool,
    /// Direct check of the same property on an area grid.
    pub fms_limited_direct: bool,
    /// Sufficient condition for `x* = X_max`.
    pub coverage_condition: bool,
    /// Second differences of the reduced objective were non-negative.
    pub convexity_verified: Option<bool>,
    pub binding: Binding,
    /// The outage cap is violated already at the home radius.
    pub infeasible: bool,
    pub dmax: Dmax<T>,
    pub area_min: T,
    pub area_max: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult<T> {
    pub mode: Mode,
    pub control: ControlParams<T>,
    /// Optimal average service area `x*`.
    pub area: T,
    /// Mean macrocell user throughput at the optimum (bit/s).
    pub objective: T,
    pub report: ThroughputReport<T>,
    pub diagnostics: Diagnostics<T>,
}

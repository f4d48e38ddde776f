//! Performance model, parameter optimizer and drop-based Monte Carlo
//! simulator for two-tier cellular networks in which open or hybrid access
//! femtocells run on spectrum that is orthogonal to the macrocell.
//!
//! The analytic side ([`analytic`], [`optimizer`], [`numerics`], [`model`])
//! is generic over the floating point type through [`Scalar`]; the
//! simulator works in `f64`. Double precision aliases for the common types
//! live at the crate root.

pub mod analytic;
pub mod config;
pub mod error;
pub mod model;
pub mod numerics;
pub mod optimizer;
pub mod report;
pub mod scalar;
pub mod simulator;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Network configuration in double precision.
pub type Config = model::NetworkConfig<f64>;
/// Single precision configuration, mostly useful for quick sweeps.
pub type Config32 = model::NetworkConfig<f32>;
/// Decision variables in double precision.
pub type Control = model::ControlParams<f64>;
/// Analytic or simulated per-class report in double precision.
pub type Report = report::ThroughputReport<f64>;
/// Optimizer output in double precision.
pub type Optimum = optimizer::OptimizationResult<f64>;
/// Quadrature settings in double precision.
pub type Quadrature = numerics::QuadratureSpec<f64>;

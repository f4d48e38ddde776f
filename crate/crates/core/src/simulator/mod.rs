//! Drop-based Monte Carlo simulator.
//!
//! Each drop places femtocells, owners and macrocell users at random,
//! associates users under a [`Scheme`] and averages the Rayleigh fading of
//! every counted link. Only femtocells inside the macrocell are counted;
//! those further out (up to three macro radii) act as interferers.
//! A [`Campaign`] keeps per-drop sums, so a different band split or owner
//! dedication can be applied without re-simulating. Each drop has its own
//! random streams keyed by `(base_seed, index)`, which makes results
//! independent of the number of worker threads.

mod association;
mod calibrate;
mod campaign;
mod channel;
mod drop;
mod evaluate;
mod scheme;

pub use association::{associate, Assignment, Server};
pub use calibrate::{
    calibrate_colb, calibrate_div, default_colb_grid, default_radius_grid, optimize_by_simulation, CapExperiment,
    CapPoint, ColbCalibration, ColbPoint, DivCalibration,
};
pub use campaign::{run_campaign, simulate_drop, Campaign, ClassCounts, ClassSums, DropSums, SimEstimate};
pub use channel::{
    exact_outcome, femto_class, macro_class, sample_sinr, sampled_outcome, Channel, Interference, LinkOutcome,
};
pub use drop::{generate_drop, Drop, Point, User};
pub use evaluate::{evaluate_drop, UserClass, UserResult};
pub use scheme::{Scheme, SchemeSpec, SimSettings};

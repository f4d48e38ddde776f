//! Configuration and domain types shared by every other module.

mod control;
mod network;
mod tables;
pub mod units;

pub use control::ControlParams;
pub use network::{overlap_probability, NetworkConfig, NetworkSpec};
pub use tables::{fixed_loss_db, LinkClass, PathlossEntry, PathlossTable, RateEntry, RateTable};

//! Closed-form and integral performance model of the orthogonal two-tier
//! network: interference Laplace transforms, SINR distributions, spectral
//! efficiencies, service geometry, throughputs and outage.

mod ccdf;
mod efficiency;
mod geometry;
mod laplace;
mod outage;
mod throughput;

pub use ccdf::{ccdf_fms, ccdf_mms, ccdf_oms};
pub use efficiency::{avg_se_fms, avg_se_mms, avg_se_mms_quadrature, avg_se_oms, oms_distance_density};
pub use geometry::{
    association_threshold, macro_user_probability, service_area, service_geometry, service_radius, GeometrySnapshot,
};
pub use laplace::{
    interference_tail, laplace_arctan, laplace_interference, laplace_quadrature, laplace_unbounded, InterferenceField,
};
pub use outage::{avg_outage_oms, find_dmax, find_dmax_with, Dmax};
pub use throughput::{
    hetero_counts, oms_share_factor, sharing_factor, tput_fms, tput_mms, tput_oms, Evaluator, Population,
};

//! Numerical kernels: incomplete gamma, adaptive quadrature, bracketed root
//! finding and bounded scalar minimization.

mod gamma;
mod minimize;
mod quadrature;
mod roots;

pub use gamma::{ln_gamma, lower_incomplete_gamma};
pub use minimize::{golden_section, minimize_1d, try_minimize_1d, MinimizeSpec, Minimum};
pub use quadrature::{integrate, QuadratureSpec};
pub use roots::{bisect, Bracket};

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of a function.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// Adaptive quadrature exhausted its depth budget.
    #[error("quadrature tolerance not met on [{lo}, {hi}] after depth {depth}")]
    ToleranceNotMet { lo: f64, hi: f64, depth: usize },

    /// A series or continued fraction failed to converge.
    #[error("{op} did not converge")]
    NoConvergence { op: &'static str },

    #[error("invalid bracket [{lo}, {hi}]: endpoint values {f_lo} and {f_hi} do not change sign")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// Interference integral diverges for path loss exponents at or below 2.
    #[error("interference Laplace transform diverges for exponent {exponent}")]
    Divergent { exponent: f64 },

    /// No macrocell users remain (the femtocells cover the whole area).
    #[error("degenerate macrocell population: 1 - lambda_f * x = {remaining}")]
    Degenerate { remaining: f64 },

    /// The outage cap is already violated at the home radius.
    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("could not place a femtocell after {attempts} attempts")]
    Placement { attempts: usize },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { op, detail: detail.into() }
    }
}

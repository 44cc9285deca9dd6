use thiserror::Error;

/// Errors produced by the simulation core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dark state undefined: both Rabi frequencies vanish")]
    UndefinedState,

    #[error("step size {dt:e} exceeds the stability guard {max:e}")]
    StepGuard { dt: f64, max: f64 },

    #[error("steady state is not unique: Liouvillian null space has dimension {dimension}")]
    DegenerateSteadyState { dimension: usize },

    #[error("profile is not localized: {0}")]
    NotLocalized(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("offset {offset} lies outside the grid range [{min}, {max}]")]
    OutOfBounds { offset: f64, min: f64, max: f64 },

    #[error("no convergence after {iterations} iterations (last relative energy change {last_change:e}, residual {residual:e})")]
    NonConvergence {
        iterations: usize,
        last_change: f64,
        residual: f64,
    },

    #[error("grid does not resolve the condensate: {0}")]
    Unresolved(String),

    #[error("non-finite values at step {step} (t = {time:e})")]
    NumericalBlowup { step: usize, time: f64 },

    #[error("winding undefined: minimum amplitude {min_amplitude:e} on the loop is below {threshold:e}")]
    UndefinedWinding { min_amplitude: f64, threshold: f64 },

    #[error("solver failed at grid point ({i}, {j}): {source}")]
    AtGridPoint {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

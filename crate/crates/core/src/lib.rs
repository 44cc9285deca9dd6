//! Sub-wavelength atom localization by two-dimensional STIRAP with optical
//! vortex pump beams, and the imprinting of the resulting bright/dark defects
//! onto a three-component Bose–Einstein condensate.
//!
//! Λ-system quantities are in any consistent frequency unit (ħ = 1); the
//! condensate solvers work in trap units (see [`gpe`]).

pub mod analysis;
pub mod error;
pub mod fields;
pub mod gpe;
pub mod grid;
pub mod lambda;
pub mod localization;

pub use error::{Error, Result};
pub use fields::{CompositeBeamSpec, Pulse, PulseSchedule, StokesProfile, StokesSpec, VortexBeamSpec};
pub use grid::{Axis, ComplexField2D, GridSpec2D, Profile1D, ScalarField2D};
pub use lambda::{DecayMode, DensityMatrix3, LambdaParams, Level, StateVector3};
pub use localization::{FwhmReport, LambdaScenario, SolverOptions, SpotReport};

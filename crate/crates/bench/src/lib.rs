//! Reference workloads shared by the benchmarks, in the dimensionless units
//! of the Λ solver (Γ = 1, waist = 1) and in trap units for the condensate.

use std::f64::consts::PI;

use stirap_core::gpe::{BECParams, GpeDrive};
use stirap_core::{
    CompositeBeamSpec, GridSpec2D, LambdaParams, LambdaScenario, PulseSchedule, StokesSpec, VortexBeamSpec,
};

/// Charge-1 pump at α = 100 with Ωs0 = 4Γ, T = 5/Γ, τ = 10/Γ.
pub fn reference_scenario() -> LambdaScenario {
    LambdaScenario {
        pump: CompositeBeamSpec::single(VortexBeamSpec::new(40.0, 1.0, 1).unwrap()).unwrap(),
        stokes: StokesSpec::top_hat(4.0).unwrap(),
        schedule: PulseSchedule::symmetric(5.0, 10.0).unwrap(),
        params: LambdaParams::resonant(1.0).unwrap(),
    }
}

/// Square map over ±2 waists.
pub fn map_grid(n: usize) -> GridSpec2D {
    GridSpec2D::spanning(n, n, (-2.0, 2.0), (-2.0, 2.0)).unwrap()
}

/// ⁸⁷Rb pancake on an `n × n` periodic box of ±50 µm, in trap units.
pub fn condensate_grid(n: usize) -> (BECParams, GridSpec2D) {
    let p = BECParams::rb87_pancake();
    let si = GridSpec2D::periodic_box(n, n, (-50e-6, 50e-6), (-50e-6, 50e-6)).unwrap();
    let g = p.units().grid_to_reduced(&si);
    (p, g)
}

/// Single-vortex imprinting drive with the ⁸⁷Rb D-line decay rate.
pub fn imprint_drive(p: &BECParams) -> GpeDrive {
    let pump = CompositeBeamSpec::single(VortexBeamSpec::new(2.0 * PI * 1e8, 20e-6, 1).unwrap()).unwrap();
    let stokes = StokesSpec::top_hat(2.0 * PI * 1e7).unwrap();
    let schedule = PulseSchedule::with_centers(5e-6, 20e-6, 30e-6).unwrap();
    GpeDrive::from_si(&pump, &stokes, &schedule, 2.0 * PI * 5.41e6, &p.units())
}

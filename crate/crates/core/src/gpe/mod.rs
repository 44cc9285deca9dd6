//! Two-dimensional Gross–Pitaevskii solvers in trap units: lengths in
//! `a_r = √(ħ/(mω_r))`, times in `1/ω_r`, energies in `ħω_r`. Wavefunctions
//! are normalized to one (`N` is folded into the couplings) and live on
//! periodic grids.

mod evolve;
mod fft;
mod ground;
mod observables;
mod params;

pub use evolve::{
    evolve_spinor, evolve_spinor_with, Component, CouplingConvention, EvolutionResult, EvolveOptions, GpeDrive,
    NormSample, SpinorField2D,
};
pub use fft::{wavenumbers_squared, Fft2};
pub use ground::{ground_state, ground_state_from, GroundStateOptions, GroundStateResult};
pub use observables::{component_norm, fwhm_timeseries, phase_map, winding_number, PhaseMap, MIN_LOOP_SAMPLES};
pub use params::{BECParams, Couplings, ThomasFermi, Units, HBAR};

use num_complex::Complex64;

use crate::grid::GridSpec2D;

/// FFT plan, `|k|²` table and trap potential for one grid.
pub(crate) struct Spectral {
    pub grid: GridSpec2D,
    pub fft: Fft2,
    pub k2: Vec<f64>,
    pub trap: Vec<f64>,
    pub cell: f64,
}

impl Spectral {
    pub fn new(grid: &GridSpec2D) -> Self {
        let trap = grid.points().map(|(_, _, (x, y))| 0.5 * (x * x + y * y)).collect();
        Self {
            grid: *grid,
            fft: Fft2::new(grid.nx, grid.ny),
            k2: wavenumbers_squared(grid),
            trap,
            cell: grid.cell_area(),
        }
    }

    pub fn points(&self) -> f64 {
        self.grid.len() as f64
    }

    pub fn norm(&self, psi: &[Complex64]) -> f64 {
        psi.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.cell
    }

    pub fn max_kinetic(&self) -> f64 {
        0.5 * self.k2.iter().copied().fold(0.0, f64::max)
    }

    /// `∫ ½|∇ψ|²` by Parseval.
    pub fn kinetic_energy(&mut self, psi: &[Complex64]) -> f64 {
        let mut hat = psi.to_vec();
        self.fft.forward(&mut hat);
        let s: f64 = hat.iter().zip(&self.k2).map(|(z, k2)| 0.5 * k2 * z.norm_sqr()).sum();
        s * self.cell / self.points()
    }

    /// `−½∇²ψ`.
    pub fn kinetic_apply(&mut self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut hat = psi.to_vec();
        self.fft.forward(&mut hat);
        let n = self.points();
        for (z, k2) in hat.iter_mut().zip(&self.k2) {
            *z *= 0.5 * k2 / n;
        }
        self.fft.inverse(&mut hat);
        hat
    }

    /// Multiply by precomputed spectral factors (normalization included).
    pub fn spectral_multiply(&mut self, psi: &mut [Complex64], factor: &[Complex64]) {
        self.fft.forward(psi);
        for (z, f) in psi.iter_mut().zip(factor) {
            *z *= f;
        }
        self.fft.inverse(psi);
    }
}

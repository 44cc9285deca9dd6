use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::grid::GridSpec2D;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Trap, interaction and atom-number constants of a pancake condensate, SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BECParams {
    pub mass: f64,
    pub atom_number: f64,
    /// Radial trap angular frequency.
    pub omega_r: f64,
    /// Transverse (tight) trap angular frequency.
    pub omega_perp: f64,
    pub a_aa: f64,
    pub a_ab: f64,
    pub a_bb: f64,
}

/// Harmonic-oscillator units of the radial trap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    /// `a_r = √(ħ/(m ω_r))`, metres.
    pub length: f64,
    /// `1/ω_r`, seconds.
    pub time: f64,
    /// `ħ ω_r`, joules.
    pub energy: f64,
}

impl Units {
    pub fn to_reduced_length(&self, metres: f64) -> f64 {
        metres / self.length
    }

    pub fn to_reduced_time(&self, seconds: f64) -> f64 {
        seconds / self.time
    }

    /// Angular frequency (s⁻¹) to units of ω_r.
    pub fn to_reduced_rate(&self, per_second: f64) -> f64 {
        per_second * self.time
    }

    pub fn grid_to_reduced(&self, g: &GridSpec2D) -> GridSpec2D {
        g.scaled(1.0 / self.length)
    }

    pub fn grid_to_si(&self, g: &GridSpec2D) -> GridSpec2D {
        g.scaled(self.length)
    }
}

/// `N·g_ij` in units of `ħ ω_r a_r²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    pub aa: f64,
    pub ab: f64,
    pub bb: f64,
}

/// Thomas–Fermi chemical potential and radius, reduced units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThomasFermi {
    pub mu: f64,
    pub radius: f64,
}

impl BECParams {
    /// ⁸⁷Rb in a 14 Hz × 715 Hz pancake trap, 5×10⁵ atoms,
    /// a_aa : a_ab : a_bb = 1.03 : 1 : 0.97 × 55 Å.
    pub fn rb87_pancake() -> Self {
        let a = 55e-10;
        Self {
            mass: 1.44e-25,
            atom_number: 5e5,
            omega_r: 2.0 * PI * 14.0,
            omega_perp: 2.0 * PI * 715.0,
            a_aa: 1.03 * a,
            a_ab: a,
            a_bb: 0.97 * a,
        }
    }

    /// Same trap and atom number with all interactions switched off.
    pub fn non_interacting(self) -> Self {
        Self {
            a_aa: 0.0,
            a_ab: 0.0,
            a_bb: 0.0,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mass", self.mass),
            ("atom number", self.atom_number),
            ("radial trap frequency", self.omega_r),
            ("transverse trap frequency", self.omega_perp),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [("a_aa", self.a_aa), ("a_ab", self.a_ab), ("a_bb", self.a_bb)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(format!("scattering length {name} must be ≥ 0, got {v}")));
            }
        }
        Ok(())
    }

    /// `ω_⊥/ω_r ≥ 10`, the regime where the 2D reduction is trusted.
    pub fn is_pancake(&self) -> bool {
        self.omega_perp / self.omega_r >= 10.0
    }

    pub fn units(&self) -> Units {
        Units {
            length: (HBAR / (self.mass * self.omega_r)).sqrt(),
            time: 1.0 / self.omega_r,
            energy: HBAR * self.omega_r,
        }
    }

    /// `a_⊥ = √(ħ/(m ω_⊥))`.
    pub fn a_perp(&self) -> f64 {
        (HBAR / (self.mass * self.omega_perp)).sqrt()
    }

    /// `g = √(8π) ħ² a/(m a_⊥)` in J·m².
    pub fn g_si(&self, scattering_length: f64) -> f64 {
        (8.0 * PI).sqrt() * HBAR * HBAR * scattering_length / (self.mass * self.a_perp())
    }

    /// In reduced units `g̃ = √(8π) a/a_⊥`; returned multiplied by `N`.
    pub fn couplings(&self) -> Couplings {
        let f = self.atom_number * (8.0 * PI).sqrt() / self.a_perp();
        Couplings {
            aa: f * self.a_aa,
            ab: f * self.a_ab,
            bb: f * self.a_bb,
        }
    }

    /// `μ = √(N g̃/π)`, `R = √(2μ)` for a unit-normalized 2D Thomas–Fermi
    /// profile in the harmonic trap.
    pub fn thomas_fermi(&self) -> ThomasFermi {
        let mu = (self.couplings().aa / PI).sqrt();
        ThomasFermi {
            mu,
            radius: (2.0 * mu).sqrt(),
        }
    }

    /// Healing length `1/√(2μ)` at the Thomas–Fermi peak, reduced units.
    pub fn healing_length(&self) -> f64 {
        1.0 / (2.0 * self.thomas_fermi().mu).sqrt()
    }
}

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::evolve::{Component, SpinorField2D};
use crate::analysis::slice;
use crate::error::{invalid, Error, Result};
use crate::grid::{Axis, ComplexField2D, ScalarField2D};
use crate::localization::{fwhm, FwhmReport};

pub const MIN_LOOP_SAMPLES: usize = 64;

/// Relative amplitude below which the loop phase is not trusted.
const LOOP_FLOOR: f64 = 1e-6;

/// Relative amplitude below which a phase is reported undefined.
const PHASE_FLOOR: f64 = 1e-12;

/// `∫|ψ_which|²` by the midpoint rule.
pub fn component_norm(field: &SpinorField2D, which: Component) -> f64 {
    field.values(which).iter().map(|z| z.norm_sqr()).sum::<f64>() * field.grid.cell_area()
}

/// Net phase winding of `ψ` around a circle, from bilinear samples. The sample
/// count starts at `max(samples, 64)` and doubles until every phase step is
/// below π/2.
pub fn winding_number(psi: &ComplexField2D, center: (f64, f64), radius: f64, samples: usize) -> Result<i32> {
    if !(radius > 0.0) {
        return Err(invalid(format!("loop radius must be positive, got {radius}")));
    }
    let threshold = LOOP_FLOOR * psi.max_abs();
    let mut n = samples.max(MIN_LOOP_SAMPLES);
    loop {
        let mut values = Vec::with_capacity(n);
        for k in 0..n {
            let a = TAU * k as f64 / n as f64;
            let p = (center.0 + radius * a.cos(), center.1 + radius * a.sin());
            let z = psi
                .sample(p.0, p.1)
                .ok_or_else(|| invalid(format!("loop point ({:.4}, {:.4}) leaves the grid", p.0, p.1)))?;
            values.push(z);
        }
        let min_amplitude = values.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        if !(min_amplitude > threshold) {
            return Err(Error::UndefinedWinding { min_amplitude, threshold });
        }
        let mut total = 0.0;
        let mut largest: f64 = 0.0;
        for k in 0..n {
            let d = (values[(k + 1) % n] / values[k]).arg();
            largest = largest.max(d.abs());
            total += d;
        }
        if largest < 0.5 * PI {
            return Ok((total / TAU).round() as i32);
        }
        if n >= 1 << 16 {
            return Err(invalid("phase varies too fast along the loop to count windings"));
        }
        n *= 2;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMap {
    /// `arg ψ` in `(−π, π]`; zero where undefined.
    pub phase: ScalarField2D,
    /// `|ψ|` below `10⁻¹²` of the field maximum.
    pub undefined: Vec<bool>,
}

pub fn phase_map(psi: &ComplexField2D) -> PhaseMap {
    let floor = PHASE_FLOOR * psi.max_abs();
    let mut undefined = Vec::with_capacity(psi.values.len());
    let values = psi
        .values
        .iter()
        .map(|z: &Complex64| {
            let bad = !(z.norm() > floor);
            undefined.push(bad);
            if bad {
                0.0
            } else {
                let a = z.arg();
                // arg returns −π on the negative real axis; fold into (−π, π]
                if a == -PI {
                    PI
                } else {
                    a
                }
            }
        })
        .collect();
    PhaseMap {
        phase: ScalarField2D {
            grid: psi.grid,
            values,
        },
        undefined,
    }
}

/// FWHM of the density of one component along `axis`, through the density
/// maximum of each snapshot. Failures are kept per snapshot.
pub fn fwhm_timeseries(snapshots: &[SpinorField2D], which: Component, axis: Axis) -> Vec<(f64, Result<FwhmReport>)> {
    snapshots
        .iter()
        .map(|s| {
            let density = s.density(which);
            let (i, j) = density.argmax();
            let offset = match axis {
                Axis::X => density.grid.y(j),
                Axis::Y => density.grid.x(i),
            };
            let width = slice(&density, axis, offset).and_then(|sl| fwhm(&sl.profile));
            (s.time, width)
        })
        .collect()
}

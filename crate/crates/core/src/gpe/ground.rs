use num_complex::Complex64;

use super::params::BECParams;
use super::Spectral;
use crate::error::{invalid, Error, Result};
use crate::grid::{ComplexField2D, GridSpec2D};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundStateOptions {
    /// Plateau once `|ΔE|/|E|` per accepted step drops below this.
    pub energy_tolerance: f64,
    /// Required `‖(H − μ)ψ‖ / max(|μ|, 1)` at convergence; the step shrinks 4×
    /// until met.
    pub residual_tolerance: f64,
    pub max_iterations: usize,
    /// Largest imaginary-time step; each step is further capped so that
    /// `g·max|ψ|²·τ ≤ ½`.
    pub initial_step: f64,
    pub min_step: f64,
}

impl Default for GroundStateOptions {
    fn default() -> Self {
        Self {
            energy_tolerance: 1e-10,
            residual_tolerance: 1e-5,
            max_iterations: 200_000,
            initial_step: 2e-2,
            min_step: 1e-8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GroundStateResult {
    /// Unit-normalized `ψ_a`, trap units.
    pub psi: ComplexField2D,
    /// Chemical potential, units of `ħω_r`.
    pub mu: f64,
    /// Energy per particle, units of `ħω_r`.
    pub energy: f64,
    /// Step attempts, including rejected ones.
    pub iterations: usize,
    pub residual: f64,
    /// Energy after every accepted step.
    pub energies: Vec<f64>,
    pub final_step: f64,
    /// At least 8 points per healing length at the trap centre.
    pub healing_resolved: bool,
}

/// Imaginary time (trap units) spent at each step size before a plateau is
/// trusted; the slowest even trap mode relaxes at a rate of order one.
const RELAXATION_TIME: f64 = 2.0;

/// Consecutive accepted steps before a backed-off step doubles again.
const REGROW_AFTER: usize = 50;

/// Relative energy rise attributed to rounding.
const ENERGY_NOISE: f64 = 1e-13;

struct Eval {
    energy: f64,
    mu: f64,
}

fn evaluate(sp: &mut Spectral, psi: &[Complex64], g: f64) -> Eval {
    let kin = sp.kinetic_energy(psi);
    evaluate_with_kinetic(sp, psi, g, kin)
}

fn evaluate_with_kinetic(sp: &Spectral, psi: &[Complex64], g: f64, kin: f64) -> Eval {
    let (mut pot, mut int) = (0.0, 0.0);
    for (z, v) in psi.iter().zip(&sp.trap) {
        let n = z.norm_sqr();
        pot += v * n;
        int += g * n * n;
    }
    pot *= sp.cell;
    int *= sp.cell;
    Eval {
        energy: kin + pot + 0.5 * int,
        mu: kin + pot + int,
    }
}

fn residual(sp: &mut Spectral, psi: &[Complex64], g: f64, mu: f64) -> f64 {
    let kin = sp.kinetic_apply(psi);
    let mut s = 0.0;
    for ((z, k), v) in psi.iter().zip(&kin).zip(&sp.trap) {
        let h = k + z * (v + g * z.norm_sqr());
        s += (h - z * mu).norm_sqr();
    }
    (s * sp.cell).sqrt()
}

fn check_resolution(grid: &GridSpec2D, params: &BECParams) -> Result<bool> {
    let g = params.couplings().aa;
    // 8 points across a Thomas–Fermi disk; an oscillator-sized Gaussian is
    // already spectrally resolved with 3 points per unit length
    let scale = if g > 0.0 { params.thomas_fermi().radius.max(1.0) } else { 1.0 };
    let spacing = grid.dx.max(grid.dy);
    let allowed = (scale / 8.0).max(1.0 / 3.0);
    if spacing > allowed {
        return Err(Error::Unresolved(format!(
            "spacing {spacing:.3} exceeds {allowed:.3} for cloud radius {scale:.3}"
        )));
    }
    let half = 0.5 * (grid.nx as f64 * grid.dx).min(grid.ny as f64 * grid.dy);
    let need = scale.max(5.0);
    if half < need {
        return Err(Error::Unresolved(format!("domain half-width {half:.3} is below {need:.3}")));
    }
    let healing = if g > 0.0 { params.healing_length() } else { f64::INFINITY };
    Ok(healing / spacing >= 8.0)
}

/// Imaginary-time split-step relaxation of `ψ_a` from the oscillator
/// Gaussian. Each step is `K/2 · L · K/2` followed by renormalization, taken
/// from a Nesterov-extrapolated base point. Steps that raise the energy first
/// drop the extrapolation, then halve the step, so the recorded energies
/// never increase. A plateau counts only after `RELAXATION_TIME` at the
/// current step; if the residual is then too large the step is cut 4×, since
/// the split-step fixed point is biased by O(τ²).
pub fn ground_state(grid: &GridSpec2D, params: &BECParams, opts: &GroundStateOptions) -> Result<GroundStateResult> {
    let start = ComplexField2D::from_fn(*grid, |x, y| Complex64::new((-(x * x + y * y) / 2.0).exp(), 0.0));
    ground_state_from(&start, params, opts)
}

/// As [`ground_state`], relaxing from `initial` instead of the oscillator
/// ground state. Only `|initial|` matters after the first step.
pub fn ground_state_from(
    initial: &ComplexField2D,
    params: &BECParams,
    opts: &GroundStateOptions,
) -> Result<GroundStateResult> {
    let grid = &initial.grid;
    params.validate()?;
    if !(opts.energy_tolerance > 0.0 && opts.residual_tolerance > 0.0) {
        return Err(invalid("tolerances must be positive"));
    }
    if !(opts.initial_step > 0.0 && opts.min_step > 0.0 && opts.min_step <= opts.initial_step) {
        return Err(invalid("need 0 < min_step ≤ initial_step"));
    }
    let healing_resolved = check_resolution(grid, params)?;
    let g = params.couplings().aa;
    let mut sp = Spectral::new(grid);
    let n = sp.points();

    let mut psi = initial.values.clone();
    let s = sp.norm(&psi).sqrt();
    if !(s > 0.0 && s.is_finite()) {
        return Err(invalid("initial guess must have a finite, nonzero norm"));
    }
    psi.iter_mut().for_each(|z| *z /= s);

    // `step` backs off on energy overshoot and regrows up to `ceiling`; the
    // ceiling only falls when a plateau misses the residual target. On top,
    // each step keeps g·max|ψ|²·τ ≤ ½: beyond one the normalized map
    // n ↦ n·e^{−2gnτ} oscillates, and far beyond it wipes out the cloud centre
    // and amplifies rounding noise into phase defects.
    let mut ceiling = opts.initial_step;
    let mut step = ceiling;
    let mut streak = 0usize;
    let mut half_kin: Vec<Complex64> = Vec::new();
    let mut factors_for = f64::NAN;
    let mut current = evaluate(&mut sp, &psi, g);
    let mut energies = vec![current.energy];
    let mut trial = psi.clone();
    // Nesterov extrapolation through the previous accepted state, restarted
    // whenever it would raise the energy
    let mut previous = psi.clone();
    let mut base = psi.clone();
    let mut momentum = 0usize;
    let mut last_change = f64::INFINITY;
    let mut res = f64::INFINITY;
    // imaginary time relaxed under the current ceiling
    let mut relaxed = 0.0;
    let mut iteration = 0;

    while iteration < opts.max_iterations {
        iteration += 1;
        let beta = momentum as f64 / (momentum as f64 + 3.0);
        for ((b, p), q) in base.iter_mut().zip(&psi).zip(&previous) {
            *b = p + (p - q) * beta;
        }
        if momentum > 0 {
            let s = sp.norm(&base).sqrt();
            base.iter_mut().for_each(|z| *z /= s);
        }
        let mut tau = step;
        if g > 0.0 {
            let cap = 0.5 / (g * base.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max));
            // power-of-two fractions keep the spectral factors cached
            while tau > cap && tau > opts.min_step {
                tau *= 0.5;
            }
        }
        if factors_for != tau {
            half_kin = sp.k2.iter().map(|k2| Complex64::new((-0.25 * k2 * tau).exp() / n, 0.0)).collect();
            factors_for = tau;
        }
        trial.copy_from_slice(&base);
        sp.spectral_multiply(&mut trial, &half_kin);
        // mean field frozen at the start-of-step density, so the fixed point
        // is that of a linear Strang step and its bias stays O(τ²)
        for ((z, v), p) in trial.iter_mut().zip(&sp.trap).zip(&base) {
            *z *= (-(v + g * p.norm_sqr()) * tau).exp();
        }
        sp.spectral_multiply(&mut trial, &half_kin);
        let s = sp.norm(&trial).sqrt();
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::NumericalBlowup { step: iteration, time: 0.0 });
        }
        // the ground state is positive; rounding noise in the far tail,
        // where the Gaussian start is below machine precision, would
        // otherwise grow into phase defects as the cloud spreads
        trial.iter_mut().for_each(|z| *z = Complex64::new(z.norm() / s, 0.0));
        let next = evaluate(&mut sp, &trial, g);

        let drop = (current.energy - next.energy) / next.energy.abs();
        if drop < 0.0 {
            if momentum > 0 {
                momentum = 0;
                continue;
            }
            if -drop > ENERGY_NOISE {
                step = 0.5 * tau;
                streak = 0;
                if step < opts.min_step {
                    break;
                }
                continue;
            }
            // rounding-level rise: already at the fixed point of this step
        } else {
            last_change = drop;
            previous.copy_from_slice(&psi);
            std::mem::swap(&mut psi, &mut trial);
            momentum += 1;
            current = next;
            energies.push(current.energy);
            relaxed += tau;
            streak += 1;
            if streak >= REGROW_AFTER && step < ceiling {
                step = (2.0 * step).min(ceiling);
                streak = 0;
                momentum = 0;
            }
            if last_change >= opts.energy_tolerance || relaxed < RELAXATION_TIME {
                continue;
            }
        }
        res = residual(&mut sp, &psi, g, current.mu);
        if res <= opts.residual_tolerance * current.mu.abs().max(1.0) {
            return Ok(GroundStateResult {
                psi: ComplexField2D::new(*grid, psi)?,
                mu: current.mu,
                energy: current.energy,
                iterations: iteration,
                residual: res,
                energies,
                final_step: tau,
                healing_resolved,
            });
        }
        // the split-step fixed point is biased by O(τ²)
        ceiling = 0.25 * tau;
        step = ceiling;
        relaxed = 0.0;
        momentum = 0;
        if step < opts.min_step {
            break;
        }
    }
    Err(Error::NonConvergence {
        iterations: iteration,
        last_change,
        residual: res,
    })
}

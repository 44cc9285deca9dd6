use num_complex::Complex64;
use rayon::prelude::*;

use super::params::{BECParams, Units};
use super::Spectral;
use crate::error::{invalid, Error, Result};
use crate::fields::{CompositeBeamSpec, Pulse, PulseSchedule, StokesSpec};
use crate::grid::{ComplexField2D, GridSpec2D, ScalarField2D};

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    A,
    B,
    C,
}

/// Orientation of the pump coupling between `ψ_a` and `ψ_c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CouplingConvention {
    /// `ψ_c` is driven by `½Ω_p ψ_a`, so `ψ_b` inherits the pump phase `e^{ilφ}`.
    #[default]
    Imprinting,
    /// `ψ_c` is driven by `½Ω_p* ψ_a`; `ψ_b` acquires `e^{−ilφ}`.
    AsPrinted,
}

/// Three condensate components on one grid, trap units.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField2D {
    pub grid: GridSpec2D,
    pub a: Vec<C>,
    pub b: Vec<C>,
    pub c: Vec<C>,
    pub time: f64,
}

impl SpinorField2D {
    pub fn new(grid: GridSpec2D, a: Vec<C>, b: Vec<C>, c: Vec<C>, time: f64) -> Result<Self> {
        if [a.len(), b.len(), c.len()].iter().any(|&l| l != grid.len()) {
            return Err(invalid("spinor components must match the grid size"));
        }
        if a.iter().chain(&b).chain(&c).any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(invalid("spinor components must be finite"));
        }
        Ok(Self { grid, a, b, c, time })
    }

    /// `ψ_a = ψ`, `ψ_b = ψ_c = 0` at time `time`.
    pub fn from_ground_state(psi: &ComplexField2D, time: f64) -> Self {
        let zero = vec![C::new(0.0, 0.0); psi.values.len()];
        Self {
            grid: psi.grid,
            a: psi.values.clone(),
            b: zero.clone(),
            c: zero,
            time,
        }
    }

    pub fn values(&self, which: Component) -> &[C] {
        match which {
            Component::A => &self.a,
            Component::B => &self.b,
            Component::C => &self.c,
        }
    }

    pub fn component(&self, which: Component) -> ComplexField2D {
        ComplexField2D {
            grid: self.grid,
            values: self.values(which).to_vec(),
        }
    }

    pub fn density(&self, which: Component) -> ScalarField2D {
        ScalarField2D {
            grid: self.grid,
            values: self.values(which).iter().map(|z| z.norm_sqr()).collect(),
        }
    }

    pub fn norms(&self) -> [f64; 3] {
        let cell = self.grid.cell_area();
        let n = |v: &[C]| v.iter().map(|z| z.norm_sqr()).sum::<f64>() * cell;
        [n(&self.a), n(&self.b), n(&self.c)]
    }

    pub fn total_norm(&self) -> f64 {
        self.norms().iter().sum()
    }
}

/// Light and decay acting on the condensate, trap units.
#[derive(Debug, Clone, PartialEq)]
pub struct GpeDrive {
    pub pump: CompositeBeamSpec,
    pub stokes: StokesSpec,
    pub schedule: PulseSchedule,
    /// Decay rate of `ψ_c` (population rate; amplitude decays at `Γ/2`).
    pub gamma: f64,
    pub convention: CouplingConvention,
}

impl GpeDrive {
    /// Convert SI beams (rad/s, metres, seconds) to trap units.
    pub fn from_si(
        pump: &CompositeBeamSpec,
        stokes: &StokesSpec,
        schedule: &PulseSchedule,
        gamma: f64,
        units: &Units,
    ) -> Self {
        Self {
            pump: pump.scaled(units.time, 1.0 / units.length),
            stokes: stokes.scaled(units.time, 1.0 / units.length),
            schedule: schedule.scaled(1.0 / units.time),
            gamma: gamma * units.time,
            convention: CouplingConvention::default(),
        }
    }

    pub fn with_convention(mut self, convention: CouplingConvention) -> Self {
        self.convention = convention;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolveOptions {
    /// Absolute end time.
    pub t_final: f64,
    /// Outer Strang step; the actual step divides the span evenly.
    pub dt: f64,
    /// Longest coupling sub-step; at most a hundredth of the pulse width.
    pub coupling_step: f64,
    /// Absolute times; each is taken at the first step reaching it.
    pub snapshot_times: Vec<f64>,
}

impl EvolveOptions {
    /// Coupling sub-steps of `T/200`.
    pub fn for_drive(t_final: f64, dt: f64, drive: Option<&GpeDrive>, snapshot_times: Vec<f64>) -> Self {
        let coupling_step = drive.map_or(dt, |d| d.schedule.pulse_width() / 200.0);
        Self {
            t_final,
            dt,
            coupling_step,
            snapshot_times,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSample {
    pub time: f64,
    pub norms: [f64; 3],
}

#[derive(Debug, Clone)]
pub struct EvolutionResult {
    pub snapshots: Vec<SpinorField2D>,
    /// Component norms after every step, starting with the initial state.
    pub norms: Vec<NormSample>,
    pub steps: usize,
    pub step: f64,
    pub coupling_substeps: usize,
    pub final_state: SpinorField2D,
}

/// `exp` of the bright/excited 2×2 block `[[0, g], [g, −iκ]]` over `s`.
#[inline]
fn bright_propagator(g: f64, kappa: f64, s: f64) -> (C, C, C) {
    let q2 = g * g - 0.25 * kappa * kappa;
    let z = q2 * s * s;
    let (cq, sq) = if z.abs() < 1e-4 {
        (
            1.0 - z / 2.0 + z * z / 24.0,
            s * (1.0 - z / 6.0 + z * z / 120.0),
        )
    } else if q2 > 0.0 {
        let q = q2.sqrt();
        ((q * s).cos(), (q * s).sin() / q)
    } else {
        let q = (-q2).sqrt();
        ((q * s).cosh(), (q * s).sinh() / q)
    };
    let damp = (-0.5 * kappa * s).exp();
    let e11 = C::new(damp * (cq + 0.5 * kappa * sq), 0.0);
    let e22 = C::new(damp * (cq - 0.5 * kappa * sq), 0.0);
    let e12 = C::new(0.0, -damp * sq * g);
    (e11, e22, e12)
}

/// Exact coupling/decay update of one point over `s`. `u` holds the
/// `ψ_c`-row coefficients of `(ψ_a, ψ_b)`; the ground rows carry `conj(u)`.
#[inline]
fn couple(a: &mut C, b: &mut C, c: &mut C, u: (C, C), kappa: f64, s: f64) {
    let g = (u.0.norm_sqr() + u.1.norm_sqr()).sqrt();
    if g == 0.0 {
        *c *= (-kappa * s).exp();
        return;
    }
    let beta = (u.0 * *a + u.1 * *b) / g;
    let (e11, e22, e12) = bright_propagator(g, kappa, s);
    let beta_new = e11 * beta + e12 * *c;
    *c = e12 * beta + e22 * *c;
    let d = (beta_new - beta) / g;
    *a += d * u.0.conj();
    *b += d * u.1.conj();
}

struct Light {
    pump: Vec<C>,
    stokes: Vec<C>,
    schedule: PulseSchedule,
    kappa: f64,
    convention: CouplingConvention,
    peak: f64,
}

impl Light {
    fn new(drive: &GpeDrive, grid: &GridSpec2D) -> Self {
        let pump: Vec<C> = grid.points().map(|(_, _, p)| drive.pump.amplitude_at(p)).collect();
        let stokes: Vec<C> = grid.points().map(|(_, _, p)| drive.stokes.amplitude_at(p)).collect();
        let peak = pump.iter().chain(&stokes).map(|z| z.norm()).fold(0.0, f64::max);
        Self {
            pump,
            stokes,
            schedule: drive.schedule,
            kappa: 0.5 * drive.gamma,
            convention: drive.convention,
            peak,
        }
    }

    fn apply(&self, st: &mut State, t0: f64, span: f64, substeps: usize) {
        let ds = span / substeps as f64;
        let kappa = self.kappa;
        for k in 0..substeps {
            let tm = t0 + (k as f64 + 0.5) * ds;
            let ep = 0.5 * self.schedule.envelope(Pulse::Pump, tm);
            let es = 0.5 * self.schedule.envelope(Pulse::Stokes, tm);
            if self.peak * ep.max(es) * ds < 1e-14 {
                if kappa > 0.0 {
                    let f = (-kappa * ds).exp();
                    st.c.iter_mut().for_each(|z| *z *= f);
                }
                continue;
            }
            let conv = self.convention;
            st.a.par_iter_mut()
                .zip(st.b.par_iter_mut())
                .zip(st.c.par_iter_mut())
                .zip(self.pump.par_iter().zip(self.stokes.par_iter()))
                .for_each(|(((a, b), c), (p, s))| {
                    let up = match conv {
                        CouplingConvention::Imprinting => p * ep,
                        CouplingConvention::AsPrinted => p.conj() * ep,
                    };
                    couple(a, b, c, (up, s * es), kappa, ds);
                });
        }
    }
}

struct State {
    a: Vec<C>,
    b: Vec<C>,
    c: Vec<C>,
}

fn mean_field_phase(st: &mut State, trap: &[f64], g: &super::Couplings, h: f64) {
    st.a.par_iter_mut()
        .zip(st.b.par_iter_mut())
        .zip(trap.par_iter())
        .for_each(|((a, b), v)| {
            let (na, nb) = (a.norm_sqr(), b.norm_sqr());
            *a *= C::from_polar(1.0, -(v + g.aa * na + g.ab * nb) * h);
            *b *= C::from_polar(1.0, -(v + g.bb * nb + g.ab * na) * h);
        });
}

/// [`evolve_spinor_with`] without an observer.
pub fn evolve_spinor(
    initial: &SpinorField2D,
    drive: Option<&GpeDrive>,
    params: &BECParams,
    opts: &EvolveOptions,
) -> Result<EvolutionResult> {
    evolve_spinor_with(initial, drive, params, opts, |_| {})
}

/// Strang-split real-time evolution. Each step is a kinetic half step on
/// `ψ_a, ψ_b` (`ψ_c` has no kinetic or trap term), the local part, and a
/// second kinetic half step. The local part is half a mean-field phase, the
/// coupling/decay block exponentiated exactly over sub-steps with
/// midpoint-time Rabi frequencies, and the other half phase. The observer
/// sees every snapshot as it is taken.
pub fn evolve_spinor_with(
    initial: &SpinorField2D,
    drive: Option<&GpeDrive>,
    params: &BECParams,
    opts: &EvolveOptions,
    mut observer: impl FnMut(&SpinorField2D),
) -> Result<EvolutionResult> {
    params.validate()?;
    let grid = initial.grid;
    let t0 = initial.time;
    if !(opts.t_final > t0) {
        return Err(invalid(format!("end time {} must follow start time {t0}", opts.t_final)));
    }
    if !(opts.dt > 0.0 && opts.dt.is_finite()) {
        return Err(invalid(format!("step must be positive, got {}", opts.dt)));
    }
    if let Some(d) = drive {
        d.stokes.validate()?;
        if !(d.gamma >= 0.0) {
            return Err(invalid("decay rate must be ≥ 0"));
        }
        let max = d.schedule.pulse_width() / 100.0;
        if !(opts.coupling_step > 0.0) || opts.coupling_step > max * (1.0 + 1e-12) {
            return Err(Error::StepGuard { dt: opts.coupling_step, max });
        }
    }
    let mut times = opts.snapshot_times.clone();
    times.sort_by(|a, b| a.total_cmp(b));
    if times.iter().any(|t| *t < t0 || *t > opts.t_final) {
        return Err(invalid("snapshot times must lie within the evolution span"));
    }

    let mut sp = Spectral::new(&grid);
    // The tolerance keeps a span that is a whole number of `dt` (up to
    // rounding) from gaining an extra, slightly shorter step.
    let steps = ((opts.t_final - t0) / opts.dt * (1.0 - 1e-12)).ceil().max(1.0) as usize;
    let h = (opts.t_final - t0) / steps as f64;
    let kinetic_max = sp.max_kinetic();
    if h * kinetic_max > std::f64::consts::PI {
        return Err(Error::StepGuard { dt: h, max: std::f64::consts::PI / kinetic_max });
    }
    let substeps = drive.map_or(1, |_| (h / opts.coupling_step).ceil().max(1.0) as usize);
    let n = sp.points();
    let half_kin: Vec<C> = sp.k2.iter().map(|k2| C::from_polar(1.0 / n, -0.25 * k2 * h)).collect();
    let couplings = params.couplings();
    let light = drive.map(|d| Light::new(d, &grid));
    let trap = sp.trap.clone();

    let mut st = State {
        a: initial.a.clone(),
        b: initial.b.clone(),
        c: initial.c.clone(),
    };
    let snapshot = |st: &State, t: f64| SpinorField2D {
        grid,
        a: st.a.clone(),
        b: st.b.clone(),
        c: st.c.clone(),
        time: t,
    };
    let cell = sp.cell;
    let norms_of = |st: &State, t: f64| {
        let n = |v: &[C]| v.iter().map(|z| z.norm_sqr()).sum::<f64>() * cell;
        NormSample {
            time: t,
            norms: [n(&st.a), n(&st.b), n(&st.c)],
        }
    };

    let mut snapshots = Vec::new();
    let mut next = 0;
    let mut norms = vec![norms_of(&st, t0)];
    while next < times.len() && times[next] <= t0 {
        let s = snapshot(&st, t0);
        observer(&s);
        snapshots.push(s);
        next += 1;
    }

    for step in 1..=steps {
        let t = t0 + (step - 1) as f64 * h;
        sp.spectral_multiply(&mut st.a, &half_kin);
        sp.spectral_multiply(&mut st.b, &half_kin);
        mean_field_phase(&mut st, &trap, &couplings, 0.5 * h);
        if let Some(l) = &light {
            l.apply(&mut st, t, h, substeps);
        }
        mean_field_phase(&mut st, &trap, &couplings, 0.5 * h);
        sp.spectral_multiply(&mut st.a, &half_kin);
        sp.spectral_multiply(&mut st.b, &half_kin);

        let now = if step == steps { opts.t_final } else { t0 + step as f64 * h };
        let sample = norms_of(&st, now);
        if sample.norms.iter().any(|v| !v.is_finite()) {
            return Err(Error::NumericalBlowup { step, time: now });
        }
        norms.push(sample);
        while next < times.len() && times[next] <= now + 1e-9 * h {
            let s = snapshot(&st, now);
            observer(&s);
            snapshots.push(s);
            next += 1;
        }
    }

    Ok(EvolutionResult {
        snapshots,
        norms,
        steps,
        step: h,
        coupling_substeps: substeps,
        final_state: snapshot(&st, opts.t_final),
    })
}

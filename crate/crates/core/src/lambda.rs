//! Single-point dynamics of the Λ system |a⟩ ↔ |c⟩ ↔ |b⟩.
//!
//! Frequencies and times are in any consistent unit (ħ = 1). The coupling
//! follows `H = −(Ωs|c⟩⟨b| + Ωp|c⟩⟨a|) + h.c.` with no factor ½, plus the
//! detuning diagonal `(0, −(Δp − Δs), −Δp)` on `(a, b, c)`.
//!
//! Two implementations of the master equation are kept on purpose: the dense
//! [`lindblad_rhs`] built from matrix products, and a packed Hermitian form
//! with the sparse coupling written out, which drives the RK4 integrator.

use nalgebra::{Matrix3, SMatrix, SymmetricEigen, Vector3};
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::fields::{CompositeBeamSpec, PulseSchedule, StokesSpec};

type C = Complex64;

const I: C = C::new(0.0, 1.0);
const ZERO: C = C::new(0.0, 0.0);

/// Largest allowed `dt·max(Ω_peak, Γ)` for the fixed-step RK4 integrator.
pub const STEP_SAFETY: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    A,
    B,
    C,
}

impl Level {
    #[inline]
    fn idx(self) -> usize {
        match self {
            Level::A => 0,
            Level::B => 1,
            Level::C => 2,
        }
    }
}

/// What happens to population that decays out of |c⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayMode {
    /// Spontaneous emission lands in |a⟩ and |b⟩ per the branching ratios.
    Recycling,
    /// Emitted population leaves the system; the trace decays.
    Lossy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaParams {
    pub gamma: f64,
    /// Fractions of Γ feeding |a⟩ and |b⟩.
    pub branching: (f64, f64),
    pub decay: DecayMode,
    pub detuning_pump: f64,
    pub detuning_stokes: f64,
}

impl LambdaParams {
    /// Resonant drive, 50/50 recycling decay.
    pub fn resonant(gamma: f64) -> Result<Self> {
        let p = Self {
            gamma,
            branching: (0.5, 0.5),
            decay: DecayMode::Recycling,
            detuning_pump: 0.0,
            detuning_stokes: 0.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_branching(mut self, to_a: f64, to_b: f64) -> Result<Self> {
        self.branching = (to_a, to_b);
        self.validate()?;
        Ok(self)
    }

    pub fn with_decay(mut self, decay: DecayMode) -> Self {
        self.decay = decay;
        self
    }

    pub fn with_detunings(mut self, pump: f64, stokes: f64) -> Self {
        self.detuning_pump = pump;
        self.detuning_stokes = stokes;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(invalid(format!("decay rate must be ≥ 0, got {}", self.gamma)));
        }
        let (ba, bb) = self.branching;
        if !((0.0..=1.0).contains(&ba) && (0.0..=1.0).contains(&bb)) || (ba + bb - 1.0).abs() > 1e-12 {
            return Err(invalid(format!("branching ratios must lie in [0,1] and sum to 1, got ({ba}, {bb})")));
        }
        if !(self.detuning_pump.is_finite() && self.detuning_stokes.is_finite()) {
            return Err(invalid("detunings must be finite"));
        }
        Ok(())
    }

    /// Diagonal of H: `(0, −(Δp − Δs), −Δp)`.
    #[inline]
    fn diagonal(&self) -> (f64, f64, f64) {
        (0.0, -(self.detuning_pump - self.detuning_stokes), -self.detuning_pump)
    }
}

/// Three complex amplitudes over `(|a⟩, |b⟩, |c⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector3(pub [C; 3]);

impl StateVector3 {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn amplitude(&self, level: Level) -> C {
        self.0[level.idx()]
    }

    fn as_vector(&self) -> Vector3<C> {
        Vector3::new(self.0[0], self.0[1], self.0[2])
    }
}

/// 3×3 density matrix over `(|a⟩, |b⟩, |c⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix3(Matrix3<C>);

impl DensityMatrix3 {
    pub fn from_matrix(m: Matrix3<C>) -> Self {
        Self(m)
    }

    pub fn ground(level: Level) -> Self {
        let mut m = Matrix3::zeros();
        m[(level.idx(), level.idx())] = C::new(1.0, 0.0);
        Self(m)
    }

    /// `|ψ⟩⟨ψ|` for a normalized `ψ`.
    pub fn pure(state: &StateVector3) -> Self {
        let v = state.as_vector();
        Self(v * v.adjoint())
    }

    pub fn matrix(&self) -> &Matrix3<C> {
        &self.0
    }

    pub fn population(&self, level: Level) -> f64 {
        self.0[(level.idx(), level.idx())].re
    }

    pub fn trace(&self) -> C {
        self.0.trace()
    }

    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    /// `max |ρ − ρ†|` entrywise.
    pub fn hermiticity_error(&self) -> f64 {
        (self.0 - self.0.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermitize(&mut self) {
        self.0 = (self.0 + self.0.adjoint()) * C::new(0.5, 0.0);
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let h = (self.0 + self.0.adjoint()) * C::new(0.5, 0.0);
        let e = SymmetricEigen::new(h).eigenvalues;
        let mut v = [e[0], e[1], e[2]];
        v.sort_by(|a, b| a.total_cmp(b));
        v
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn overlap(&self, state: &StateVector3) -> f64 {
        let v = state.as_vector();
        (v.adjoint() * self.0 * v)[(0, 0)].re
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &DensityMatrix3) -> f64 {
        (self.0 - other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn pack(&self) -> Packed {
        let m = &self.0;
        Packed {
            aa: m[(0, 0)].re,
            bb: m[(1, 1)].re,
            cc: m[(2, 2)].re,
            ab: 0.5 * (m[(0, 1)] + m[(1, 0)].conj()),
            ac: 0.5 * (m[(0, 2)] + m[(2, 0)].conj()),
            bc: 0.5 * (m[(1, 2)] + m[(2, 1)].conj()),
        }
    }
}

/// `H` in units of ħ.
pub fn hamiltonian(omega_p: C, omega_s: C, params: &LambdaParams) -> Matrix3<C> {
    let (da, db, dc) = params.diagonal();
    Matrix3::new(
        C::new(da, 0.0),
        ZERO,
        -omega_p.conj(),
        ZERO,
        C::new(db, 0.0),
        -omega_s.conj(),
        -omega_p,
        -omega_s,
        C::new(dc, 0.0),
    )
}

/// `(Ωs|a⟩ − Ωp|b⟩)/Ω`, the zero-energy eigenstate at two-photon resonance.
pub fn dark_state(omega_p: C, omega_s: C) -> Result<StateVector3> {
    let omega = (omega_p.norm_sqr() + omega_s.norm_sqr()).sqrt();
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::UndefinedState);
    }
    Ok(StateVector3([omega_s / omega, -omega_p / omega, ZERO]))
}

/// Mixing angle `θ = arctan(|Ωp(r)/Ωs0| e^{2τt/T²})`, with `t` measured from
/// the schedule midpoint. For the symmetric parameterization this is exactly
/// the envelope ratio `Ωp(r,t)/Ωs(t)`.
pub fn mixing_angle(omega_p_spatial: C, omega_s0: f64, t: f64, schedule: &PulseSchedule) -> Result<f64> {
    if !(omega_s0 > 0.0) {
        return Err(invalid(format!("Stokes amplitude must be positive, got {omega_s0}")));
    }
    let tau = schedule.delay();
    let width = schedule.pulse_width();
    let t_rel = t - schedule.midpoint();
    let ratio = omega_p_spatial.norm() / omega_s0;
    if ratio == 0.0 {
        return Ok(0.0);
    }
    // ratio·e^{x} in log space so the far tails saturate cleanly
    let log_tan = ratio.ln() + 2.0 * tau * t_rel / (width * width);
    Ok(log_tan.exp().atan())
}

/// `dρ/dt = −i[H, ρ] + Γ Σ_k b_k (L_k ρ L_k† − ½{L_k†L_k, ρ})`, `L_k = |k⟩⟨c|`.
/// In lossy mode only the anticommutator survives.
pub fn lindblad_rhs(rho: &DensityMatrix3, omega_p: C, omega_s: C, params: &LambdaParams) -> Matrix3<C> {
    let h = hamiltonian(omega_p, omega_s, params);
    let r = rho.matrix();
    let mut out = (h * r - r * h) * (-I);
    let g = params.gamma;
    if g == 0.0 {
        return out;
    }
    let mut jump_c = Matrix3::zeros();
    jump_c[(2, 2)] = C::new(1.0, 0.0);
    let anti = jump_c * r + r * jump_c;
    out -= anti * C::new(0.5 * g, 0.0);
    if params.decay == DecayMode::Recycling {
        for (k, b) in [(0usize, params.branching.0), (1usize, params.branching.1)] {
            let mut l = Matrix3::zeros();
            l[(k, 2)] = C::new(1.0, 0.0);
            out += (l * r * l.adjoint()) * C::new(g * b, 0.0);
        }
    }
    out
}

/// Upper triangle of a Hermitian 3×3 matrix; Hermiticity holds by
/// construction, so every RK4 stage is re-Hermitized for free.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Packed {
    aa: f64,
    bb: f64,
    cc: f64,
    ab: C,
    ac: C,
    bc: C,
}

impl Packed {
    #[inline]
    fn axpy(&self, h: f64, d: &Packed) -> Packed {
        Packed {
            aa: self.aa + h * d.aa,
            bb: self.bb + h * d.bb,
            cc: self.cc + h * d.cc,
            ab: self.ab + d.ab * h,
            ac: self.ac + d.ac * h,
            bc: self.bc + d.bc * h,
        }
    }

    #[inline]
    fn rk4_combine(&self, h: f64, k1: &Packed, k2: &Packed, k3: &Packed, k4: &Packed) -> Packed {
        let w = h / 6.0;
        Packed {
            aa: self.aa + w * (k1.aa + 2.0 * k2.aa + 2.0 * k3.aa + k4.aa),
            bb: self.bb + w * (k1.bb + 2.0 * k2.bb + 2.0 * k3.bb + k4.bb),
            cc: self.cc + w * (k1.cc + 2.0 * k2.cc + 2.0 * k3.cc + k4.cc),
            ab: self.ab + (k1.ab + (k2.ab + k3.ab) * 2.0 + k4.ab) * w,
            ac: self.ac + (k1.ac + (k2.ac + k3.ac) * 2.0 + k4.ac) * w,
            bc: self.bc + (k1.bc + (k2.bc + k3.bc) * 2.0 + k4.bc) * w,
        }
    }

    fn unpack(&self) -> DensityMatrix3 {
        DensityMatrix3(Matrix3::new(
            C::new(self.aa, 0.0),
            self.ab,
            self.ac,
            self.ab.conj(),
            C::new(self.bb, 0.0),
            self.bc,
            self.ac.conj(),
            self.bc.conj(),
            C::new(self.cc, 0.0),
        ))
    }
}

/// Decay constants hoisted out of the integration loop.
#[derive(Clone, Copy)]
struct Rates {
    gamma: f64,
    feed_a: f64,
    feed_b: f64,
    det_ab: f64,
    det_ac: f64,
    det_bc: f64,
}

impl Rates {
    fn new(p: &LambdaParams) -> Self {
        let (da, db, dc) = p.diagonal();
        let (feed_a, feed_b) = match p.decay {
            DecayMode::Recycling => (p.gamma * p.branching.0, p.gamma * p.branching.1),
            DecayMode::Lossy => (0.0, 0.0),
        };
        Self {
            gamma: p.gamma,
            feed_a,
            feed_b,
            det_ab: da - db,
            det_ac: da - dc,
            det_bc: db - dc,
        }
    }
}

/// Packed master equation. With `h_ca = −Ωp`, `h_cb = −Ωs` the commutator
/// `[H, ρ]` has only these upper-triangle entries.
#[inline]
fn packed_rhs(r: &Packed, op: C, os: C, k: &Rates) -> Packed {
    let h_ca = -op;
    let h_cb = -os;
    let h_ac = h_ca.conj();
    let h_bc = h_cb.conj();
    let ca = r.ac.conj();
    let cb = r.bc.conj();
    let ba = r.ab.conj();

    // −i[H,ρ] on the diagonal: 2·Im(h_ac ρ_ca) etc.
    let x_a = h_ac * ca;
    let x_b = h_bc * cb;
    let daa = 2.0 * x_a.im;
    let dbb = 2.0 * x_b.im;
    let dcc = -daa - dbb;

    let c_ab = r.ab * k.det_ab + h_ac * cb - r.ac * h_cb;
    let c_ac = r.ac * k.det_ac + h_ac * r.cc - r.aa * h_ac - r.ab * h_bc;
    let c_bc = r.bc * k.det_bc + h_bc * r.cc - ba * h_ac - r.bb * h_bc;

    let half = 0.5 * k.gamma;
    Packed {
        aa: daa + k.feed_a * r.cc,
        bb: dbb + k.feed_b * r.cc,
        cc: dcc - k.gamma * r.cc,
        ab: -I * c_ab,
        ac: -I * c_ac - r.ac * half,
        bc: -I * c_bc - r.bc * half,
    }
}

/// A time-dependent pair of Rabi frequencies at one point.
pub trait Drive {
    fn rabi(&self, t: f64) -> (C, C);
    /// Upper bound on `√(|Ωp|² + |Ωs|²)` over all times.
    fn peak_rabi(&self) -> f64;
}

/// Time-independent drive.
#[derive(Debug, Clone, Copy)]
pub struct ConstantDrive {
    pub pump: C,
    pub stokes: C,
}

impl Drive for ConstantDrive {
    fn rabi(&self, _t: f64) -> (C, C) {
        (self.pump, self.stokes)
    }

    fn peak_rabi(&self) -> f64 {
        (self.pump.norm_sqr() + self.stokes.norm_sqr()).sqrt()
    }
}

/// Pulsed drive at one spatial point: fixed spatial amplitudes times the
/// Gaussian envelopes of the schedule.
#[derive(Debug, Clone, Copy)]
pub struct PointDrive {
    pub pump: C,
    pub stokes: C,
    pub schedule: PulseSchedule,
}

impl PointDrive {
    pub fn at(pump: &CompositeBeamSpec, stokes: &StokesSpec, schedule: &PulseSchedule, point: (f64, f64)) -> Self {
        Self {
            pump: pump.amplitude_at(point),
            stokes: stokes.amplitude_at(point),
            schedule: *schedule,
        }
    }
}

impl Drive for PointDrive {
    #[inline]
    fn rabi(&self, t: f64) -> (C, C) {
        let w = self.schedule.pulse_width();
        let sp = (t - self.schedule.pump_center()) / w;
        let ss = (t - self.schedule.stokes_center()) / w;
        (self.pump * (-sp * sp).exp(), self.stokes * (-ss * ss).exp())
    }

    fn peak_rabi(&self) -> f64 {
        (self.pump.norm_sqr() + self.stokes.norm_sqr()).sqrt()
    }
}

/// Largest step the integrator accepts for this drive.
pub fn max_step<D: Drive>(drive: &D, params: &LambdaParams) -> f64 {
    let scale = drive.peak_rabi().max(params.gamma);
    if scale > 0.0 {
        STEP_SAFETY / scale
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone)]
pub struct PointEvolution {
    pub final_state: DensityMatrix3,
    /// `(t, ρ(t))` every `sample_every` steps, including both endpoints.
    pub trajectory: Option<Vec<(f64, DensityMatrix3)>>,
    pub steps: usize,
}

/// Fixed-step RK4 from `t0` to `t1`. The step actually used is
/// `(t1 − t0)/⌈(t1 − t0)/dt⌉ ≤ dt`.
pub fn evolve_point<D: Drive>(
    rho0: &DensityMatrix3,
    drive: &D,
    params: &LambdaParams,
    t0: f64,
    t1: f64,
    dt: f64,
    sample_every: Option<usize>,
) -> Result<PointEvolution> {
    params.validate()?;
    if !(t1 > t0) {
        return Err(invalid(format!("integration span must be increasing, got [{t0}, {t1}]")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(invalid(format!("step must be positive and finite, got {dt}")));
    }
    let max = max_step(drive, params);
    if dt > max * (1.0 + 1e-12) {
        return Err(Error::StepGuard { dt, max });
    }
    if sample_every == Some(0) {
        return Err(invalid("sample_every must be at least 1"));
    }
    let steps = ((t1 - t0) / dt).ceil().max(1.0) as usize;
    let h = (t1 - t0) / steps as f64;
    let rates = Rates::new(params);

    let mut rho = rho0.pack();
    let mut trajectory = sample_every.map(|_| vec![(t0, rho.unpack())]);
    let (mut p0, mut s0) = drive.rabi(t0);
    for n in 0..steps {
        let t = t0 + n as f64 * h;
        let (pm, sm) = drive.rabi(t + 0.5 * h);
        let (p1, s1) = drive.rabi(t + h);
        let k1 = packed_rhs(&rho, p0, s0, &rates);
        let k2 = packed_rhs(&rho.axpy(0.5 * h, &k1), pm, sm, &rates);
        let k3 = packed_rhs(&rho.axpy(0.5 * h, &k2), pm, sm, &rates);
        let k4 = packed_rhs(&rho.axpy(h, &k3), p1, s1, &rates);
        rho = rho.rk4_combine(h, &k1, &k2, &k3, &k4);
        p0 = p1;
        s0 = s1;
        if let (Some(every), Some(tr)) = (sample_every, trajectory.as_mut()) {
            if (n + 1) % every == 0 || n + 1 == steps {
                tr.push((t + h, rho.unpack()));
            }
        }
    }
    Ok(PointEvolution {
        final_state: rho.unpack(),
        trajectory,
        steps,
    })
}

/// Real coordinates of a Hermitian matrix:
/// `[ρaa, ρbb, ρcc, Re ρab, Im ρab, Re ρac, Im ρac, Re ρbc, Im ρbc]`.
fn hermitian_basis(k: usize) -> DensityMatrix3 {
    let mut m = Matrix3::<C>::zeros();
    let one = C::new(1.0, 0.0);
    match k {
        0..=2 => m[(k, k)] = one,
        _ => {
            let (i, j) = match (k - 3) / 2 {
                0 => (0, 1),
                1 => (0, 2),
                _ => (1, 2),
            };
            let z = if (k - 3) % 2 == 0 { one } else { I };
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    DensityMatrix3(m)
}

fn hermitian_coords(m: &Matrix3<C>) -> [f64; 9] {
    [
        m[(0, 0)].re,
        m[(1, 1)].re,
        m[(2, 2)].re,
        m[(0, 1)].re,
        m[(0, 1)].im,
        m[(0, 2)].re,
        m[(0, 2)].im,
        m[(1, 2)].re,
        m[(1, 2)].im,
    ]
}

/// Real 9×9 matrix of the Liouvillian on Hermitian coordinates.
pub fn liouvillian(omega_p: C, omega_s: C, params: &LambdaParams) -> SMatrix<f64, 9, 9> {
    let mut l = SMatrix::<f64, 9, 9>::zeros();
    for k in 0..9 {
        let col = hermitian_coords(&lindblad_rhs(&hermitian_basis(k), omega_p, omega_s, params));
        for (r, v) in col.iter().enumerate() {
            l[(r, k)] = *v;
        }
    }
    l
}

/// Stationary state of the constant-drive master equation from the null
/// space of the Liouvillian, normalized to unit trace.
pub fn cpt_steady_state(omega_p: C, omega_s: C, params: &LambdaParams) -> Result<DensityMatrix3> {
    params.validate()?;
    if !(params.gamma > 0.0) {
        return Err(invalid("steady state needs Γ > 0"));
    }
    if params.decay != DecayMode::Recycling {
        return Err(invalid("steady state needs recycling decay"));
    }
    if !(params.branching.0 > 0.0 && params.branching.1 > 0.0) {
        return Err(invalid("steady state needs both branching ratios strictly positive"));
    }
    if omega_p.norm_sqr() + omega_s.norm_sqr() == 0.0 {
        return Err(invalid("steady state needs a nonzero drive"));
    }
    let l = liouvillian(omega_p, omega_s, params);
    let svd = l.svd(false, true);
    let v_t = svd.v_t.ok_or_else(|| invalid("SVD failed"))?;
    let sigma = svd.singular_values;
    let s_max = sigma.max();
    let tol = 1e-10 * s_max.max(params.gamma);
    let dimension = sigma.iter().filter(|s| **s <= tol).count();
    if dimension != 1 {
        return Err(Error::DegenerateSteadyState { dimension });
    }
    let k = sigma.imin();
    let v: Vec<f64> = (0..9).map(|c| v_t[(k, c)]).collect();
    let trace = v[0] + v[1] + v[2];
    let mut m = Matrix3::<C>::zeros();
    for (idx, x) in v.iter().enumerate() {
        m += hermitian_basis(idx).0 * C::new(x / trace, 0.0);
    }
    let mut rho = DensityMatrix3(m);
    rho.hermitize();
    Ok(rho)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticityReport {
    /// `|Ωp(r)|² + Ωs0²`.
    pub lhs: f64,
    /// `(β/τ)²`.
    pub rhs: f64,
    pub satisfied: bool,
    pub margin: f64,
}

/// Global adiabaticity condition `|Ωp(r)|² + Ωs0² > (β/τ)²`.
pub fn adiabaticity_margin(omega_p_mag: f64, omega_s0: f64, tau: f64, beta: f64) -> Result<AdiabaticityReport> {
    if !(tau > 0.0) {
        return Err(invalid(format!("delay must be positive, got {tau}")));
    }
    let lhs = omega_p_mag * omega_p_mag + omega_s0 * omega_s0;
    let rhs = (beta / tau) * (beta / tau);
    Ok(AdiabaticityReport {
        lhs,
        rhs,
        satisfied: lhs > rhs,
        margin: lhs / rhs,
    })
}

//! Optical drive fields: Laguerre–Gaussian pump profiles, the Stokes profile
//! and the Gaussian temporal envelopes of both pulses.
//!
//! Everything here is a pure function of immutable specs. Units are whatever
//! the caller uses consistently (SI in configuration files, multiples of Γ in
//! most tests).

use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Which of the two pulses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pulse {
    Pump,
    Stokes,
}

/// Gaussian pulse timing. Stored with explicit centres; the symmetric
/// parameterization (Stokes at −τ/2, pump at +τ/2) converts exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSchedule {
    pulse_width: f64,
    stokes_center: f64,
    pump_center: f64,
}

impl PulseSchedule {
    /// Stokes centred at `−delay/2`, pump at `+delay/2`.
    pub fn symmetric(pulse_width: f64, delay: f64) -> Result<Self> {
        Self::with_centers(pulse_width, -0.5 * delay, 0.5 * delay)
    }

    pub fn with_centers(pulse_width: f64, stokes_center: f64, pump_center: f64) -> Result<Self> {
        if !(pulse_width > 0.0 && pulse_width.is_finite()) {
            return Err(invalid(format!("pulse width must be positive, got {pulse_width}")));
        }
        if !(stokes_center.is_finite() && pump_center.is_finite()) {
            return Err(invalid("pulse centres must be finite"));
        }
        Ok(Self {
            pulse_width,
            stokes_center,
            pump_center,
        })
    }

    pub fn pulse_width(&self) -> f64 {
        self.pulse_width
    }

    pub fn stokes_center(&self) -> f64 {
        self.stokes_center
    }

    pub fn pump_center(&self) -> f64 {
        self.pump_center
    }

    /// τ = t_p − t_s.
    pub fn delay(&self) -> f64 {
        self.pump_center - self.stokes_center
    }

    /// Time origin of the symmetric parameterization.
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.pump_center + self.stokes_center)
    }

    /// Same pulses shifted so that the midpoint sits at t = 0.
    pub fn to_symmetric(&self) -> Self {
        let m = self.midpoint();
        Self {
            stokes_center: self.stokes_center - m,
            pump_center: self.pump_center - m,
            ..*self
        }
    }

    /// Same schedule with all times multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            pulse_width: self.pulse_width * factor,
            stokes_center: self.stokes_center * factor,
            pump_center: self.pump_center * factor,
        }
    }

    pub fn center(&self, which: Pulse) -> f64 {
        match which {
            Pulse::Pump => self.pump_center,
            Pulse::Stokes => self.stokes_center,
        }
    }

    /// Unit-peak Gaussian envelope `exp(−(t − t_c)²/T²)`.
    #[inline]
    pub fn envelope(&self, which: Pulse, t: f64) -> f64 {
        let s = (t - self.center(which)) / self.pulse_width;
        (-s * s).exp()
    }

    /// Earliest pulse centre minus `lead` widths.
    pub fn start_time(&self, lead: f64) -> f64 {
        self.stokes_center.min(self.pump_center) - lead * self.pulse_width
    }

    /// Latest pulse centre plus `settle` widths.
    pub fn end_time(&self, settle: f64) -> f64 {
        self.stokes_center.max(self.pump_center) + settle * self.pulse_width
    }
}

pub fn pulse_envelope(schedule: &PulseSchedule, which: Pulse, t: f64) -> f64 {
    schedule.envelope(which, t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StokesProfile {
    TopHat,
    Gaussian { waist: f64, center: (f64, f64) },
}

/// Uniform (travelling-wave) or Gaussian Stokes beam with zero phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesSpec {
    pub amplitude: f64,
    pub profile: StokesProfile,
}

impl StokesSpec {
    pub fn top_hat(amplitude: f64) -> Result<Self> {
        let s = Self {
            amplitude,
            profile: StokesProfile::TopHat,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn gaussian(amplitude: f64, waist: f64, center: (f64, f64)) -> Result<Self> {
        let s = Self {
            amplitude,
            profile: StokesProfile::Gaussian { waist, center },
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return Err(invalid(format!("Stokes amplitude must be ≥ 0, got {}", self.amplitude)));
        }
        if let StokesProfile::Gaussian { waist, .. } = self.profile {
            if !(waist > 0.0 && waist.is_finite()) {
                return Err(invalid(format!("Stokes waist must be positive, got {waist}")));
            }
        }
        Ok(())
    }

    /// Spatial Rabi amplitude at `point` (peak envelope).
    #[inline]
    pub fn amplitude_at(&self, point: (f64, f64)) -> Complex64 {
        match self.profile {
            StokesProfile::TopHat => Complex64::new(self.amplitude, 0.0),
            StokesProfile::Gaussian { waist, center } => {
                let dx = point.0 - center.0;
                let dy = point.1 - center.1;
                Complex64::new(self.amplitude * (-(dx * dx + dy * dy) / (waist * waist)).exp(), 0.0)
            }
        }
    }

    pub fn scaled(&self, rate: f64, length: f64) -> Self {
        Self {
            amplitude: self.amplitude * rate,
            profile: match self.profile {
                StokesProfile::TopHat => StokesProfile::TopHat,
                StokesProfile::Gaussian { waist, center } => StokesProfile::Gaussian {
                    waist: waist * length,
                    center: (center.0 * length, center.1 * length),
                },
            },
        }
    }
}

/// A single Laguerre–Gaussian (p = 0) vortex pump component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VortexBeamSpec {
    pub amplitude: f64,
    pub waist: f64,
    pub charge: i32,
    pub center: (f64, f64),
    /// Unit-modulus prefactor X.
    pub relative_phase: Complex64,
}

impl VortexBeamSpec {
    pub fn new(amplitude: f64, waist: f64, charge: i32) -> Result<Self> {
        let b = Self {
            amplitude,
            waist,
            charge,
            center: (0.0, 0.0),
            relative_phase: Complex64::new(1.0, 0.0),
        };
        b.validate()?;
        Ok(b)
    }

    pub fn centered_at(mut self, center: (f64, f64)) -> Self {
        self.center = center;
        self
    }

    pub fn with_phase(mut self, x: Complex64) -> Self {
        self.relative_phase = x;
        self
    }

    pub fn with_phase_angle(self, radians: f64) -> Self {
        self.with_phase(Complex64::from_polar(1.0, radians))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.waist > 0.0 && self.waist.is_finite()) {
            return Err(invalid(format!("beam waist must be positive, got {}", self.waist)));
        }
        if !self.amplitude.is_finite() {
            return Err(invalid("beam amplitude must be finite"));
        }
        if !(self.center.0.is_finite() && self.center.1.is_finite()) {
            return Err(invalid("beam centre must be finite"));
        }
        if (self.relative_phase.norm() - 1.0).abs() > 1e-9 {
            return Err(invalid(format!(
                "relative phase factor must have unit modulus, got |X| = {}",
                self.relative_phase.norm()
            )));
        }
        Ok(())
    }

    /// Radius of maximum |Ω| for this charge, `w·√(|l|/2)`.
    pub fn ring_radius(&self) -> f64 {
        self.waist * (self.charge.unsigned_abs() as f64 / 2.0).sqrt()
    }

    pub fn scaled(&self, rate: f64, length: f64) -> Self {
        Self {
            amplitude: self.amplitude * rate,
            waist: self.waist * length,
            center: (self.center.0 * length, self.center.1 * length),
            ..*self
        }
    }
}

/// `Ωp0 (r/w)^|l| e^{−r²/w²} e^{ilφ} X`, with `r, φ` measured from the beam
/// centre. Evaluated as `((Δx ± iΔy)/w)^|l|`, so the core value is exactly zero
/// for `l ≠ 0` and exactly `Ωp0·X` for `l = 0`.
#[inline]
pub fn lg_amplitude(beam: &VortexBeamSpec, point: (f64, f64)) -> Complex64 {
    let dx = (point.0 - beam.center.0) / beam.waist;
    let dy = (point.1 - beam.center.1) / beam.waist;
    let z = if beam.charge >= 0 {
        Complex64::new(dx, dy)
    } else {
        Complex64::new(dx, -dy)
    };
    let mut winding = Complex64::new(1.0, 0.0);
    for _ in 0..beam.charge.unsigned_abs() {
        winding *= z;
    }
    winding * (beam.amplitude * (-(dx * dx + dy * dy)).exp()) * beam.relative_phase
}

/// Coherent superposition of one or two vortex components sharing one pump
/// envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeBeamSpec {
    components: Vec<VortexBeamSpec>,
}

impl CompositeBeamSpec {
    pub fn new(components: Vec<VortexBeamSpec>) -> Result<Self> {
        if components.is_empty() || components.len() > 2 {
            return Err(invalid(format!(
                "a pump beam has 1 or 2 components, got {}",
                components.len()
            )));
        }
        for c in &components {
            c.validate()?;
        }
        Ok(Self { components })
    }

    pub fn single(beam: VortexBeamSpec) -> Result<Self> {
        Self::new(vec![beam])
    }

    pub fn components(&self) -> &[VortexBeamSpec] {
        &self.components
    }

    /// True when every component shares one centre.
    pub fn is_coaxial(&self) -> bool {
        self.components.iter().all(|c| c.center == self.components[0].center)
    }

    /// Peak envelope pump amplitude at `point`.
    #[inline]
    pub fn amplitude_at(&self, point: (f64, f64)) -> Complex64 {
        self.components.iter().map(|c| lg_amplitude(c, point)).sum()
    }

    /// Upper bound on |Ωp| anywhere (sum of component peak magnitudes).
    pub fn peak_bound(&self) -> f64 {
        self.components
            .iter()
            .map(|c| {
                let l = c.charge.unsigned_abs() as f64;
                let peak = if l == 0.0 { 1.0 } else { (l / 2.0).powf(l / 2.0) * (-l / 2.0).exp() };
                c.amplitude.abs() * peak
            })
            .sum()
    }

    pub fn scaled(&self, rate: f64, length: f64) -> Self {
        Self {
            components: self.components.iter().map(|c| c.scaled(rate, length)).collect(),
        }
    }
}

/// Instantaneous `(Ωp, Ωs)` at `point` and time `t`.
#[inline]
pub fn drive_at(
    pump: &CompositeBeamSpec,
    stokes: &StokesSpec,
    schedule: &PulseSchedule,
    point: (f64, f64),
    t: f64,
) -> (Complex64, Complex64) {
    (
        pump.amplitude_at(point) * schedule.envelope(Pulse::Pump, t),
        stokes.amplitude_at(point) * schedule.envelope(Pulse::Stokes, t),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{E, PI};

    fn beam(l: i32) -> VortexBeamSpec {
        VortexBeamSpec::new(1.0, 1.0, l).unwrap()
    }

    #[test]
    fn vortex_core_is_exactly_zero() {
        for l in [-3, -1, 1, 2, 5] {
            let b = VortexBeamSpec::new(7.0, 0.3, l).unwrap().centered_at((0.4, -1.1));
            assert_eq!(lg_amplitude(&b, (0.4, -1.1)), Complex64::new(0.0, 0.0));
        }
        let flat = VortexBeamSpec::new(2.5, 1.0, 0).unwrap();
        assert_eq!(lg_amplitude(&flat, (0.0, 0.0)), Complex64::new(2.5, 0.0));
    }

    #[test]
    fn unit_charge_at_one_waist() {
        let v = lg_amplitude(&beam(1), (1.0, 0.0));
        assert!((v.re - 1.0 / E).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);
        assert!((v.re - 0.367879).abs() < 1e-6);
    }

    #[test]
    fn ring_radius_matches_dense_search() {
        for l in 1..=4 {
            let b = VortexBeamSpec::new(1.0, 2.0, l).unwrap();
            let (mut best_r, mut best) = (0.0, 0.0);
            for k in 0..=400_000 {
                let r = 4.0 * k as f64 / 400_000.0;
                let m = lg_amplitude(&b, (r, 0.0)).norm();
                if m > best {
                    best = m;
                    best_r = r;
                }
            }
            assert!((best_r - b.ring_radius()).abs() < 2e-5, "l={l}: {best_r}");
            let l = l as f64;
            let literal_peak = (l / 2.0).powf(l / 2.0) * (-l / 2.0).exp();
            assert!((best - literal_peak).abs() < 1e-9);
        }
    }

    #[test]
    fn envelopes() {
        let s = PulseSchedule::symmetric(5.0, 10.0).unwrap();
        assert_eq!(s.envelope(Pulse::Stokes, -5.0), 1.0);
        assert_eq!(s.envelope(Pulse::Pump, 5.0), 1.0);
        let v = s.envelope(Pulse::Stokes, 5.0);
        assert!((v - (-4.0f64).exp()).abs() < 1e-16);
        assert!((v - 0.018316).abs() < 1e-6);
    }

    #[test]
    fn parameterizations_interconvert() {
        let explicit = PulseSchedule::with_centers(5.0, 20.0, 30.0).unwrap();
        assert_eq!(explicit.delay(), 10.0);
        let sym = explicit.to_symmetric();
        assert_eq!(sym, PulseSchedule::symmetric(5.0, 10.0).unwrap());
        for t in [-13.0, -2.5, 0.0, 4.0, 11.0] {
            for p in [Pulse::Pump, Pulse::Stokes] {
                assert_eq!(sym.envelope(p, t), explicit.envelope(p, t + 25.0));
            }
        }
        assert!(PulseSchedule::symmetric(0.0, 1.0).is_err());
    }

    #[test]
    fn counterintuitive_limits() {
        let pump = CompositeBeamSpec::single(VortexBeamSpec::new(40.0, 1.0, 1).unwrap()).unwrap();
        let stokes = StokesSpec::top_hat(4.0).unwrap();
        let s = PulseSchedule::symmetric(5.0, 10.0).unwrap();
        let p = (0.5, 0.2);
        let ratio = |t: f64| {
            let (op, os) = drive_at(&pump, &stokes, &s, p, t);
            op.norm() / os.norm()
        };
        assert!(ratio(-40.0) < 1e-10);
        assert!(ratio(40.0) > 1e10);
        assert!(ratio(-40.0) < ratio(-20.0) && ratio(20.0) < ratio(40.0));
        // the core stays dark at every time
        for t in [-30.0, 0.0, 30.0] {
            assert_eq!(drive_at(&pump, &stokes, &s, (0.0, 0.0), t).0, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn opposite_phase_copies_cancel() {
        let a = VortexBeamSpec::new(3.0, 1.5, 2).unwrap().centered_at((0.1, 0.2));
        let b = a.with_phase(Complex64::new(-1.0, 0.0));
        let pump = CompositeBeamSpec::new(vec![a, b]).unwrap();
        for k in 0..50 {
            let p = (-2.0 + 0.09 * k as f64, 1.5 - 0.07 * k as f64);
            assert_eq!(pump.amplitude_at(p), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn gaussian_stokes_profile() {
        let s = StokesSpec::gaussian(2.0, 1.0, (0.0, 0.0)).unwrap();
        assert_eq!(s.amplitude_at((0.0, 0.0)).re, 2.0);
        assert!((s.amplitude_at((1.0, 0.0)).re - 2.0 / E).abs() < 1e-15);
        assert_eq!(StokesSpec::top_hat(4.0).unwrap().amplitude_at((9.0, -3.0)).re, 4.0);
        assert!(StokesSpec::top_hat(-1.0).is_err());
    }

    /// Sum of principal-value phase steps around a circle.
    fn loop_phase(f: impl Fn((f64, f64)) -> Complex64, center: (f64, f64), radius: f64, n: usize) -> f64 {
        let pts: Vec<Complex64> = (0..=n)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / n as f64;
                f((center.0 + radius * a.cos(), center.1 + radius * a.sin()))
            })
            .collect();
        pts.windows(2).map(|w| (w[1] / w[0]).arg()).sum()
    }

    #[test]
    fn phase_winds_by_charge() {
        for l in [-3, -1, 1, 2, 4] {
            let b = VortexBeamSpec::new(1.0, 1.0, l).unwrap().centered_at((0.3, -0.2));
            let total = loop_phase(|p| lg_amplitude(&b, p), b.center, 0.5, 4096);
            let expected = 2.0 * PI * l as f64;
            assert!(((total - expected) / expected).abs() < 1e-6, "l={l}: {total}");
        }
    }

    /// Zeros of the composite field off-axis within r < 2w, found as mesh
    /// cells around which the phase winds (mesh offset keeps zeros off edges).
    fn count_off_axis_zeros(pump: &CompositeBeamSpec) -> usize {
        let n = 400;
        let h = 4.0 / n as f64;
        let mut zeros = 0;
        for j in 0..n {
            for i in 0..n {
                let x = -2.0 + (i as f64 + 0.5) * h + 1.3e-3;
                let y = -2.0 + (j as f64 + 0.5) * h + 0.7e-3;
                if x * x + y * y < 0.05 || x * x + y * y > 4.0 {
                    continue;
                }
                let c = [
                    pump.amplitude_at((x - h / 2.0, y - h / 2.0)),
                    pump.amplitude_at((x + h / 2.0, y - h / 2.0)),
                    pump.amplitude_at((x + h / 2.0, y + h / 2.0)),
                    pump.amplitude_at((x - h / 2.0, y + h / 2.0)),
                ];
                let w: f64 = (0..4).map(|k| (c[(k + 1) % 4] / c[k]).arg()).sum();
                if (w / (2.0 * PI)).round() != 0.0 {
                    zeros += 1;
                }
            }
        }
        zeros
    }

    #[test]
    fn composite_has_difference_many_peripheral_zeros() {
        for (l1, l2) in [(1, 2), (1, 3), (2, 3), (1, 4)] {
            let pump = CompositeBeamSpec::new(vec![beam(l1), beam(l2)]).unwrap();
            assert_eq!(count_off_axis_zeros(&pump), (l2 - l1) as usize, "({l1},{l2})");
        }
    }

    proptest! {
        #[test]
        fn rotation_about_center(l in -4i32..=4, r in 0.01f64..3.0, phi in 0.0f64..6.28, dphi in -3.0f64..3.0) {
            let b = VortexBeamSpec::new(2.0, 1.3, l).unwrap().centered_at((0.7, -0.4));
            let at = |a: f64| lg_amplitude(&b, (0.7 + r * a.cos(), -0.4 + r * a.sin()));
            let v0 = at(phi);
            let v1 = at(phi + dphi);
            prop_assert!((v0.norm() - v1.norm()).abs() <= 1e-12 * (1.0 + v0.norm()));
            if v0.norm() > 1e-6 {
                let expected = v0 * Complex64::from_polar(1.0, l as f64 * dphi);
                prop_assert!((v1 - expected).norm() <= 1e-9 * v0.norm());
            }
        }

        #[test]
        fn envelope_is_symmetric(delta in -30.0f64..30.0, tau in -10.0f64..10.0, width in 0.5f64..10.0) {
            let s = PulseSchedule::symmetric(width, tau).unwrap();
            for p in [Pulse::Pump, Pulse::Stokes] {
                let c = s.center(p);
                let a = s.envelope(p, c + delta);
                let b = s.envelope(p, c - delta);
                prop_assert!((a - b).abs() <= 1e-15);
                prop_assert!((0.0..=1.0).contains(&a));
            }
        }
    }
}

//! Population maps from sweeping single-point Λ evolutions over a grid, and
//! the width/spot metrics read off them.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::fields::{CompositeBeamSpec, PulseSchedule, StokesProfile, StokesSpec};
use crate::grid::{GridSpec2D, Profile1D, ScalarField2D};
use crate::lambda::{
    adiabaticity_margin, evolve_point, max_step, DensityMatrix3, Level, LambdaParams, PointDrive,
};

/// Everything that defines the drive and the atom, independent of position.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaScenario {
    pub pump: CompositeBeamSpec,
    pub stokes: StokesSpec,
    pub schedule: PulseSchedule,
    pub params: LambdaParams,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Start this many pulse widths before the earlier pulse centre.
    pub lead_widths: f64,
    /// Stop this many pulse widths after the later pulse centre; at least 3.
    pub settle_widths: f64,
    /// Step as a fraction of the largest step the guard allows at each point.
    pub step_fraction: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            lead_widths: 4.0,
            settle_widths: 4.0,
            step_fraction: 1.0,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.lead_widths >= 0.0 && self.lead_widths.is_finite()) {
            return Err(invalid(format!("lead must be ≥ 0 widths, got {}", self.lead_widths)));
        }
        if !(self.settle_widths >= 3.0 && self.settle_widths.is_finite()) {
            return Err(invalid(format!(
                "read-out must be at least 3 widths after the last pulse, got {}",
                self.settle_widths
            )));
        }
        if !(self.step_fraction > 0.0 && self.step_fraction <= 1.0) {
            return Err(invalid(format!("step fraction must lie in (0, 1], got {}", self.step_fraction)));
        }
        Ok(())
    }
}

impl LambdaScenario {
    pub fn validate(&self) -> Result<()> {
        self.stokes.validate()?;
        self.params.validate()
    }

    pub fn window(&self, opts: &SolverOptions) -> (f64, f64) {
        (
            self.schedule.start_time(opts.lead_widths),
            self.schedule.end_time(opts.settle_widths),
        )
    }
}

/// Final density matrix at one point, starting from `|a⟩⟨a|`.
pub fn population_at(scenario: &LambdaScenario, point: (f64, f64), opts: &SolverOptions) -> Result<DensityMatrix3> {
    let drive = PointDrive::at(&scenario.pump, &scenario.stokes, &scenario.schedule, point);
    let (t0, t1) = scenario.window(opts);
    let dt = max_step(&drive, &scenario.params) * opts.step_fraction;
    let dt = dt.min(t1 - t0);
    evolve_point(&DensityMatrix3::ground(Level::A), &drive, &scenario.params, t0, t1, dt, None)
        .map(|e| e.final_state)
}

fn sweep(scenario: &LambdaScenario, grid: &GridSpec2D, opts: &SolverOptions) -> Result<ScalarField2D> {
    scenario.validate()?;
    opts.validate()?;
    let values = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % grid.nx, k / grid.nx);
            population_at(scenario, grid.point(i, j), opts)
                .map(|rho| rho.population(Level::A))
                .map_err(|e| Error::AtGridPoint { i, j, source: Box::new(e) })
        })
        .collect::<Result<Vec<f64>>>()?;
    ScalarField2D::new(*grid, values)
}

/// Map of `ρ_aa` after a counterintuitive (Stokes-first) pulse pair.
pub fn stirap_population_map(scenario: &LambdaScenario, grid: &GridSpec2D, opts: &SolverOptions) -> Result<ScalarField2D> {
    sweep(scenario, grid, opts)
}

/// Map of `ρ_aa` after coincident pump and Stokes pulses.
pub fn cpt_population_map(scenario: &LambdaScenario, grid: &GridSpec2D, opts: &SolverOptions) -> Result<ScalarField2D> {
    if scenario.schedule.delay() != 0.0 {
        return Err(invalid(format!(
            "coherent population trapping needs coincident pulses, delay is {}",
            scenario.schedule.delay()
        )));
    }
    sweep(scenario, grid, opts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdiabaticityMap {
    pub margin: ScalarField2D,
    pub lhs: ScalarField2D,
    pub rhs: f64,
    pub satisfied_fraction: f64,
    /// True iff the condition holds at every grid point.
    pub satisfied: bool,
}

pub fn adiabaticity_map(
    grid: &GridSpec2D,
    pump: &CompositeBeamSpec,
    stokes: &StokesSpec,
    tau: f64,
    beta: f64,
) -> Result<AdiabaticityMap> {
    stokes.validate()?;
    let mut lhs = Vec::with_capacity(grid.len());
    let mut margin = Vec::with_capacity(grid.len());
    let mut ok = 0usize;
    let mut rhs = 0.0;
    for (_, _, p) in grid.points() {
        let r = adiabaticity_margin(pump.amplitude_at(p).norm(), stokes.amplitude_at(p).norm(), tau, beta)?;
        lhs.push(r.lhs);
        margin.push(r.margin);
        ok += r.satisfied as usize;
        rhs = r.rhs;
    }
    Ok(AdiabaticityMap {
        margin: ScalarField2D::new(*grid, margin)?,
        lhs: ScalarField2D::new(*grid, lhs)?,
        rhs,
        satisfied_fraction: ok as f64 / grid.len() as f64,
        satisfied: ok == grid.len(),
    })
}

/// `P_a` at `n_points` radii evenly spaced on `[0, r_max]`, along +x from the
/// beam centre. Only valid when the drive is axisymmetric about that centre.
pub fn radial_scan(scenario: &LambdaScenario, r_max: f64, n_points: usize, opts: &SolverOptions) -> Result<Profile1D> {
    scenario.validate()?;
    opts.validate()?;
    let comps = scenario.pump.components();
    if !scenario.pump.is_coaxial() {
        return Err(invalid("radial scan needs coaxial pump components"));
    }
    if comps.iter().any(|c| c.charge.abs() != comps[0].charge.abs()) {
        return Err(invalid("radial scan needs an axisymmetric pump (equal |l| in every component)"));
    }
    let center = comps[0].center;
    if let StokesProfile::Gaussian { center: sc, .. } = scenario.stokes.profile {
        if sc != center {
            return Err(invalid("radial scan needs the Stokes beam centred on the vortex"));
        }
    }
    if !(r_max > 0.0) || n_points < 2 {
        return Err(invalid(format!("radial scan needs r_max > 0 and ≥ 2 points, got {r_max}, {n_points}")));
    }
    let dr = r_max / (n_points - 1) as f64;
    let positions: Vec<f64> = (0..n_points).map(|k| k as f64 * dr).collect();
    let values = positions
        .par_iter()
        .map(|r| population_at(scenario, (center.0 + r, center.1), opts).map(|rho| rho.population(Level::A)))
        .collect::<Result<Vec<f64>>>()?;
    Profile1D::new(positions, values)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FwhmReport {
    pub width: f64,
    pub left: f64,
    pub right: f64,
    pub peak: f64,
    pub peak_position: f64,
    pub baseline: f64,
    pub level: f64,
    /// Fewer than three samples reach the half level.
    pub under_resolved: bool,
}

/// Full width at half maximum above the far-field baseline (mean of the
/// outermost 10% of samples, half from each end). Positions must increase.
pub fn fwhm(profile: &Profile1D) -> Result<FwhmReport> {
    let n = profile.len();
    if n < 3 {
        return Err(invalid(format!("FWHM needs at least 3 samples, got {n}")));
    }
    let x = &profile.positions;
    let v = &profile.values;
    if x.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(invalid("profile positions must be strictly increasing"));
    }
    let mut ip = 0;
    for k in 1..n {
        if v[k] > v[ip] {
            ip = k;
        }
    }
    let peak = v[ip];
    let edge = ((0.05 * n as f64).round() as usize).max(1);
    let baseline = (v[..edge].iter().sum::<f64>() + v[n - edge..].iter().sum::<f64>()) / (2 * edge) as f64;
    let scale = peak.abs().max(baseline.abs()).max(f64::MIN_POSITIVE);
    if !(peak - baseline > 1e-12 * scale) {
        return Err(Error::NotLocalized("no peak above the baseline".into()));
    }
    let level = 0.5 * (peak + baseline);
    let cross = |a: usize, b: usize| x[a] + (level - v[a]) * (x[b] - x[a]) / (v[b] - v[a]);

    let left = (0..ip)
        .rev()
        .find(|&k| v[k] < level)
        .map(|k| cross(k, k + 1))
        .ok_or_else(|| Error::NotLocalized("no half-level crossing left of the peak".into()))?;
    let right = (ip + 1..n)
        .find(|&k| v[k] < level)
        .map(|k| cross(k - 1, k))
        .ok_or_else(|| Error::NotLocalized("no half-level crossing right of the peak".into()))?;
    let above = v.iter().filter(|&&s| s >= level).count();
    Ok(FwhmReport {
        width: right - left,
        left,
        right,
        peak,
        peak_position: x[ip],
        baseline,
        level,
        under_resolved: above < 3,
    })
}

/// Two-sided profile from a scan on `[0, r_max]`: `P(−r) = P(r)`.
pub fn mirror_radial(profile: &Profile1D) -> Profile1D {
    let n = profile.len();
    let mut positions = Vec::with_capacity(2 * n - 1);
    let mut values = Vec::with_capacity(2 * n - 1);
    for k in (1..n).rev() {
        positions.push(-profile.positions[k]);
        values.push(profile.values[k]);
    }
    positions.extend_from_slice(&profile.positions);
    values.extend_from_slice(&profile.values);
    Profile1D { positions, values }
}

/// FWHM of an axisymmetric spot from a one-sided radial scan.
pub fn radial_fwhm(scan: &Profile1D) -> Result<FwhmReport> {
    fwhm(&mirror_radial(scan))
}

/// Angles `nπ/Δl` (odd `n`, `Δl = l2 − l1`) of the off-axis zeros of a
/// coaxial two-charge pump, normalized to `[0, 2π)` and sorted.
pub fn peripheral_spot_angles(l1: i32, l2: i32) -> Vec<f64> {
    let dl = l2 - l1;
    if dl == 0 {
        return Vec::new();
    }
    let m = dl.unsigned_abs() as i64;
    let mut out: Vec<f64> = (0..m)
        .map(|k| {
            let n = (2 * k + 1) as f64;
            (n * PI / dl as f64).rem_euclid(TAU)
        })
        .collect();
    out.sort_by(|a, b| a.total_cmp(b));
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpotReport {
    /// Value-weighted centroid.
    pub center: (f64, f64),
    pub fwhm_x: f64,
    pub fwhm_y: f64,
    pub peak_value: f64,
    /// Polar angle of the centroid about the origin, in `[0, 2π)`.
    pub angle_from_origin: f64,
    pub pixels: usize,
    /// The component reaches the edge of the grid, so it may be truncated.
    pub touches_boundary: bool,
}

/// Width at half the peak along one grid line, walking out from the peak
/// pixel; a side that never drops below half ends at the grid edge.
fn local_width(field: &ScalarField2D, i: usize, j: usize, along_x: bool) -> f64 {
    let g = &field.grid;
    let (n, h, k0) = if along_x { (g.nx, g.dx, i) } else { (g.ny, g.dy, j) };
    let val = |k: usize| if along_x { field.at(k, j) } else { field.at(i, k) };
    let peak = val(k0);
    let level = 0.5 * peak;
    let mut left = 0.0;
    let mut k = k0;
    while k > 0 {
        let (a, b) = (val(k - 1), val(k));
        if a < level {
            left = (k0 - k) as f64 + (b - level) / (b - a);
            break;
        }
        k -= 1;
        left = (k0 - k) as f64;
    }
    let mut right = 0.0;
    let mut k = k0;
    while k + 1 < n {
        let (a, b) = (val(k), val(k + 1));
        if b < level {
            right = (k - k0) as f64 + (a - level) / (a - b);
            break;
        }
        k += 1;
        right = (k - k0) as f64;
    }
    let w = (left + right) * h;
    if w > 0.0 {
        w
    } else {
        h
    }
}

/// 4-connected components of `{v ≥ threshold·max}`, sorted by peak value
/// (descending) then angle (ascending).
pub fn find_spots(field: &ScalarField2D, threshold: f64) -> Result<Vec<SpotReport>> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(invalid(format!("threshold must lie in (0, 1), got {threshold}")));
    }
    let g = field.grid;
    let max = field.max();
    if !(max > 0.0) {
        return Ok(Vec::new());
    }
    let cut = threshold * max;
    let mut label = vec![usize::MAX; g.len()];
    let mut spots = Vec::new();
    let mut stack = Vec::new();
    for start in 0..g.len() {
        if label[start] != usize::MAX || field.values[start] < cut {
            continue;
        }
        let id = spots.len();
        label[start] = id;
        stack.push(start);
        let (mut sw, mut sx, mut sy) = (0.0, 0.0, 0.0);
        let mut best = start;
        let mut pixels = 0;
        let mut touches = false;
        while let Some(k) = stack.pop() {
            let (i, j) = (k % g.nx, k / g.nx);
            let v = field.values[k];
            let (x, y) = g.point(i, j);
            sw += v;
            sx += v * x;
            sy += v * y;
            pixels += 1;
            if v > field.values[best] || (v == field.values[best] && k < best) {
                best = k;
            }
            touches |= i == 0 || j == 0 || i + 1 == g.nx || j + 1 == g.ny;
            let mut visit = |ni: usize, nj: usize| {
                let nk = g.index(ni, nj);
                if label[nk] == usize::MAX && field.values[nk] >= cut {
                    label[nk] = id;
                    stack.push(nk);
                }
            };
            if i > 0 {
                visit(i - 1, j);
            }
            if i + 1 < g.nx {
                visit(i + 1, j);
            }
            if j > 0 {
                visit(i, j - 1);
            }
            if j + 1 < g.ny {
                visit(i, j + 1);
            }
        }
        let center = if sw > 0.0 { (sx / sw, sy / sw) } else { g.point(best % g.nx, best / g.nx) };
        let (bi, bj) = (best % g.nx, best / g.nx);
        spots.push(SpotReport {
            center,
            fwhm_x: local_width(field, bi, bj, true),
            fwhm_y: local_width(field, bi, bj, false),
            peak_value: field.values[best],
            angle_from_origin: center.1.atan2(center.0).rem_euclid(TAU),
            pixels,
            touches_boundary: touches,
        });
    }
    spots.sort_by(|a, b| {
        b.peak_value
            .total_cmp(&a.peak_value)
            .then(a.angle_from_origin.total_cmp(&b.angle_from_origin))
    });
    Ok(spots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::VortexBeamSpec;
    use proptest::prelude::*;

    fn fig2a(alpha: f64, l: i32) -> LambdaScenario {
        LambdaScenario {
            pump: CompositeBeamSpec::single(VortexBeamSpec::new(4.0 * alpha.sqrt(), 1.0, l).unwrap()).unwrap(),
            stokes: StokesSpec::top_hat(4.0).unwrap(),
            schedule: PulseSchedule::symmetric(5.0, 10.0).unwrap(),
            params: LambdaParams::resonant(1.0).unwrap(),
        }
    }

    fn gaussian_profile(sigma: f64, n: usize, half: f64) -> Profile1D {
        let positions: Vec<f64> = (0..n).map(|k| -half + 2.0 * half * k as f64 / (n - 1) as f64).collect();
        let values = positions.iter().map(|x| (-(x * x) / (sigma * sigma)).exp()).collect();
        Profile1D::new(positions, values).unwrap()
    }

    #[test]
    fn gaussian_fwhm_is_analytic() {
        let sigma = 0.3;
        let exact = 2.0 * sigma * 2f64.ln().sqrt();
        // ≥ 100 samples across the width
        let p = gaussian_profile(sigma, 2001, 3.0);
        let r = fwhm(&p).unwrap();
        assert!((r.width - exact).abs() / exact < 5e-3, "{} vs {exact}", r.width);
        assert!(!r.under_resolved);
    }

    #[test]
    fn spike_is_one_spacing_wide_and_flagged() {
        let mut v = vec![0.0; 21];
        v[10] = 1.0;
        let p = Profile1D::new((0..21).map(|k| k as f64 * 0.5).collect(), v).unwrap();
        let r = fwhm(&p).unwrap();
        assert!((r.width - 0.5).abs() < 1e-15);
        assert!(r.under_resolved);
    }

    #[test]
    fn flat_profile_is_not_localized() {
        let p = Profile1D::new((0..50).map(f64::from).collect(), vec![0.7; 50]).unwrap();
        assert!(matches!(fwhm(&p), Err(Error::NotLocalized(_))));
        let mut v = vec![0.0; 50];
        v[0] = 1.0;
        let p = Profile1D::new((0..50).map(f64::from).collect(), v).unwrap();
        assert!(matches!(fwhm(&p), Err(Error::NotLocalized(_))));
    }

    #[test]
    fn baseline_is_subtracted() {
        let base = gaussian_profile(0.3, 2001, 3.0);
        let lifted = Profile1D::new(base.positions.clone(), base.values.iter().map(|v| 0.4 + 0.6 * v).collect()).unwrap();
        let a = fwhm(&base).unwrap().width;
        let b = fwhm(&lifted).unwrap().width;
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn peripheral_angles() {
        assert_eq!(peripheral_spot_angles(1, 2), vec![PI]);
        let a = peripheral_spot_angles(1, 3);
        assert!((a[0] - PI / 2.0).abs() < 1e-15 && (a[1] - 1.5 * PI).abs() < 1e-15);
        assert!(peripheral_spot_angles(2, 2).is_empty());
        let a = peripheral_spot_angles(3, 1);
        assert!((a[0] - PI / 2.0).abs() < 1e-15 && (a[1] - 1.5 * PI).abs() < 1e-15);
        assert_eq!(peripheral_spot_angles(1, 5).len(), 4);
    }

    #[test]
    fn find_spots_on_synthetic_blobs() {
        let g = GridSpec2D::spanning(81, 81, (-2.0, 2.0), (-2.0, 2.0)).unwrap();
        let f = ScalarField2D::from_fn(g, |x, y| {
            let b = |cx: f64, cy: f64, a: f64| a * (-((x - cx).powi(2) + (y - cy).powi(2)) / 0.04).exp();
            b(0.0, 0.0, 1.0) + b(0.0, 1.0, 0.8) + b(0.0, -1.0, 0.8)
        });
        let s = find_spots(&f, 0.5).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s[0].center.0.abs() < 1e-9 && s[0].center.1.abs() < 1e-9);
        assert!((s[1].angle_from_origin - PI / 2.0).abs() < 1e-9);
        assert!((s[2].angle_from_origin - 1.5 * PI).abs() < 1e-9);
        let exact = 2.0 * 0.2 * 2f64.ln().sqrt();
        assert!((s[0].fwhm_x - exact).abs() < 0.02);
        assert!(s.iter().all(|r| !r.touches_boundary));
    }

    #[test]
    fn uniform_field_is_one_boundary_component() {
        let g = GridSpec2D::spanning(10, 12, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let f = ScalarField2D::from_fn(g, |_, _| 0.3);
        let s = find_spots(&f, 0.5).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].pixels, 120);
        assert!(s[0].touches_boundary);
        let zero = ScalarField2D::from_fn(g, |_, _| 0.0);
        assert!(find_spots(&zero, 0.5).unwrap().is_empty());
        assert!(find_spots(&f, 1.0).is_err());
    }

    #[test]
    fn radial_scan_core_ring_and_monotone() {
        let s = fig2a(100.0, 1);
        let scan = radial_scan(&s, 1.0, 41, &SolverOptions::default()).unwrap();
        assert!(scan.values[0] >= 0.99);
        assert!(*scan.values.last().unwrap() <= 0.01);
        // residual P_a bottoms out where |Ωp| peaks, at r = w/√2
        let inner = radial_scan(&s, std::f64::consts::FRAC_1_SQRT_2, 41, &SolverOptions::default()).unwrap();
        assert!(inner.values.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn radial_scan_matches_map_row() {
        let s = fig2a(100.0, 1);
        let g = GridSpec2D::spanning(5, 3, (-0.1, 0.1), (-0.05, 0.05)).unwrap();
        let map = stirap_population_map(&s, &g, &SolverOptions::default()).unwrap();
        let scan = radial_scan(&s, 0.1, 3, &SolverOptions::default()).unwrap();
        for k in 0..3 {
            assert!((map.at(2 + k, 1) - scan.values[k]).abs() < 1e-8);
        }
    }

    #[test]
    fn radial_scan_rejects_offset_composites() {
        let mut s = fig2a(100.0, 1);
        s.pump = CompositeBeamSpec::new(vec![
            VortexBeamSpec::new(40.0, 1.0, 1).unwrap().centered_at((-1.0, 0.0)),
            VortexBeamSpec::new(40.0, 1.0, 1).unwrap().centered_at((1.0, 0.0)),
        ])
        .unwrap();
        assert!(radial_scan(&s, 0.1, 3, &SolverOptions::default()).is_err());
    }

    #[test]
    fn cpt_map_requires_zero_delay() {
        let s = fig2a(100.0, 1);
        let g = GridSpec2D::spanning(2, 2, (0.0, 0.1), (0.0, 0.1)).unwrap();
        assert!(cpt_population_map(&s, &g, &SolverOptions::default()).is_err());
    }

    #[test]
    fn map_is_independent_of_thread_count() {
        let s = fig2a(100.0, 1);
        let g = GridSpec2D::spanning(4, 3, (-0.3, 0.3), (-0.2, 0.2)).unwrap();
        let opts = SolverOptions::default();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let three = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let a = one.install(|| stirap_population_map(&s, &g, &opts)).unwrap();
        let b = three.install(|| stirap_population_map(&s, &g, &opts)).unwrap();
        assert_eq!(
            a.values.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            b.values.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn adiabaticity_minimum_lhs_is_stokes_squared() {
        let s = fig2a(100.0, 1);
        let g = GridSpec2D::spanning(201, 201, (-2.0, 2.0), (-2.0, 2.0)).unwrap();
        let m = adiabaticity_map(&g, &s.pump, &s.stokes, 10.0, 10.0).unwrap();
        assert!(m.satisfied);
        assert_eq!(m.rhs, 1.0);
        assert_eq!(m.lhs.min(), 16.0);
    }

    #[test]
    fn solver_options_validation() {
        assert!(SolverOptions { settle_widths: 2.0, ..Default::default() }.validate().is_err());
        assert!(SolverOptions { step_fraction: 1.5, ..Default::default() }.validate().is_err());
    }

    proptest! {
        #[test]
        fn fwhm_is_shift_and_scale_covariant(shift in -5.0f64..5.0, scale in 0.1f64..10.0, amp in 0.1f64..10.0) {
            let p = gaussian_profile(0.4, 801, 3.0);
            let q = Profile1D::new(
                p.positions.iter().map(|x| x * scale + shift).collect(),
                p.values.iter().map(|v| v * amp).collect(),
            ).unwrap();
            let a = fwhm(&p).unwrap().width;
            let b = fwhm(&q).unwrap().width;
            prop_assert!((b - a * scale).abs() < 1e-9 * scale);
        }

        #[test]
        fn peripheral_angles_are_odd_multiples(l1 in -6i32..6, l2 in -6i32..6) {
            let a = peripheral_spot_angles(l1, l2);
            prop_assert_eq!(a.len(), (l2 - l1).unsigned_abs() as usize);
            for t in a {
                prop_assert!((0.0..TAU).contains(&t));
                let n = t * (l2 - l1) as f64 / PI;
                let odd = n.round().rem_euclid(2.0);
                prop_assert!((n - n.round()).abs() < 1e-9 && odd == 1.0);
            }
        }
    }
}

//! Run configuration documents (JSON, SI units). Parsing is strict and
//! exhaustive: unknown keys, missing keys, wrong types, implausible units and
//! mode mismatches are all collected before anything is reported.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{Map, Value};

use stirap_core::gpe::{BECParams, CouplingConvention, GroundStateOptions};
use stirap_core::{
    Axis, CompositeBeamSpec, DecayMode, GridSpec2D, LambdaParams, LambdaScenario, PulseSchedule, SolverOptions,
    StokesSpec, VortexBeamSpec,
};

use crate::error::{CliError, Result};

/// Largest plausible length, time and rate in SI. Anything beyond these is
/// almost certainly a unit slip (µm typed as m, and so on).
const MAX_LENGTH: f64 = 1.0;
const MAX_TIME: f64 = 10.0;
const MAX_RATE: f64 = 1e13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Localize,
    CptMap,
    AdiabaticityMap,
    GpeGround,
    GpeEvolve,
    Analyze,
}

impl Mode {
    const ALL: [(&'static str, Mode); 6] = [
        ("localize", Mode::Localize),
        ("cpt-map", Mode::CptMap),
        ("adiabaticity-map", Mode::AdiabaticityMap),
        ("gpe-ground", Mode::GpeGround),
        ("gpe-evolve", Mode::GpeEvolve),
        ("analyze", Mode::Analyze),
    ];

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(_, m)| *m == self).map(|(n, _)| *n).unwrap_or("?")
    }

    /// Sub-objects this mode needs, and those it accepts but can do without.
    fn sections(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Mode::Localize => (&["fields", "lambda", "grid"], &["scan", "solver", "output"]),
            Mode::CptMap => (&["fields", "lambda", "grid"], &["scan", "solver", "output"]),
            Mode::AdiabaticityMap => (&["fields", "lambda", "grid"], &["solver", "output"]),
            Mode::GpeGround => (&["grid", "bec"], &["solver", "output"]),
            Mode::GpeEvolve => (&["fields", "lambda", "grid", "bec", "solver"], &["analysis", "output"]),
            Mode::Analyze => (&["analysis"], &["output"]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fields: Option<FieldsConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<LambdaConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bec: Option<BecConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisConfig>,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldsConfig {
    pub beams: Vec<BeamConfig>,
    pub stokes: StokesConfig,
    pub schedule: ScheduleConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeamConfig {
    pub charge: i32,
    /// Metres.
    pub waist: f64,
    /// Metres.
    pub center: [f64; 2],
    /// Radians; the prefactor is `e^{i·phase}`.
    pub phase: f64,
    /// Peak Rabi amplitude Ωp0, rad/s. Excludes `lambda.alpha`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StokesShape {
    TopHat,
    Gaussian,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StokesConfig {
    /// Ωs0, rad/s.
    pub amplitude: f64,
    pub profile: StokesShape,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub waist: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<[f64; 2]>,
}

/// Either `delay` (centres at ∓delay/2) or both explicit centres, seconds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScheduleConfig {
    pub pulse_width: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delay: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stokes_center: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pump_center: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayConfig {
    Recycling,
    Lossy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaConfig {
    /// Γ, s⁻¹.
    pub gamma: f64,
    /// `Ωp0²/Ωs0²`; sets every beam amplitude to `Ωs0·√α`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Fractions of Γ into |a⟩ and |b⟩.
    pub branching: [f64; 2],
    pub decay: DecayConfig,
    pub detuning_pump: f64,
    pub detuning_stokes: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridConfig {
    pub nx: usize,
    pub ny: usize,
    /// `[min, max]`, metres.
    pub x: [f64; 2],
    pub y: [f64; 2],
    /// Point counts used instead of `nx, ny` under `--heavy`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heavy: Option<[usize; 2]>,
}

/// Radial scan along +x from the beam axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanConfig {
    pub r_max: f64,
    pub points: usize,
}

/// Condensate constants, SI; absent entries take the ⁸⁷Rb pancake values.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct BecConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atom_number: Option<f64>,
    /// Radial trap frequency, Hz.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trap_frequency: Option<f64>,
    /// Transverse trap frequency, Hz.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transverse_frequency: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_aa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_ab: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_bb: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConventionConfig {
    Imprinting,
    AsPrinted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct SolverConfig {
    /// Outer GPE step, seconds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    /// GPE end time, seconds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_final: Option<f64>,
    /// Spacing of GPE snapshots, seconds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshot_interval: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy_tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iterations: Option<usize>,
    /// Λ step as a fraction of the largest stable step.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lead_widths: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub settle_widths: Option<f64>,
    /// Adiabaticity factor β.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling_convention: Option<ConventionConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisConfig {
    X,
    Y,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct AnalysisConfig {
    /// F64G grid to analyze.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    /// Second F64G grid to compare against `input`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compare_with: Option<String>,
    /// Loop radii for winding numbers about the origin, metres.
    pub winding_radii: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vortex_floor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spot_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice_axis: Option<AxisConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice_offset: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_floor: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormatConfig {
    Grid,
    Csv,
    Pgm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleConfig {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputConfig {
    pub directory: String,
    pub formats: Vec<FormatConfig>,
    pub scale: ScaleConfig,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            directory: "results".into(),
            formats: vec![FormatConfig::Grid, FormatConfig::Csv, FormatConfig::Pgm],
            scale: ScaleConfig::Linear,
        }
    }
}

/// Walks one JSON object, recording which keys were read so the rest can be
/// reported as unknown.
struct Obj<'a> {
    path: String,
    map: &'a Map<String, Value>,
    seen: BTreeSet<&'static str>,
}

impl<'a> Obj<'a> {
    fn new(path: impl Into<String>, value: &'a Value, errs: &mut Vec<String>) -> Option<Self> {
        let path = path.into();
        match value.as_object() {
            Some(map) => Some(Self {
                path,
                map,
                seen: BTreeSet::new(),
            }),
            None => {
                errs.push(format!("{path}: expected an object"));
                None
            }
        }
    }

    fn key(&self, k: &str) -> String {
        if self.path.is_empty() {
            k.to_string()
        } else {
            format!("{}.{k}", self.path)
        }
    }

    fn get(&mut self, k: &'static str) -> Option<&'a Value> {
        self.seen.insert(k);
        self.map.get(k).filter(|v| !v.is_null())
    }

    fn required(&mut self, k: &'static str, errs: &mut Vec<String>) -> Option<&'a Value> {
        let v = self.get(k);
        if v.is_none() {
            errs.push(format!("{}: missing required key", self.key(k)));
        }
        v
    }

    fn f64_from(&self, k: &str, v: &Value, errs: &mut Vec<String>) -> Option<f64> {
        match v.as_f64() {
            Some(x) if x.is_finite() => Some(x),
            _ => {
                errs.push(format!("{}: expected a finite number", self.key(k)));
                None
            }
        }
    }

    fn opt_f64(&mut self, k: &'static str, errs: &mut Vec<String>) -> Option<f64> {
        let v = self.get(k)?;
        self.f64_from(k, v, errs)
    }

    fn req_f64(&mut self, k: &'static str, errs: &mut Vec<String>) -> Option<f64> {
        let v = self.required(k, errs)?;
        self.f64_from(k, v, errs)
    }

    fn uint_from(&self, k: &str, v: &Value, errs: &mut Vec<String>) -> Option<usize> {
        match v.as_u64() {
            Some(x) => Some(x as usize),
            None => {
                errs.push(format!("{}: expected a non-negative integer", self.key(k)));
                None
            }
        }
    }

    fn opt_uint(&mut self, k: &'static str, errs: &mut Vec<String>) -> Option<usize> {
        let v = self.get(k)?;
        self.uint_from(k, v, errs)
    }

    fn req_uint(&mut self, k: &'static str, errs: &mut Vec<String>) -> Option<usize> {
        let v = self.required(k, errs)?;
        self.uint_from(k, v, errs)
    }

    fn req_int(&mut self, k: &'static str, errs: &mut Vec<String>) -> Option<i32> {
        let v = self.required(k, errs)?;
        match v.as_i64().and_then(|x| i32::try_from(x).ok()) {
            Some(x) => Some(x),
            None => {
                errs.push(format!("{}: expected an integer", self.key(k)));
                None
            }
        }
    }

    fn opt_str(&mut self, k: &'static str, errs: &mut Vec<String>) -> Option<&'a str> {
        let v = self.get(k)?;
        match v.as_str() {
            Some(s) => Some(s),
            None => {
                errs.push(format!("{}: expected a string", self.key(k)));
                None
            }
        }
    }

    fn opt_enum<T: Copy>(&mut self, k: &'static str, options: &[(&str, T)], errs: &mut Vec<String>) -> Option<T> {
        let s = self.opt_str(k, errs)?;
        match options.iter().find(|(n, _)| *n == s) {
            Some((_, t)) => Some(*t),
            None => {
                let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
                errs.push(format!("{}: unknown value \"{s}\", expected one of {}", self.key(k), names.join(", ")));
                None
            }
        }
    }

    fn pair_from(&self, k: &str, v: &Value, errs: &mut Vec<String>) -> Option<[f64; 2]> {
        match v.as_array().map(|a| a.iter().map(Value::as_f64).collect::<Vec<_>>()) {
            Some(a) if a.len() == 2 && a.iter().all(|x| x.is_some_and(f64::is_finite)) => {
                Some([a[0].unwrap(), a[1].unwrap()])
            }
            _ => {
                errs.push(format!("{}: expected an array of two finite numbers", self.key(k)));
                None
            }
        }
    }

    fn opt_pair(&mut self, k: &'static str, errs: &mut Vec<String>) -> Option<[f64; 2]> {
        let v = self.get(k)?;
        self.pair_from(k, v, errs)
    }

    fn req_pair(&mut self, k: &'static str, errs: &mut Vec<String>) -> Option<[f64; 2]> {
        let v = self.required(k, errs)?;
        self.pair_from(k, v, errs)
    }

    fn opt_obj(&mut self, k: &'static str, errs: &mut Vec<String>) -> Option<Obj<'a>> {
        let path = self.key(k);
        let v = self.get(k)?;
        Obj::new(path, v, errs)
    }

    fn req_obj(&mut self, k: &'static str, errs: &mut Vec<String>) -> Option<Obj<'a>> {
        let path = self.key(k);
        let v = self.required(k, errs)?;
        Obj::new(path, v, errs)
    }

    /// Report every key that no reader asked for.
    fn finish(self, errs: &mut Vec<String>) {
        for k in self.map.keys() {
            if !self.seen.contains(k.as_str()) {
                errs.push(format!("{}: unknown key", self.key(k)));
            }
        }
    }
}

fn check(errs: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        errs.push(msg());
    }
}

fn check_length(errs: &mut Vec<String>, path: &str, v: f64, positive: bool) {
    let ok = v.abs() <= MAX_LENGTH && (!positive || v > 0.0);
    check(errs, ok, || {
        let want = if positive { "in (0, 1] m" } else { "within ±1 m" };
        format!("{path}: length {v} must be {want} (lengths are in metres)")
    });
}

fn check_time(errs: &mut Vec<String>, path: &str, v: f64, positive: bool) {
    let ok = v.abs() <= MAX_TIME && (!positive || v > 0.0);
    check(errs, ok, || {
        let want = if positive { "in (0, 10] s" } else { "within ±10 s" };
        format!("{path}: time {v} must be {want} (times are in seconds)")
    });
}

fn check_rate(errs: &mut Vec<String>, path: &str, v: f64, positive: bool) {
    let ok = v <= MAX_RATE && if positive { v > 0.0 } else { v >= 0.0 };
    check(errs, ok, || {
        let lo = if positive { "> 0" } else { "≥ 0" };
        format!("{path}: rate {v} must be {lo} and ≤ 1e13 s⁻¹ (rates are angular, in s⁻¹)")
    });
}

fn parse_beam(mut o: Obj, errs: &mut Vec<String>) -> Option<BeamConfig> {
    let charge = o.req_int("charge", errs);
    let waist = o.req_f64("waist", errs);
    if let Some(w) = waist {
        check_length(errs, &o.key("waist"), w, true);
    }
    let center = o.opt_pair("center", errs).unwrap_or([0.0, 0.0]);
    for c in center {
        check_length(errs, &o.key("center"), c, false);
    }
    let phase = o.opt_f64("phase", errs).unwrap_or(0.0);
    let amplitude = o.opt_f64("amplitude", errs);
    if let Some(a) = amplitude {
        check_rate(errs, &o.key("amplitude"), a, false);
    }
    o.finish(errs);
    Some(BeamConfig {
        charge: charge?,
        waist: waist?,
        center,
        phase,
        amplitude,
    })
}

fn parse_fields(mut o: Obj, errs: &mut Vec<String>) -> Option<FieldsConfig> {
    let beams = o.required("beams", errs).and_then(|v| match v.as_array() {
        Some(list) if (1..=2).contains(&list.len()) => {
            let parsed: Vec<Option<BeamConfig>> = list
                .iter()
                .enumerate()
                .map(|(i, b)| Obj::new(format!("{}[{i}]", o.key("beams")), b, errs).and_then(|b| parse_beam(b, errs)))
                .collect();
            parsed.into_iter().collect::<Option<Vec<_>>>()
        }
        _ => {
            errs.push(format!("{}: expected an array of one or two beams", o.key("beams")));
            None
        }
    });

    let stokes = o.req_obj("stokes", errs).and_then(|mut s| {
        let amplitude = s.req_f64("amplitude", errs);
        if let Some(a) = amplitude {
            check_rate(errs, &s.key("amplitude"), a, false);
        }
        let shapes = [("top_hat", StokesShape::TopHat), ("gaussian", StokesShape::Gaussian)];
        let profile = s.opt_enum("profile", &shapes, errs).unwrap_or(StokesShape::TopHat);
        let waist = s.opt_f64("waist", errs);
        let center = s.opt_pair("center", errs);
        match profile {
            StokesShape::TopHat => check(errs, waist.is_none() && center.is_none(), || {
                format!("{}: a top-hat Stokes beam takes no waist or center", s.path)
            }),
            StokesShape::Gaussian => {
                check(errs, waist.is_some(), || format!("{}: a Gaussian Stokes beam needs a waist", s.path));
                if let Some(w) = waist {
                    check_length(errs, &s.key("waist"), w, true);
                }
            }
        }
        let center = match profile {
            StokesShape::Gaussian => Some(center.unwrap_or([0.0, 0.0])),
            StokesShape::TopHat => center,
        };
        s.finish(errs);
        Some(StokesConfig {
            amplitude: amplitude?,
            profile,
            waist,
            center,
        })
    });

    let schedule = o.req_obj("schedule", errs).and_then(|mut s| {
        let pulse_width = s.req_f64("pulse_width", errs);
        if let Some(t) = pulse_width {
            check_time(errs, &s.key("pulse_width"), t, true);
        }
        let delay = s.opt_f64("delay", errs);
        let stokes_center = s.opt_f64("stokes_center", errs);
        let pump_center = s.opt_f64("pump_center", errs);
        for (k, v) in [("delay", delay), ("stokes_center", stokes_center), ("pump_center", pump_center)] {
            if let Some(v) = v {
                check_time(errs, &s.key(k), v, false);
            }
        }
        let explicit = stokes_center.is_some() || pump_center.is_some();
        check(errs, delay.is_some() != explicit, || {
            format!("{}: give either delay or both stokes_center and pump_center", s.path)
        });
        check(errs, !explicit || (stokes_center.is_some() && pump_center.is_some()), || {
            format!("{}: stokes_center and pump_center go together", s.path)
        });
        s.finish(errs);
        Some(ScheduleConfig {
            pulse_width: pulse_width?,
            delay,
            stokes_center,
            pump_center,
        })
    });
    o.finish(errs);
    Some(FieldsConfig {
        beams: beams?,
        stokes: stokes?,
        schedule: schedule?,
    })
}

fn parse_lambda(mut o: Obj, errs: &mut Vec<String>) -> Option<LambdaConfig> {
    let gamma = o.req_f64("gamma", errs);
    if let Some(g) = gamma {
        check_rate(errs, &o.key("gamma"), g, false);
    }
    let alpha = o.opt_f64("alpha", errs);
    if let Some(a) = alpha {
        check(errs, a > 0.0, || format!("{}: alpha must be positive, got {a}", o.key("alpha")));
    }
    let branching = o.opt_pair("branching", errs).unwrap_or([0.5, 0.5]);
    check(
        errs,
        branching.iter().all(|b| (0.0..=1.0).contains(b)) && (branching[0] + branching[1] - 1.0).abs() <= 1e-12,
        || format!("{}: ratios must lie in [0, 1] and sum to 1", o.key("branching")),
    );
    let decays = [("recycling", DecayConfig::Recycling), ("lossy", DecayConfig::Lossy)];
    let decay = o.opt_enum("decay", &decays, errs).unwrap_or(DecayConfig::Recycling);
    let detuning_pump = o.opt_f64("detuning_pump", errs).unwrap_or(0.0);
    let detuning_stokes = o.opt_f64("detuning_stokes", errs).unwrap_or(0.0);
    for (k, v) in [("detuning_pump", detuning_pump), ("detuning_stokes", detuning_stokes)] {
        check(errs, v.abs() <= MAX_RATE, || format!("{}: detuning {v} exceeds 1e13 s⁻¹", o.key(k)));
    }
    o.finish(errs);
    Some(LambdaConfig {
        gamma: gamma?,
        alpha,
        branching,
        decay,
        detuning_pump,
        detuning_stokes,
    })
}

fn parse_grid(mut o: Obj, errs: &mut Vec<String>) -> Option<GridConfig> {
    let nx = o.req_uint("nx", errs);
    let ny = o.req_uint("ny", errs);
    for (k, n) in [("nx", nx), ("ny", ny)] {
        if let Some(n) = n {
            check(errs, n >= 2, || format!("{}: need at least 2 points, got {n}", o.key(k)));
        }
    }
    let x = o.req_pair("x", errs);
    let y = o.req_pair("y", errs);
    for (k, r) in [("x", x), ("y", y)] {
        if let Some([lo, hi]) = r {
            check_length(errs, &o.key(k), lo, false);
            check_length(errs, &o.key(k), hi, false);
            check(errs, hi > lo, || format!("{}: range must be increasing", o.key(k)));
        }
    }
    let heavy = o.get("heavy").and_then(|v| match v.as_array().map(|a| a.iter().map(Value::as_u64).collect::<Vec<_>>()) {
        Some(a) if a.len() == 2 && a.iter().all(|n| n.is_some_and(|n| n >= 2)) => {
            Some([a[0].unwrap() as usize, a[1].unwrap() as usize])
        }
        _ => {
            errs.push(format!("{}: expected two point counts ≥ 2", o.key("heavy")));
            None
        }
    });
    o.finish(errs);
    Some(GridConfig {
        nx: nx?,
        ny: ny?,
        x: x?,
        y: y?,
        heavy,
    })
}

fn parse_scan(mut o: Obj, errs: &mut Vec<String>) -> Option<ScanConfig> {
    let r_max = o.req_f64("r_max", errs);
    if let Some(r) = r_max {
        check_length(errs, &o.key("r_max"), r, true);
    }
    let points = o.req_uint("points", errs);
    if let Some(n) = points {
        check(errs, n >= 2, || format!("{}: need at least 2 points", o.key("points")));
    }
    o.finish(errs);
    Some(ScanConfig {
        r_max: r_max?,
        points: points?,
    })
}

fn parse_bec(mut o: Obj, errs: &mut Vec<String>) -> BecConfig {
    let positive = |o: &mut Obj, k: &'static str, errs: &mut Vec<String>| {
        let v = o.opt_f64(k, errs);
        if let Some(x) = v {
            check(errs, x > 0.0, || format!("{}: must be positive, got {x}", o.key(k)));
        }
        v
    };
    let mass = positive(&mut o, "mass", errs);
    let atom_number = positive(&mut o, "atom_number", errs);
    let trap_frequency = positive(&mut o, "trap_frequency", errs);
    let transverse_frequency = positive(&mut o, "transverse_frequency", errs);
    let length = |o: &mut Obj, k: &'static str, errs: &mut Vec<String>| {
        let v = o.opt_f64(k, errs);
        if let Some(x) = v {
            check(errs, (0.0..=1e-6).contains(&x), || {
                format!("{}: scattering length {x} must lie in [0, 1e-6] m", o.key(k))
            });
        }
        v
    };
    let a_aa = length(&mut o, "a_aa", errs);
    let a_ab = length(&mut o, "a_ab", errs);
    let a_bb = length(&mut o, "a_bb", errs);
    if let Some(m) = mass {
        check(errs, m < 1e-20, || format!("{}: mass {m} kg is not an atomic mass", o.key("mass")));
    }
    o.finish(errs);
    BecConfig {
        mass,
        atom_number,
        trap_frequency,
        transverse_frequency,
        a_aa,
        a_ab,
        a_bb,
    }
}

fn parse_solver(mut o: Obj, errs: &mut Vec<String>) -> SolverConfig {
    let time = |o: &mut Obj, k: &'static str, errs: &mut Vec<String>| {
        let v = o.opt_f64(k, errs);
        if let Some(t) = v {
            check_time(errs, &o.key(k), t, true);
        }
        v
    };
    let dt = time(&mut o, "dt", errs);
    let t_final = time(&mut o, "t_final", errs);
    let snapshot_interval = time(&mut o, "snapshot_interval", errs);
    let positive = |o: &mut Obj, k: &'static str, errs: &mut Vec<String>| {
        let v = o.opt_f64(k, errs);
        if let Some(x) = v {
            check(errs, x > 0.0, || format!("{}: must be positive, got {x}", o.key(k)));
        }
        v
    };
    let energy_tolerance = positive(&mut o, "energy_tolerance", errs);
    let residual_tolerance = positive(&mut o, "residual_tolerance", errs);
    let max_iterations = o.opt_uint("max_iterations", errs);
    let step_fraction = positive(&mut o, "step_fraction", errs);
    let lead_widths = o.opt_f64("lead_widths", errs);
    let settle_widths = o.opt_f64("settle_widths", errs);
    let beta = positive(&mut o, "beta", errs);
    let conventions = [("imprinting", ConventionConfig::Imprinting), ("as_printed", ConventionConfig::AsPrinted)];
    let coupling_convention = o.opt_enum("coupling_convention", &conventions, errs);
    o.finish(errs);
    SolverConfig {
        dt,
        t_final,
        snapshot_interval,
        energy_tolerance,
        residual_tolerance,
        max_iterations,
        step_fraction,
        lead_widths,
        settle_widths,
        beta,
        coupling_convention,
    }
}

fn parse_analysis(mut o: Obj, errs: &mut Vec<String>) -> AnalysisConfig {
    let input = o.opt_str("input", errs).map(String::from);
    let compare_with = o.opt_str("compare_with", errs).map(String::from);
    let winding_radii = match o.get("winding_radii") {
        None => Vec::new(),
        Some(v) => match v.as_array().map(|a| a.iter().map(Value::as_f64).collect::<Option<Vec<_>>>()) {
            Some(Some(r)) => {
                for x in &r {
                    check_length(errs, &o.key("winding_radii"), *x, true);
                }
                r
            }
            _ => {
                errs.push(format!("{}: expected an array of numbers", o.key("winding_radii")));
                Vec::new()
            }
        },
    };
    let fraction = |o: &mut Obj, k: &'static str, errs: &mut Vec<String>| {
        let v = o.opt_f64(k, errs);
        if let Some(x) = v {
            check(errs, x > 0.0 && x < 1.0, || format!("{}: must lie in (0, 1), got {x}", o.key(k)));
        }
        v
    };
    let vortex_floor = fraction(&mut o, "vortex_floor", errs);
    let spot_threshold = fraction(&mut o, "spot_threshold", errs);
    let slice_axis = o.opt_enum("slice_axis", &[("x", AxisConfig::X), ("y", AxisConfig::Y)], errs);
    let slice_offset = o.opt_f64("slice_offset", errs);
    let log_floor = o.opt_f64("log_floor", errs);
    if let Some(f) = log_floor {
        check(errs, f > 0.0, || format!("{}: must be positive", o.key("log_floor")));
    }
    o.finish(errs);
    AnalysisConfig {
        input,
        compare_with,
        winding_radii,
        vortex_floor,
        spot_threshold,
        slice_axis,
        slice_offset,
        log_floor,
    }
}

fn parse_output(mut o: Obj, errs: &mut Vec<String>) -> OutputConfig {
    let d = OutputConfig::default();
    let directory = o.opt_str("directory", errs).map(String::from).unwrap_or(d.directory);
    let names = [("grid", FormatConfig::Grid), ("csv", FormatConfig::Csv), ("pgm", FormatConfig::Pgm)];
    let formats = match o.get("formats") {
        None => d.formats,
        Some(v) => match v.as_array() {
            Some(list) => {
                let mut out = Vec::new();
                for (i, f) in list.iter().enumerate() {
                    match f.as_str().and_then(|s| names.iter().find(|(n, _)| *n == s)) {
                        Some((_, f)) if !out.contains(f) => out.push(*f),
                        Some(_) => errs.push(format!("{}[{i}]: duplicate format", o.key("formats"))),
                        None => errs.push(format!("{}[{i}]: expected one of grid, csv, pgm", o.key("formats"))),
                    }
                }
                out
            }
            None => {
                errs.push(format!("{}: expected an array", o.key("formats")));
                d.formats
            }
        },
    };
    let scale = o
        .opt_enum("scale", &[("linear", ScaleConfig::Linear), ("log", ScaleConfig::Log)], errs)
        .unwrap_or(d.scale);
    o.finish(errs);
    OutputConfig {
        directory,
        formats,
        scale,
    }
}

/// Parse and validate a JSON run configuration, reporting every problem.
pub fn parse_config(document: &str) -> Result<RunConfig> {
    let value: Value =
        serde_json::from_str(document).map_err(|e| CliError::Config(vec![format!("malformed JSON: {e}")]))?;
    let mut errs = Vec::new();
    let Some(mut root) = Obj::new("", &value, &mut errs) else {
        return Err(CliError::Config(vec!["document: expected a JSON object".into()]));
    };
    let mode = root.opt_enum("mode", &Mode::ALL, &mut errs);
    if !root.map.contains_key("mode") {
        errs.push("mode: missing required key".into());
    }

    const SECTIONS: [&str; 8] = ["fields", "lambda", "grid", "scan", "bec", "solver", "analysis", "output"];
    if let Some(mode) = mode {
        let (needed, allowed) = mode.sections();
        for s in SECTIONS {
            let present = root.map.get(s).is_some_and(|v| !v.is_null());
            if needed.contains(&s) && !present {
                errs.push(format!("{s}: missing required key (mode {})", mode.name()));
            }
            if present && !needed.contains(&s) && !allowed.contains(&s) {
                errs.push(format!("{s}: not used by mode {}", mode.name()));
            }
        }
    }

    let fields = root.opt_obj("fields", &mut errs).and_then(|o| parse_fields(o, &mut errs));
    let lambda = root.opt_obj("lambda", &mut errs).and_then(|o| parse_lambda(o, &mut errs));
    let grid = root.opt_obj("grid", &mut errs).and_then(|o| parse_grid(o, &mut errs));
    let scan = root.opt_obj("scan", &mut errs).and_then(|o| parse_scan(o, &mut errs));
    let bec = root.opt_obj("bec", &mut errs).map(|o| parse_bec(o, &mut errs));
    let solver = root.opt_obj("solver", &mut errs).map(|o| parse_solver(o, &mut errs));
    let analysis = root.opt_obj("analysis", &mut errs).map(|o| parse_analysis(o, &mut errs));
    let output = root.opt_obj("output", &mut errs).map(|o| parse_output(o, &mut errs)).unwrap_or_default();
    root.finish(&mut errs);

    if let (Some(f), Some(l)) = (&fields, &lambda) {
        let explicit = f.beams.iter().filter(|b| b.amplitude.is_some()).count();
        if l.alpha.is_some() && explicit > 0 {
            errs.push("lambda.alpha: mutually exclusive with explicit beam amplitudes".into());
        }
        if l.alpha.is_none() && explicit < f.beams.len() {
            errs.push("fields.beams: every beam needs an amplitude unless lambda.alpha is given".into());
        }
    }
    if let (Some(Mode::CptMap), Some(f)) = (mode, &fields) {
        let s = &f.schedule;
        let coincident = s.delay.map_or(s.stokes_center == s.pump_center, |d| d == 0.0);
        check(&mut errs, coincident, || "fields.schedule: cpt-map needs coincident pulses (delay 0)".into());
    }
    if let (Some(Mode::Localize), Some(f), Some(_)) = (mode, &fields, &scan) {
        let coaxial = f.beams.iter().all(|b| b.center == f.beams[0].center);
        check(&mut errs, coaxial, || "scan: the radial scan needs coaxial beams".into());
    }
    if mode == Some(Mode::GpeEvolve) {
        let s = solver.clone().unwrap_or_default();
        check(&mut errs, s.dt.is_some(), || "solver.dt: missing required key (mode gpe-evolve)".into());
        check(&mut errs, s.t_final.is_some(), || "solver.t_final: missing required key (mode gpe-evolve)".into());
    }
    if mode == Some(Mode::Analyze) {
        let has_input = analysis.as_ref().is_some_and(|a| a.input.is_some());
        check(&mut errs, has_input, || "analysis.input: missing required key (mode analyze)".into());
    }

    if !errs.is_empty() {
        return Err(CliError::Config(errs));
    }
    Ok(RunConfig {
        mode: mode.expect("mode checked above"),
        fields,
        lambda,
        grid,
        scan,
        bec,
        solver,
        analysis,
        output,
    })
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Grid point counts, switched to the `heavy` sizes when requested.
    pub fn grid_counts(&self, heavy: bool) -> Option<(usize, usize)> {
        let g = self.grid.as_ref()?;
        Some(match (heavy, g.heavy) {
            (true, Some([nx, ny])) => (nx, ny),
            _ => (g.nx, g.ny),
        })
    }

    /// Sample grid spanning the configured ranges inclusively (Λ maps).
    pub fn map_grid(&self, heavy: bool) -> Result<GridSpec2D> {
        let g = self.section(&self.grid, "grid")?;
        let (nx, ny) = self.grid_counts(heavy).unwrap();
        GridSpec2D::spanning(nx, ny, (g.x[0], g.x[1]), (g.y[0], g.y[1])).map_err(config_err)
    }

    /// Periodic grid over the configured box, metres (condensate runs).
    pub fn periodic_grid(&self, heavy: bool) -> Result<GridSpec2D> {
        let g = self.section(&self.grid, "grid")?;
        let (nx, ny) = self.grid_counts(heavy).unwrap();
        GridSpec2D::periodic_box(nx, ny, (g.x[0], g.x[1]), (g.y[0], g.y[1])).map_err(config_err)
    }

    fn section<'a, T>(&self, s: &'a Option<T>, name: &str) -> Result<&'a T> {
        s.as_ref().ok_or_else(|| CliError::Config(vec![format!("{name}: missing required key")]))
    }

    /// Pump, Stokes and schedule in SI, with α resolved to amplitudes.
    pub fn drive(&self) -> Result<(CompositeBeamSpec, StokesSpec, PulseSchedule)> {
        let f = self.section(&self.fields, "fields")?;
        let l = self.section(&self.lambda, "lambda")?;
        let stokes = match f.stokes.profile {
            StokesShape::TopHat => StokesSpec::top_hat(f.stokes.amplitude),
            StokesShape::Gaussian => {
                let c = f.stokes.center.unwrap_or([0.0, 0.0]);
                StokesSpec::gaussian(f.stokes.amplitude, f.stokes.waist.unwrap_or(0.0), (c[0], c[1]))
            }
        }
        .map_err(config_err)?;
        let beams = f
            .beams
            .iter()
            .map(|b| {
                let amp = match l.alpha {
                    Some(a) => f.stokes.amplitude * a.sqrt(),
                    None => b.amplitude.unwrap_or(0.0),
                };
                VortexBeamSpec::new(amp, b.waist, b.charge)
                    .map(|v| v.centered_at((b.center[0], b.center[1])).with_phase(Complex64::from_polar(1.0, b.phase)))
            })
            .collect::<stirap_core::Result<Vec<_>>>()
            .map_err(config_err)?;
        let pump = CompositeBeamSpec::new(beams).map_err(config_err)?;
        let s = &f.schedule;
        let schedule = match (s.delay, s.stokes_center, s.pump_center) {
            (Some(d), _, _) => PulseSchedule::symmetric(s.pulse_width, d),
            (None, Some(ts), Some(tp)) => PulseSchedule::with_centers(s.pulse_width, ts, tp),
            _ => unreachable!("schedule validated at parse time"),
        }
        .map_err(config_err)?;
        Ok((pump, stokes, schedule))
    }

    pub fn lambda_params(&self) -> Result<LambdaParams> {
        let l = self.section(&self.lambda, "lambda")?;
        let p = LambdaParams::resonant(l.gamma)
            .and_then(|p| p.with_branching(l.branching[0], l.branching[1]))
            .map_err(config_err)?;
        let decay = match l.decay {
            DecayConfig::Recycling => DecayMode::Recycling,
            DecayConfig::Lossy => DecayMode::Lossy,
        };
        Ok(p.with_decay(decay).with_detunings(l.detuning_pump, l.detuning_stokes))
    }

    pub fn scenario(&self) -> Result<LambdaScenario> {
        let (pump, stokes, schedule) = self.drive()?;
        Ok(LambdaScenario {
            pump,
            stokes,
            schedule,
            params: self.lambda_params()?,
        })
    }

    pub fn solver_options(&self) -> SolverOptions {
        let d = SolverOptions::default();
        let s = self.solver.clone().unwrap_or_default();
        SolverOptions {
            lead_widths: s.lead_widths.unwrap_or(d.lead_widths),
            settle_widths: s.settle_widths.unwrap_or(d.settle_widths),
            step_fraction: s.step_fraction.unwrap_or(d.step_fraction),
        }
    }

    pub fn ground_options(&self) -> GroundStateOptions {
        let d = GroundStateOptions::default();
        let s = self.solver.clone().unwrap_or_default();
        GroundStateOptions {
            energy_tolerance: s.energy_tolerance.unwrap_or(d.energy_tolerance),
            residual_tolerance: s.residual_tolerance.unwrap_or(d.residual_tolerance),
            max_iterations: s.max_iterations.unwrap_or(d.max_iterations),
            ..d
        }
    }

    pub fn bec_params(&self) -> Result<BECParams> {
        let b = self.section(&self.bec, "bec")?;
        let d = BECParams::rb87_pancake();
        let p = BECParams {
            mass: b.mass.unwrap_or(d.mass),
            atom_number: b.atom_number.unwrap_or(d.atom_number),
            omega_r: b.trap_frequency.map_or(d.omega_r, |f| 2.0 * PI * f),
            omega_perp: b.transverse_frequency.map_or(d.omega_perp, |f| 2.0 * PI * f),
            a_aa: b.a_aa.unwrap_or(d.a_aa),
            a_ab: b.a_ab.unwrap_or(d.a_ab),
            a_bb: b.a_bb.unwrap_or(d.a_bb),
        };
        p.validate().map_err(config_err)?;
        Ok(p)
    }

    pub fn convention(&self) -> CouplingConvention {
        match self.solver.as_ref().and_then(|s| s.coupling_convention) {
            Some(ConventionConfig::AsPrinted) => CouplingConvention::AsPrinted,
            _ => CouplingConvention::Imprinting,
        }
    }

    pub fn beta(&self) -> f64 {
        self.solver.as_ref().and_then(|s| s.beta).unwrap_or(10.0)
    }
}

impl AxisConfig {
    pub fn axis(self) -> Axis {
        match self {
            AxisConfig::X => Axis::X,
            AxisConfig::Y => Axis::Y,
        }
    }
}

fn config_err(e: stirap_core::Error) -> CliError {
    CliError::Config(vec![e.to_string()])
}

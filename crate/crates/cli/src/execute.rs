//! Run orchestration: one function per mode, all file I/O on the calling
//! thread, compute fanned out by the core's data-parallel sweeps.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};

use stirap_core::analysis::{compare_maps, find_vortices, log_density, slice};
use stirap_core::gpe::{
    evolve_spinor, fwhm_timeseries, ground_state, phase_map, winding_number, BECParams, Component,
    CouplingConvention, EvolveOptions, GpeDrive, GroundStateResult, SpinorField2D, Units, HBAR,
};
use stirap_core::lambda::STEP_SAFETY;
use stirap_core::localization::{
    adiabaticity_map, cpt_population_map, find_spots, radial_fwhm, radial_scan, stirap_population_map,
};
use stirap_core::{Axis, FwhmReport, GridSpec2D, ScalarField2D, SpotReport};

use crate::config::{FormatConfig, Mode, RunConfig, ScaleConfig};
use crate::error::{io_err, solver_err, CliError, Result};
use crate::formats::{render_heatmap, write_csv, write_field_csv, write_grid, Scale};
use crate::manifest::{record_file, sha256_hex, FileRecord, GridRecord, RunManifest, MANIFEST_NAME};
use crate::formats::read_grid;

/// Fraction of the map maximum that delimits a spot.
const SPOT_THRESHOLD: f64 = 0.5;
/// Relative amplitude below which ψ_b phase is not searched for vortices.
const VORTEX_FLOOR: f64 = 0.05;
const SNAPSHOTS: usize = 20;

#[derive(Debug, Clone, Default)]
pub struct ExecOptions {
    /// Overrides `output.directory`.
    pub out_dir: Option<PathBuf>,
    /// Worker cap; 0 uses every core.
    pub threads: usize,
    /// Use the 513×513 grids the bundled configs list under `heavy`.
    pub heavy: bool,
}

/// Collects output files and their checksums.
struct Outputs {
    dir: PathBuf,
    formats: Vec<FormatConfig>,
    scale: Scale,
    files: Vec<FileRecord>,
}

impl Outputs {
    fn record(&mut self, name: String) -> Result<()> {
        self.files.push(record_file(&self.dir, &name)?);
        Ok(())
    }

    /// A map in every configured format; `scale` overrides the configured
    /// heatmap scale.
    fn field(&mut self, name: &str, field: &ScalarField2D, scale: Option<Scale>) -> Result<()> {
        for f in self.formats.clone() {
            let file = match f {
                FormatConfig::Grid => format!("{name}.f64g"),
                FormatConfig::Csv => format!("{name}.csv"),
                FormatConfig::Pgm => format!("{name}.pgm"),
            };
            let path = self.dir.join(&file);
            match f {
                FormatConfig::Grid => write_grid(field, &path)?,
                FormatConfig::Csv => write_field_csv(field, &path)?,
                FormatConfig::Pgm => render_heatmap(field, &path, scale.unwrap_or(self.scale))?,
            }
            self.record(file)?;
        }
        Ok(())
    }

    fn table(&mut self, name: &str, header: &[&str], rows: Vec<Vec<String>>) -> Result<()> {
        let file = format!("{name}.csv");
        write_csv(&self.dir.join(&file), header, rows)?;
        self.record(file)
    }

    fn json(&mut self, name: &str, value: &Value) -> Result<()> {
        let file = format!("{name}.json");
        let path = self.dir.join(&file);
        let text = serde_json::to_string_pretty(value).expect("JSON value serializes");
        fs::write(&path, text + "\n").map_err(io_err(&path))?;
        self.record(file)
    }
}

/// What a mode hands back to the manifest writer.
#[derive(Default)]
struct ModeReport {
    grid: Option<GridSpec2D>,
    constants: BTreeMap<String, f64>,
    conventions: BTreeMap<String, String>,
    steps: BTreeMap<String, u64>,
    summary: Value,
}

/// Run `config`, write its outputs and finally `manifest.json`.
pub fn execute(config: &RunConfig, opts: &ExecOptions) -> Result<RunManifest> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} worker threads: {e}", opts.threads)))?;
    let threads = pool.current_num_threads();
    let dir = opts.out_dir.clone().unwrap_or_else(|| PathBuf::from(&config.output.directory));
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    // A manifest from an earlier run would describe files about to change.
    let stale = dir.join(MANIFEST_NAME);
    if stale.exists() {
        fs::remove_file(&stale).map_err(io_err(&stale))?;
    }
    let mut out = Outputs {
        dir: dir.clone(),
        formats: config.output.formats.clone(),
        scale: match config.output.scale {
            ScaleConfig::Linear => Scale::Linear,
            ScaleConfig::Log => Scale::Log,
        },
        files: Vec::new(),
    };

    let start = Instant::now();
    let report = pool.install(|| match config.mode {
        Mode::Localize | Mode::CptMap => run_population(config, opts, &mut out),
        Mode::AdiabaticityMap => run_adiabaticity(config, opts, &mut out),
        Mode::GpeGround => run_ground(config, opts, &mut out),
        Mode::GpeEvolve => run_evolve(config, opts, &mut out),
        Mode::Analyze => run_analyze(config, &mut out),
    })?;
    out.json("summary", &report.summary)?;

    let config_json = serde_json::to_value(config).expect("config serializes");
    let id_source = format!("{}|heavy={}", serde_json::to_string(&config_json).unwrap(), opts.heavy);
    let manifest = RunManifest {
        run_id: sha256_hex(id_source.as_bytes())[..16].to_string(),
        mode: config.mode.name().to_string(),
        config: config_json,
        constants: report.constants,
        conventions: report.conventions,
        grid: report.grid.map(|g| GridRecord {
            nx: g.nx,
            ny: g.ny,
            x0: g.x0,
            y0: g.y0,
            dx: g.dx,
            dy: g.dy,
        }),
        threads,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
        steps: report.steps,
        summary: report.summary,
        files: out.files,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&stale, text + "\n").map_err(io_err(&stale))?;
    Ok(manifest)
}

fn lambda_report(config: &RunConfig) -> Result<(BTreeMap<String, f64>, BTreeMap<String, String>)> {
    let s = config.scenario()?;
    let mut constants = BTreeMap::new();
    constants.insert("gamma".into(), s.params.gamma);
    constants.insert("omega_s0".into(), s.stokes.amplitude);
    for (k, b) in s.pump.components().iter().enumerate() {
        constants.insert(format!("omega_p0_{k}"), b.amplitude);
        constants.insert(format!("waist_{k}"), b.waist);
    }
    constants.insert("pulse_width".into(), s.schedule.pulse_width());
    constants.insert("stokes_center".into(), s.schedule.stokes_center());
    constants.insert("pump_center".into(), s.schedule.pump_center());
    constants.insert("step_safety".into(), STEP_SAFETY);
    let mut conventions = BTreeMap::new();
    conventions.insert("rabi_sign".into(), "H = -(Ωs|c⟩⟨b| + Ωp|c⟩⟨a|) + h.c.".into());
    conventions.insert("pump_normalization".into(), "Ωp0 (r/w)^|l| e^(-r²/w²), no peak rescaling".into());
    conventions.insert(
        "branching".into(),
        format!("{:?} to (a, b), {:?}", s.params.branching, s.params.decay),
    );
    Ok((constants, conventions))
}

fn fwhm_json(r: &FwhmReport, waist: f64) -> Value {
    json!({
        "width_m": r.width,
        "width_waists": r.width / waist,
        "left_m": r.left,
        "right_m": r.right,
        "peak": r.peak,
        "baseline": r.baseline,
        "under_resolved": r.under_resolved,
    })
}

fn spots_json(spots: &[SpotReport]) -> Value {
    spots
        .iter()
        .map(|s| {
            json!({
                "center_m": [s.center.0, s.center.1],
                "fwhm_x_m": s.fwhm_x,
                "fwhm_y_m": s.fwhm_y,
                "peak": s.peak_value,
                "angle_rad": s.angle_from_origin,
                "pixels": s.pixels,
                "touches_boundary": s.touches_boundary,
            })
        })
        .collect()
}

/// Width along `axis` through the map maximum.
fn map_fwhm(map: &ScalarField2D, axis: Axis) -> Option<FwhmReport> {
    let (i, j) = map.argmax();
    let offset = match axis {
        Axis::X => map.grid.y(j),
        Axis::Y => map.grid.x(i),
    };
    slice(map, axis, offset).and_then(|s| stirap_core::localization::fwhm(&s.profile)).ok()
}

fn run_population(config: &RunConfig, opts: &ExecOptions, out: &mut Outputs) -> Result<ModeReport> {
    let scenario = config.scenario()?;
    let grid = config.map_grid(opts.heavy)?;
    let solver = config.solver_options();
    let map = match config.mode {
        Mode::CptMap => cpt_population_map(&scenario, &grid, &solver),
        _ => stirap_population_map(&scenario, &grid, &solver),
    }
    .map_err(solver_err("population map"))?;
    out.field("population_a", &map, None)?;

    let waist = scenario.pump.components()[0].waist;
    let spots = find_spots(&map, SPOT_THRESHOLD).map_err(solver_err("spot search"))?;
    let mut summary = json!({
        "technique": if config.mode == Mode::CptMap { "cpt" } else { "stirap" },
        "map_fwhm_x": map_fwhm(&map, Axis::X).map(|r| fwhm_json(&r, waist)),
        "map_fwhm_y": map_fwhm(&map, Axis::Y).map(|r| fwhm_json(&r, waist)),
        "spot_threshold": SPOT_THRESHOLD,
        "spots": spots_json(&spots),
    });
    let mut steps = BTreeMap::new();
    steps.insert("map_points".into(), grid.len() as u64);
    if let Some(scan_cfg) = &config.scan {
        let scan = radial_scan(&scenario, scan_cfg.r_max, scan_cfg.points, &solver).map_err(solver_err("radial scan"))?;
        let rows = scan
            .positions
            .iter()
            .zip(&scan.values)
            .map(|(r, p)| vec![r.to_string(), p.to_string()])
            .collect();
        out.table("radial_scan", &["r", "population_a"], rows)?;
        summary["radial_fwhm"] = match radial_fwhm(&scan) {
            Ok(r) => fwhm_json(&r, waist),
            Err(e) => json!({ "error": e.to_string() }),
        };
        steps.insert("scan_points".into(), scan_cfg.points as u64);
    }
    let (constants, conventions) = lambda_report(config)?;
    Ok(ModeReport {
        grid: Some(grid),
        constants,
        conventions,
        steps,
        summary,
    })
}

fn run_adiabaticity(config: &RunConfig, opts: &ExecOptions, out: &mut Outputs) -> Result<ModeReport> {
    let scenario = config.scenario()?;
    let grid = config.map_grid(opts.heavy)?;
    let beta = config.beta();
    let tau = scenario.schedule.delay();
    let m = adiabaticity_map(&grid, &scenario.pump, &scenario.stokes, tau, beta)
        .map_err(solver_err("adiabaticity map"))?;
    out.field("adiabaticity_margin", &m.margin, None)?;
    out.field("adiabaticity_lhs", &m.lhs, None)?;
    let min_lhs = m.lhs.min();
    let s0 = scenario.stokes.amplitude;
    let (constants, conventions) = lambda_report(config)?;
    Ok(ModeReport {
        grid: Some(grid),
        constants,
        conventions,
        steps: BTreeMap::from([("map_points".to_string(), grid.len() as u64)]),
        summary: json!({
            "satisfied": m.satisfied,
            "satisfied_fraction": m.satisfied_fraction,
            "beta": beta,
            "tau_s": tau,
            "min_lhs": min_lhs,
            "min_lhs_over_omega_s0_sq": min_lhs / (s0 * s0),
            "rhs": m.rhs,
            "rhs_over_gamma_sq": m.rhs / (scenario.params.gamma * scenario.params.gamma),
            "min_margin": m.margin.min(),
        }),
    })
}

fn bec_constants(p: &BECParams) -> BTreeMap<String, f64> {
    let u = p.units();
    let c = p.couplings();
    let tf = p.thomas_fermi();
    BTreeMap::from([
        ("hbar".to_string(), HBAR),
        ("mass".to_string(), p.mass),
        ("atom_number".to_string(), p.atom_number),
        ("omega_r".to_string(), p.omega_r),
        ("omega_perp".to_string(), p.omega_perp),
        ("a_aa".to_string(), p.a_aa),
        ("a_ab".to_string(), p.a_ab),
        ("a_bb".to_string(), p.a_bb),
        ("length_unit_m".to_string(), u.length),
        ("time_unit_s".to_string(), u.time),
        ("g_aa_reduced".to_string(), c.aa),
        ("g_ab_reduced".to_string(), c.ab),
        ("g_bb_reduced".to_string(), c.bb),
        ("thomas_fermi_mu".to_string(), tf.mu),
        ("thomas_fermi_radius_m".to_string(), tf.radius * u.length),
    ])
}

/// Density `|ψ|²` per m² on the SI grid.
fn density_si(field: &ScalarField2D, units: &Units) -> ScalarField2D {
    let area = units.length * units.length;
    ScalarField2D {
        grid: units.grid_to_si(&field.grid),
        values: field.values.iter().map(|v| v / area).collect(),
    }
}

fn solve_ground(config: &RunConfig, opts: &ExecOptions) -> Result<(BECParams, GridSpec2D, GroundStateResult)> {
    let params = config.bec_params()?;
    let grid_si = config.periodic_grid(opts.heavy)?;
    let grid = params.units().grid_to_reduced(&grid_si);
    let gs = ground_state(&grid, &params, &config.ground_options()).map_err(solver_err("ground state"))?;
    Ok((params, grid_si, gs))
}

fn ground_json(gs: &GroundStateResult, params: &BECParams) -> Value {
    let tf = params.thomas_fermi();
    json!({
        "mu": gs.mu,
        "energy": gs.energy,
        "iterations": gs.iterations,
        "residual": gs.residual,
        "thomas_fermi_mu": tf.mu,
        "mu_relative_to_thomas_fermi": (gs.mu - tf.mu) / tf.mu,
        "healing_resolved": gs.healing_resolved,
    })
}

fn run_ground(config: &RunConfig, opts: &ExecOptions, out: &mut Outputs) -> Result<ModeReport> {
    let (params, grid_si, gs) = solve_ground(config, opts)?;
    let units = params.units();
    out.field("ground_density", &density_si(&gs.psi.density(), &units), None)?;
    let energies = gs
        .energies
        .iter()
        .enumerate()
        .map(|(k, e)| vec![k.to_string(), e.to_string()])
        .collect();
    out.table("ground_energies", &["iteration", "energy"], energies)?;
    Ok(ModeReport {
        grid: Some(grid_si),
        constants: bec_constants(&params),
        conventions: BTreeMap::from([("units".to_string(), "energies in ħω_r".to_string())]),
        steps: BTreeMap::from([("ground_iterations".to_string(), gs.iterations as u64)]),
        summary: json!({ "ground_state": ground_json(&gs, &params) }),
    })
}

fn run_evolve(config: &RunConfig, opts: &ExecOptions, out: &mut Outputs) -> Result<ModeReport> {
    let (params, grid_si, gs) = solve_ground(config, opts)?;
    let units = params.units();
    let (pump, stokes, schedule) = config.drive()?;
    let gamma = config.lambda_params()?.gamma;
    let convention = config.convention();
    let drive = GpeDrive::from_si(&pump, &stokes, &schedule, gamma, &units).with_convention(convention);
    let solver = config.solver.clone().unwrap_or_default();
    let t_final = solver.t_final.expect("validated at parse time");
    let dt = solver.dt.expect("validated at parse time");
    let interval = solver.snapshot_interval.unwrap_or(t_final / SNAPSHOTS as f64);
    let count = (t_final / interval + 1e-9).floor() as usize;
    let times: Vec<f64> = (0..=count).map(|k| units.to_reduced_time(k as f64 * interval)).collect();
    let evolve_opts =
        EvolveOptions::for_drive(units.to_reduced_time(t_final), units.to_reduced_time(dt), Some(&drive), times);
    let init = SpinorField2D::from_ground_state(&gs.psi, 0.0);
    let r = evolve_spinor(&init, Some(&drive), &params, &evolve_opts).map_err(solver_err("condensate evolution"))?;

    for (k, snap) in r.snapshots.iter().enumerate() {
        out.field(&format!("density_a_{k:03}"), &density_si(&snap.density(Component::A), &units), None)?;
        out.field(&format!("density_b_{k:03}"), &density_si(&snap.density(Component::B), &units), None)?;
    }
    let psi_b = r.final_state.component(Component::B);
    let phase = phase_map(&psi_b).phase;
    out.field("phase_b_final", &ScalarField2D { grid: grid_si, values: phase.values }, Some(Scale::Linear))?;

    let norms = r
        .norms
        .iter()
        .map(|s| {
            let mut row = vec![(s.time * units.time).to_string()];
            row.extend(s.norms.iter().map(|n| n.to_string()));
            row
        })
        .collect();
    out.table("norms", &["time_s", "n_a", "n_b", "n_c"], norms)?;
    let fx = fwhm_timeseries(&r.snapshots, Component::A, Axis::X);
    let fy = fwhm_timeseries(&r.snapshots, Component::A, Axis::Y);
    let width = |w: &stirap_core::Result<FwhmReport>| w.as_ref().map_or(f64::NAN, |w| w.width * units.length);
    let fwhm_rows = fx
        .iter()
        .zip(&fy)
        .map(|((t, wx), (_, wy))| {
            let under = wx.as_ref().is_ok_and(|w| w.under_resolved) || wy.as_ref().is_ok_and(|w| w.under_resolved);
            vec![
                (t * units.time).to_string(),
                width(wx).to_string(),
                width(wy).to_string(),
                under.to_string(),
            ]
        })
        .collect();
    out.table("fwhm_a", &["time_s", "fwhm_x_m", "fwhm_y_m", "under_resolved"], fwhm_rows)?;

    let analysis = config.analysis.clone().unwrap_or_default();
    let windings: Vec<Value> = analysis
        .winding_radii
        .iter()
        .map(|&radius| match winding_number(&psi_b, (0.0, 0.0), units.to_reduced_length(radius), 64) {
            Ok(w) => json!({ "radius_m": radius, "winding": w }),
            Err(e) => json!({ "radius_m": radius, "error": e.to_string() }),
        })
        .collect();
    let floor = analysis.vortex_floor.unwrap_or(VORTEX_FLOOR);
    let vortices: Vec<Value> = find_vortices(&psi_b, floor)
        .map_err(solver_err("vortex search"))?
        .iter()
        .map(|v| json!({ "position_m": [v.position.0 * units.length, v.position.1 * units.length], "charge": v.charge }))
        .collect();
    let final_norms = r.final_state.norms();

    let mut constants = bec_constants(&params);
    constants.insert("gamma".into(), gamma);
    constants.insert("dt_s".into(), r.step * units.time);
    let mut conventions = BTreeMap::new();
    conventions.insert(
        "coupling".into(),
        match convention {
            CouplingConvention::Imprinting => "imprinting: ψ_c driven by ½Ω_p ψ_a",
            CouplingConvention::AsPrinted => "as printed: ψ_c driven by ½Ω_p* ψ_a",
        }
        .to_string(),
    );
    conventions.insert("densities".into(), "|ψ|² per m², normalized to one atom".into());
    Ok(ModeReport {
        grid: Some(grid_si),
        constants,
        conventions,
        steps: BTreeMap::from([
            ("ground_iterations".to_string(), gs.iterations as u64),
            ("evolution_steps".to_string(), r.steps as u64),
            ("coupling_substeps".to_string(), r.coupling_substeps as u64),
        ]),
        summary: json!({
            "ground_state": ground_json(&gs, &params),
            "final_norms": final_norms,
            "snapshots": r.snapshots.len(),
            "windings_b": windings,
            "vortex_floor": floor,
            "vortices_b": vortices,
        }),
    })
}

fn run_analyze(config: &RunConfig, out: &mut Outputs) -> Result<ModeReport> {
    let a = config.analysis.clone().unwrap_or_default();
    let input = PathBuf::from(a.input.as_deref().expect("validated at parse time"));
    let field = read_grid(&input)?;
    let log = log_density(&field, a.log_floor).map_err(solver_err("log density"))?;
    out.field("log_density", &log, Some(Scale::Linear))?;

    let axis = a.slice_axis.map_or(Axis::X, |s| s.axis());
    let offset = a.slice_offset.unwrap_or_else(|| {
        let (i, j) = field.argmax();
        match axis {
            Axis::X => field.grid.y(j),
            Axis::Y => field.grid.x(i),
        }
    });
    let cut = slice(&field, axis, offset).map_err(solver_err("slice"))?;
    let rows = cut
        .profile
        .positions
        .iter()
        .zip(&cut.profile.values)
        .map(|(p, v)| vec![p.to_string(), v.to_string()])
        .collect();
    out.table("slice", &["position", "value"], rows)?;
    let threshold = a.spot_threshold.unwrap_or(SPOT_THRESHOLD);
    let spots = find_spots(&field, threshold).map_err(solver_err("spot search"))?;
    let mut summary = json!({
        "input": input.display().to_string(),
        "slice": {
            "axis": if axis == Axis::X { "x" } else { "y" },
            "coordinate": cut.coordinate,
            "fwhm": stirap_core::localization::fwhm(&cut.profile).ok().map(|r| json!({
                "width": r.width, "peak": r.peak, "under_resolved": r.under_resolved
            })),
        },
        "spot_threshold": threshold,
        "spots": spots_json(&spots),
    });
    if let Some(other) = &a.compare_with {
        let b = read_grid(Path::new(other))?;
        let c = compare_maps(&field, &b).map_err(solver_err("map comparison"))?;
        summary["comparison"] = json!({
            "with": other,
            "max_abs_diff": c.max_abs_diff,
            "l2_diff": c.l2_diff,
            "fwhm_ratio": c.fwhm_ratio,
        });
    }
    Ok(ModeReport {
        grid: Some(field.grid),
        summary,
        ..ModeReport::default()
    })
}

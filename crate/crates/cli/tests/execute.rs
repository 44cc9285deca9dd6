use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use stirap_cli::{bundled, execute, parse_config, verify_manifest, CliError, ExecOptions, RunConfig};

/// A bundled config with some keys overridden (`section.key` paths).
fn tweaked(name: &str, edits: &[(&str, Value)]) -> RunConfig {
    let mut v: Value = serde_json::from_str(bundled(name).unwrap()).unwrap();
    for (path, value) in edits {
        let (section, key) = path.split_once('.').unwrap();
        v[section][key] = value.clone();
    }
    parse_config(&v.to_string()).unwrap()
}

fn run(config: &RunConfig, dir: &Path, threads: usize) -> stirap_cli::RunManifest {
    let opts = ExecOptions {
        out_dir: Some(dir.to_path_buf()),
        threads,
        heavy: false,
    };
    execute(config, &opts).unwrap()
}

fn small_localize() -> RunConfig {
    tweaked(
        "fig2a",
        &[
            ("grid.nx", json!(21)),
            ("grid.ny", json!(21)),
            ("scan.points", json!(200)),
        ],
    )
}

#[test]
fn localize_outputs_are_thread_count_independent() {
    let c = small_localize();
    let one = tempfile::tempdir().unwrap();
    let two = tempfile::tempdir().unwrap();
    let m1 = run(&c, one.path(), 1);
    let m2 = run(&c, two.path(), 2);
    assert_eq!((m1.threads, m2.threads), (1, 2));
    assert_eq!(m1.run_id, m2.run_id);
    for f in ["population_a.f64g", "population_a.csv", "radial_scan.csv", "summary.json"] {
        let a = fs::read(one.path().join(f)).unwrap();
        let b = fs::read(two.path().join(f)).unwrap();
        assert!(a == b, "{f} differs between 1 and 2 threads");
    }
    let names: Vec<&str> = m1.files.iter().map(|f| f.path.as_str()).collect();
    for f in ["population_a.pgm", "radial_scan.csv", "summary.json"] {
        assert!(names.contains(&f), "{f} missing from {names:?}");
    }
    let w = m1.summary["radial_fwhm"]["width_waists"].as_f64().unwrap();
    assert!(w > 0.0 && w < 0.2, "radial width {w} waists");
    // Corners, where the pump is too weak to transfer, touch the boundary.
    let interior: Vec<&Value> =
        m1.summary["spots"].as_array().unwrap().iter().filter(|s| s["touches_boundary"] == json!(false)).collect();
    assert_eq!(interior.len(), 1);
    assert_eq!(interior[0]["center_m"], json!([0.0, 0.0]));
    assert!(m1.constants["gamma"] > 0.0);
}

#[test]
fn manifest_detects_tampering() {
    let c = small_localize();
    let dir = tempfile::tempdir().unwrap();
    let m = run(&c, dir.path(), 1);
    assert_eq!(verify_manifest(dir.path()).unwrap(), m);

    let path = dir.path().join("population_a.csv");
    let mut text = fs::read_to_string(&path).unwrap();
    text.push('\n');
    fs::write(&path, text).unwrap();
    let err = verify_manifest(dir.path()).unwrap_err();
    assert!(err.to_string().contains("checksum"), "{err}");
}

#[test]
fn heavy_flag_changes_the_run_id() {
    let c = tweaked("appendixA", &[("grid.nx", json!(11)), ("grid.ny", json!(11)), ("grid.heavy", json!([13, 13]))]);
    let dir = tempfile::tempdir().unwrap();
    let light = run(&c, dir.path(), 1);
    let heavy = execute(
        &c,
        &ExecOptions {
            out_dir: Some(dir.path().to_path_buf()),
            threads: 1,
            heavy: true,
        },
    )
    .unwrap();
    assert_ne!(light.run_id, heavy.run_id);
    assert_eq!((light.grid.unwrap().nx, heavy.grid.unwrap().nx), (11, 13));
}

#[test]
fn adiabaticity_condition_holds_for_the_reference_drive() {
    let c = tweaked("appendixA", &[("grid.nx", json!(41)), ("grid.ny", json!(41))]);
    let dir = tempfile::tempdir().unwrap();
    let m = run(&c, dir.path(), 1);
    assert_eq!(m.summary["satisfied"], json!(true));
    let lhs = m.summary["min_lhs_over_omega_s0_sq"].as_f64().unwrap();
    let rhs = m.summary["rhs_over_gamma_sq"].as_f64().unwrap();
    assert!((lhs - 1.0).abs() < 1e-12 && (rhs - 1.0).abs() < 1e-12, "{lhs} {rhs}");
}

#[test]
fn analyze_compares_saved_maps() {
    let dir = tempfile::tempdir().unwrap();
    run(&small_localize(), dir.path(), 1);
    let input = dir.path().join("population_a.f64g");
    let doc = json!({
        "mode": "analyze",
        "analysis": { "input": input, "compare_with": input, "slice_axis": "y" },
        "output": { "formats": ["grid"] }
    });
    let out = dir.path().join("analysis");
    let m = run(&parse_config(&doc.to_string()).unwrap(), &out, 1);
    assert_eq!(m.summary["comparison"]["max_abs_diff"], json!(0.0));
    assert_eq!(m.summary["slice"]["axis"], json!("y"));
    assert!(out.join("log_density.f64g").exists() && out.join("slice.csv").exists());

    let missing = json!({ "mode": "analyze", "analysis": { "input": dir.path().join("nope.f64g") } });
    let err = execute(&parse_config(&missing.to_string()).unwrap(), &ExecOptions::default()).unwrap_err();
    assert!(matches!(err, CliError::Io { .. }));
}

/// The single-vortex imprint on a coarse grid: ψ_b ends up holding nearly
/// all atoms with a unit phase winding around the beam axis.
#[test]
fn coarse_single_vortex_imprint() {
    let c = tweaked(
        "fig7",
        &[
            ("grid.nx", json!(65)),
            ("grid.ny", json!(65)),
            ("solver.snapshot_interval", json!(50e-6)),
            ("analysis.winding_radii", json!([10e-6, 20e-6])),
            ("output.formats", json!(["grid"])),
        ],
    );
    let dir = tempfile::tempdir().unwrap();
    let m = run(&c, dir.path(), 1);
    let windings: Vec<i64> =
        m.summary["windings_b"].as_array().unwrap().iter().map(|w| w["winding"].as_i64().unwrap()).collect();
    assert_eq!(windings, vec![1, 1]);
    let nb = m.summary["final_norms"][1].as_f64().unwrap();
    assert!(nb > 0.9, "N_b = {nb}");
    assert_eq!(m.steps["evolution_steps"], 1000);
    assert_eq!(m.summary["snapshots"], json!(3));
    for k in 0..3 {
        assert!(dir.path().join(format!("density_a_{k:03}.f64g")).exists());
    }
    let fwhm = fs::read_to_string(dir.path().join("fwhm_a.csv")).unwrap();
    assert_eq!(fwhm.lines().count(), 4);
    assert!(fwhm.lines().nth(2).unwrap().starts_with("0.00005,"), "{fwhm}");
}

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn geophase(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geophase"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str], out: &Path) {
    let output = geophase(args, out);
    assert!(
        output.status.success(),
        "`{}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&output.stderr)
    );
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_path(path).unwrap();
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("`{s}` is not a number"))
}

fn out_dir() -> (TempDir, PathBuf) {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    (tmp, out)
}

#[test]
fn polarization_example_reports_one_jump() {
    let (_tmp, out) = out_dir();
    run_ok(&["polarization", "--epsilon", "1e-3", "--steps", "2001"], &out);
    let (header, rows) = read_csv(&out.join("jumps.csv"));
    assert_eq!(header[..3], ["index", "magnitude_rad", "sign"]);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][2], "1");
    assert!((num(&rows[0][1]) - PI).abs() < 1e-2);

    let (_, trace) = read_csv(&out.join("trace.csv"));
    assert_eq!(trace.len(), 2001);
}

#[test]
fn negative_epsilon_flips_the_jump() {
    let (_tmp, out) = out_dir();
    run_ok(&["polarization", "--epsilon", "-1e-3"], &out);
    let (_, rows) = read_csv(&out.join("jumps.csv"));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][2], "-1");
    assert!((num(&rows[0][1]) + PI).abs() < 1e-2);
}

#[test]
fn ring_flux_example_gives_half_integers() {
    let (_tmp, out) = out_dir();
    run_ok(&["ring-flux", "--pi-junctions", "1", "--n-min", "-1", "--n-max", "1"], &out);
    let (header, rows) = read_csv(&out.join("flux.csv"));
    assert_eq!(header, ["n_or_branch", "flux_phi0", "energy"]);
    let fluxes: Vec<f64> = rows.iter().map(|r| num(&r[1])).collect();
    assert_eq!(fluxes, [-0.5, 0.5, 1.5]);
}

#[test]
fn ring_flux_reads_a_ring_file() {
    let (tmp, out) = out_dir();
    let ring = tmp.path().join("ring.json");
    std::fs::write(
        &ring,
        r#"{"junctions":[{"offset":"pi","ej":1.0},{"offset":"pi"}],"beta_l":10.0,"external_flux":0.0}"#,
    )
    .unwrap();
    run_ok(&["ring-flux", "--ring", ring.to_str().unwrap()], &out);
    let (_, rows) = read_csv(&out.join("flux.csv"));
    let fluxes: Vec<f64> = rows.iter().map(|r| num(&r[1])).collect();
    assert_eq!(fluxes, [-1.0, 0.0, 1.0]);
}

#[test]
fn gouy_example_total_is_pi() {
    let (_tmp, out) = out_dir();
    run_ok(&["gouy", "--dims", "2", "--z-over-zr", "-1000", "1000"], &out);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    let total = summary["asymptotic_total_rad"].as_f64().unwrap();
    assert!((total - PI).abs() < 1e-6);
    let endpoint = summary["endpoint_difference_rad"].as_f64().unwrap();
    assert!((endpoint - (PI - 2.0 * 1e-3f64.atan())).abs() < 1e-12);

    let (_, rows) = read_csv(&out.join("gouy.csv"));
    let first = num(&rows[0][2]);
    let last = num(&rows[rows.len() - 1][2]);
    assert!((last - first - endpoint).abs() < 1e-10);
}

#[test]
fn mode_gouy_tracks_half_arctan() {
    let (_tmp, out) = out_dir();
    run_ok(&["mode-gouy"], &out);
    let (header, rows) = read_csv(&out.join("gouy.csv"));
    assert_eq!(header, ["index", "z_over_zr", "gouy_phase_rad", "reference_rad"]);
    assert_eq!(rows.len(), 401);
    for row in &rows {
        assert!((num(&row[2]) - num(&row[3])).abs() < 1e-3);
    }
}

#[test]
fn beta_sweep_and_ring_energy_agree() {
    let (_tmp, out) = out_dir();
    run_ok(&["beta-sweep", "--beta-l", "10"], &out);
    let (_, sweep) = read_csv(&out.join("sweep.csv"));
    let flux = num(&sweep[0][1]);
    assert!((flux - 0.453964311889833).abs() < 1e-9);

    run_ok(&["ring-energy", "--beta-l", "10"], &out);
    let (_, minima) = read_csv(&out.join("minima.csv"));
    assert_eq!(minima.len(), 4);
    let ground = minima
        .iter()
        .min_by(|a, b| num(&a[2]).total_cmp(&num(&b[2])))
        .unwrap();
    assert!((num(&ground[1]).abs() - flux).abs() < 1e-9);
}

#[test]
fn every_csv_round_trips() {
    let (tmp, out) = out_dir();
    let path = tmp.path().join("path.json");
    std::fs::write(&path, "[[[1,0],[0,0]],[[1,0],[1,0]],[[1,0],[0,1]]]").unwrap();
    let runs: [&[&str]; 7] = [
        &["trace", "--input", path.to_str().unwrap(), "--kind", "projection"],
        &["polarization"],
        &["gouy", "--samples", "101"],
        &["mode-gouy", "--samples", "41"],
        &["ring-flux", "--n-min", "-3", "--n-max", "3"],
        &["ring-energy"],
        &["beta-sweep"],
    ];
    for args in runs {
        let dir = out.join(args[0]);
        run_ok(args, &dir);
        for entry in std::fs::read_dir(&dir).unwrap() {
            let file = entry.unwrap().path();
            let bytes = std::fs::read(&file).unwrap();
            assert!(!bytes.contains(&b'\r'));
            assert!(bytes.ends_with(b"\n"));
            if file.extension().unwrap() != "csv" {
                continue;
            }
            let (header, rows) = read_csv(&file);
            assert!(header.iter().all(|h| !h.is_empty() && h.trim() == h));
            for row in &rows {
                assert_eq!(row.len(), header.len(), "{}", file.display());
                for (k, cell) in row.iter().enumerate() {
                    // the first trace row has no step, so its magnitude is blank
                    if cell.is_empty() && header[k] == "step_overlap_magnitude" {
                        continue;
                    }
                    let value = num(cell);
                    assert!(value.is_finite());
                    let mantissa = cell.trim_start_matches('-').split('e').next().unwrap();
                    let significant = mantissa
                        .replace('.', "")
                        .trim_start_matches('0')
                        .len();
                    assert!(significant <= 12, "{cell} has more than 12 significant digits");
                }
            }
        }
    }
}

#[test]
fn sidecar_echoes_resolved_config_with_sorted_keys() {
    let (_tmp, out) = out_dir();
    run_ok(&["mode-gouy", "--samples", "41", "--seed", "9"], &out);
    let text = std::fs::read_to_string(out.join("config.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["subcommand"], "mode-gouy");
    assert_eq!(value["seed"], 9);
    assert_eq!(value["parameters"]["samples"], 41);
    let half_width = value["parameters"]["grid_half_width_w0"].as_f64().unwrap();
    assert!((half_width - 6.0 * 101f64.sqrt()).abs() < 1e-12);

    let keys: Vec<&str> = text
        .lines()
        .filter_map(|l| l.trim().strip_prefix('"')?.split('"').next())
        .filter(|k| text.contains(&format!("\"{k}\":")))
        .collect();
    let top: Vec<&str> = keys
        .iter()
        .copied()
        .filter(|k| ["output_path", "parameters", "seed", "subcommand"].contains(k))
        .collect();
    assert_eq!(top, ["output_path", "parameters", "seed", "subcommand"]);
    let params: Vec<&str> = keys
        .iter()
        .copied()
        .filter(|k| ["grid_half_width_w0", "grid_points", "samples", "z_over_zr"].contains(k))
        .collect();
    assert_eq!(params, ["grid_half_width_w0", "grid_points", "samples", "z_over_zr"]);
}

#[test]
fn replaying_the_sidecar_reproduces_artifacts() {
    let (tmp, out) = out_dir();
    run_ok(&["ring-flux", "--pi-junctions", "3", "--zero-junctions", "1", "--beta-l", "4"], &out);
    let replay = tmp.path().join("replay");
    let config = out.join("config.json");
    let output = Command::new(env!("CARGO_BIN_EXE_geophase"))
        .args(["run", config.to_str().unwrap(), "--out", replay.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    assert_eq!(
        std::fs::read(out.join("flux.csv")).unwrap(),
        std::fs::read(replay.join("flux.csv")).unwrap()
    );
}

#[test]
fn seeded_gauge_is_reproducible_and_seed_dependent() {
    let (tmp, out) = out_dir();
    let path = tmp.path().join("path.json");
    std::fs::write(&path, r#"{"states":[[[1,0],[0,0]],[[1,0],[1,0]],[[1,0],[0,1]]],"timestamps":[0,1,2]}"#)
        .unwrap();
    let mut traces = Vec::new();
    for seed in ["1", "1", "2"] {
        let dir = out.join(format!("s{}", traces.len()));
        run_ok(
            &["trace", "--input", path.to_str().unwrap(), "--random-gauge", "--seed", seed],
            &dir,
        );
        traces.push(std::fs::read(dir.join("trace.csv")).unwrap());
    }
    assert_eq!(traces[0], traces[1]);
    assert_ne!(traces[0], traces[2]);
}

fn assert_config_error(args: &[&str], key: &str) {
    let (_tmp, out) = out_dir();
    let output = geophase(args, &out);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert_eq!(output.status.code(), Some(2), "`{}`: {stderr}", args.join(" "));
    assert!(stderr.contains(key), "`{}` should name `{key}`: {stderr}", args.join(" "));
    assert!(!out.exists(), "no artifacts on validation failure");
}

#[test]
fn precondition_violations_exit_with_2() {
    assert_config_error(&["polarization", "--epsilon", "0.5"], "epsilon");
    assert_config_error(&["polarization", "--steps", "1"], "steps");
    assert_config_error(&["polarization", "--theta-start", "2", "--theta-end", "1"], "theta");
    assert_config_error(&["gouy", "--dims", "3"], "dims");
    assert_config_error(&["gouy", "--z-over-zr", "5", "-5"], "z_over_zr");
    assert_config_error(&["gouy", "--samples", "1"], "samples");
    assert_config_error(&["mode-gouy", "--grid-points", "32"], "grid_points");
    assert_config_error(&["mode-gouy", "--grid-half-width-w0", "10"], "grid_half_width_w0");
    assert_config_error(&["ring-flux", "--beta-l", "0"], "beta_l");
    assert_config_error(&["ring-flux", "--n-min", "2", "--n-max", "1"], "n_min");
    assert_config_error(&["ring-flux", "--ring", "/nonexistent.json"], "ring");
    assert_config_error(&["ring-energy", "--pi-junctions", "2"], "ring");
    assert_config_error(&["beta-sweep", "--beta-l", "1"], "beta_l");
    assert_config_error(&["trace", "--input", "/nonexistent.json"], "input");
    assert_config_error(&["polarization", "--unknown-flag", "1"], "unknown-flag");
}

#[test]
fn unknown_config_keys_exit_with_2() {
    let tmp = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"subcommand":"gouy","parameters":{"dimz":2},"output_path":"x"}"#, "dimz"),
        (r#"{"subcommand":"gouy","parameters":{},"output_path":"x","extra":1}"#, "extra"),
        (r#"{"subcommand":"plot","parameters":{},"output_path":"x"}"#, "subcommand"),
        (
            r#"{"subcommand":"ring-flux","parameters":{"ring":{"beta_l":1,"junctions":[],"bogus":0}},"output_path":"x"}"#,
            "parameters",
        ),
    ];
    for (i, (config, key)) in cases.iter().enumerate() {
        let file = tmp.path().join(format!("c{i}.json"));
        std::fs::write(&file, config).unwrap();
        let output = Command::new(env!("CARGO_BIN_EXE_geophase"))
            .current_dir(tmp.path())
            .args(["run", file.to_str().unwrap()])
            .output()
            .unwrap();
        let stderr = String::from_utf8_lossy(&output.stderr);
        assert_eq!(output.status.code(), Some(2), "{config}: {stderr}");
        assert!(stderr.contains(key), "{config}: {stderr}");
        assert!(!tmp.path().join("x").exists());
    }
}

#[test]
fn orthogonal_step_exits_with_3_and_writes_nothing() {
    let (tmp, out) = out_dir();
    let path = tmp.path().join("path.json");
    std::fs::write(&path, "[[[1,0],[0,0]],[[0,0],[1,0]]]").unwrap();
    let output = geophase(&["trace", "--input", path.to_str().unwrap()], &out);
    assert_eq!(output.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&output.stderr).contains("orthogonal"));
    assert!(!out.exists());
}

#[test]
fn no_temporary_files_remain() {
    let (_tmp, out) = out_dir();
    run_ok(&["polarization", "--steps", "101"], &out);
    let mut names: Vec<String> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names, ["config.json", "jumps.csv", "trace.csv"]);
}

//! End-to-end checks of the `cvm` binary: artifacts, schemas, strict
//! validation, reproducibility, and CSV round-trips.

use std::path::Path;
use std::process::{Command, Output};

fn cvm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("run.cfg");
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

const SMALL_CONSENSUS: &str = "\
model.f = 3
model.theta = 1
graph.topology = cycle
graph.size = 9
run.stop = absorption
run.replicates = 200
run.seed = 17
";

#[test]
fn analytics_emits_the_reference_table() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("a");
    let result = cvm(&["analytics", "--F", "4", "--theta", "1", "--out", out.to_str().unwrap()]);
    assert!(result.status.success());
    let table = read(&out.join("analytics.csv"));
    assert!(table.starts_with("quantity,exact,decimal\n"));
    assert!(table.contains("rho_c_uniform,0/1,"));
    assert!(table.contains("expected_phi_rho2_coeff_a2,4/1,"));
    assert!(table.contains("expected_phi_rho2_coeff_a1,-4/1,"));
    assert!(table.contains("expected_phi_rho2_coeff_a0,1/2,"));
    assert!(table.contains("grand_margin,-264/1,"));
    assert!(table.contains("fixation_threshold_rho2,"));
    let manifest = read(&out.join("manifest.txt"));
    assert!(manifest.contains("subcommand = analytics"));
    assert!(manifest.contains("config-sha256 = "));
    assert!(manifest.contains("artifact = analytics.csv"));
}

#[test]
fn phase_diagram_classifies_reference_cells() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("p");
    let result = cvm(&["phase-diagram", "--F-max", "20", "--out", out.to_str().unwrap()]);
    assert!(result.status.success());
    let table = read(&out.join("phase_diagram.csv"));
    assert!(table.contains("3,1,fluctuation,-288/1,"));
    assert!(table.contains("10,2,fixation-proved,9048/1,"));
    assert!(table.contains("4,1,unresolved,-264/1,"));
    // one row per (F, theta) pair plus the header
    assert_eq!(table.lines().count(), 1 + (2..=20).map(|f| f - 1).sum::<usize>());
}

#[test]
fn consensus_runs_are_reproducible_and_balanced() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL_CONSENSUS);
    let out_a = tmp.path().join("a");
    let out_b = tmp.path().join("b");
    for out in [&out_a, &out_b] {
        let result = cvm(&["consensus", "--config", &cfg, "--out", out.to_str().unwrap()]);
        assert!(result.status.success(), "{result:?}");
    }
    let a = read(&out_a.join("consensus.csv"));
    let b = read(&out_b.join("consensus.csv"));
    assert_eq!(a, b, "same seed must reproduce identical artifacts");

    let row: Vec<&str> = a.lines().nth(1).unwrap().split(',').collect();
    let replicates: u64 = row[4].parse().unwrap();
    let rate: f64 = row[5].parse().unwrap();
    let frozen: u64 = row[8].parse().unwrap();
    let censored: u64 = row[9].parse().unwrap();
    let consensus = (rate * replicates as f64).round() as u64;
    assert_eq!(consensus + frozen + censored, replicates);
    assert_eq!(row[7], "1/3");
}

#[test]
fn csv_floats_round_trip_to_the_last_digit() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL_CONSENSUS);
    let out = tmp.path().join("c");
    assert!(cvm(&["consensus", "--config", &cfg, "--out", out.to_str().unwrap()])
        .status
        .success());
    let table = read(&out.join("consensus.csv"));
    let mut floats = 0;
    for field in table.lines().nth(1).unwrap().split(',') {
        if field.contains('e') && field.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
            let parsed: f64 = field.parse().unwrap();
            assert_eq!(format!("{parsed:.11e}"), field);
            floats += 1;
        }
    }
    assert!(floats >= 2, "expected float fields in the row");
}

#[test]
fn zero_replicates_is_a_validation_error_with_no_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        &SMALL_CONSENSUS.replace("run.replicates = 200", "run.replicates = 0"),
    );
    let out = tmp.path().join("z");
    let result = cvm(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    let stderr = String::from_utf8(result.stderr).unwrap();
    assert!(stderr.starts_with("{\"error\":"), "stderr: {stderr}");
    assert!(stderr.contains("replicates"));
    assert!(!out.exists(), "no artifacts may be written on validation failure");
}

#[test]
fn unknown_keys_and_missing_seed_abort() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "model.frobnicate = 1\n");
    let result = cvm(&["consensus", "--config", &cfg]);
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8(result.stderr).unwrap().contains("unknown configuration key"));

    let cfg = write_config(tmp.path(), &SMALL_CONSENSUS.replace("run.seed = 17\n", ""));
    let result = cvm(&["consensus", "--config", &cfg]);
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8(result.stderr).unwrap().contains("run.seed"));
}

#[test]
fn set_overrides_reach_the_run() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL_CONSENSUS);
    let out = tmp.path().join("o");
    let result = cvm(&[
        "consensus",
        "--config",
        &cfg,
        "--set",
        "graph.size=6",
        "--seed",
        "23",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let table = read(&out.join("consensus.csv"));
    let row: Vec<&str> = table.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[3], "6");
    let manifest = read(&out.join("manifest.txt"));
    assert!(manifest.contains("seed = 23"));
    assert!(manifest.contains("graph.size = 6"));
}

#[test]
fn simulate_writes_summaries_and_series() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "\
model.f = 4
model.theta = 1
graph.topology = cycle
graph.size = 30
run.stop = time
run.t-max = 8
run.replicates = 20
run.seed = 3
observer.times = 0,4,8
",
    );
    let out = tmp.path().join("s");
    let result = cvm(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(result.status.success(), "{result:?}");
    let replicates = read(&out.join("replicates.csv"));
    assert_eq!(replicates.lines().count(), 21);
    assert!(replicates.starts_with(
        "replicate,stop_reason,final_time,events,consensus,domains,max_domain,total_flips\n"
    ));
    let counts = read(&out.join("counts.csv"));
    // 4 opinions x 3 sample times
    assert_eq!(counts.lines().count(), 1 + 12);
    let edges = read(&out.join("edge_density.csv"));
    assert_eq!(edges.lines().count(), 1 + 3);
    let manifest = read(&out.join("manifest.txt"));
    for artifact in ["replicates.csv", "counts.csv", "edge_density.csv"] {
        assert!(manifest.contains(&format!("artifact = {artifact}")));
    }
}

#[test]
fn spacetime_renders_deterministic_p6() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "\
model.f = 3
model.theta = 1
graph.topology = cycle
graph.size = 40
run.stop = time
run.t-max = 20
run.replicates = 1
run.seed = 7
",
    );
    let out_a = tmp.path().join("a");
    let out_b = tmp.path().join("b");
    for out in [&out_a, &out_b] {
        let result = cvm(&[
            "spacetime",
            "--config",
            &cfg,
            "--rows",
            "50",
            "--interfaces",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(result.status.success(), "{result:?}");
    }
    let a = std::fs::read(out_a.join("spacetime.ppm")).unwrap();
    let b = std::fs::read(out_b.join("spacetime.ppm")).unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with(b"P6\n40 50\n255\n"));
    let body = &a[b"P6\n40 50\n255\n".len()..];
    assert_eq!(body.len(), 3 * 40 * 50);
    assert!(body.iter().all(|&v| v == 0 || v == 255));
}

#[test]
fn spacetime_interfaces_coarsen_downward() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "\
model.f = 3
model.theta = 1
graph.topology = cycle
graph.size = 200
run.stop = time
run.t-max = 1000
run.replicates = 1
run.seed = 31
",
    );
    let out = tmp.path().join("coarsen");
    let result = cvm(&[
        "spacetime",
        "--config",
        &cfg,
        "--rows",
        "100",
        "--interfaces",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{result:?}");
    let ppm = std::fs::read(out.join("spacetime.ppm")).unwrap();
    let header = b"P6\n200 100\n255\n";
    assert!(ppm.starts_with(header));
    let body = &ppm[header.len()..];
    let interfaces_in_row = |r: usize| -> usize {
        (0..200)
            .filter(|i| body[3 * (200 * r + i)] == 0)
            .count()
    };
    let first = interfaces_in_row(0);
    let last = interfaces_in_row(99);
    assert!(
        last * 3 < first,
        "no coarsening: {first} interfaces at t=0, {last} at the horizon"
    );
}

#[test]
fn ld_check_reports_exact_and_censored_columns() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("ld");
    let result = cvm(&[
        "ld-check",
        "--seed",
        "5",
        "--replicates",
        "2000",
        "--lengths",
        "40,80",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let table = read(&out.join("ld_curve.csv"));
    assert!(table.starts_with(
        "N,replicates,deviations,probability,neg_log_probability,censored,exact_probability\n"
    ));
    assert_eq!(table.lines().count(), 3);
    // an impossible deviation is censored at the resolution bound
    let out2 = tmp.path().join("ld2");
    let result = cvm(&[
        "ld-check",
        "--seed",
        "5",
        "--epsilon",
        "2.0",
        "--replicates",
        "100",
        "--lengths",
        "30",
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let table = read(&out2.join("ld_curve.csv"));
    let row = table.lines().nth(1).unwrap();
    assert!(row.contains(",true,"));
    assert!(row.split(',').nth(2) == Some("0"));
}

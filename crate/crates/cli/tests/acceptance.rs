//! CLI acceptance: determinism, schema stability, lossless round-trips,
//! exit codes.

use std::process::{Command, Output};

fn torusdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torusdet"))
        .args(args)
        .env_remove("TORUSDET_TOL")
        .env_remove("TORUSDET_SEED")
        .env_remove("TORUSDET_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn c13_validate_exits_zero_and_is_byte_identical() {
    let a = torusdet(&["validate"]);
    assert!(
        a.status.success(),
        "validate failed:\n{}",
        stdout(&a)
    );
    let b = torusdet(&["validate"]);
    assert_eq!(a.stdout, b.stdout, "repeated runs must be byte-identical");
    assert_eq!(a.status.code(), Some(0));

    // Fixed seed twice: byte-identical as well.
    let c1 = torusdet(&["validate", "--seed", "7", "--format", "json"]);
    let c2 = torusdet(&["validate", "--seed", "7", "--format", "json"]);
    assert_eq!(c1.stdout, c2.stdout);
}

#[test]
fn c13_det_json_round_trips_losslessly() {
    let out = torusdet(&[
        "det", "--tau1", "0.5", "--tau2", "1", "--v0", "1", "--route", "all", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(v["schema"], "torusdet.det.v1");
    // 17 significant digits round-trip f64 exactly: re-render and re-parse.
    for key in [
        "tau1",
        "tau2",
        "v0",
        "psi_paper",
        "psi_corrected",
        "psi_oracle",
        "det_oracle",
        "residual_paper_vs_oracle",
    ] {
        let x = v[key].as_f64().unwrap_or_else(|| panic!("{key} missing"));
        let rendered = format!("{x:.16e}");
        let back: f64 = rendered.parse().unwrap();
        assert_eq!(back.to_bits(), x.to_bits(), "{key} failed round-trip");
    }
    // Determinism of det output bytes.
    let again = torusdet(&[
        "det", "--tau1", "0.5", "--tau2", "1", "--v0", "1", "--route", "all", "--format", "json",
    ]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn c13_csv_schema_is_stable() {
    let out = torusdet(&[
        "det", "--tau1", "0", "--tau2", "1", "--v0", "1", "--route", "oracle", "--format", "csv",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    let row = lines.next().unwrap();
    assert!(header.starts_with("schema,"));
    assert_eq!(header.split(',').count(), row.split(',').count());
    assert!(row.starts_with("torusdet.det.v1,"));
    // Non-empty float fields parse back to f64.
    for field in row.split(',').skip(2) {
        if !field.is_empty()
            && (field.chars().next().unwrap().is_ascii_digit() || field.starts_with('-'))
        {
            field.parse::<f64>().unwrap();
        }
    }
}

#[test]
fn det_exit_codes() {
    // Domain error: tau2 <= 0 -> exit 3 with a diagnostic on stderr.
    let out = torusdet(&["det", "--tau1", "0", "--tau2", "-1", "--v0", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());

    // Invalid flags -> exit 2 (clap).
    let out = torusdet(&["det", "--tau1", "0", "--tau2"]);
    assert_eq!(out.status.code(), Some(2));

    // v0 <= 0 -> exit 3.
    let out = torusdet(&["det", "--tau1", "0", "--tau2", "1", "--v0", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn zeta_exit_codes_and_values() {
    // Pole at s = 1 with the subtraction route -> exit 3.
    let out = torusdet(&["zeta", "--s-re", "1", "--tau1", "0", "--tau2", "1", "--v0", "1"]);
    assert_eq!(out.status.code(), Some(3));

    // Direct route in the divergent region -> exit 3.
    let out = torusdet(&[
        "zeta", "--s-re", "0.5", "--tau1", "0", "--tau2", "1", "--v0", "1", "--route", "direct",
    ]);
    assert_eq!(out.status.code(), Some(3));

    // zeta(0) = -V0/(4 pi).
    let out = torusdet(&[
        "zeta", "--s-re", "0", "--tau1", "0", "--tau2", "1", "--v0", "1", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let value: f64 = row.split(',').nth(7).unwrap().parse().unwrap();
    let expect = -1.0 / (4.0 * std::f64::consts::PI);
    assert!((value - expect).abs() <= 1e-9, "{value} vs {expect}");

    // Route recorded in the output.
    assert!(row.ends_with("subtraction"));

    // s = 2 matches the direct route value.
    let sub = torusdet(&[
        "zeta", "--s-re", "2", "--tau1", "0", "--tau2", "1", "--v0", "1", "--format", "csv",
    ]);
    let dir = torusdet(&[
        "zeta", "--s-re", "2", "--tau1", "0", "--tau2", "1", "--v0", "1", "--route", "direct",
        "--format", "csv",
    ]);
    let get = |o: &Output| -> f64 {
        stdout(o)
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .nth(7)
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((get(&sub) - get(&dir)).abs() <= 1e-7);
}

#[test]
fn det_large_offset_matches_factored_form() {
    let out = torusdet(&[
        "det", "--tau1", "0", "--tau2", "1", "--v0", "100", "--route", "paper", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let col = |name: &str| -> f64 {
        let i = header.iter().position(|h| *h == name).unwrap();
        row[i].parse().unwrap()
    };
    let det = col("det_paper");
    let psi = col("psi_paper");
    // Factored form: det = V0 exp(-(psi + ln V0)); series part < 1e-9 tails.
    let factored = 100.0 * (-(psi + 100.0_f64.ln())).exp();
    assert!(((det - factored) / det).abs() <= 1e-6);
    let err = col("err_psi_paper");
    assert!(err < 1e-9, "certified series tails {err:e}");
}

#[test]
fn scan_rows_and_consistency() {
    let dir = std::env::temp_dir().join("torusdet_scan_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.csv");
    let out = torusdet(&[
        "scan",
        "--tau1",
        "0:0.5:3",
        "--tau2",
        "1:2:3",
        "--v0",
        "1:1:1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 9, "header + 9 rows");
    let header_cols = lines[0].split(',').count();
    for row in &lines[1..] {
        assert_eq!(row.split(',').count(), header_cols);
        assert!(row.starts_with("torusdet.scan.v1,"));
    }

    // Rows are ordered lexicographically by (tau1, tau2, v0).
    let keys: Vec<(f64, f64, f64)> = lines[1..]
        .iter()
        .map(|r| {
            let f: Vec<&str> = r.split(',').collect();
            (
                f[2].parse().unwrap(),
                f[3].parse().unwrap(),
                f[4].parse().unwrap(),
            )
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(keys, sorted);

    // Scan row for (0, 1, 1) equals cmd_det output for the same spec.
    let det_out = torusdet(&[
        "det", "--tau1", "0", "--tau2", "1", "--v0", "1", "--route", "all", "--format", "csv",
    ]);
    let det_text = stdout(&det_out);
    let det_row: Vec<&str> = det_text.lines().nth(1).unwrap().split(',').collect();
    let scan_row: Vec<&str> = lines[1].split(',').collect();
    // psi_paper .. err columns agree field by field.
    for (scan_idx, det_idx) in (7..19).zip(6..18) {
        assert_eq!(
            scan_row[scan_idx], det_row[det_idx],
            "column {scan_idx} differs between scan and det"
        );
    }

    // Mirrored tau1 values carry equal psi within tolerance.
    let mirror = dir.join("mirror.csv");
    let out = torusdet(&[
        "scan",
        "--tau1",
        "-0.5:0.5:2",
        "--tau2",
        "1:1:1",
        "--v0",
        "1:1:1",
        "--route",
        "oracle",
        "--out",
        mirror.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&mirror).unwrap();
    let rows: Vec<Vec<String>> = text
        .lines()
        .skip(1)
        .map(|r| r.split(',').map(|s| s.to_string()).collect())
        .collect();
    assert_eq!(rows.len(), 2);
    let psi_a: f64 = rows[0][10].parse().unwrap();
    let psi_b: f64 = rows[1][10].parse().unwrap();
    assert!((psi_a - psi_b).abs() <= 1e-8, "{psi_a} vs {psi_b}");
}

#[test]
fn scan_json_round_trips() {
    let dir = std::env::temp_dir().join("torusdet_scan_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.json");
    let out = torusdet(&[
        "scan",
        "--tau1",
        "0:0.5:2",
        "--tau2",
        "1:1:1",
        "--v0",
        "1:1:1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(v["schema"], "torusdet.scan.v1");
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 2);
    for r in records {
        assert_eq!(r["status"], "ok");
        assert!(r["psi_oracle"].as_f64().unwrap().is_finite());
        assert!(r["wall_ms"].as_u64().is_some());
    }
}

#[test]
fn scan_unwritable_path_exits_two() {
    let out = torusdet(&[
        "scan",
        "--tau1",
        "0:0:1",
        "--tau2",
        "1:1:1",
        "--v0",
        "1:1:1",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_rejects_nonpositive_ranges() {
    let out = torusdet(&[
        "scan",
        "--tau1",
        "0:0:1",
        "--tau2",
        "-1:1:2",
        "--v0",
        "1:1:1",
        "--out",
        "/tmp/never-written.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn env_variables_mirror_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_torusdet"))
        .args(["det", "--route", "oracle", "--format", "csv"])
        .env("TORUSDET_TAU1", "0")
        .env("TORUSDET_TAU2", "1")
        .env("TORUSDET_V0", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("torusdet.det.v1,"));
}

#[test]
fn validate_unreachable_tolerance_yields_budget_exit() {
    let out = torusdet(&["validate", "--tol", "1e-16"]);
    // Tightening beyond the evaluation budgets must surface as exit 4 with
    // a partial table, not silently pass.
    assert_eq!(out.status.code(), Some(4), "{}", stdout(&out));
    assert!(!stdout(&out).is_empty());
}

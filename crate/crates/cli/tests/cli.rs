use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_beamsplit");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("BEAMSPLIT_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

/// Runs a JSON command, checks the exit code and the schema, returns the document.
fn json(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    let v = validator();
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
    doc
}

fn column(doc: &Value, name: &str) -> usize {
    doc["columns"]
        .as_array()
        .unwrap()
        .iter()
        .position(|c| c["name"] == name)
        .unwrap()
}

fn real(row: &Value, idx: usize) -> f64 {
    row[idx].as_f64().unwrap()
}

fn amp(row: &Value, idx: usize) -> (f64, f64) {
    (row[idx][0].as_f64().unwrap(), row[idx][1].as_f64().unwrap())
}

#[test]
fn hom_scan_null_and_endpoints() {
    let doc = json(&["hom-scan"], 0);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 51);
    let (tt, fc, fa, fb, jc, ja, jb) = (
        column(&doc, "transmittance"),
        column(&doc, "fock_coincidence"),
        column(&doc, "fock_bunch_a"),
        column(&doc, "fock_bunch_b"),
        column(&doc, "janszky_coincidence"),
        column(&doc, "janszky_bunch_a"),
        column(&doc, "janszky_bunch_b"),
    );
    assert_eq!(real(&rows[0], tt), 0.0);
    assert_eq!(real(&rows[50], tt), 1.0);

    let mid = &rows[25];
    assert_eq!(real(mid, tt), 0.5);
    assert!(real(mid, fc) <= 1e-12);
    assert!(real(mid, jc) <= 1e-10);
    for idx in [fa, fb, ja, jb] {
        assert!((real(mid, idx) - 0.5).abs() < 1e-10);
    }
    assert!((real(&rows[50], fc) - 1.0).abs() < 1e-12);
    assert!((real(&rows[50], jc) - 1.0).abs() < 1e-10);
    for row in rows {
        let t2 = real(row, tt);
        // |t² + r²|² with r = i√(1 − |t|²).
        let want = (2.0 * t2 - 1.0).powi(2);
        assert!((real(row, fc) - want).abs() < 1e-12);
    }
}

#[test]
fn compare_single_photons_agree() {
    let doc = json(&["compare", "--fock", "1", "1", "--balanced"], 0);
    assert!(doc["summary"]["max_abs_diff"].as_f64().unwrap() < 1e-10);
    assert_eq!(doc["status"], "pass");
}

fn coherent_oracle(alpha: (f64, f64), n: usize) -> Vec<(f64, f64)> {
    // e^{-|α|²/2} αⁿ/√n!, by direct recurrence.
    let norm = (-(alpha.0 * alpha.0 + alpha.1 * alpha.1) / 2.0).exp();
    let mut out = vec![(norm, 0.0)];
    for k in 1..=n {
        let (re, im) = out[k - 1];
        let s = (k as f64).sqrt();
        out.push((
            (re * alpha.0 - im * alpha.1) / s,
            (re * alpha.1 + im * alpha.0) / s,
        ));
    }
    out
}

#[test]
fn compare_coherent_matches_relabelled_product() {
    // t = 0.6, r = 0.8i; α = 1, β = i.
    let doc = json(
        &[
            "compare",
            "--coherent",
            "1",
            "0",
            "0",
            "1",
            "--bs",
            "0.6",
            "0",
            "0",
            "0.8",
        ],
        0,
    );
    let (t, r) = ((0.6, 0.0), (0.0, 0.8));
    let mul = |x: (f64, f64), y: (f64, f64)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
    let add = |x: (f64, f64), y: (f64, f64)| (x.0 + y.0, x.1 + y.1);
    let (alpha, beta) = ((1.0, 0.0), (0.0, 1.0));
    let a_out = add(mul(t, alpha), mul(r, beta));
    let b_out = add(mul(t, beta), mul(r, alpha));
    let n_max = doc["parameters"]["n_max"].as_u64().unwrap() as usize;
    let (ca, cb) = (coherent_oracle(a_out, n_max), coherent_oracle(b_out, n_max));
    let (j, k, f, z) = (
        column(&doc, "j"),
        column(&doc, "k"),
        column(&doc, "fock"),
        column(&doc, "janszky"),
    );
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), (n_max + 1) * (n_max + 2) / 2);
    for row in rows {
        let want = mul(
            ca[row[j].as_u64().unwrap() as usize],
            cb[row[k].as_u64().unwrap() as usize],
        );
        for idx in [f, z] {
            let got = amp(row, idx);
            assert!((got.0 - want.0).hypot(got.1 - want.1) < 1e-10, "{row}");
        }
    }
}

#[test]
fn malformed_splitter_is_a_usage_error() {
    let out = run(&["compare", "--fock", "1", "1", "--bs", "0.8", "0", "0.6", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NonUnitary"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two_and_help_exits_zero() {
    assert_eq!(run(&["compare", "--balanced"]).status.code(), Some(2));
    assert_eq!(
        run(&["compare", "--fock", "1", "1", "--bs", "1", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "compare",
            "--fock",
            "1",
            "1",
            "--balanced",
            "--bs",
            "1",
            "0",
            "0",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["hom-scan", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["hom-scan", "--points", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["squeeze-interfere", "--balanced", "--s", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn tolerance_failure_exits_one_and_still_reports() {
    let doc = json(
        &[
            "compare",
            "--squeezed",
            "--balanced",
            "--s",
            "0.8",
            "--nodes",
            "4",
        ],
        1,
    );
    assert_eq!(doc["status"], "fail");
    assert!(doc["summary"]["max_abs_diff"].as_f64().unwrap() > 1e-8);
}

#[test]
fn squeeze_interfere_product_and_two_mode_rows() {
    let s: f64 = 0.4;
    let doc = json(
        &["squeeze-interfere", "--balanced", "--s", "0.4", "--points", "3"],
        0,
    );
    let rows = doc["rows"].as_array().unwrap();
    let (phi, fs, fe, js, je, fid) = (
        column(&doc, "phi"),
        column(&doc, "fock_sigma_max"),
        column(&doc, "fock_entropy"),
        column(&doc, "janszky_sigma_max"),
        column(&doc, "janszky_entropy"),
        column(&doc, "fidelity"),
    );
    assert_eq!(real(&rows[1], phi), std::f64::consts::PI);
    assert!(real(&rows[1], fs) >= 1.0 - 1e-6);
    assert!(real(&rows[1], js) >= 1.0 - 1e-6);

    // σ_n = sech s · tanhⁿ s, so σ_max = sech s and the entropy is closed-form.
    let (c2, s2) = (s.cosh().powi(2), s.sinh().powi(2));
    let entropy = c2 * c2.ln() - s2 * s2.ln();
    for row in [&rows[0], &rows[2]] {
        for (sig, ent) in [(fs, fe), (js, je)] {
            assert!((real(row, sig) - 1.0 / s.cosh()).abs() < 1e-6);
            assert!((real(row, ent) - entropy).abs() < 1e-6);
        }
    }
    for row in rows {
        assert!(real(row, fid) >= 1.0 - 1e-8);
    }
}

#[test]
fn weak_squeezing_has_vanishing_entropy() {
    let doc = json(
        &["squeeze-interfere", "--balanced", "--s", "0.001", "--points", "5"],
        0,
    );
    let (fe, je) = (column(&doc, "fock_entropy"), column(&doc, "janszky_entropy"));
    for row in doc["rows"].as_array().unwrap() {
        assert!(real(row, fe) < 1e-4 && real(row, je) < 1e-4);
    }
}

#[test]
fn synth_check_passes_with_defaults() {
    let doc = json(&["synth-check"], 0);
    let path = column(&doc, "path");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.iter().filter(|r| r[path] == "line").count(), 4);
    assert!(rows.iter().filter(|r| r[path] == "circle").count() >= 7 * 2);
    assert_eq!(doc["summary"]["odd_max_abs"].as_f64(), Some(0.0));
}

#[test]
fn json_numbers_carry_seventeen_digits() {
    let out = run(&["compare", "--fock", "1", "0", "--balanced"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"tolerance\": 1.0000000000000000e-8"), "{text}");
    assert!(text.contains("7.0710678118654757e-1"));
}

#[test]
fn csv_has_header_and_lf_lines() {
    let out = run(&["compare", "--fock", "2", "0", "--balanced", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r') && text.ends_with('\n'));
    let mut rdr = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(str::to_owned).collect();
    assert_eq!(
        header,
        [
            "j",
            "k",
            "fock_re",
            "fock_im",
            "janszky_re",
            "janszky_im",
            "abs_diff"
        ]
    );
    let records: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 6);
    for rec in &records {
        for field in rec.iter().skip(2) {
            field.parse::<f64>().expect("decimal point, no locale separators");
        }
    }
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(BIN)
        .args(["synth-check", "--format", "csv", "--max-n", "2", "--s", "0.3"])
        .env("BEAMSPLIT_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("synth-check.csv")).unwrap();
    assert!(written.starts_with("path,n,radius,s,phi,max_abs_diff,odd_max_abs\n"));

    let explicit = dir.path().join("hom.json");
    let out = Command::new(BIN)
        .args(["hom-scan", "--points", "3", "--output"])
        .arg(&explicit)
        .env("BEAMSPLIT_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&explicit).unwrap()).unwrap();
    assert!(validator().is_valid(&doc));
    assert!(!dir.path().join("hom-scan.json").exists());
}

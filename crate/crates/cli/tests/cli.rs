//! End-to-end tests that drive the compiled binary, covering the exit-code
//! contract, the CSV/JSON formats, determinism, and the round-trip between
//! emitted tables and the closed forms.

use std::process::{Command, Output};

use cvteleport::fidelity::{fidelity_joint, fidelity_single_photon};

fn cvteleport(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvteleport"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = cvteleport(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

/// Split a CSV body into (comments, header, data rows).
fn parse_csv(text: &str) -> (Vec<&str>, Vec<&str>, Vec<Vec<f64>>) {
    let mut comments = Vec::new();
    let mut header = Vec::new();
    let mut rows = Vec::new();
    for line in text.lines() {
        if let Some(comment) = line.strip_prefix('#') {
            assert!(header.is_empty(), "comments are only allowed at the top");
            comments.push(comment.trim());
        } else if header.is_empty() {
            header = line.split(',').collect();
        } else {
            rows.push(
                line.split(',')
                    .map(|cell| cell.parse::<f64>().expect("numeric cell"))
                    .collect(),
            );
        }
    }
    (comments, header, rows)
}

#[test]
fn fidelity_values_match_reference_points() {
    let cases = [
        (vec!["fidelity", "--input", "vacuum", "--q", "0.5", "--gain", "0.5"], 1.0),
        (vec!["fidelity", "--input", "qubit", "--q", "0", "--gain", "1"], 0.125),
        (
            vec!["fidelity", "--input", "coherent", "--alpha", "1,0", "--q", "0.5", "--gain", "1"],
            0.75,
        ),
    ];
    for (args, expected) in cases {
        let text = stdout_of(&args);
        let mut lines = text.lines();
        let formula = lines.next().unwrap();
        assert!(formula.starts_with("# formula:"), "got {formula}");
        let value: f64 = lines.next().unwrap().parse().unwrap();
        assert!((value - expected).abs() < 1e-12, "{args:?} -> {value}");
    }
}

#[test]
fn fidelity_json_schema() {
    let text = stdout_of(&[
        "fidelity", "--input", "photon", "--q", "0.25", "--gain", "0.8", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["config"]["command"], "fidelity");
    let reported = v["fidelity"].as_f64().unwrap();
    assert!((reported - fidelity_single_photon(0.25, 0.8).unwrap()).abs() <= 1e-12);
}

#[test]
fn curve_csv_round_trips_against_closed_form() {
    let text = stdout_of(&[
        "curve", "--input", "photon", "--q", "0.25", "--gain-range", "0:2", "--steps", "51",
    ]);
    let (comments, header, rows) = parse_csv(&text);
    assert!(!comments.is_empty());
    assert_eq!(header, vec!["g", "F"]);
    assert_eq!(rows.len(), 51);
    for row in rows {
        let expected = fidelity_single_photon(0.25, row[0]).unwrap();
        assert!(
            (row[1] - expected).abs() <= 5e-12,
            "g = {}: {} vs {}",
            row[0],
            row[1],
            expected
        );
    }
}

#[test]
fn curve_with_grid_emits_one_block_per_q() {
    let text = stdout_of(&[
        "curve", "--input", "vacuum", "--q-grid", "0:0.8:0.4", "--gain-range", "0:1",
        "--steps", "5",
    ]);
    let (_, header, rows) = parse_csv(&text);
    assert_eq!(header, vec!["q", "g", "F"]);
    assert_eq!(rows.len(), 3 * 5);
    let qs: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(&qs[0..5], &[0.0; 5]);
    assert_eq!(&qs[5..10], &[0.4; 5]);
    assert_eq!(&qs[10..15], &[0.8; 5]);
}

#[test]
fn optimal_gain_matches_reference_values() {
    let text = stdout_of(&["optimal-gain", "--family", "qubit", "--q", "0.5"]);
    let (_, header, rows) = parse_csv(&text);
    assert_eq!(header, vec!["q", "g_opt", "F_opt", "F_unit", "delta_F", "residual"]);
    assert_eq!(rows.len(), 1);
    assert!((rows[0][1] - 0.79).abs() <= 0.005);
    assert!((rows[0][2] - 0.4438).abs() <= 0.001);

    let text = stdout_of(&[
        "optimal-gain", "--family", "coherent", "--alpha-sq", "1", "--q", "0",
    ]);
    let (_, _, rows) = parse_csv(&text);
    assert!((rows[0][1] - 0.544).abs() <= 0.001);

    // vacuum member of the coherent family: g_opt = q exactly
    let text = stdout_of(&[
        "optimal-gain", "--family", "coherent", "--alpha-sq", "0", "--q", "0.3",
    ]);
    let (_, _, rows) = parse_csv(&text);
    assert_eq!(rows[0][1], 0.3);
}

#[test]
fn figure_2b_blocks_peak_at_matched_gain() {
    let text = stdout_of(&["figure", "2b"]);
    let (_, header, rows) = parse_csv(&text);
    assert_eq!(header, vec!["q", "g", "F"]);
    assert_eq!(rows.len(), 5 * 201);
    for q in [0.99, 0.75, 0.5, 0.25, 0.0] {
        let block: Vec<&Vec<f64>> = rows.iter().filter(|r| r[0] == q).collect();
        assert_eq!(block.len(), 201);
        let peak = block
            .iter()
            .fold((0.0f64, f64::MIN), |best, r| if r[2] > best.1 { (r[1], r[2]) } else { best });
        assert!((peak.0 - q).abs() <= 1e-12, "q = {q}: peak at {}", peak.0);
        assert!((peak.1 - 1.0).abs() <= 1e-12, "q = {q}: peak value {}", peak.1);
    }
}

#[test]
fn figure_3_peaks_approach_unit_gain_with_intensity() {
    let text = stdout_of(&["figure", "3"]);
    let (_, header, rows) = parse_csv(&text);
    assert_eq!(header, vec!["alpha_sq", "g", "F"]);
    let peak_gain = |asq: f64| -> f64 {
        rows.iter()
            .filter(|r| r[0] == asq)
            .fold((0.0f64, f64::MIN), |best, r| if r[2] > best.1 { (r[1], r[2]) } else { best })
            .0
    };
    assert!((peak_gain(0.0) - 0.5).abs() <= 1e-12);
    let (g1, g10, g100) = (peak_gain(1.0), peak_gain(10.0), peak_gain(100.0));
    assert!(g1 < g10 && g10 < g100 && g100 < 1.0 + 1e-12, "{g1}, {g10}, {g100}");
}

#[test]
fn figure_6_joint_column_is_the_product() {
    let text = stdout_of(&["figure", "6"]);
    let (_, header, rows) = parse_csv(&text);
    assert_eq!(header, vec!["g", "F_vacuum", "F_single_photon", "F_joint"]);
    for row in rows {
        assert!((row[3] - row[1] * row[2]).abs() <= 1e-12);
    }
}

#[test]
fn figure_8_tracks_the_joint_solver() {
    let text = stdout_of(&["figure", "8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["columns"], serde_json::json!(["q", "g_opt", "F_opt", "F_unit", "delta_F"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 100);
    let first = rows[0].as_array().unwrap();
    assert!((first[1].as_f64().unwrap() - 0.577_350_269).abs() <= 1e-6);
    for row in rows {
        let row = row.as_array().unwrap();
        let (q, g) = (row[0].as_f64().unwrap(), row[1].as_f64().unwrap());
        let f_unit = fidelity_joint(q, 1.0).unwrap();
        assert!((row[3].as_f64().unwrap() - f_unit).abs() <= 1e-12);
        assert!((row[2].as_f64().unwrap() - fidelity_joint(q, g).unwrap()).abs() <= 1e-9);
    }
}

#[test]
fn verify_oracle_suite_exits_clean_and_surfaces_info() {
    let out = cvteleport(&["verify", "--suite", "oracle", "--quad-points", "24", "--dim", "60"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("oracle/vacuum"), "{text}");
    assert!(text.contains("oracle/matrix-path"), "{text}");
    assert!(text.contains("PASS"));
    assert!(text.contains("info:") && text.contains("0.221"), "{text}");
    assert!(text.contains("checks passed"));
}

#[test]
fn identical_configs_give_byte_identical_output() {
    let args = [
        "optimal-gain", "--family", "qubit", "--q-grid", "0:0.9:0.1", "--format", "json",
    ];
    assert_eq!(cvteleport(&args).stdout, cvteleport(&args).stdout);
    let args = ["verify", "--suite", "gradient", "--seed", "7"];
    assert_eq!(cvteleport(&args).stdout, cvteleport(&args).stdout);
}

#[test]
fn output_uses_lf_only_and_writes_files() {
    let dir = std::env::temp_dir().join("cvteleport-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig4.csv");
    let out = cvteleport(&["figure", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let bytes = std::fs::read(&path).unwrap();
    assert!(!bytes.contains(&b'\r'));
    let (_, header, rows) = parse_csv(std::str::from_utf8(&bytes).unwrap());
    assert_eq!(header, vec!["alpha_sq", "g_opt"]);
    assert_eq!(rows.len(), 241);
}

#[test]
fn exit_code_contract() {
    // usage errors -> 2
    let out = cvteleport(&["fidelity", "--input", "vacuum", "--q", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    // parameter errors -> 2 with a message on stderr
    let out = cvteleport(&["fidelity", "--input", "vacuum", "--q", "1.2", "--gain", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    // conflicting input flags -> 2
    let out = cvteleport(&[
        "fidelity", "--input", "photon", "--alpha", "1", "--q", "0.5", "--gain", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // success -> 0
    let out = cvteleport(&["figure", "6", "--steps", "11"]);
    assert_eq!(out.status.code(), Some(0));
}

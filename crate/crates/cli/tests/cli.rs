//! Runs the `algsp` binary and checks its output and exit status.

use std::process::{Command, Output};

use algsp::transforms::{from_csv, generate, TransformSpec};

fn algsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algsp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn transform_csv_round_trips_bit_exact() {
    for spec in [
        "dct2:8",
        "dst7:5",
        "dft1:6",
        "skew-dct4:4:r=1/3",
        "dct2:4:variant=orthogonal",
    ] {
        let out = algsp(&["transform", spec, "--format", "csv"]);
        assert_eq!(out.status.code(), Some(0), "{spec}: {}", stderr(&out));
        let (header, parsed) = from_csv(&stdout(&out)).unwrap();
        let expected = generate(&spec.parse::<TransformSpec>().unwrap()).unwrap();
        assert_eq!(header.n, expected.n());
        assert_eq!(parsed, expected.entries, "{spec}");
    }
}

#[test]
fn dct2_csv_has_cosine_entries() {
    let out = algsp(&["transform", "dct2:8"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("dct2:8,8,"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 8);
    for (k, row) in rows.iter().enumerate() {
        for (l, v) in row.iter().enumerate() {
            let want = (k as f64 * (2 * l + 1) as f64 * std::f64::consts::PI / 16.0).cos();
            assert!((v - want).abs() < 1e-15);
        }
    }
}

#[test]
fn transform_json_has_required_keys() {
    let out = algsp(&["transform", "dst3:4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in ["spec", "entries", "alpha", "scaling"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["entries"].as_array().unwrap().len(), 4);
}

#[test]
fn unknown_transform_lists_families_and_exits_2() {
    let out = algsp(&["transform", "wavelet:8"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("dct[1-8]") && err.contains("qdft"), "{err}");
}

#[test]
fn unknown_model_lists_families_and_exits_2() {
    let out = algsp(&["graph", "wavelet-model:8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("dct[1-8]-model"));
}

#[test]
fn dct2_graph_is_a_path_with_end_loops() {
    let out = algsp(&["graph", "dct2-model:8", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    assert!(dot.starts_with("graph "));
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains(" -- ")).collect();
    assert_eq!(edges.len(), 9);
    assert!(edges.iter().any(|l| l.trim_start().starts_with("0 -- 0")));
    assert!(edges.iter().any(|l| l.trim_start().starts_with("7 -- 7")));
    for i in 0..7 {
        let edge = format!("{i} -- {}", i + 1);
        assert!(
            edges.iter().any(|l| l.trim_start().starts_with(&edge)),
            "{edge}"
        );
    }
}

#[test]
fn shift_matrix_of_time_model_is_cyclic() {
    let out = algsp(&["shift-matrix", "time:3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows: Vec<Vec<f64>> = serde_json::from_value(v["entries"].clone()).unwrap();
    assert_eq!(
        rows,
        vec![
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0]
        ]
    );
}

#[test]
fn extension_of_dct4_model_reflects_with_sign() {
    let out = algsp(&[
        "extension",
        "dct4-model:3",
        "--from",
        "-1",
        "--to",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,b0,b1,b2");
    assert_eq!(lines[1], "-1,1,0,0");
    assert_eq!(lines[5], "3,0,0,-1");
}

#[test]
fn convolution_paths_agree() {
    let out = algsp(&[
        "convolve",
        "dct3-model:5",
        "--filter",
        "1,-1,2",
        "--signal",
        "1,2,3,4,5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("[PASS]"));
}

#[test]
fn convolution_rejects_wrong_signal_length() {
    let out = algsp(&[
        "convolve",
        "dct3-model:5",
        "--filter",
        "1",
        "--signal",
        "1,2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gmrf_on_symmetric_model_has_klt_fourier_transforms() {
    let out = algsp(&[
        "gmrf",
        "dct2-symmetric:6",
        "--scale",
        "0.4",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["case"], "SymPosDef");
    assert_eq!(v["comparison"]["fourier_is_klt"], true);
    assert!(v["consistency_residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn pairing_check_passes_for_all_sixteen() {
    let out = algsp(&["check", "dtt-pairing", "--sizes", "2..12", "--verbose"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    for dtt in ["DCT-1", "DCT-8", "DST-1", "DST-8"] {
        assert!(text.contains(dtt), "{dtt}");
    }
    assert!(text.contains("1/1 suites passed"));
}

#[test]
fn check_by_number_emits_json() {
    let out = algsp(&["check", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["suites"][0]["summary"]["identity"], "chebyshev-exactness");
}

#[test]
fn impossible_tolerance_fails_with_exit_1() {
    let out = algsp(&[
        "check",
        "dtt-pairing",
        "--sizes",
        "4",
        "--tolerance",
        "1e-300",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL]"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(algsp(&["check", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(
        algsp(&["check", "qdft", "--sizes", "2..4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        algsp(&["check", "dtt-pairing", "--sizes", "9..3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        algsp(&["graph", "dct2-model:4", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(algsp(&["frobnicate"]).status.code(), Some(2));
}

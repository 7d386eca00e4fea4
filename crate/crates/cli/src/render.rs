//! Text, CSV and JSON renderings of matrices and reports.

use std::fmt::Write as _;

use algsp::linalg::RMatrix;
use algsp::spectral::Report;
use num_complex::Complex64;
use serde_json::{json, Value};

pub fn matrix_csv(name: &str, m: &RMatrix) -> String {
    let mut out = format!("{name},{}\n", m.nrows());
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_text(m: &RMatrix) -> String {
    let mut out = String::new();
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>10.6}", clean(*v))).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn matrix_json(m: &RMatrix) -> Value {
    Value::Array(
        m.row_iter()
            .map(|row| Value::Array(row.iter().map(|v| json!(v)).collect()))
            .collect(),
    )
}

pub fn complex_json(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|z| json!([z.re, z.im])).collect())
}

pub fn complex_text(z: Complex64) -> String {
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.9}")
    } else {
        format!("{re:.9}{im:+.9}i")
    }
}

fn clean(v: f64) -> f64 {
    if v.abs() < 1e-14 {
        0.0
    } else {
        v
    }
}

pub fn report_line(r: &Report) -> String {
    let mut line = String::new();
    let _ = write!(
        line,
        "[{}] {:<48} residual {:.3e} (tolerance {:.1e})",
        if r.pass { "PASS" } else { "FAIL" },
        r.identity,
        r.residual,
        r.tolerance
    );
    if !r.sizes.is_empty() {
        let _ = write!(line, " sizes {}", sizes_text(&r.sizes));
    }
    line
}

fn sizes_text(sizes: &[usize]) -> String {
    let contiguous = sizes.windows(2).all(|w| w[1] == w[0] + 1);
    match (sizes.first(), sizes.last()) {
        (Some(a), Some(b)) if contiguous && a != b => format!("{a}..{b}"),
        _ => sizes
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(","),
    }
}

//! CSV and JSON serialization of transform matrices.
//!
//! CSV layout: one header record `name,n,variant[,r]`, then one record per
//! matrix row. Real matrices have `n` columns; complex matrices have `2n`
//! columns holding `re,im` pairs. Values are written with 17 significant
//! digits, so parsing restores every entry bit for bit.

use num_complex::Complex64;
use serde_json::{json, Value};

use super::{Family, TransformError, TransformMatrix};
use crate::linalg::CMatrix;

/// Metadata record at the top of a CSV export.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvHeader {
    pub name: String,
    pub n: usize,
    pub variant: String,
    pub r: Option<String>,
}

fn fmt_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn to_csv(t: &TransformMatrix) -> Result<String, TransformError> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    let mut header = vec![
        t.spec.to_string(),
        t.n().to_string(),
        t.spec.variant.to_string(),
    ];
    if matches!(t.spec.family, Family::Skew(_) | Family::InverseSkew(_)) {
        header.push(t.spec.r.to_string());
    }
    let io = |e: csv::Error| TransformError::Format(e.to_string());
    w.write_record(&header).map_err(io)?;
    let complex = !t.is_real();
    for i in 0..t.entries.nrows() {
        let mut row = Vec::with_capacity(t.entries.ncols() * if complex { 2 } else { 1 });
        for j in 0..t.entries.ncols() {
            let z = t.entries[(i, j)];
            row.push(fmt_value(z.re));
            if complex {
                row.push(fmt_value(z.im));
            }
        }
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| TransformError::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| TransformError::Format(e.to_string()))
}

/// Parses CSV produced by [`to_csv`].
pub fn from_csv(text: &str) -> Result<(CsvHeader, CMatrix), TransformError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = rdr.records();
    let bad = |m: &str| TransformError::Format(m.to_string());
    let head = records
        .next()
        .ok_or_else(|| bad("empty input"))?
        .map_err(|e| bad(&e.to_string()))?;
    if head.len() < 3 {
        return Err(bad("header needs name,n,variant"));
    }
    let n: usize = head[1]
        .parse()
        .map_err(|_| bad("header size is not an integer"))?;
    let header = CsvHeader {
        name: head[0].to_string(),
        n,
        variant: head[2].to_string(),
        r: head.get(3).map(str::to_string),
    };
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| bad(&e.to_string()))?;
        let row = rec
            .iter()
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| bad(&e.to_string()))?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(bad(&format!("expected {n} rows, found {}", rows.len())));
    }
    let width = rows[0].len();
    let complex = match width {
        w if w == n => false,
        w if w == 2 * n => true,
        _ => return Err(bad(&format!("row width {width} matches neither n nor 2n"))),
    };
    if rows.iter().any(|r| r.len() != width) {
        return Err(bad("ragged rows"));
    }
    let m = CMatrix::from_fn(n, n, |i, j| {
        if complex {
            Complex64::new(rows[i][2 * j], rows[i][2 * j + 1])
        } else {
            Complex64::new(rows[i][j], 0.0)
        }
    });
    Ok((header, m))
}

fn matrix_json(m: &CMatrix, complex: bool) -> Value {
    let rows: Vec<Value> = (0..m.nrows())
        .map(|i| {
            let row: Vec<Value> = (0..m.ncols())
                .map(|j| {
                    let z = m[(i, j)];
                    if complex {
                        json!([z.re, z.im])
                    } else {
                        json!(z.re)
                    }
                })
                .collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}

/// `{spec, n, variant, complex, entries, alpha, scaling}`; complex values are `[re, im]` pairs.
pub fn to_json(t: &TransformMatrix) -> Value {
    let complex = !t.is_real();
    let alpha = t
        .alpha
        .as_ref()
        .map(|a| a.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>());
    json!({
        "spec": t.spec.to_string(),
        "n": t.n(),
        "variant": t.spec.variant.to_string(),
        "complex": complex,
        "entries": matrix_json(&t.entries, complex),
        "alpha": alpha,
        "scaling": t.scaling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::generate;

    #[test]
    fn csv_round_trip_is_bit_exact() {
        for text in [
            "dct2:8",
            "dft2:5",
            "skew-dct4:3:r=1/3",
            "dst7:6:variant=orthogonal",
        ] {
            let t = generate(&text.parse().unwrap()).unwrap();
            let csv = to_csv(&t).unwrap();
            let (header, m) = from_csv(&csv).unwrap();
            assert_eq!(header.n, t.n());
            assert_eq!(m, t.entries, "{text}");
        }
    }

    #[test]
    fn complex_csv_has_pairs() {
        let t = generate(&"dft:3".parse().unwrap()).unwrap();
        let csv = to_csv(&t).unwrap();
        let second = csv.lines().nth(1).unwrap();
        assert_eq!(second.split(',').count(), 6);
    }

    #[test]
    fn json_fields() {
        let t = generate(&"dct3:4".parse().unwrap()).unwrap();
        let v = to_json(&t);
        assert_eq!(v["n"], 4);
        assert_eq!(v["entries"].as_array().unwrap().len(), 4);
        assert_eq!(v["alpha"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn malformed_csv() {
        assert!(from_csv("").is_err());
        assert!(from_csv("dct2:2,2,unscaled\n1,2\n").is_err());
        assert!(from_csv("dct2:2,2,unscaled\n1,2,3\n4,5,6\n").is_err());
    }
}

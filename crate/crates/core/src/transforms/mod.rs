//! Generation of every finite transform matrix: DFTs, real DFTs, the QDFT, the
//! sixteen DTTs in three variants, skew DTTs, orthogonal-polynomial transforms,
//! Vandermonde matrices and tensor products.

mod dft;
mod dtt;
mod export;
mod gnn;
mod skew;
mod spec;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, to_complex, CMatrix, LinalgError};
use crate::model::{ModelCatalog, ModelError};
use crate::poly::{ChebyshevKind, PolyError, Recurrence};

pub use dft::{
    dft, dft_unitary, dft_zeros, dht, dht_orthogonal, qdft, qdft_blocks, qdft_exact,
    qdft_recursive, rdft, rdft_orthogonal, xshape_pattern,
};
pub use dtt::{Dtt, Trig};
pub use export::{from_csv, to_csv, to_json, CsvHeader};
pub use gnn::{dct1_orthogonalized, gnn_transform, GnnTransform};
pub use skew::{
    inverse_skew, inverse_skew_base, skew_base, skew_dtt, skew_fractions, skew_name,
    skew_polynomial, skew_scaling, skew_translation, skew_translation_inverse_c3,
};
pub use spec::{Family, TransformSpec, Variant, FAMILY_NAMES};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum TransformError {
    #[error("unknown transform family '{0}'; valid families: {families}", families = FAMILY_NAMES.join(", "))]
    UnknownFamily(String),

    #[error("invalid transform type '{0}'")]
    InvalidType(String),

    #[error("{name} of size {n} is not defined: {reason}")]
    InvalidSize {
        name: String,
        n: usize,
        reason: String,
    },

    #[error("variant '{variant}' is not available for {name}")]
    InvalidVariant { name: String, variant: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed transform spec '{0}'")]
    Syntax(String),

    #[error(
        "scaling matrix is not diagonal (off-diagonal {off_diagonal:.3e}); the pairing is wrong"
    )]
    PairingMismatch { off_diagonal: f64 },

    #[error("malformed matrix data: {0}")]
    Format(String),

    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A generated matrix with its spec and, when defined, the zeros and scaling.
#[derive(Clone, Debug)]
pub struct TransformMatrix {
    pub spec: TransformSpec,
    pub entries: CMatrix,
    pub alpha: Option<Vec<Complex64>>,
    pub scaling: Option<Vec<f64>>,
}

impl TransformMatrix {
    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn is_real(&self) -> bool {
        linalg::max_imag(&self.entries) == 0.0
    }

    pub fn condition_number(&self) -> f64 {
        linalg::condition_number(&self.entries)
    }
}

fn real(m: crate::linalg::RMatrix) -> CMatrix {
    to_complex(&m)
}

fn unsupported(spec: &TransformSpec) -> TransformError {
    TransformError::InvalidVariant {
        name: spec.family_name(),
        variant: spec.variant.to_string(),
    }
}

fn real_alpha(z: Vec<f64>) -> Option<Vec<Complex64>> {
    Some(z.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
}

/// Builds the matrix described by `spec`.
pub fn generate(spec: &TransformSpec) -> Result<TransformMatrix, TransformError> {
    let n = spec.n;
    let t = spec.ty;
    let mut alpha = None;
    let mut scaling = None;
    let entries = match &spec.family {
        Family::Dft => {
            alpha = Some(dft_zeros(t, n));
            match spec.variant {
                Variant::Unscaled => dft(t, n)?,
                Variant::Unitary | Variant::Orthogonal => dft_unitary(t, n)?,
                Variant::Polynomial => dft(if t <= 2 { 1 } else { 3 }, n)?,
            }
        }
        Family::Rdft => match spec.variant {
            Variant::Unscaled => real(rdft(t, n)?),
            Variant::Orthogonal | Variant::Unitary => real(rdft_orthogonal(t, n)?),
            Variant::Polynomial => return Err(unsupported(spec)),
        },
        Family::Dht => match spec.variant {
            Variant::Unscaled => real(dht(t, n)?),
            Variant::Orthogonal | Variant::Unitary => real(dht_orthogonal(t, n)?),
            Variant::Polynomial => return Err(unsupported(spec)),
        },
        Family::Qdft => match spec.variant {
            Variant::Unscaled => qdft(n)?,
            _ => return Err(unsupported(spec)),
        },
        Family::Dtt(trig) => {
            let dtt = Dtt { trig: *trig, ty: t };
            dtt.check_size(n)?;
            alpha = real_alpha(dtt.zeros(n));
            scaling = Some(dtt.scaling(n));
            match spec.variant {
                Variant::Unscaled => real(dtt.unscaled(n)?),
                Variant::Orthogonal | Variant::Unitary => real(dtt.orthogonal(n)?),
                Variant::Polynomial => ModelCatalog::dtt(dtt, n)?.polynomial_transform()?,
            }
        }
        Family::Skew(kind) => {
            let r = &spec.r;
            alpha = Some(ModelCatalog::skew(*kind, n, r)?.zeros());
            scaling = Some(skew_scaling(*kind, n, r));
            match spec.variant {
                Variant::Unscaled => real(skew_dtt(*kind, n, r)?),
                Variant::Polynomial => real(skew_polynomial(*kind, n, r)?),
                _ => return Err(unsupported(spec)),
            }
        }
        Family::InverseSkew(kind) => match spec.variant {
            Variant::Unscaled => real(inverse_skew(*kind, n, &spec.r)?),
            _ => return Err(unsupported(spec)),
        },
        Family::Gnn => {
            let rec = spec.recurrence(n + 1)?;
            let g = gnn_transform(&rec, n)?;
            alpha = real_alpha(g.zeros.clone());
            match spec.variant {
                Variant::Polynomial | Variant::Unscaled => real(g.polynomial),
                Variant::Orthogonal | Variant::Unitary => real(g.orthogonal()),
            }
        }
        Family::Vandermonde => {
            let nodes: Vec<Complex64> = match &spec.nodes {
                Some(v) => v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
                None => dft_zeros(1, n),
            };
            if nodes.len() != n {
                return Err(TransformError::InvalidParameter(format!(
                    "{} nodes given for size {n}",
                    nodes.len()
                )));
            }
            alpha = Some(nodes.clone());
            CMatrix::from_fn(n, n, |k, l| nodes[k].powu(l as u32))
        }
        Family::Tensor(parts) => {
            let mut out = CMatrix::identity(1, 1);
            for part in parts {
                out = linalg::kron(&out, &generate(part)?.entries);
            }
            out
        }
    };
    Ok(TransformMatrix {
        spec: spec.clone(),
        entries,
        alpha,
        scaling,
    })
}

/// Kronecker product of two transforms.
pub fn tensor(a: &TransformMatrix, b: &TransformMatrix) -> TransformMatrix {
    TransformMatrix {
        spec: TransformSpec::tensor(vec![a.spec.clone(), b.spec.clone()]),
        entries: linalg::kron(&a.entries, &b.entries),
        alpha: None,
        scaling: None,
    }
}

/// Recovers the diagonal `D = dtt·poly⁻¹`, failing when `D` is not diagonal.
pub fn derive_scaling(dtt: &CMatrix, poly: &CMatrix) -> Result<Vec<Complex64>, TransformError> {
    if dtt.shape() != poly.shape() {
        return Err(LinalgError::Dimension("scaling needs equal shapes".into()).into());
    }
    let d = dtt * linalg::inverse(poly)?;
    let scale = linalg::max_abs(&d).max(f64::MIN_POSITIVE);
    let off = linalg::off_diag_max(&d);
    if off > 1e-8 * scale {
        return Err(TransformError::PairingMismatch { off_diagonal: off });
    }
    Ok(linalg::diagonal(&d))
}

/// The validated (basis, boundary) pairing of all sixteen DTTs as text rows.
pub fn pairing_table() -> Vec<(String, ChebyshevKind, String)> {
    Dtt::all()
        .into_iter()
        .map(|d| {
            let (kind, form) = d.pairing();
            (d.name(), kind, form.label().to_string())
        })
        .collect()
}

impl TransformSpec {
    /// Recurrence for the GNN family, valid up to `P_len`.
    pub fn recurrence(&self, len: usize) -> Result<Recurrence, TransformError> {
        let name = self.poly.as_deref().unwrap_or("legendre");
        Recurrence::named(name, len).ok_or_else(|| {
            TransformError::InvalidParameter(format!(
                "unknown recurrence '{name}' (expected legendre, chebyshev-t/u/v/w)"
            ))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dct2_poly_scaling_is_diagonal() {
        for n in 2..=8 {
            let spec: TransformSpec = format!("dct2:{n}").parse().unwrap();
            let unscaled = generate(&spec).unwrap();
            let poly = generate(&spec.with_variant(Variant::Polynomial)).unwrap();
            let d = derive_scaling(&unscaled.entries, &poly.entries).unwrap();
            for (k, v) in d.iter().enumerate() {
                let expect = crate::trig::cos_pi(k as i128, 2 * n as i128);
                assert!((v.re - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn wrong_pairing_detected() {
        let a = generate(&"dct2:5".parse().unwrap()).unwrap();
        let b = generate(&"dct3:5:variant=polynomial".parse().unwrap()).unwrap();
        assert!(matches!(
            derive_scaling(&a.entries, &b.entries),
            Err(TransformError::PairingMismatch { .. })
        ));
    }

    #[test]
    fn tensor_of_dft2() {
        let f = generate(&"dft:2".parse().unwrap()).unwrap();
        let t = tensor(&f, &f);
        assert_eq!(t.n(), 4);
        for z in t.entries.iter() {
            assert!((z.re.abs() - 1.0).abs() < 1e-15 && z.im.abs() < 1e-15);
        }
    }
}

//! Orthogonal polynomial transforms for models built from three-term recurrences.

use super::TransformError;
use crate::linalg::RMatrix;
use crate::model::ModelCatalog;
use crate::poly::{Recurrence, Scalar};

/// Polynomial transform together with the diagonals that orthogonalize it.
#[derive(Clone, Debug)]
pub struct GnnTransform {
    /// `[P_ℓ(α_k)]`, zeros descending.
    pub polynomial: RMatrix,
    /// Row weights `D`.
    pub d: Vec<f64>,
    /// Column weights `E = diag(1/μ_ℓ)`, normalized to `μ_0 = 1`.
    pub e: Vec<f64>,
    pub zeros: Vec<f64>,
}

impl GnnTransform {
    /// `√D · P · √E`.
    pub fn orthogonal(&self) -> RMatrix {
        let n = self.polynomial.nrows();
        RMatrix::from_fn(n, n, |k, l| {
            self.d[k].sqrt() * self.polynomial[(k, l)] * self.e[l].sqrt()
        })
    }
}

/// Builds `P`, `D`, `E` from the recurrence.
///
/// With `β_k` the leading coefficient of `P_k` and `μ_k` the norms,
/// `D = c_n⁻¹·diag(1/(P_{n−1}(α_k)·P_n′(α_k)))` where `c_n = β_{n−1}/(β_n·μ_{n−1})`.
pub fn gnn_transform(rec: &Recurrence, n: usize) -> Result<GnnTransform, TransformError> {
    if n == 0 {
        return Err(TransformError::InvalidSize {
            name: "GNN".into(),
            n,
            reason: "requires n >= 1".into(),
        });
    }
    let model = ModelCatalog::gnn(rec, n)?;
    let polys = rec.polynomials(n)?;
    let mu = rec.norm_ratios(n)?;
    let zeros: Vec<f64> = model.zeros().iter().map(|z| z.re).collect();
    let polynomial = RMatrix::from_fn(n, n, |k, l| polys[l].eval_f64(zeros[k]));
    let lead = |k: usize| polys[k].leading().map(Scalar::to_f64).unwrap_or(1.0);
    let c_n = lead(n - 1) / lead(n) / mu[n - 1].to_f64();
    let deriv = polys[n].derivative();
    let d = zeros
        .iter()
        .map(|&a| 1.0 / (c_n * polys[n - 1].eval_f64(a) * deriv.eval_f64(a)))
        .collect::<Vec<_>>();
    if let Some(bad) = d.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(TransformError::InvalidParameter(format!(
            "row weight {bad} is not positive; the recurrence admits no positive weight"
        )));
    }
    let e = mu.iter().map(|m| 1.0 / m.to_f64()).collect();
    Ok(GnnTransform {
        polynomial,
        d,
        e,
        zeros,
    })
}

/// `DCT-1_n` orthogonalized by `D = diag(1/(2(n−1)), 1/(n−1), …, 1/(2(n−1)))`, `E = diag(1, 2, …, 2, 1)`.
pub fn dct1_orthogonalized(n: usize) -> Result<RMatrix, TransformError> {
    let m = super::Dtt::dct(1).unscaled(n)?;
    let nm1 = (n - 1) as f64;
    let edge = |i: usize| i == 0 || i + 1 == n;
    Ok(RMatrix::from_fn(n, n, |k, l| {
        let d: f64 = if edge(k) {
            1.0 / (2.0 * nm1)
        } else {
            1.0 / nm1
        };
        let e: f64 = if edge(l) { 1.0 } else { 2.0 };
        d.sqrt() * m[(k, l)] * e.sqrt()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_real;
    use crate::poly::ChebyshevKind;

    fn residual(m: &RMatrix) -> f64 {
        let n = m.nrows();
        max_abs_real(&(m * m.transpose() - RMatrix::identity(n, n)))
    }

    #[test]
    fn chebyshev_t_orthogonal() {
        let rec = Recurrence::chebyshev(ChebyshevKind::T, 8);
        let t = gnn_transform(&rec, 4).unwrap();
        assert!(residual(&t.orthogonal()) < 1e-10);
    }

    #[test]
    fn legendre_and_u_orthogonal() {
        for n in 1..=12 {
            let t = gnn_transform(&Recurrence::legendre(n + 1), n).unwrap();
            assert!(residual(&t.orthogonal()) < 1e-8, "legendre {n}");
            let u = gnn_transform(&Recurrence::chebyshev(ChebyshevKind::U, n + 1), n).unwrap();
            assert!(residual(&u.orthogonal()) < 1e-8, "U {n}");
        }
    }

    #[test]
    fn dct1_construction() {
        for n in 2..=16 {
            assert!(residual(&dct1_orthogonalized(n).unwrap()) < 1e-9);
        }
    }
}

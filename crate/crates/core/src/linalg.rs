//! Dense matrix helpers shared by the numeric layers.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

pub type CMatrix = DMatrix<Complex64>;
pub type RMatrix = DMatrix<f64>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is singular to working precision (condition estimate {0:.3e})")]
    Singular(f64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn to_complex(m: &RMatrix) -> CMatrix {
    m.map(c)
}

pub fn real_part(m: &CMatrix) -> RMatrix {
    m.map(|z| z.re)
}

/// Largest imaginary magnitude.
pub fn max_imag(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_real(m: &RMatrix) -> f64 {
    m.iter().map(|z| z.abs()).fold(0.0, f64::max)
}

/// Largest magnitude strictly off the main diagonal.
pub fn off_diag_max(m: &CMatrix) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                best = best.max(m[(i, j)].norm());
            }
        }
    }
    best
}

pub fn diagonal(m: &CMatrix) -> Vec<Complex64> {
    (0..m.nrows().min(m.ncols())).map(|i| m[(i, i)]).collect()
}

pub fn diag_matrix(d: &[Complex64]) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d))
}

pub fn diag_real(d: &[f64]) -> RMatrix {
    RMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d))
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// 2-norm condition number; infinite for rank-deficient input.
pub fn condition_number(m: &CMatrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Numeric rank with singular-value cutoff `rel_tol · σ_max`.
pub fn rank(m: &CMatrix, rel_tol: f64) -> usize {
    let s = singular_values(m);
    let Some(&top) = s.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&v| v > rel_tol * top).count()
}

/// Inverse via partial-pivot LU, refusing matrices with condition number above `1e14`.
pub fn inverse(m: &CMatrix) -> Result<CMatrix, LinalgError> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::Dimension(format!(
            "cannot invert a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let cond = condition_number(m);
    if !cond.is_finite() || cond > 1e14 {
        return Err(LinalgError::Singular(cond));
    }
    m.clone()
        .lu()
        .try_inverse()
        .ok_or(LinalgError::Singular(cond))
}

pub fn inverse_real(m: &RMatrix) -> Result<RMatrix, LinalgError> {
    inverse(&to_complex(m)).map(|inv| real_part(&inv))
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Block diagonal `a ⊕ b`.
pub fn direct_sum(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = CMatrix::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// The reversal permutation `J_n`.
pub fn reversal(n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| if i + j + 1 == n { c(1.0) } else { c(0.0) })
}

/// `max |a − b|` entrywise.
pub fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in residual");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `‖M·Mᴴ − I‖_max`.
pub fn unitarity_residual(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_diff(&(m * m.adjoint()), &identity(n))
}

pub fn is_symmetric(m: &RMatrix, tol: f64) -> bool {
    m.nrows() == m.ncols() && max_abs_real(&(m - m.transpose())) <= tol
}

/// Eigenvalues of a general real or complex square matrix (complex Schur form).
///
/// When the Schur iteration stalls, as it does for even cyclic shifts, the
/// eigenvalues are taken from `A + cI` for a few fixed complex shifts `c`.
pub fn eigenvalues(m: &CMatrix) -> Vec<Complex64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let scale = max_abs(m).max(1.0);
    let shifts = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.113, 0.071),
        Complex64::new(-0.237, 0.149),
        Complex64::new(0.31, -0.193),
    ];
    for shift in shifts {
        let c = shift * scale;
        let shifted = m + CMatrix::identity(m.nrows(), m.ncols()) * c;
        if let Some(values) = shifted
            .try_schur(1e-14, 10_000)
            .and_then(|s| s.eigenvalues())
        {
            return values.iter().map(|v| v - c).collect();
        }
    }
    Vec::new()
}

/// Coefficients (ascending) of `∏ (x − λ_k)`.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = vec![c(1.0)];
    for &r in roots {
        let mut next = vec![c(0.0); coeffs.len() + 1];
        for (i, &a) in coeffs.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        coeffs = next;
    }
    coeffs
}

/// Largest principal angle (radians) between the row spaces of `a` and `b`.
pub fn subspace_angle(a: &CMatrix, b: &CMatrix) -> f64 {
    let qa = orthonormal_rows(a);
    let qb = orthonormal_rows(b);
    if qa.nrows() != qb.nrows() {
        return std::f64::consts::FRAC_PI_2;
    }
    if qa.nrows() == 0 {
        return 0.0;
    }
    let cross = &qa * qb.adjoint();
    let smallest = singular_values(&cross)
        .last()
        .copied()
        .unwrap_or(0.0)
        .min(1.0);
    smallest.acos()
}

fn orthonormal_rows(m: &CMatrix) -> CMatrix {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > 1e-10 * top)
        .collect();
    CMatrix::from_fn(keep.len(), m.ncols(), |i, j| v_t[(keep[i], j)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_singular() {
        let m = CMatrix::from_row_slice(2, 2, &[c(2.0), c(1.0), c(1.0), c(1.0)]);
        let inv = inverse(&m).unwrap();
        assert!(max_diff(&(&m * &inv), &identity(2)) < 1e-14);
        let s = CMatrix::from_row_slice(2, 2, &[c(1.0), c(2.0), c(2.0), c(4.0)]);
        assert!(matches!(inverse(&s), Err(LinalgError::Singular(_))));
    }

    #[test]
    fn kron_and_direct_sum_shapes() {
        let a = identity(2);
        let b = reversal(3);
        assert_eq!(kron(&a, &b).shape(), (6, 6));
        let d = direct_sum(&a, &b);
        assert_eq!(d.shape(), (5, 5));
        assert_eq!(d[(2, 4)], c(1.0));
        assert_eq!(d[(0, 2)], c(0.0));
    }

    #[test]
    fn roots_to_coefficients() {
        let coeffs = poly_from_roots(&[c(1.0), c(-1.0)]);
        assert!((coeffs[0] - c(-1.0)).norm() < 1e-15);
        assert!(coeffs[1].norm() < 1e-15);
        assert!((coeffs[2] - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn eigenvalues_of_rotation() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0), c(-1.0), c(1.0), c(0.0)]);
        let mut ev = eigenvalues(&m);
        ev.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((ev[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn subspace_angle_detects_equal_spaces() {
        let a = CMatrix::from_row_slice(1, 2, &[c(1.0), c(1.0)]);
        let b = CMatrix::from_row_slice(1, 2, &[c(-2.0), c(-2.0)]);
        assert!(subspace_angle(&a, &b) < 1e-7);
        let e = CMatrix::from_row_slice(1, 2, &[c(1.0), c(-1.0)]);
        assert!(subspace_angle(&a, &e) > 1.5);
    }
}

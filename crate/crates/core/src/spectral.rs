//! Chinese-remainder base changes, diagonalization residuals, frequency
//! responses, and the two convolution paths.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, CMatrix, LinalgError, RMatrix};
use crate::model::{ModelError, SignalModel};
use crate::poly::{Poly, PolyError, Polynomial, Rational, Scalar};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SpectralError {
    #[error(transparent)]
    Poly(#[from] PolyError),

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("factors {0} and {1} are not coprime")]
    NotCoprime(usize, usize),

    #[error("the product of the factors differs from p by more than a scalar")]
    FactorMismatch,

    #[error("basis has {found} elements but {expected} are required")]
    BasisSize { expected: usize, found: usize },

    #[error("target basis for factor {0} is linearly dependent")]
    DependentBasis(usize),

    #[error("spectral scalar a_{0} is zero")]
    ZeroScalar(usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Outcome of one residual check, serialized as a line of the verification report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub identity: String,
    pub sizes: Vec<usize>,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Report {
    /// A report that passes when `residual < tolerance`; NaN never passes.
    pub fn new(identity: &str, sizes: Vec<usize>, residual: f64, tolerance: f64) -> Self {
        Report {
            identity: identity.to_string(),
            sizes,
            residual,
            tolerance,
            pass: residual < tolerance,
        }
    }

    /// A boolean outcome recorded with residual 0 (pass) or 1 (fail).
    pub fn boolean(identity: &str, sizes: Vec<usize>, ok: bool) -> Self {
        Self::new(identity, sizes, if ok { 0.0 } else { 1.0 }, 0.5)
    }

    /// Worst residual over `parts`, passing only when every part passes.
    pub fn combine(identity: &str, parts: &[Report]) -> Self {
        let mut sizes: Vec<usize> = parts.iter().flat_map(|r| r.sizes.clone()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        let residual = parts.iter().map(|r| r.residual).fold(0.0, f64::max);
        let tolerance = parts
            .iter()
            .map(|r| r.tolerance)
            .fold(f64::INFINITY, f64::min);
        Report {
            identity: identity.to_string(),
            sizes,
            residual,
            tolerance: if tolerance.is_finite() {
                tolerance
            } else {
                0.0
            },
            pass: !parts.is_empty() && parts.iter().all(|r| r.pass),
        }
    }
}

/// Frequencies `α_k` with the spectral basis scalars `a_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub alpha: Vec<Complex64>,
    pub scalars: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(alpha: Vec<Complex64>, scalars: Vec<Complex64>) -> Result<Self, SpectralError> {
        if alpha.len() != scalars.len() {
            return Err(SpectralError::Dimension(format!(
                "{} zeros but {} scalars",
                alpha.len(),
                scalars.len()
            )));
        }
        if let Some(k) = scalars.iter().position(|a| a.norm() == 0.0) {
            return Err(SpectralError::ZeroScalar(k));
        }
        Ok(Spectrum { alpha, scalars })
    }

    /// The zeros of a separable model with `a_k = 1`.
    pub fn of_model<F: Scalar>(model: &SignalModel<F>) -> Result<Self, SpectralError> {
        if !model.is_separable() {
            return Err(ModelError::NotSeparable.into());
        }
        let alpha = model.zeros();
        let ones = vec![linalg::c(1.0); alpha.len()];
        Self::new(alpha, ones)
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }
}

/// Exact solution of `m·x = rhs`, or `None` when `m` is singular.
pub fn solve_exact(m: &DMatrix<Rational>, rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.nrows();
    let mut a = m.clone();
    let mut b = rhs.to_vec();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
        a.swap_rows(col, pivot);
        b.swap(col, pivot);
        let inv = Rational::one() / a[(col, col)].clone();
        for row in 0..n {
            if row == col || a[(row, col)].is_zero() {
                continue;
            }
            let factor = a[(row, col)].clone() * inv.clone();
            for k in col..n {
                let delta = factor.clone() * a[(col, k)].clone();
                a[(row, k)] = a[(row, k)].clone() - delta;
            }
            b[row] = b[row].clone() - factor * b[col].clone();
        }
    }
    Some((0..n).map(|i| b[i].clone() / a[(i, i)].clone()).collect())
}

/// Coordinates of `f` (of degree below `basis.len()`) in `basis`.
fn coordinates_in(f: &Polynomial, basis: &[Polynomial]) -> Option<Vec<Rational>> {
    let d = basis.len();
    let m = DMatrix::from_fn(d, d, |i, k| basis[k].coeff(i));
    let rhs: Vec<Rational> = (0..d).map(|i| f.coeff(i)).collect();
    solve_exact(&m, &rhs)
}

/// Base change of the Chinese remainder map `C[x]/p → ⊕ C[x]/p_i`.
///
/// Column `ℓ` stacks the coordinates of `source[ℓ] mod p_i` in each target
/// basis, in factor order.
pub fn crt_base_change(
    p: &Polynomial,
    source: &[Polynomial],
    factors: &[(Polynomial, Vec<Polynomial>)],
) -> Result<DMatrix<Rational>, SpectralError> {
    let n = p.degree().unwrap_or(0);
    if source.len() != n {
        return Err(SpectralError::BasisSize {
            expected: n,
            found: source.len(),
        });
    }
    let product = factors
        .iter()
        .fold(Polynomial::one(), |acc, (f, _)| &acc * f);
    if product.is_zero() || p.is_zero() || product.monic() != p.monic() {
        return Err(SpectralError::FactorMismatch);
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if Polynomial::gcd(&factors[i].0, &factors[j].0).degree() != Some(0) {
                return Err(SpectralError::NotCoprime(i, j));
            }
        }
    }
    let mut out = DMatrix::from_element(n, n, Rational::zero());
    let mut row = 0;
    for (idx, (factor, target)) in factors.iter().enumerate() {
        let d = factor.degree().unwrap_or(0);
        if target.len() != d {
            return Err(SpectralError::BasisSize {
                expected: d,
                found: target.len(),
            });
        }
        for (l, s) in source.iter().enumerate() {
            let r = s.rem(factor)?;
            let coords = coordinates_in(&r, target).ok_or(SpectralError::DependentBasis(idx))?;
            for (i, v) in coords.into_iter().enumerate() {
                out[(row + i, l)] = v;
            }
        }
        row += d;
    }
    Ok(out)
}

/// Diagonal of `F·A·F⁻¹` and its largest off-diagonal magnitude.
pub fn diag_residual(f: &CMatrix, a: &CMatrix) -> Result<(Vec<Complex64>, f64), SpectralError> {
    if f.shape() != a.shape() {
        return Err(SpectralError::Dimension(format!(
            "F is {:?}, A is {:?}",
            f.shape(),
            a.shape()
        )));
    }
    let conj = f * a * linalg::inverse(f)?;
    Ok((linalg::diagonal(&conj), linalg::off_diag_max(&conj)))
}

/// `(h∘q)(α_k)` in the model's zero order.
pub fn frequency_response<F: Scalar>(
    model: &SignalModel<F>,
    h: &Poly<F>,
) -> Result<Vec<Complex64>, SpectralError> {
    Ok(model.frequency_response(h)?)
}

/// `φ(h)·s` in the model's basis.
pub fn convolve_direct<F: Scalar>(
    model: &SignalModel<F>,
    h: &Poly<F>,
    s: &[Complex64],
) -> Result<Vec<Complex64>, SpectralError> {
    let m = linalg::to_complex(&model.filter_matrix(h)?);
    check_len(m.ncols(), s.len())?;
    let out = m * DVector::from_column_slice(s);
    Ok(out.iter().copied().collect())
}

/// `(D·ℱ)⁻¹((ℱ′·h) ⊙ (ℱ·s))`.
pub fn convolve_spectral(
    f: &CMatrix,
    f_prime: &CMatrix,
    d: &[Complex64],
    h: &[Complex64],
    s: &[Complex64],
) -> Result<Vec<Complex64>, SpectralError> {
    let n = f.nrows();
    check_len(n, d.len())?;
    check_len(f.ncols(), s.len())?;
    check_len(f_prime.ncols(), h.len())?;
    let fs = f * DVector::from_column_slice(s);
    let fh = f_prime * DVector::from_column_slice(h);
    let prod = fs.component_mul(&fh);
    let df = linalg::diag_matrix(d) * f;
    let out = linalg::inverse(&df)? * prod;
    Ok(out.iter().copied().collect())
}

fn check_len(expected: usize, found: usize) -> Result<(), SpectralError> {
    if expected == found {
        Ok(())
    } else {
        Err(SpectralError::Dimension(format!(
            "expected length {expected}, found {found}"
        )))
    }
}

/// Both convolution paths for one `(h, s)` pair.
#[derive(Clone, Debug)]
pub struct Convolution {
    pub direct: Vec<Complex64>,
    pub spectral: Vec<Complex64>,
    pub relative_error: f64,
}

/// Runs both paths with `ℱ = diag(d)·𝒫_{b,α}` and `ℱ′ = diag(d)·[α_k^ℓ]`, so the
/// filter enters through its monomial coefficients.
pub fn convolve<F: Scalar>(
    model: &SignalModel<F>,
    h: &Poly<F>,
    s: &[Complex64],
    d: &[Complex64],
) -> Result<Convolution, SpectralError> {
    let h = h.rem(model.p())?;
    let direct = convolve_direct(model, &h, s)?;
    let p_b = model.polynomial_transform()?;
    let zeros = model.zeros();
    let n = zeros.len();
    check_len(n, d.len())?;
    let dm = linalg::diag_matrix(d);
    let f = &dm * p_b;
    let f_prime = &dm * CMatrix::from_fn(n, n, |k, l| zeros[k].powu(l as u32));
    let coeffs: Vec<Complex64> = (0..n).map(|i| linalg::c(h.coeff(i).to_f64())).collect();
    let spectral = convolve_spectral(&f, &f_prime, d, &coeffs, s)?;
    let scale = direct
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    let err = direct
        .iter()
        .zip(&spectral)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(Convolution {
        direct,
        spectral,
        relative_error: err / scale,
    })
}

/// Largest `|(F·A·F⁻¹)_{ij}|` at positions outside `pattern`.
pub fn xshape_residual(
    f: &CMatrix,
    a: &CMatrix,
    pattern: &[Vec<bool>],
) -> Result<f64, SpectralError> {
    let conj = f * a * linalg::inverse(f)?;
    let mut worst: f64 = 0.0;
    for i in 0..conj.nrows() {
        for j in 0..conj.ncols() {
            let allowed = pattern
                .get(i)
                .and_then(|r| r.get(j))
                .copied()
                .unwrap_or(false);
            if !allowed {
                worst = worst.max(conj[(i, j)].norm());
            }
        }
    }
    Ok(worst)
}

/// Largest magnitude outside the diagonal blocks of sizes `blocks`.
pub fn block_residual(m: &CMatrix, blocks: &[usize]) -> f64 {
    let mut owner = Vec::with_capacity(m.nrows());
    for (b, &size) in blocks.iter().enumerate() {
        owner.extend(std::iter::repeat_n(b, size));
    }
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if owner.get(i) != owner.get(j) || owner.get(i).is_none() {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

/// Distance from `A` to `span{φ(x^k) : k < n}`, with the span's numerical dimension.
pub fn filter_span_residual<F: Scalar>(
    model: &SignalModel<F>,
    a: &RMatrix,
) -> Result<(f64, usize), SpectralError> {
    let n = model.n();
    if a.shape() != (n, n) {
        return Err(SpectralError::Dimension(format!(
            "A is {:?}, model has n = {n}",
            a.shape()
        )));
    }
    let mut columns = Vec::with_capacity(n);
    for k in 0..n {
        let m = model.filter_matrix(&Poly::monomial(k, F::one()))?;
        columns.push(DVector::from_column_slice(m.as_slice()));
    }
    let basis = DMatrix::from_columns(&columns);
    let target = DVector::from_column_slice(a.as_slice());
    let svd = basis.clone().svd(true, true);
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let dim = svd
        .singular_values
        .iter()
        .filter(|&&s| s > 1e-10 * top)
        .count();
    let coef = svd
        .solve(&target, 1e-10 * top)
        .map_err(|e| SpectralError::Dimension(e.to_string()))?;
    let fit = basis * coef;
    let residual = (fit - target).iter().map(|v| v.abs()).fold(0.0, f64::max);
    Ok((residual, dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelCatalog;
    use crate::poly::{cheb_poly, rat, ChebyshevKind};
    use crate::transforms::{dft, Dtt};

    fn x_pow(k: usize) -> Polynomial {
        Polynomial::monomial(k, rat(1, 1))
    }

    #[test]
    fn crt_x4_minus_one_is_dft2_kron_i2() {
        let p = Polynomial::from_i64s(&[-1, 0, 0, 0, 1]);
        let source: Vec<_> = (0..4).map(x_pow).collect();
        let factors = vec![
            (Polynomial::from_i64s(&[-1, 0, 1]), vec![x_pow(0), x_pow(1)]),
            (Polynomial::from_i64s(&[1, 0, 1]), vec![x_pow(0), x_pow(1)]),
        ];
        let b = crt_base_change(&p, &source, &factors).unwrap();
        let expect = [[1, 0, 1, 0], [0, 1, 0, 1], [1, 0, -1, 0], [0, 1, 0, -1]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(b[(i, j)], rat(expect[i][j], 1));
            }
        }
    }

    #[test]
    fn crt_single_factor_is_identity() {
        let p = cheb_poly(ChebyshevKind::T, 4);
        let source: Vec<_> = (0..4).map(|k| cheb_poly(ChebyshevKind::T, k)).collect();
        let b = crt_base_change(&p, &source, &[(p.clone(), source.clone())]).unwrap();
        assert_eq!(b, DMatrix::identity(4, 4).map(|v: i64| rat(v, 1)));
    }

    #[test]
    fn crt_rejects_common_factors() {
        let p = Polynomial::from_i64s(&[1, -2, 1]);
        let lin = Polynomial::from_i64s(&[-1, 1]);
        let err = crt_base_change(
            &p,
            &[x_pow(0), x_pow(1)],
            &[(lin.clone(), vec![x_pow(0)]), (lin, vec![x_pow(0)])],
        );
        assert_eq!(err, Err(SpectralError::NotCoprime(0, 1)));
    }

    #[test]
    fn dft2_diagonalizes_symmetric_two_by_two() {
        let (h0, h1) = (0.7, -1.3);
        let a = CMatrix::from_row_slice(2, 2, &[h0, h1, h1, h0].map(linalg::c));
        let (d, off) = diag_residual(&dft(1, 2).unwrap(), &a).unwrap();
        assert!(off < 1e-14);
        assert!((d[0].re - (h0 + h1)).abs() < 1e-14);
        assert!((d[1].re - (h0 - h1)).abs() < 1e-14);
    }

    #[test]
    fn dct3_diagonalizes_t_shift() {
        let n = 6;
        let model = ModelCatalog::dtt(Dtt::dct(3), n).unwrap();
        let a = linalg::to_complex(&model.shift_matrix().unwrap());
        let f = linalg::to_complex(&Dtt::dct(3).unscaled(n).unwrap());
        let (d, off) = diag_residual(&f, &a).unwrap();
        assert!(off < 1e-12);
        for (k, v) in d.iter().enumerate() {
            let expect = ((k as f64 + 0.5) * std::f64::consts::PI / n as f64).cos();
            assert!((v.re - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn response_of_two_point_model() {
        let model = ModelCatalog::time(2, &rat(1, 1)).unwrap();
        let r = frequency_response(&model, &Polynomial::from_i64s(&[1, 3])).unwrap();
        assert!((r[0].re - 4.0).abs() < 1e-14 && (r[1].re + 2.0).abs() < 1e-14);
    }

    #[test]
    fn alternative_space_response_collapses() {
        let model = ModelCatalog::alternative_space(6, &rat(1, 1)).unwrap();
        let r = frequency_response(&model, &x_pow(1)).unwrap();
        for k in 0..6 {
            let expect = (2.0 * std::f64::consts::PI * k as f64 / 6.0).cos();
            assert!((r[k].re - expect).abs() < 1e-12);
            assert!((r[k] - r[(6 - k) % 6]).norm() < 1e-12);
        }
    }

    #[test]
    fn trivial_filter_leaves_signal() {
        let model = ModelCatalog::dtt(Dtt::dct(2), 5).unwrap();
        let s: Vec<Complex64> = (0..5).map(|i| linalg::c(i as f64 - 1.5)).collect();
        let ones = vec![linalg::c(1.0); 5];
        let out = convolve(&model, &Polynomial::one(), &s, &ones).unwrap();
        assert!(out.relative_error < 1e-12);
        for (a, b) in out.direct.iter().zip(&s) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn block_residual_counts_outside_entries() {
        let mut m = CMatrix::identity(4, 4);
        m[(2, 3)] = linalg::c(5.0);
        assert_eq!(block_residual(&m, &[1, 1, 2]), 0.0);
        m[(0, 3)] = linalg::c(0.25);
        assert_eq!(block_residual(&m, &[1, 1, 2]), 0.25);
    }

    #[test]
    fn spectrum_rejects_zero_scalar() {
        let err = Spectrum::new(vec![linalg::c(1.0)], vec![linalg::c(0.0)]);
        assert_eq!(err, Err(SpectralError::ZeroScalar(0)));
    }
}

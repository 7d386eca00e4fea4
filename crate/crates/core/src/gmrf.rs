//! Gauss-Markov random fields `(I − A)s = ν`: covariances, Karhunen-Loève
//! transforms, normality, and when Fourier transforms and KLTs coincide.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, max_abs_real, CMatrix, LinalgError, RMatrix};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum GmrfError {
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),

    #[error("noise variance must be positive, got {0}")]
    Variance(f64),

    #[error("I − A is rank deficient (smallest singular value {0:.3e})")]
    RankDeficient(f64),

    #[error("covariance is not symmetric (asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which covariance formula applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GmrfCase {
    /// `A` symmetric, `I − A` positive definite: `Σ = σ²(I − A)⁻¹`.
    SymPosDef,
    /// `A` symmetric, `I − A` with negative eigenvalues: `Σ = σ²(I − A)⁻²`.
    SymIndefinite,
    /// `A` not symmetric: `Σ = σ²(I − A)⁻¹(I − Aᵀ)⁻¹`.
    NonSym,
}

#[derive(Clone, Debug)]
pub struct GmrfModel {
    pub a: RMatrix,
    pub sigma2: f64,
    pub case: GmrfCase,
}

const SYMMETRY_TOL: f64 = 1e-12;

fn i_minus(a: &RMatrix) -> RMatrix {
    RMatrix::identity(a.nrows(), a.ncols()) - a
}

impl GmrfModel {
    /// Classifies `A` and checks that `I − A` has full rank.
    pub fn new(a: RMatrix, sigma2: f64) -> Result<Self, GmrfError> {
        if a.nrows() != a.ncols() {
            return Err(GmrfError::NotSquare(a.nrows(), a.ncols()));
        }
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(GmrfError::Variance(sigma2));
        }
        let m = i_minus(&a);
        let sv = m.singular_values();
        let smallest = sv.iter().copied().fold(f64::INFINITY, f64::min);
        let largest = sv.iter().copied().fold(0.0, f64::max);
        if a.nrows() > 0 && smallest <= 1e-12 * largest.max(1.0) {
            return Err(GmrfError::RankDeficient(smallest));
        }
        let scale = max_abs_real(&a).max(1.0);
        let case = if linalg::is_symmetric(&a, SYMMETRY_TOL * scale) {
            let eig = SymmetricEigen::new(m).eigenvalues;
            if eig.iter().all(|&v| v > 0.0) {
                GmrfCase::SymPosDef
            } else {
                GmrfCase::SymIndefinite
            }
        } else {
            GmrfCase::NonSym
        };
        Ok(GmrfModel { a, sigma2, case })
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    /// `Σ_s` for the model's case, symmetric by construction.
    pub fn covariance(&self) -> Result<RMatrix, GmrfError> {
        let inv = linalg::inverse_real(&i_minus(&self.a))?;
        let sigma = match self.case {
            GmrfCase::SymPosDef => {
                let s = &inv * self.sigma2;
                (&s + s.transpose()) * 0.5
            }
            GmrfCase::SymIndefinite => {
                let s = &inv * &inv * self.sigma2;
                (&s + s.transpose()) * 0.5
            }
            GmrfCase::NonSym => &inv * inv.transpose() * self.sigma2,
        };
        Ok(sigma)
    }

    /// Largest deviation from the defining identity of `Σ`:
    /// `Σ(I − A) = σ²I`, `Σ(I − A)² = σ²I`, or `(I − A)Σ(I − Aᵀ) = σ²I`.
    pub fn consistency_residual(&self, sigma: &RMatrix) -> f64 {
        let m = i_minus(&self.a);
        let lhs = match self.case {
            GmrfCase::SymPosDef => sigma * &m,
            GmrfCase::SymIndefinite => sigma * &m * &m,
            GmrfCase::NonSym => &m * sigma * m.transpose(),
        };
        let target = RMatrix::identity(self.n(), self.n()) * self.sigma2;
        max_abs_real(&(lhs - target))
    }
}

/// Whether `m` is symmetric positive definite, by Cholesky.
pub fn is_spd(m: &RMatrix) -> bool {
    linalg::is_symmetric(m, 1e-10 * max_abs_real(m).max(1.0)) && m.clone().cholesky().is_some()
}

/// Eigen-decomposition of a symmetric matrix, eigenvalues descending.
///
/// Rows of the returned matrix are unit eigenvectors, each signed so that its
/// largest-magnitude entry (first one on ties) is positive.
pub fn klt(sigma: &RMatrix) -> Result<(RMatrix, Vec<f64>), GmrfError> {
    if sigma.nrows() != sigma.ncols() {
        return Err(GmrfError::NotSquare(sigma.nrows(), sigma.ncols()));
    }
    let asym = max_abs_real(&(sigma - sigma.transpose()));
    if asym > 1e-10 * max_abs_real(sigma).max(1.0) {
        return Err(GmrfError::NotSymmetric(asym));
    }
    let n = sigma.nrows();
    let (values, vectors) = if linalg::off_diag_max(&linalg::to_complex(sigma)) == 0.0 {
        (
            (0..n).map(|i| sigma[(i, i)]).collect::<Vec<_>>(),
            RMatrix::identity(n, n),
        )
    } else {
        let eig = SymmetricEigen::new(sigma.clone());
        (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    let mut f = RMatrix::zeros(n, n);
    for (row, &idx) in order.iter().enumerate() {
        let v = vectors.column(idx);
        let mut pivot = 0;
        for k in 0..n {
            if v[k].abs() > v[pivot].abs() + 1e-12 {
                pivot = k;
            }
        }
        let sign = if v[pivot] < 0.0 { -1.0 } else { 1.0 };
        for k in 0..n {
            f[(row, k)] = sign * v[k];
        }
    }
    Ok((f, order.iter().map(|&i| values[i]).collect()))
}

/// Largest off-diagonal magnitude of `F·Σ·Fᴴ`.
pub fn klt_residual(f: &CMatrix, sigma: &RMatrix) -> f64 {
    linalg::off_diag_max(&(f * linalg::to_complex(sigma) * f.adjoint()))
}

/// Largest off-diagonal magnitude of `F·A·F⁻¹`, or infinity when `F` is singular.
pub fn fourier_residual(f: &CMatrix, a: &RMatrix) -> f64 {
    match linalg::inverse(f) {
        Ok(inv) => linalg::off_diag_max(&(f * linalg::to_complex(a) * inv)),
        Err(_) => f64::INFINITY,
    }
}

/// Result of testing whether `Aᵀ` is a polynomial in `A`.
#[derive(Clone, Debug, PartialEq)]
pub enum Normality {
    /// `Aᵀ = q(A)` with `q` given by ascending coefficients.
    Normal {
        q: Vec<f64>,
        residual: f64,
    },
    NotNormal {
        commutator: f64,
    },
}

/// `‖AAᵀ − AᵀA‖_max`.
pub fn commutator_norm(a: &RMatrix) -> f64 {
    max_abs_real(&(a * a.transpose() - a.transpose() * a))
}

/// Least-squares `q` with `q(A) ≈ Aᵀ` over the Krylov basis `I, A, …, A^{n−1}`.
pub fn fit_transpose_polynomial(a: &RMatrix) -> (Vec<f64>, f64) {
    let n = a.nrows();
    if n == 0 {
        return (Vec::new(), 0.0);
    }
    let mut power = RMatrix::identity(n, n);
    let mut columns = Vec::with_capacity(n);
    let mut norms = Vec::with_capacity(n);
    for _ in 0..n {
        let norm = max_abs_real(&power).max(f64::MIN_POSITIVE);
        columns.push(DVector::from_column_slice((&power / norm).as_slice()));
        norms.push(norm);
        power = &power * a;
    }
    let basis = DMatrix::from_columns(&columns);
    let target = DVector::from_column_slice(a.transpose().as_slice());
    let svd = basis.clone().svd(true, true);
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let coef = svd
        .solve(&target, 1e-10 * top)
        .unwrap_or_else(|_| DVector::zeros(n));
    let residual = (&basis * &coef - target)
        .iter()
        .map(|v| v.abs())
        .fold(0.0, f64::max);
    let q = coef.iter().zip(&norms).map(|(c, s)| c / s).collect();
    (q, residual)
}

/// Normality test; symmetric inputs return `q = x` directly.
pub fn normality(a: &RMatrix) -> Normality {
    let n = a.nrows();
    let scale = max_abs_real(a).max(1.0);
    let commutator = commutator_norm(a);
    if commutator >= 1e-10 * scale * scale {
        return Normality::NotNormal { commutator };
    }
    if linalg::is_symmetric(a, SYMMETRY_TOL * scale) {
        let mut q = vec![0.0; n.max(2)];
        q[1] = 1.0;
        q.truncate(n.max(1));
        if n == 1 {
            return Normality::Normal {
                q: vec![a[(0, 0)]],
                residual: 0.0,
            };
        }
        return Normality::Normal { q, residual: 0.0 };
    }
    let (q, residual) = fit_transpose_polynomial(a);
    Normality::Normal { q, residual }
}

fn eval(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Distinct values up to a relative tolerance.
fn distinct(values: &[Complex64], tol: f64) -> Vec<Complex64> {
    let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let mut out: Vec<Complex64> = Vec::new();
    for &v in values {
        if out.iter().all(|w| (v - w).norm() > tol * scale) {
            out.push(v);
        }
    }
    out
}

/// Whether `g` takes pairwise different values on `points`.
pub fn injective_on(points: &[Complex64], g: impl Fn(Complex64) -> Complex64) -> bool {
    let images: Vec<Complex64> = points.iter().map(|&z| g(z)).collect();
    let scale = images.iter().map(|v| v.norm()).fold(1.0, f64::max);
    (0..images.len())
        .all(|i| (i + 1..images.len()).all(|j| (images[i] - images[j]).norm() > 1e-8 * scale))
}

/// How far the Fourier transforms of the `A`-generated model and the KLTs agree.
#[derive(Clone, Debug, Serialize)]
pub struct KltComparison {
    pub case: GmrfCase,
    /// Whether the theorems cover this field at all.
    pub in_scope: bool,
    /// Off-diagonal residual of a Fourier transform of the model applied to `Σ`.
    pub fourier_klt_residual: f64,
    /// Every Fourier transform is a KLT (within `1e−8`).
    pub fourier_is_klt: bool,
    /// Every KLT is a Fourier transform.
    pub converse_holds: bool,
    pub detail: String,
}

/// A unitary matrix (rows) diagonalizing a normal `a`.
///
/// For normal `a` the symmetric part `S` and skew part `K` commute, so the
/// eigenvectors of the Hermitian `H = S + i·tK` diagonalize `a` for generic `t`.
/// `H` is decomposed through its real symmetric embedding
/// `[[S, −tK], [tK, S]]`, whose eigenvectors `(u, v)` give `u + iv`; a complex
/// Gram-Schmidt pass keeps one vector per complex dimension.
pub fn unitary_fourier(a: &RMatrix) -> Result<CMatrix, GmrfError> {
    let n = a.nrows();
    let t = std::f64::consts::E / 2.0;
    let sym = (a + a.transpose()) * 0.5;
    let skew = (a - a.transpose()) * (0.5 * t);
    let embed = RMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => sym[(i, j)],
        (true, false) => -skew[(i, j - n)],
        (false, true) => skew[(i - n, j)],
        (false, false) => sym[(i - n, j - n)],
    });
    let eig = SymmetricEigen::new(embed);
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .total_cmp(&eig.eigenvalues[i])
            .then(i.cmp(&j))
    });
    let mut rows: Vec<nalgebra::DVector<Complex64>> = Vec::with_capacity(n);
    for idx in order {
        let col = eig.eigenvectors.column(idx);
        let mut z = nalgebra::DVector::from_fn(n, |k, _| Complex64::new(col[k], col[k + n]));
        for r in &rows {
            let proj = r.dotc(&z);
            z -= r * proj;
        }
        let norm = z.norm();
        if norm > 0.5 {
            rows.push(z / Complex64::new(norm, 0.0));
        }
        if rows.len() == n {
            break;
        }
    }
    if rows.len() != n {
        return Err(GmrfError::Linalg(LinalgError::Dimension(format!(
            "found {} of {n} eigenvectors",
            rows.len()
        ))));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| rows[i][j].conj()))
}

/// Compares Fourier transforms of the model with shift matrix `A` against the KLTs of the field.
pub fn klt_vs_fourier(m: &GmrfModel) -> Result<KltComparison, GmrfError> {
    let sigma = m.covariance()?;
    let eigen: Vec<Complex64> = linalg::eigenvalues(&linalg::to_complex(&m.a));
    let zeros = distinct(&eigen, 1e-8);
    let one = Complex64::new(1.0, 0.0);
    let (f, converse, detail, in_scope) = match m.case {
        GmrfCase::SymPosDef => {
            let (f, _) = klt(&m.a)?;
            (
                linalg::to_complex(&f),
                true,
                "Σ is an injective function of A".to_string(),
                true,
            )
        }
        GmrfCase::SymIndefinite => {
            let (f, _) = klt(&m.a)?;
            let shifted: Vec<Complex64> = zeros.iter().map(|z| one - z).collect();
            let injective = injective_on(&shifted, |z| z * z);
            (
                linalg::to_complex(&f),
                injective,
                format!(
                    "x ↦ x² is {}injective on the zeros of the model generated by I − A",
                    if injective { "" } else { "not " }
                ),
                true,
            )
        }
        GmrfCase::NonSym => match normality(&m.a) {
            Normality::NotNormal { commutator } => {
                return Ok(KltComparison {
                    case: m.case,
                    in_scope: false,
                    fourier_klt_residual: f64::NAN,
                    fourier_is_klt: false,
                    converse_holds: false,
                    detail: format!("A is not normal (commutator {commutator:.3e})"),
                });
            }
            Normality::Normal { q, .. } => {
                let injective = injective_on(&zeros, |z| (one - z) * (one - eval(&q, z)));
                (
                    unitary_fourier(&m.a)?,
                    injective,
                    format!(
                        "(1 − x)(1 − q(x)) is {}injective on the zeros of p",
                        if injective { "" } else { "not " }
                    ),
                    true,
                )
            }
        },
    };
    let scale = max_abs_real(&sigma).max(1.0);
    let residual = klt_residual(&f, &sigma) / scale;
    Ok(KltComparison {
        case: m.case,
        in_scope,
        fourier_klt_residual: residual,
        fourier_is_klt: residual < 1e-8,
        converse_holds: converse,
        detail,
    })
}

/// Why a matrix cannot be normalized to a column-stochastic matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum Infeasible {
    Negative { row: usize, col: usize, value: f64 },
    ZeroColumn(usize),
}

/// Outcome of [`stochastic_normalize`].
#[derive(Clone, Debug, PartialEq)]
pub enum Stochastic {
    Normalized(RMatrix),
    Infeasible(Infeasible),
}

impl Stochastic {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Stochastic::Normalized(_))
    }
}

/// Scales each column of a nonnegative `a` to sum to one.
pub fn stochastic_normalize(a: &RMatrix) -> Stochastic {
    for col in 0..a.ncols() {
        for row in 0..a.nrows() {
            let value = a[(row, col)];
            if value < -1e-12 {
                return Stochastic::Infeasible(Infeasible::Negative { row, col, value });
            }
        }
    }
    let mut out = a.map(|v| v.max(0.0));
    for col in 0..a.ncols() {
        let sum: f64 = out.column(col).sum();
        if sum <= 1e-12 {
            return Stochastic::Infeasible(Infeasible::ZeroColumn(col));
        }
        out.column_mut(col).scale_mut(1.0 / sum);
    }
    Stochastic::Normalized(out)
}

/// `a·P` for the cyclic shift `P` with ones at `(k+1, k)` and `(0, n−1)`.
pub fn cyclic_shift(n: usize, a: f64) -> RMatrix {
    RMatrix::from_fn(n, n, |i, j| if i == (j + 1) % n { a } else { 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelCatalog;
    use crate::transforms::{rdft_orthogonal, Dtt};

    fn space_shift(n: usize) -> RMatrix {
        RMatrix::from_fn(n, n, |i, j| if i.abs_diff(j) == 1 { 0.5 } else { 0.0 })
    }

    #[test]
    fn zero_field_is_white() {
        let m = GmrfModel::new(RMatrix::zeros(4, 4), 2.5).unwrap();
        assert_eq!(m.case, GmrfCase::SymPosDef);
        assert_eq!(m.covariance().unwrap(), RMatrix::identity(4, 4) * 2.5);
    }

    #[test]
    fn three_cases_are_consistent() {
        let sym = GmrfModel::new(space_shift(6) * 0.9, 1.0).unwrap();
        let indef = GmrfModel::new(space_shift(6) * 3.0, 1.0).unwrap();
        let nonsym = GmrfModel::new(cyclic_shift(6, 0.5), 1.0).unwrap();
        assert_eq!(sym.case, GmrfCase::SymPosDef);
        assert_eq!(indef.case, GmrfCase::SymIndefinite);
        assert_eq!(nonsym.case, GmrfCase::NonSym);
        for m in [sym, indef, nonsym] {
            let s = m.covariance().unwrap();
            assert!(is_spd(&s));
            assert!(m.consistency_residual(&s) < 1e-10);
        }
    }

    #[test]
    fn rank_deficient_rejected() {
        let a = RMatrix::identity(3, 3);
        assert!(matches!(
            GmrfModel::new(a, 1.0),
            Err(GmrfError::RankDeficient(_))
        ));
    }

    #[test]
    fn klt_of_identity_is_identity() {
        let (f, v) = klt(&RMatrix::identity(5, 5)).unwrap();
        assert_eq!(f, RMatrix::identity(5, 5));
        assert_eq!(v, vec![1.0; 5]);
    }

    #[test]
    fn klt_diagonalizes_and_orders() {
        let s = GmrfModel::new(space_shift(7) * 0.8, 1.0)
            .unwrap()
            .covariance()
            .unwrap();
        let (f, v) = klt(&s).unwrap();
        assert!(klt_residual(&linalg::to_complex(&f), &s) < 1e-10);
        assert!(v.windows(2).all(|w| w[0] >= w[1]));
        assert!(max_abs_real(&(&f * f.transpose() - RMatrix::identity(7, 7))) < 1e-12);
    }

    #[test]
    fn klt_rejects_asymmetric() {
        assert!(matches!(
            klt(&cyclic_shift(3, 1.0)),
            Err(GmrfError::NotSymmetric(_))
        ));
    }

    #[test]
    fn orthogonal_dct_is_klt_of_symmetric_model() {
        for n in [4, 8] {
            let model = ModelCatalog::dtt_symmetric(Dtt::dct(2), n).unwrap();
            let a = model.shift_matrix().unwrap() * 0.5;
            let s = GmrfModel::new(a, 1.0).unwrap().covariance().unwrap();
            let f = linalg::to_complex(&Dtt::dct(2).orthogonal(n).unwrap());
            assert!(klt_residual(&f, &s) < 1e-10);
        }
    }

    #[test]
    fn normality_examples() {
        let sym = space_shift(5);
        assert_eq!(
            normality(&sym),
            Normality::Normal {
                q: vec![0.0, 1.0, 0.0, 0.0, 0.0],
                residual: 0.0
            }
        );
        match normality(&cyclic_shift(5, 1.0)) {
            Normality::Normal { q, residual } => {
                assert!(residual < 1e-10);
                for (k, c) in q.iter().enumerate() {
                    let expect = if k == 4 { 1.0 } else { 0.0 };
                    assert!((c - expect).abs() < 1e-10);
                }
            }
            other => panic!("cyclic shift reported {other:?}"),
        }
        let jordan = RMatrix::from_fn(4, 4, |i, j| if j == i + 1 { 1.0 } else { 0.0 });
        assert!(matches!(normality(&jordan), Normality::NotNormal { .. }));
        assert!(fit_transpose_polynomial(&jordan).1 > 1e-3);
    }

    #[test]
    fn circulant_counterexample() {
        let n = 6;
        let m = GmrfModel::new(cyclic_shift(n, 0.5), 1.0).unwrap();
        let cmp = klt_vs_fourier(&m).unwrap();
        assert!(cmp.in_scope && cmp.fourier_is_klt && !cmp.converse_holds);
        let r = linalg::to_complex(&rdft_orthogonal(1, n).unwrap());
        let sigma = m.covariance().unwrap();
        assert!(klt_residual(&r, &sigma) < 1e-10);
        assert!(fourier_residual(&r, &m.a) > 1e-3);
    }

    #[test]
    fn indefinite_converse_by_squares() {
        let a = RMatrix::from_diagonal(&DVector::from_vec(vec![-0.9, 0.3, 0.7]));
        let q = nalgebra::Rotation3::from_euler_angles(0.3, -0.2, 0.9);
        let a = q.matrix() * a * q.matrix().transpose();
        let a = RMatrix::from_fn(3, 3, |i, j| a[(i, j)]) * 3.0;
        let m = GmrfModel::new(a, 1.0).unwrap();
        assert_eq!(m.case, GmrfCase::SymIndefinite);
        let cmp = klt_vs_fourier(&m).unwrap();
        assert!(cmp.fourier_is_klt);
        assert!(cmp.converse_holds);
    }

    #[test]
    fn stochastic_examples() {
        let space = ModelCatalog::dtt(Dtt::dct(1), 5)
            .unwrap()
            .shift_matrix()
            .unwrap();
        assert!(stochastic_normalize(&space).is_feasible());
        let time = cyclic_shift(5, 1.0);
        assert_eq!(
            stochastic_normalize(&time),
            Stochastic::Normalized(time.clone())
        );
        let w = ModelCatalog::dtt(Dtt::dst(2), 5)
            .unwrap()
            .shift_matrix()
            .unwrap();
        assert!(matches!(
            stochastic_normalize(&w),
            Stochastic::Infeasible(Infeasible::Negative { .. })
        ));
    }

    #[test]
    fn nine_dtt_shifts_are_stochastic() {
        let feasible = Dtt::all()
            .into_iter()
            .filter(|&d| {
                let a = ModelCatalog::dtt(d, 6).unwrap().shift_matrix().unwrap();
                stochastic_normalize(&a).is_feasible()
            })
            .count();
        assert_eq!(feasible, 9);
    }
}

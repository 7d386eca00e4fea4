use num_complex::Complex64;

use super::{ModelError, SignalModel};
use crate::linalg::{self, CMatrix};
use crate::poly::Polynomial;

const RANK_TOL: f64 = 1e-8;

/// How a square matrix can serve as the shift matrix of a signal model.
#[derive(Clone, Debug, PartialEq)]
pub enum MatrixModel {
    /// Minimal and characteristic polynomial agree: `A` is similar to `φ(x)` in `C[x]/p`.
    /// `p` holds the monic characteristic polynomial, ascending.
    Regular { p: Vec<Complex64> },
    /// `A` is diagonalizable but not regular: `A = φ(q)` in `C[x]/(x^n − 1)`,
    /// up to similarity, where `q` interpolates the eigenvalues at the `n`-th roots of unity.
    Nonregular {
        minimal_degree: usize,
        eigenvalues: Vec<Complex64>,
        q: Vec<Complex64>,
    },
    /// Neither regular nor diagonalizable.
    Unrealizable { minimal_degree: usize },
}

/// Degree of the minimal polynomial from the rank of `I, A, A², …, Aⁿ`.
pub fn minimal_degree(a: &CMatrix) -> usize {
    let n = a.nrows();
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(n + 1);
    let mut power = CMatrix::identity(n, n);
    for _ in 0..=n {
        let norm = power.norm();
        if norm > 0.0 {
            columns.push(power.iter().map(|z| z / norm).collect());
        }
        power = &power * a;
    }
    let krylov = CMatrix::from_fn(n * n, columns.len(), |i, j| columns[j][i]);
    linalg::rank(&krylov, RANK_TOL)
}

/// Eigenvalues grouped into clusters closer than `tol`.
fn distinct(values: &[Complex64], tol: f64) -> Vec<Complex64> {
    let mut reps: Vec<Complex64> = Vec::new();
    for &v in values {
        if reps.iter().all(|r| (r - v).norm() > tol) {
            reps.push(v);
        }
    }
    reps
}

/// Classifies `A` as a regular, nonregular or unrealizable shift matrix.
pub fn model_from_matrix(a: &CMatrix) -> Result<MatrixModel, ModelError> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(ModelError::Unsupported("matrix is not square".into()));
    }
    let m = minimal_degree(a);
    let eigenvalues = linalg::eigenvalues(a);
    if m == n {
        return Ok(MatrixModel::Regular {
            p: linalg::poly_from_roots(&eigenvalues),
        });
    }
    let scale = linalg::max_abs(a).max(1.0);
    if distinct(&eigenvalues, 1e-5 * scale).len() != m {
        return Ok(MatrixModel::Unrealizable { minimal_degree: m });
    }
    let roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let vandermonde = CMatrix::from_fn(n, n, |k, l| roots[k].powu(l as u32));
    let inv = linalg::inverse(&vandermonde).expect("roots of unity are distinct");
    let q = &inv * nalgebra::DVector::from_column_slice(&eigenvalues);
    Ok(MatrixModel::Nonregular {
        minimal_degree: m,
        eigenvalues,
        q: q.iter().copied().collect(),
    })
}

/// Dimension of the subalgebra `⟨q(x)⟩ ≤ C[x]/p(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubalgebraReport {
    /// Number of distinct values `q(α_k)`.
    pub dimension: usize,
    /// Rank of `I, φ(q), φ(q)², …`.
    pub rank_dimension: usize,
    /// Whether `q` is injective on the zeros of `p`.
    pub injective: bool,
}

pub fn subalgebra_of(p: &Polynomial, q: &Polynomial) -> Result<SubalgebraReport, ModelError> {
    if !p.is_separable() {
        return Err(ModelError::NotSeparable);
    }
    let model = SignalModel::new("subalgebra", p.clone(), super::BasisSpec::Monomial)?;
    let n = model.n();
    let real_q = q.to_real();
    let values: Vec<Complex64> = model
        .zeros()
        .into_iter()
        .map(|a| real_q.eval_complex(a))
        .collect();
    let dimension = distinct(&values, 1e-8).len();
    let phi = linalg::to_complex(&model.filter_matrix(q)?);
    let rank_dimension = minimal_degree(&phi);
    Ok(SubalgebraReport {
        dimension,
        rank_dimension,
        injective: dimension == n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn companion(p: &[f64]) -> CMatrix {
        let n = p.len() - 1;
        CMatrix::from_fn(n, n, |i, j| {
            if j == n - 1 {
                c(-p[i])
            } else if i == j + 1 {
                c(1.0)
            } else {
                c(0.0)
            }
        })
    }

    #[test]
    fn companion_is_regular() {
        let a = companion(&[2.0, -1.0, 0.5, 1.0]);
        match model_from_matrix(&a).unwrap() {
            MatrixModel::Regular { p } => {
                for (got, want) in p.iter().zip([2.0, -1.0, 0.5, 1.0]) {
                    assert!((got - c(want)).norm() < 1e-8);
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn jordan_block_is_regular() {
        let a = CMatrix::from_fn(4, 4, |i, j| if i + 1 == j { c(1.0) } else { c(0.0) });
        assert!(matches!(
            model_from_matrix(&a).unwrap(),
            MatrixModel::Regular { .. }
        ));
    }

    #[test]
    fn identity_is_nonregular() {
        let a = CMatrix::identity(2, 2);
        match model_from_matrix(&a).unwrap() {
            MatrixModel::Nonregular { minimal_degree, .. } => assert_eq!(minimal_degree, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn defective_non_cyclic_is_unrealizable() {
        let mut a = CMatrix::zeros(3, 3);
        a[(0, 1)] = c(1.0);
        assert!(matches!(
            model_from_matrix(&a).unwrap(),
            MatrixModel::Unrealizable { minimal_degree: 2 }
        ));
    }

    #[test]
    fn subalgebra_dimensions() {
        let p = Polynomial::from_i64s(&[-1, 0, 0, 0, 1]);
        let q = Polynomial::from_i64s(&[0, 0, 1]);
        let r = subalgebra_of(&p, &q).unwrap();
        assert_eq!((r.dimension, r.rank_dimension), (2, 2));
        let r = subalgebra_of(&p, &Polynomial::x()).unwrap();
        assert_eq!(r.dimension, 4);
        assert!(r.injective);
        let square = Polynomial::from_i64s(&[0, 0, 1]);
        assert_eq!(
            subalgebra_of(&square, &Polynomial::x()),
            Err(ModelError::NotSeparable)
        );
    }
}

//! Finite signal models `C[x]/p(x)` with a chosen basis, their shift and filter
//! matrices, signal extensions and graph visualizations.

mod catalog;
mod classify;
mod graph;
mod product;
mod spec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, CMatrix, RMatrix};
use crate::poly::{cheb_poly, ChebyshevKind, Poly, PolyError, Polynomial, Recurrence, Scalar};

pub use catalog::{symmetrizing_scales, ModelCatalog};
pub use classify::{model_from_matrix, subalgebra_of, MatrixModel, SubalgebraReport};
pub use graph::ModelGraph;
pub use product::ProductModel;
pub use spec::{AnyModel, ModelFamily, ModelSpec, MODEL_FAMILIES};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ModelError {
    #[error(transparent)]
    Poly(#[from] PolyError),

    #[error("the shift x is not invertible modulo p, so the past is not accessible")]
    NoPast,

    #[error("basis has {basis} elements but deg p = {degree}")]
    BasisMismatch { basis: usize, degree: usize },

    #[error("boundary polynomial is not separable; spectral operations are unsupported")]
    NotSeparable,

    #[error("operation unsupported for this model: {0}")]
    Unsupported(String),

    #[error("{0}")]
    Spec(String),
}

/// How the basis `b = (b_0, …, b_{n−1})` of the module is chosen.
#[derive(Clone, Debug, PartialEq)]
pub enum BasisSpec {
    /// `x^k`
    Monomial,
    /// `C_k` for one Chebyshev family.
    Chebyshev(ChebyshevKind),
    /// `C_k`, with the first element multiplied by `left` and the last by `right`.
    ScaledEndpoints {
        kind: ChebyshevKind,
        left: f64,
        right: f64,
    },
    /// Orthogonal polynomials generated by a three-term recurrence.
    Orthogonal(Recurrence),
}

/// Field of scalars for signals and filters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseField {
    Complex,
    Real,
    Rational,
}

/// A finite signal model: boundary polynomial, basis and generator.
#[derive(Clone, Debug)]
pub struct SignalModel<F: Scalar = crate::poly::Rational> {
    pub name: String,
    p: Poly<F>,
    basis: BasisSpec,
    pub field: BaseField,
    generator: Option<Poly<F>>,
    zeros: Option<Vec<Complex64>>,
}

impl<F: Scalar> SignalModel<F> {
    /// Builds a model with generator `x` and numerically computed zeros.
    pub fn new(name: &str, p: Poly<F>, basis: BasisSpec) -> Result<Self, ModelError> {
        let degree = p.degree().unwrap_or(0);
        if degree < 1 {
            return Err(PolyError::InvalidModulus.into());
        }
        if let BasisSpec::Orthogonal(rec) = &basis {
            rec.validate(degree)?;
        }
        Ok(Self {
            name: name.to_string(),
            p,
            basis,
            field: BaseField::Complex,
            generator: None,
            zeros: None,
        })
    }

    /// Replaces the numerically computed zeros by a closed-form list.
    pub fn with_zeros(mut self, zeros: Vec<Complex64>) -> Self {
        self.zeros = Some(zeros);
        self
    }

    pub fn with_generator(mut self, q: Poly<F>) -> Self {
        self.generator = Some(q);
        self
    }

    pub fn with_field(mut self, field: BaseField) -> Self {
        self.field = field;
        self
    }

    pub fn p(&self) -> &Poly<F> {
        &self.p
    }

    pub fn basis(&self) -> &BasisSpec {
        &self.basis
    }

    /// The algebra generator `q`; `x` unless set otherwise.
    pub fn generator(&self) -> Poly<F> {
        self.generator.clone().unwrap_or_else(Poly::x)
    }

    pub fn is_regular(&self) -> bool {
        self.generator.as_ref().is_none_or(|g| *g == Poly::x())
    }

    pub fn n(&self) -> usize {
        self.p.degree().unwrap_or(0)
    }

    /// Unscaled basis element `b_k` for any integer `k`.
    ///
    /// Negative indices run the Chebyshev recurrence backwards or invert `x` modulo `p`.
    pub fn virtual_element(&self, k: i64) -> Result<Poly<F>, ModelError> {
        match &self.basis {
            BasisSpec::Monomial => {
                if k >= 0 {
                    Ok(Poly::monomial(k as usize, F::one()))
                } else {
                    let inv = Poly::inv_mod(&Poly::x(), &self.p)?.ok_or(ModelError::NoPast)?;
                    Ok(inv.pow_mod((-k) as u64, &self.p)?)
                }
            }
            BasisSpec::Chebyshev(kind) | BasisSpec::ScaledEndpoints { kind, .. } => {
                Ok(cheb_poly(*kind, k).convert())
            }
            BasisSpec::Orthogonal(rec) => {
                if k < 0 {
                    return Err(ModelError::Unsupported(
                        "negative indices for a recurrence basis".into(),
                    ));
                }
                let polys = rec.polynomials(k as usize)?;
                Ok(polys[k as usize].convert())
            }
        }
    }

    /// The unscaled basis `b_0, …, b_{n−1}`.
    pub fn basis_polys(&self) -> Result<Vec<Poly<F>>, ModelError> {
        let n = self.n();
        match &self.basis {
            BasisSpec::Orthogonal(rec) => Ok(rec
                .polynomials(n - 1)?
                .iter()
                .map(Polynomial::convert)
                .collect()),
            _ => (0..n as i64).map(|k| self.virtual_element(k)).collect(),
        }
    }

    /// Endpoint scaling diagonal `S` with `b' = b·S`.
    pub fn basis_scaling(&self) -> Vec<f64> {
        let n = self.n();
        let mut s = vec![1.0; n];
        if let BasisSpec::ScaledEndpoints { left, right, .. } = self.basis {
            s[0] *= left;
            if n >= 2 {
                s[n - 1] *= right;
            }
        }
        s
    }

    /// Coordinates of `f` (reduced modulo `p`) in the unscaled basis.
    pub fn coordinates(&self, f: &Poly<F>) -> Result<Vec<F>, ModelError> {
        self.coordinates_in(&self.basis_polys()?, f)
    }

    fn coordinates_in(&self, basis: &[Poly<F>], f: &Poly<F>) -> Result<Vec<F>, ModelError> {
        let mut rest = f.rem(&self.p)?;
        let n = self.n();
        let mut coords = vec![F::zero(); n];
        for k in (0..n).rev() {
            let lead = basis[k].leading().cloned().expect("basis element nonzero");
            let c = rest.coeff(k) / lead;
            rest = &rest - &basis[k].scale(&c);
            coords[k] = c;
        }
        Ok(coords)
    }

    /// `φ(h)` in the unscaled basis: column `j` holds the coordinates of `h·b_j mod p`.
    pub fn filter_matrix_exact(&self, h: &Poly<F>) -> Result<DMatrix<F>, ModelError> {
        let basis = self.basis_polys()?;
        let n = self.n();
        let mut m = DMatrix::from_element(n, n, F::zero());
        for (j, b) in basis.iter().enumerate() {
            let col = self.coordinates_in(&basis, &(h * b))?;
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    /// `φ(h)` in the model's (possibly endpoint-scaled) basis.
    pub fn filter_matrix(&self, h: &Poly<F>) -> Result<RMatrix, ModelError> {
        let exact = self.filter_matrix_exact(h)?;
        let s = self.basis_scaling();
        Ok(RMatrix::from_fn(exact.nrows(), exact.ncols(), |i, j| {
            exact[(i, j)].to_f64() * s[j] / s[i]
        }))
    }

    pub fn shift_matrix_exact(&self) -> Result<DMatrix<F>, ModelError> {
        self.filter_matrix_exact(&self.generator())
    }

    pub fn shift_matrix(&self) -> Result<RMatrix, ModelError> {
        self.filter_matrix(&self.generator())
    }

    /// Coordinates of the virtual element `b_k` reduced into the module.
    pub fn extension(&self, k: i64) -> Result<Vec<F>, ModelError> {
        let element = self.virtual_element(k)?;
        self.coordinates(&element)
    }

    /// Smallest `L ≤ max_period` with `b_{k+L} ≡ b_k` for `k` in a window of two periods.
    pub fn extension_period(&self, max_period: usize) -> Result<Option<usize>, ModelError> {
        let n = self.n() as i64;
        let window: Vec<Vec<F>> = (0..=(2 * max_period as i64 + n))
            .map(|k| self.extension(k))
            .collect::<Result<_, _>>()?;
        let close = |a: &[F], b: &[F]| {
            a.iter()
                .zip(b)
                .all(|(x, y)| (x.clone() - y.clone()).negligible())
        };
        for period in 1..=max_period {
            if (0..window.len() - period).all(|k| close(&window[k], &window[k + period])) {
                return Ok(Some(period));
            }
        }
        Ok(None)
    }

    /// Zeros of `p` in the model's ordering.
    pub fn zeros(&self) -> Vec<Complex64> {
        if let Some(z) = &self.zeros {
            return z.clone();
        }
        let real = self.p.to_real();
        let n = self.n();
        let lead = real.leading().copied().unwrap_or(1.0);
        let companion = CMatrix::from_fn(n, n, |i, j| {
            if j == n - 1 {
                linalg::c(-real.coeff(i) / lead)
            } else if i == j + 1 {
                linalg::c(1.0)
            } else {
                linalg::c(0.0)
            }
        });
        let mut z = linalg::eigenvalues(&companion);
        for v in &mut z {
            if v.im.abs() < 1e-12 {
                v.im = 0.0;
            }
        }
        z.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
        z
    }

    pub fn is_separable(&self) -> bool {
        if F::EXACT {
            self.p.is_separable()
        } else {
            let z = self.zeros();
            (0..z.len()).all(|i| (i + 1..z.len()).all(|j| (z[i] - z[j]).norm() > 1e-9))
        }
    }

    /// `[b'_ℓ(α_k)]` for the (possibly endpoint-scaled) basis `b'`.
    pub fn polynomial_transform(&self) -> Result<CMatrix, ModelError> {
        if !self.is_separable() {
            return Err(ModelError::NotSeparable);
        }
        let basis = self.basis_polys()?;
        let zeros = self.zeros();
        let s = self.basis_scaling();
        let real: Vec<_> = basis.iter().map(|b| b.to_real()).collect();
        Ok(CMatrix::from_fn(zeros.len(), basis.len(), |k, l| {
            real[l].eval_complex(zeros[k]) * s[l]
        }))
    }

    /// Frequency response `(h∘q)(α_k)`.
    pub fn frequency_response(&self, h: &Poly<F>) -> Result<Vec<Complex64>, ModelError> {
        if !self.is_separable() {
            return Err(ModelError::NotSeparable);
        }
        let q = self.generator().to_real();
        let h = h.to_real();
        Ok(self
            .zeros()
            .into_iter()
            .map(|a| h.eval_complex(q.eval_complex(a)))
            .collect())
    }

    /// Graph whose adjacency matrix is the shift matrix.
    pub fn visualize(&self) -> Result<ModelGraph, ModelError> {
        Ok(ModelGraph::new(&self.name, self.shift_matrix()?))
    }
}

impl SignalModel<crate::poly::Rational> {
    /// The same model with real coefficients.
    pub fn to_real(&self) -> SignalModel<f64> {
        SignalModel {
            name: self.name.clone(),
            p: self.p.convert(),
            basis: self.basis.clone(),
            field: self.field,
            generator: self.generator.as_ref().map(Polynomial::convert),
            zeros: self.zeros.clone(),
        }
    }
}

/// Number of nonzero coordinates; monomial when at most 1, 2-monomial when at most 2.
pub fn support_size<F: Scalar>(coords: &[F]) -> usize {
    coords.iter().filter(|c| !c.negligible()).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, BoundaryForm, Rational};

    fn m(rows: &[&[i64]]) -> DMatrix<Rational> {
        let n = rows.len();
        DMatrix::from_fn(n, n, |i, j| rat(rows[i][j], 1))
    }

    #[test]
    fn two_point_shift() {
        let model = SignalModel::new(
            "x2",
            Polynomial::from_i64s(&[-1, 0, 1]),
            BasisSpec::Monomial,
        )
        .unwrap();
        assert_eq!(model.shift_matrix_exact().unwrap(), m(&[&[0, 1], &[1, 0]]));
        let h = Polynomial::from_i64s(&[2, 5]);
        assert_eq!(
            model.filter_matrix_exact(&h).unwrap(),
            m(&[&[2, 5], &[5, 2]])
        );
        assert_eq!(
            model.filter_matrix_exact(&Polynomial::one()).unwrap(),
            m(&[&[1, 0], &[0, 1]])
        );
    }

    #[test]
    fn x_squared_mod_x4_minus_1() {
        let model = SignalModel::new(
            "c4",
            Polynomial::from_i64s(&[-1, 0, 0, 0, 1]),
            BasisSpec::Monomial,
        )
        .unwrap();
        let f = model
            .filter_matrix_exact(&Polynomial::from_i64s(&[0, 0, 1]))
            .unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i + 4 - j) % 4 == 2 { 1 } else { 0 };
                assert_eq!(f[(i, j)], rat(expect, 1));
            }
        }
    }

    #[test]
    fn t_basis_shift_pattern() {
        let model = ModelCatalog::chebyshev(ChebyshevKind::T, BoundaryForm::Plain, 4).unwrap();
        let a = model.shift_matrix_exact().unwrap();
        assert_eq!(a[(1, 0)], rat(1, 1));
        assert_eq!(a[(0, 1)], rat(1, 2));
        assert_eq!(a[(2, 1)], rat(1, 2));
        assert_eq!(a[(2, 3)], rat(1, 2));
        assert_eq!(a[(3, 3)], rat(0, 1));
    }

    #[test]
    fn extensions() {
        let a = rat(3, 1);
        let time = ModelCatalog::time(5, &a).unwrap();
        let e = time.extension(7).unwrap();
        assert_eq!(
            e,
            vec![rat(0, 1), rat(0, 1), a.clone(), rat(0, 1), rat(0, 1)]
        );
        let t = ModelCatalog::chebyshev(ChebyshevKind::T, BoundaryForm::Plain, 4).unwrap();
        assert_eq!(t.extension(-1).unwrap(), t.extension(1).unwrap());
        let nilpotent = SignalModel::new(
            "xn",
            Polynomial::monomial(3, rat(1, 1)),
            BasisSpec::Monomial,
        )
        .unwrap();
        assert_eq!(nilpotent.extension(-1), Err(ModelError::NoPast));
    }

    #[test]
    fn periods() {
        let t = ModelCatalog::chebyshev(ChebyshevKind::T, BoundaryForm::Plain, 4).unwrap();
        assert_eq!(t.extension_period(40).unwrap(), Some(16));
        let u = ModelCatalog::chebyshev(ChebyshevKind::U, BoundaryForm::Plain, 4).unwrap();
        assert_eq!(u.extension_period(40).unwrap(), Some(10));
        let time = ModelCatalog::time(6, &rat(1, 1)).unwrap();
        assert_eq!(time.extension_period(40).unwrap(), Some(6));
    }

    #[test]
    fn characteristic_polynomial_is_p() {
        let model =
            ModelCatalog::chebyshev(ChebyshevKind::V, BoundaryForm::MinusOneBack, 5).unwrap();
        let a = linalg::to_complex(&model.shift_matrix().unwrap());
        let coeffs = linalg::poly_from_roots(&linalg::eigenvalues(&a));
        let p = model.p().monic().to_real();
        for (i, c) in coeffs.iter().enumerate() {
            assert!((c.re - p.coeff(i)).abs() < 1e-8);
        }
    }
}

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::{BaseField, BasisSpec, ModelError, SignalModel};
use crate::linalg::RMatrix;
use crate::poly::{
    boundary_poly, cheb_poly, cos_pi_rational, rat, BoundaryForm, ChebyshevKind, Poly, Polynomial,
    Rational, RealPoly, Recurrence, Scalar,
};
use crate::transforms::{skew_fractions, Dtt};
use crate::trig::cos_pi;

/// Constructors for the named models.
pub struct ModelCatalog;

impl ModelCatalog {
    /// Finite time model `C[x]/(x^n − a)` with monomial basis.
    ///
    /// Zeros are ordered `|a|^{1/n}·exp(−i(2πk + θ)/n)` with `θ = arg(ā) ∈ [0, 2π)`.
    pub fn time(n: usize, a: &Rational) -> Result<SignalModel, ModelError> {
        if n == 0 {
            return Err(ModelError::Poly(crate::poly::PolyError::InvalidSize(0)));
        }
        let mut coeffs = vec![rat(0, 1); n + 1];
        coeffs[0] = -a.clone();
        coeffs[n] = rat(1, 1);
        let a_f = a.to_f64();
        let theta = if a_f < 0.0 { std::f64::consts::PI } else { 0.0 };
        let radius = a_f.abs().powf(1.0 / n as f64);
        let zeros = (0..n)
            .map(|k| {
                let angle = -(2.0 * std::f64::consts::PI * k as f64 + theta) / n as f64;
                Complex64::from_polar(radius, angle)
            })
            .collect();
        Ok(SignalModel::new(
            &format!("time(n={n},a={a})"),
            Poly::new(coeffs),
            BasisSpec::Monomial,
        )?
        .with_zeros(zeros))
    }

    /// The model `C[x]/p` with `p = form(C_n)` and `C`-basis, zeros in DTT row order.
    pub fn chebyshev(
        kind: ChebyshevKind,
        form: BoundaryForm,
        n: usize,
    ) -> Result<SignalModel, ModelError> {
        let dtt = Dtt::from_pairing(kind, form);
        let p = boundary_poly(kind, form, n as i64);
        let zeros = if n >= dtt.min_size() {
            dtt.zeros(n)
                .into_iter()
                .map(|z| Complex64::new(z, 0.0))
                .collect()
        } else {
            Vec::new()
        };
        let model = SignalModel::new(
            &format!("{}-model(n={n})", dtt.name().to_lowercase()),
            p,
            BasisSpec::Chebyshev(kind),
        )?
        .with_field(BaseField::Real);
        Ok(if zeros.is_empty() {
            model
        } else {
            model.with_zeros(zeros)
        })
    }

    /// The model decomposed by `dtt`.
    pub fn dtt(dtt: Dtt, n: usize) -> Result<SignalModel, ModelError> {
        let (kind, form) = dtt.pairing();
        Self::chebyshev(kind, form, n)
    }

    /// The model of `dtt` with endpoint scalings that make the shift matrix symmetric.
    pub fn dtt_symmetric(dtt: Dtt, n: usize) -> Result<SignalModel, ModelError> {
        let base = Self::dtt(dtt, n)?;
        let (kind, _) = dtt.pairing();
        let a = base.shift_matrix()?;
        let d = symmetrizing_scales(&a).ok_or_else(|| {
            ModelError::Unsupported(format!("{} shift is not symmetrizable", dtt.name()))
        })?;
        let (left, right) = if n == 1 {
            (1.0, 1.0)
        } else if n == 2 {
            (d[0] / d[1], 1.0)
        } else {
            (d[0] / d[1], d[n - 1] / d[n - 2])
        };
        let zeros = base.zeros();
        let mut model = SignalModel::new(
            &format!("{}-symmetric(n={n})", dtt.name().to_lowercase()),
            base.p().clone(),
            BasisSpec::ScaledEndpoints { kind, left, right },
        )?
        .with_field(BaseField::Real);
        if !zeros.is_empty() {
            model = model.with_zeros(zeros);
        }
        Ok(model)
    }

    /// Skew model `C[x]/(T_n − cos rπ)` with `C`-basis, `f64` coefficients.
    pub fn skew(
        kind: ChebyshevKind,
        n: usize,
        r: &Rational,
    ) -> Result<SignalModel<f64>, ModelError> {
        let cos_r = cos_pi_rational(r)
            .map(|c| c.to_f64())
            .unwrap_or_else(|| rational_cos_pi(r));
        let p: RealPoly =
            &cheb_poly(ChebyshevKind::T, n as i64).convert::<f64>() - &Poly::constant(cos_r);
        Ok(
            SignalModel::new(&skew_name(kind, n, r), p, BasisSpec::Chebyshev(kind))?
                .with_field(BaseField::Real)
                .with_zeros(skew_zeros(n, r)),
        )
    }

    /// Exact skew model, available when `cos rπ` is rational.
    pub fn skew_exact(
        kind: ChebyshevKind,
        n: usize,
        r: &Rational,
    ) -> Result<Option<SignalModel>, ModelError> {
        let Some(cos_r) = cos_pi_rational(r) else {
            return Ok(None);
        };
        let p = &cheb_poly(ChebyshevKind::T, n as i64) - &Polynomial::constant(cos_r);
        Ok(Some(
            SignalModel::new(&skew_name(kind, n, r), p, BasisSpec::Chebyshev(kind))?
                .with_field(BaseField::Real)
                .with_zeros(skew_zeros(n, r)),
        ))
    }

    /// `C[x]/(x^n − a)` generated by `(x^{−1} + x)/2 = (x^{n−1}/a + x)/2`.
    pub fn alternative_space(n: usize, a: &Rational) -> Result<SignalModel, ModelError> {
        let time = Self::time(n, a)?;
        let half = rat(1, 2);
        let q =
            &Polynomial::monomial(n - 1, half.clone() / a.clone()) + &Polynomial::monomial(1, half);
        let zeros = time.zeros();
        Ok(SignalModel::new(
            &format!("alternative-space(n={n},a={a})"),
            time.p().clone(),
            BasisSpec::Monomial,
        )?
        .with_generator(q)
        .with_zeros(zeros))
    }

    /// Finite model with orthogonal-polynomial basis `P_0..P_{n−1}` and `p = P_n`.
    ///
    /// Zeros are eigenvalues of the symmetrized Jacobi matrix, in descending order.
    pub fn gnn(rec: &Recurrence, n: usize) -> Result<SignalModel, ModelError> {
        let polys = rec.polynomials(n)?;
        let mut model = SignalModel::new(
            &format!("gnn-{}(n={n})", rec.name),
            polys[n].clone(),
            BasisSpec::Orthogonal(rec.clone()),
        )?
        .with_field(BaseField::Real);
        if let Some(z) = jacobi_zeros(rec, n) {
            model = model.with_zeros(z.into_iter().map(|v| Complex64::new(v, 0.0)).collect());
        }
        Ok(model)
    }
}

/// Descending zeros of `P_n` via the symmetric Jacobi matrix, when `a_{k+1}·c_k > 0`.
pub fn jacobi_zeros(rec: &Recurrence, n: usize) -> Option<Vec<f64>> {
    let mut j = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        j[(k, k)] = rec.b[k].to_f64();
        if k + 1 < n {
            let prod = (rec.a[k + 1].clone() * rec.c[k].clone()).to_f64();
            if prod <= 0.0 {
                return None;
            }
            j[(k, k + 1)] = prod.sqrt();
            j[(k + 1, k)] = prod.sqrt();
        }
    }
    let mut z: Vec<f64> = SymmetricEigen::new(j).eigenvalues.iter().copied().collect();
    z.sort_by(|a, b| b.total_cmp(a));
    Some(z)
}

/// Diagonal `d` (with `d_0 = 1`) such that `D⁻¹·A·D` is symmetric, for tridiagonal `A`
/// whose paired off-diagonal entries have equal signs.
pub fn symmetrizing_scales(a: &RMatrix) -> Option<Vec<f64>> {
    let n = a.nrows();
    let mut d = vec![1.0; n];
    for i in 0..n.saturating_sub(1) {
        let up = a[(i, i + 1)];
        let down = a[(i + 1, i)];
        if up == 0.0 && down == 0.0 {
            d[i + 1] = d[i];
            continue;
        }
        let ratio = down / up;
        if !ratio.is_finite() || ratio <= 0.0 {
            return None;
        }
        d[i + 1] = d[i] * ratio.sqrt();
    }
    Some(d)
}

fn skew_name(kind: ChebyshevKind, n: usize, r: &Rational) -> String {
    let family = match kind {
        ChebyshevKind::T => "dct3",
        ChebyshevKind::U => "dst3",
        ChebyshevKind::V => "dct4",
        ChebyshevKind::W => "dst4",
    };
    format!("skew-{family}-model(n={n},r={r})")
}

fn skew_zeros(n: usize, r: &Rational) -> Vec<Complex64> {
    skew_fractions(n, r)
        .iter()
        .map(|f| Complex64::new(rational_cos_pi(f), 0.0))
        .collect()
}

/// `cos(fπ)` with the angle reduced as an exact fraction.
pub(crate) fn rational_cos_pi(f: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (f.numer().to_i128(), f.denom().to_i128()) {
        (Some(num), Some(den)) => cos_pi(num, den),
        _ => crate::trig::cos_pi_f(Scalar::to_f64(f)),
    }
}

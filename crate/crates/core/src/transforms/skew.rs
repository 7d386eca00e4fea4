//! Skew DTTs for the modules `C[x]/(T_n − cos rπ)`.

use num_traits::ToPrimitive;

use super::{Dtt, TransformError};
use crate::linalg::{inverse_real, RMatrix};
use crate::model::ModelCatalog;
use crate::poly::{rat, ChebyshevKind, Rational};
use crate::trig::{cos_pi, sin_pi};

/// The fractions `r_k` with `α_k = cos(r_k π)`, in interleaved order:
/// `(r+2i)/n, (2−r+2i)/n` for `i < ⌊n/2⌋`, then `(r+n−1)/n` when `n` is odd.
pub fn skew_fractions(n: usize, r: &Rational) -> Vec<Rational> {
    let nn = rat(n as i64, 1);
    let mut out = Vec::with_capacity(n);
    for i in 0..n / 2 {
        let two_i = rat(2 * i as i64, 1);
        out.push((r.clone() + two_i.clone()) / nn.clone());
        out.push((rat(2, 1) - r.clone() + two_i) / nn.clone());
    }
    if n % 2 == 1 {
        out.push((r.clone() + rat(n as i64 - 1, 1)) / nn);
    }
    out
}

/// Name of the skew family whose polynomial transform uses the `kind` basis.
pub fn skew_name(kind: ChebyshevKind) -> &'static str {
    match kind {
        ChebyshevKind::T => "DCT-3",
        ChebyshevKind::U => "DST-3",
        ChebyshevKind::V => "DCT-4",
        ChebyshevKind::W => "DST-4",
    }
}

/// The ordinary DTT that the skew family reduces to at `r = 1/2`.
pub fn skew_base(kind: ChebyshevKind) -> Dtt {
    match kind {
        ChebyshevKind::T => Dtt::dct(3),
        ChebyshevKind::U => Dtt::dst(3),
        ChebyshevKind::V => Dtt::dct(4),
        ChebyshevKind::W => Dtt::dst(4),
    }
}

/// The DTT that the inverse skew family reduces to at `r = 1/2`.
pub fn inverse_skew_base(kind: ChebyshevKind) -> Dtt {
    match kind {
        ChebyshevKind::T => Dtt::dct(2),
        ChebyshevKind::U => Dtt::dst(2),
        ChebyshevKind::V => Dtt::dct(4),
        ChebyshevKind::W => Dtt::dst(4),
    }
}

fn fraction(q: &Rational) -> (i128, i128) {
    (
        q.numer().to_i128().expect("angle numerator fits in i128"),
        q.denom().to_i128().expect("angle denominator fits in i128"),
    )
}

fn check_r(r: &Rational) -> Result<(), TransformError> {
    if *r < rat(0, 1) || *r > rat(1, 1) {
        return Err(TransformError::InvalidParameter(format!(
            "skew parameter r = {r} is outside [0, 1]"
        )));
    }
    Ok(())
}

/// Skew DTT with entries `cos r_k ℓπ`, `sin r_k(ℓ+1)π`, `cos r_k(ℓ+½)π` or `sin r_k(ℓ+½)π`.
pub fn skew_dtt(kind: ChebyshevKind, n: usize, r: &Rational) -> Result<RMatrix, TransformError> {
    check_r(r)?;
    if n == 0 {
        return Err(TransformError::InvalidSize {
            name: format!("skew {}", skew_name(kind)),
            n,
            reason: "requires n >= 1".into(),
        });
    }
    let fr: Vec<(i128, i128)> = skew_fractions(n, r).iter().map(fraction).collect();
    Ok(RMatrix::from_fn(n, n, |k, l| {
        let (num, den) = fr[k];
        let l = l as i128;
        match kind {
            ChebyshevKind::T => cos_pi(num * l, den),
            ChebyshevKind::U => sin_pi(num * (l + 1), den),
            ChebyshevKind::V => cos_pi(num * (2 * l + 1), 2 * den),
            ChebyshevKind::W => sin_pi(num * (2 * l + 1), 2 * den),
        }
    }))
}

/// Polynomial skew DTT `[C_ℓ(α_k)]`.
pub fn skew_polynomial(
    kind: ChebyshevKind,
    n: usize,
    r: &Rational,
) -> Result<RMatrix, TransformError> {
    check_r(r)?;
    let model = ModelCatalog::skew(kind, n, r)?;
    Ok(model.polynomial_transform()?.map(|z| z.re))
}

/// Scaling `f(α_k)` relating the skew DTT to its polynomial version.
pub fn skew_scaling(kind: ChebyshevKind, n: usize, r: &Rational) -> Vec<f64> {
    skew_fractions(n, r)
        .iter()
        .map(|f| {
            let (num, den) = fraction(f);
            match kind {
                ChebyshevKind::T => 1.0,
                ChebyshevKind::U => sin_pi(num, den),
                ChebyshevKind::V => cos_pi(num, 2 * den),
                ChebyshevKind::W => sin_pi(num, 2 * den),
            }
        })
        .collect()
}

/// Inverse skew DTT: `n/2 · E · DTT_n(r)⁻¹` with `E = diag(2,1,…,1)`, `diag(1,…,1,2)` or `I`.
pub fn inverse_skew(
    kind: ChebyshevKind,
    n: usize,
    r: &Rational,
) -> Result<RMatrix, TransformError> {
    let m = skew_dtt(kind, n, r)?;
    let inv = inverse_real(&m)?;
    let half_n = n as f64 / 2.0;
    Ok(RMatrix::from_fn(n, n, |k, l| {
        let e = match kind {
            ChebyshevKind::T if k == 0 => 2.0,
            ChebyshevKind::U if k + 1 == n => 2.0,
            _ => 1.0,
        };
        half_n * e * inv[(k, l)]
    }))
}

/// `(½ − r)·num/den` as an exact angle fraction of π.
fn offset_angle(r: &Rational, num: i64, den: i64) -> (i128, i128) {
    fraction(&((rat(1, 2) - r.clone()) * rat(num, den)))
}

/// The x-shaped matrix `X` with `DTT_n(r) = DTT_n · X`; coinciding entries are added.
pub fn skew_translation(kind: ChebyshevKind, n: usize, r: &Rational) -> RMatrix {
    let ni = n as i64;
    let c = |l: usize| {
        let (a, b) = offset_angle(r, l as i64, ni);
        cos_pi(a, b)
    };
    let s = |l: usize| {
        let (a, b) = offset_angle(r, l as i64, ni);
        sin_pi(a, b)
    };
    let c_half = |l: usize| {
        let (a, b) = offset_angle(r, 2 * l as i64 + 1, 2 * ni);
        cos_pi(a, b)
    };
    let s_half = |l: usize| {
        let (a, b) = offset_angle(r, 2 * l as i64 + 1, 2 * ni);
        sin_pi(a, b)
    };
    let mut x = RMatrix::zeros(n, n);
    match kind {
        ChebyshevKind::T => {
            x[(0, 0)] = 1.0;
            for l in 1..n {
                x[(l, l)] += c(l);
                x[(l, n - l)] += s(n - l);
            }
        }
        ChebyshevKind::U => {
            for l in 0..n - 1 {
                x[(l, l)] += c(l + 1);
                x[(l, n - 2 - l)] -= s(n - 1 - l);
            }
            x[(n - 1, n - 1)] = c(n);
        }
        ChebyshevKind::V | ChebyshevKind::W => {
            let sign = if kind == ChebyshevKind::V { 1.0 } else { -1.0 };
            for l in 0..n {
                x[(l, l)] += c_half(l);
                x[(l, n - 1 - l)] += sign * s_half(n - 1 - l);
            }
        }
    }
    x
}

/// Closed-form inverse of `X^{(C3)}(r)` from the 2×2 block rule.
pub fn skew_translation_inverse_c3(n: usize, r: &Rational) -> RMatrix {
    let ni = n as i64;
    let c = |l: usize| {
        let (a, b) = offset_angle(r, l as i64, ni);
        cos_pi(a, b)
    };
    let s = |l: usize| {
        let (a, b) = offset_angle(r, l as i64, ni);
        sin_pi(a, b)
    };
    let (a, b) = fraction(&(rat(1, 2) - r.clone()));
    let pre = 1.0 / cos_pi(a, b);
    let mut x = RMatrix::zeros(n, n);
    x[(0, 0)] = pre * c(n);
    for l in 1..n {
        x[(l, l)] += pre * c(n - l);
        x[(l, n - l)] -= pre * s(n - l);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_real;

    #[test]
    fn fractions_at_half_are_dct3_zeros() {
        let f = skew_fractions(4, &rat(1, 2));
        assert_eq!(f, vec![rat(1, 8), rat(3, 8), rat(5, 8), rat(7, 8)]);
        let f = skew_fractions(3, &rat(1, 3));
        assert_eq!(f, vec![rat(1, 9), rat(5, 9), rat(7, 9)]);
    }

    #[test]
    fn dct4_three_one_third() {
        let m = skew_dtt(ChebyshevKind::V, 3, &rat(1, 3)).unwrap();
        let pi = std::f64::consts::PI;
        assert!((m[(0, 0)] - (pi / 18.0).cos()).abs() < 1e-15);
        assert!((m[(0, 1)] - (pi / 6.0).cos()).abs() < 1e-15);
        assert!((m[(0, 2)] - (5.0 * pi / 18.0).cos()).abs() < 1e-15);
        assert!((m[(2, 2)] - (pi / 18.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn half_reduces_to_ordinary() {
        for kind in ChebyshevKind::ALL {
            for n in 1..=6 {
                let skew = skew_dtt(kind, n, &rat(1, 2)).unwrap();
                let base = skew_base(kind).unscaled(n).unwrap();
                assert!(max_abs_real(&(&skew - &base)) < 1e-12);
                let x = skew_translation(kind, n, &rat(1, 2));
                assert!(max_abs_real(&(x - RMatrix::identity(n, n))) < 1e-15);
            }
        }
    }

    #[test]
    fn translation_identity() {
        for kind in ChebyshevKind::ALL {
            for r in [rat(0, 1), rat(1, 4), rat(1, 3), rat(2, 3), rat(1, 1)] {
                for n in 1..=8 {
                    let lhs = skew_dtt(kind, n, &r).unwrap();
                    let rhs = skew_base(kind).unscaled(n).unwrap() * skew_translation(kind, n, &r);
                    assert!(max_abs_real(&(lhs - rhs)) < 1e-9, "{kind} n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn c3_inverse_rule() {
        for n in 2..=7 {
            let r = rat(1, 3);
            let x = skew_translation(ChebyshevKind::T, n, &r);
            let inv = skew_translation_inverse_c3(n, &r);
            assert!(max_abs_real(&(x * inv - RMatrix::identity(n, n))) < 1e-12);
        }
    }

    #[test]
    fn r_out_of_range() {
        assert!(skew_dtt(ChebyshevKind::T, 3, &rat(3, 2)).is_err());
    }
}

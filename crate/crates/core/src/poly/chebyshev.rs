use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::polynomial::Polynomial;
use super::scalar::{rat, Rational, Scalar};
use super::PolyError;
use crate::trig::cos_pi;

/// The four Chebyshev families sharing the recurrence `C_{n+1} = 2x·C_n − C_{n−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChebyshevKind {
    T,
    U,
    V,
    W,
}

impl ChebyshevKind {
    pub const ALL: [ChebyshevKind; 4] = [Self::T, Self::U, Self::V, Self::W];

    /// The initial pair `(C_0, C_1)`.
    pub fn initial(self) -> (Polynomial, Polynomial) {
        let c1 = match self {
            Self::T => [0, 1],
            Self::U => [0, 2],
            Self::V => [-1, 2],
            Self::W => [1, 2],
        };
        (Polynomial::one(), Polynomial::from_i64s(&c1))
    }

    /// Index in `ALL`.
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ChebyshevKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::T => "T",
            Self::U => "U",
            Self::V => "V",
            Self::W => "W",
        };
        f.write_str(s)
    }
}

impl FromStr for ChebyshevKind {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "T" => Ok(Self::T),
            "U" => Ok(Self::U),
            "V" => Ok(Self::V),
            "W" => Ok(Self::W),
            _ => Err(PolyError::UnknownKind(s.to_string())),
        }
    }
}

fn two_x() -> Polynomial {
    Polynomial::from_i64s(&[0, 2])
}

/// `C_n` for any integer `n`, running the recurrence backwards for negative `n`.
pub fn cheb_poly(kind: ChebyshevKind, n: i64) -> Polynomial {
    let (c0, c1) = kind.initial();
    if n == 0 {
        return c0;
    }
    let tx = two_x();
    if n > 0 {
        let (mut prev, mut cur) = (c0, c1);
        for _ in 1..n {
            let next = &(&tx * &cur) - &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    } else {
        // C_{k-1} = 2x C_k - C_{k+1}
        let (mut upper, mut cur) = (c1, c0);
        for _ in 0..(-n) {
            let next = &(&tx * &cur) - &upper;
            upper = std::mem::replace(&mut cur, next);
        }
        cur
    }
}

/// `C_lo, …, C_hi` computed in one sweep.
pub fn cheb_range(kind: ChebyshevKind, lo: i64, hi: i64) -> Vec<Polynomial> {
    if hi < lo {
        return Vec::new();
    }
    let tx = two_x();
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    let first = cheb_poly(kind, lo);
    out.push(first.clone());
    if hi == lo {
        return out;
    }
    let mut prev = first;
    let mut cur = cheb_poly(kind, lo + 1);
    out.push(cur.clone());
    for _ in (lo + 2)..=hi {
        let next = &(&tx * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
        out.push(cur.clone());
    }
    out
}

/// Zeros of `C_n` from the closed trigonometric forms, in the order `k = 0, …, n−1`.
pub fn cheb_zeros(kind: ChebyshevKind, n: i64) -> Result<Vec<f64>, PolyError> {
    if n < 1 {
        return Err(PolyError::InvalidSize(n));
    }
    let n = n as i128;
    let zeros = (0..n)
        .map(|k| match kind {
            ChebyshevKind::T => cos_pi(2 * k + 1, 2 * n),
            ChebyshevKind::U => cos_pi(k + 1, n + 1),
            ChebyshevKind::V => cos_pi(2 * k + 1, 2 * n + 1),
            ChebyshevKind::W => cos_pi(2 * k + 2, 2 * n + 1),
        })
        .collect();
    Ok(zeros)
}

/// The four right boundary conditions that give a monomial signal extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryForm {
    /// `C_n − C_{n−2}`
    MinusTwoBack,
    /// `C_n`
    Plain,
    /// `C_n − C_{n−1}`
    MinusOneBack,
    /// `C_n + C_{n−1}`
    PlusOneBack,
}

impl BoundaryForm {
    pub const ALL: [BoundaryForm; 4] = [
        Self::MinusTwoBack,
        Self::Plain,
        Self::MinusOneBack,
        Self::PlusOneBack,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Symbolic label such as `"C_n - C_{n-2}"`.
    pub fn label(self) -> &'static str {
        match self {
            Self::MinusTwoBack => "C_n - C_{n-2}",
            Self::Plain => "C_n",
            Self::MinusOneBack => "C_n - C_{n-1}",
            Self::PlusOneBack => "C_n + C_{n-1}",
        }
    }
}

impl fmt::Display for BoundaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The polynomial `p` obtained by substituting `kind` for `C` in `form`.
pub fn boundary_poly(kind: ChebyshevKind, form: BoundaryForm, n: i64) -> Polynomial {
    let cn = cheb_poly(kind, n);
    match form {
        BoundaryForm::MinusTwoBack => &cn - &cheb_poly(kind, n - 2),
        BoundaryForm::Plain => cn,
        BoundaryForm::MinusOneBack => &cn - &cheb_poly(kind, n - 1),
        BoundaryForm::PlusOneBack => &cn + &cheb_poly(kind, n - 1),
    }
}

/// Factored right-hand side of the identity relating `form` to the other families.
pub fn factored_form(kind: ChebyshevKind, form: BoundaryForm, n: i64) -> Polynomial {
    use BoundaryForm as B;
    use ChebyshevKind::*;
    let lin = |c: i64, scale: i64| Polynomial::from_i64s(&[c * scale, scale]);
    let two = Polynomial::from_i64s(&[2]);
    match (kind, form) {
        (_, B::Plain) => cheb_poly(kind, n),
        (T, B::MinusTwoBack) => &Polynomial::from_i64s(&[-2, 0, 2]) * &cheb_poly(U, n - 2),
        (T, B::MinusOneBack) => &lin(-1, 1) * &cheb_poly(W, n - 1),
        (T, B::PlusOneBack) => &lin(1, 1) * &cheb_poly(V, n - 1),
        (U, B::MinusTwoBack) => &two * &cheb_poly(T, n),
        (U, B::MinusOneBack) => cheb_poly(V, n),
        (U, B::PlusOneBack) => cheb_poly(W, n),
        (V, B::MinusTwoBack) => &lin(-1, 2) * &cheb_poly(W, n - 1),
        (V, B::MinusOneBack) => &lin(-1, 2) * &cheb_poly(U, n - 1),
        (V, B::PlusOneBack) => &two * &cheb_poly(T, n),
        (W, B::MinusTwoBack) => &lin(1, 2) * &cheb_poly(V, n - 1),
        (W, B::MinusOneBack) => &two * &cheb_poly(T, n),
        (W, B::PlusOneBack) => &lin(1, 2) * &cheb_poly(U, n - 1),
    }
}

/// Checks `boundary_poly == factored_form` exactly for every `n` in `ns`.
pub fn verify_cheb_identity(
    kind: ChebyshevKind,
    form: BoundaryForm,
    ns: impl IntoIterator<Item = i64>,
) -> bool {
    ns.into_iter()
        .all(|n| boundary_poly(kind, form, n) == factored_form(kind, form, n))
}

/// Period of the monomial signal extension of the model `C[x]/p` with `C`-basis.
pub fn extension_period_formula(kind: ChebyshevKind, form: BoundaryForm, n: i64) -> i64 {
    use BoundaryForm as B;
    use ChebyshevKind::*;
    match (kind, form) {
        (T, B::MinusTwoBack) => 2 * n - 2,
        (T, B::Plain) => 4 * n,
        (T, B::MinusOneBack) => 2 * n - 1,
        (T, B::PlusOneBack) => 4 * n - 2,
        (U, B::MinusTwoBack) => 4 * n,
        (U, B::Plain) => 2 * n + 2,
        (U, B::MinusOneBack) => 4 * n + 2,
        (U, B::PlusOneBack) => 2 * n + 1,
        (V, B::MinusTwoBack) => 2 * n - 1,
        (V, B::Plain) => 4 * n + 2,
        (V, B::MinusOneBack) => 2 * n,
        (V, B::PlusOneBack) => 4 * n,
        (W, B::MinusTwoBack) => 4 * n - 2,
        (W, B::Plain) => 2 * n + 1,
        (W, B::MinusOneBack) => 4 * n,
        (W, B::PlusOneBack) => 2 * n,
    }
}

/// Leading coefficient of `C_n` for `n ≥ 0`.
pub fn leading_coefficient(kind: ChebyshevKind, n: u32) -> Rational {
    let pow = |e: u32| Rational::from_i64(2).pow(e as i32);
    match kind {
        ChebyshevKind::T if n == 0 => rat(1, 1),
        ChebyshevKind::T => pow(n - 1),
        _ => pow(n),
    }
}

/// `C_n(1)` and `C_n(−1)` for `n ≥ 0`.
pub fn endpoint_values(kind: ChebyshevKind, n: i64) -> (Rational, Rational) {
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let (at_one, at_minus_one) = match kind {
        ChebyshevKind::T => (1, sign),
        ChebyshevKind::U => (n + 1, sign * (n + 1)),
        ChebyshevKind::V => (1, sign * (2 * n + 1)),
        ChebyshevKind::W => (2 * n + 1, sign),
    };
    (rat(at_one, 1), rat(at_minus_one, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ChebyshevKind::*;

    #[test]
    fn small_polynomials() {
        assert_eq!(cheb_poly(T, 2), Polynomial::from_i64s(&[-1, 0, 2]));
        assert_eq!(cheb_poly(T, -1), Polynomial::from_i64s(&[0, 1]));
        assert_eq!(cheb_poly(T, -2), Polynomial::from_i64s(&[-1, 0, 2]));
        assert_eq!(cheb_poly(T, 3), Polynomial::from_i64s(&[0, -3, 0, 4]));
        assert_eq!(
            cheb_poly(U, 5),
            Polynomial::from_i64s(&[0, 6, 0, -32, 0, 32])
        );
        assert_eq!(cheb_poly(U, -1), Polynomial::zero());
    }

    #[test]
    fn range_matches_pointwise() {
        for kind in ChebyshevKind::ALL {
            let seq = cheb_range(kind, -5, 7);
            for (i, c) in seq.iter().enumerate() {
                assert_eq!(*c, cheb_poly(kind, -5 + i as i64));
            }
        }
    }

    #[test]
    fn zeros_closed_forms() {
        let t2 = cheb_zeros(T, 2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((t2[0] - h).abs() < 1e-15 && (t2[1] + h).abs() < 1e-15);
        assert_eq!(cheb_zeros(U, 1).unwrap().len(), 1);
        assert!(cheb_zeros(U, 1).unwrap()[0].abs() < 1e-15);
        let w3 = cheb_zeros(W, 3).unwrap();
        let poly = cheb_poly(W, 3);
        for (k, z) in w3.iter().enumerate() {
            let expected = (2.0 * (k as f64 + 1.0) * std::f64::consts::PI / 7.0).cos();
            assert!((z - expected).abs() < 1e-15);
            assert!(poly.eval_f64(*z).abs() < 1e-12);
        }
        assert_eq!(cheb_zeros(T, 0), Err(PolyError::InvalidSize(0)));
    }

    #[test]
    fn zeros_lie_in_open_interval() {
        for kind in ChebyshevKind::ALL {
            for n in 1..20 {
                let poly = cheb_poly(kind, n);
                for z in cheb_zeros(kind, n).unwrap() {
                    assert!(z > -1.0 && z < 1.0);
                    assert!(poly.eval_f64(z).abs() < 1e-9 * poly.max_abs_coeff());
                }
            }
        }
    }

    #[test]
    fn table_cells_for_examples() {
        assert!(verify_cheb_identity(V, BoundaryForm::MinusOneBack, [4]));
        assert!(verify_cheb_identity(U, BoundaryForm::MinusTwoBack, [3]));
        assert!(verify_cheb_identity(T, BoundaryForm::PlusOneBack, [5]));
    }

    #[test]
    fn a_wrong_identity_is_rejected() {
        let lhs = boundary_poly(T, BoundaryForm::PlusOneBack, 5);
        let wrong = &Polynomial::from_i64s(&[1, 1]) * &cheb_poly(W, 4);
        assert_ne!(lhs, wrong);
    }

    #[test]
    fn parse_kind() {
        assert_eq!("v".parse::<ChebyshevKind>().unwrap(), V);
        assert!("x".parse::<ChebyshevKind>().is_err());
    }
}

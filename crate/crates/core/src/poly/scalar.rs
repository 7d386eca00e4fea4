use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact rational numbers with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// Coefficient field for [`Poly`](super::Poly).
///
/// Two implementations are provided: [`Rational`] for exact symbolic work and
/// `f64` for models whose boundary polynomial has irrational coefficients.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether arithmetic in this field is exact.
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// True when the value should be treated as zero.
    ///
    /// Exact fields compare against zero; `f64` uses an absolute threshold of `1e-10`.
    fn negligible(&self) -> bool;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn negligible(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn negligible(&self) -> bool {
        self.abs() <= 1e-10
    }
}

/// Builds the rational `num/den`.
///
/// # Panics
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.25"` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let num: BigInt = digits.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(num, den);
        return Some(if negative { -value } else { value });
    }
    let num: BigInt = text.parse().ok()?;
    Some(Rational::from_integer(num))
}

/// `cos(rπ)` as an exact rational when it is one (r ∈ {0, 1/3, 1/2, 2/3, 1} modulo 2).
pub fn cos_pi_rational(r: &Rational) -> Option<Rational> {
    let two = Rational::from_i64(2);
    let mut reduced = r.clone() % two.clone();
    if reduced < Rational::zero() {
        reduced += two;
    }
    let table = [
        (rat(0, 1), rat(1, 1)),
        (rat(1, 3), rat(1, 2)),
        (rat(1, 2), rat(0, 1)),
        (rat(2, 3), rat(-1, 2)),
        (rat(1, 1), rat(-1, 1)),
        (rat(4, 3), rat(-1, 2)),
        (rat(3, 2), rat(0, 1)),
        (rat(5, 3), rat(1, 2)),
    ];
    table
        .iter()
        .find(|(angle, _)| *angle == reduced)
        .map(|(_, value)| value.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/3"), Some(rat(1, 3)));
        assert_eq!(parse_rational("-2"), Some(rat(-2, 1)));
        assert_eq!(parse_rational("0.25"), Some(rat(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn rational_cosines() {
        assert_eq!(cos_pi_rational(&rat(1, 3)), Some(rat(1, 2)));
        assert_eq!(cos_pi_rational(&rat(2, 3)), Some(rat(-1, 2)));
        assert_eq!(cos_pi_rational(&rat(1, 2)), Some(rat(0, 1)));
        assert_eq!(cos_pi_rational(&rat(1, 4)), None);
        assert_eq!(cos_pi_rational(&rat(7, 3)), Some(rat(1, 2)));
    }

    #[test]
    fn float_negligible_threshold() {
        assert!(1e-12_f64.negligible());
        assert!(!1e-8_f64.negligible());
        assert!(!rat(1, 1_000_000_000).negligible());
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::scalar::{Rational, Scalar};
use super::PolyError;

/// Dense univariate polynomial.
///
/// `coeffs[i]` is the coefficient of `x^i`. The coefficient vector never has a
/// trailing zero; the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F: Scalar = Rational> {
    coeffs: Vec<F>,
}

/// Polynomial with exact rational coefficients.
pub type Polynomial = Poly<Rational>;

/// Polynomial with double-precision coefficients.
pub type RealPoly = Poly<f64>;

impl<F: Scalar> Poly<F> {
    /// Creates a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn new(coeffs: Vec<F>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(k: usize, c: F) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Integer coefficients in ascending order.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => {
                let inv = F::one() / lead.clone();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    /// Horner evaluation inside the coefficient field.
    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64())
    }

    /// `self(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * q) + &Self::constant(c.clone())
        })
    }

    /// Polynomial long division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let factor = rem[i].clone() / lead.clone();
            if factor.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = rem[idx].clone() - factor.clone() * dj.clone();
            }
            rem[i] = F::zero();
            quot[i - dd] = factor;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, PolyError> {
        Ok(self.div_rem(d)?.1)
    }

    fn check_modulus(p: &Self) -> Result<(), PolyError> {
        match p.degree() {
            Some(d) if d >= 1 => Ok(()),
            _ => Err(PolyError::InvalidModulus),
        }
    }

    /// Remainder of `a·b` modulo `p`.
    pub fn mul_mod(a: &Self, b: &Self, p: &Self) -> Result<Self, PolyError> {
        Self::check_modulus(p)?;
        (a * b).rem(p)
    }

    /// `self^k mod p` by repeated squaring.
    pub fn pow_mod(&self, mut k: u64, p: &Self) -> Result<Self, PolyError> {
        Self::check_modulus(p)?;
        let mut base = self.rem(p)?;
        let mut acc = Self::one().rem(p)?;
        while k > 0 {
            if k & 1 == 1 {
                acc = Self::mul_mod(&acc, &base, p)?;
            }
            base = Self::mul_mod(&base, &base, p)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Drops coefficients that the field considers negligible.
    ///
    /// A no-op for exact fields.
    pub fn cleaned(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| if c.negligible() { F::zero() } else { c.clone() })
                .collect(),
        )
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (g, _, _) = Self::ext_gcd(a, b);
        g
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g` and `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.cleaned(), b.cleaned());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let r = r.cleaned();
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            Some(lead) => {
                let inv = F::one() / lead;
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            None => (r0, s0, t0),
        }
    }

    /// Inverse of `q` modulo `p`, or `Ok(None)` when `gcd(q, p) ≠ 1`.
    pub fn inv_mod(q: &Self, p: &Self) -> Result<Option<Self>, PolyError> {
        Self::check_modulus(p)?;
        let (g, s, _) = Self::ext_gcd(&q.rem(p)?, p);
        if g.degree() != Some(0) {
            return Ok(None);
        }
        Ok(Some(s.rem(p)?))
    }

    /// True when `gcd(p, p') = 1`, i.e. the zeros of `p` are simple.
    pub fn is_separable(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => Self::gcd(self, &self.derivative()).degree() == Some(0),
        }
    }

    pub fn to_real(&self) -> RealPoly {
        Poly::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

impl Polynomial {
    /// Converts into any coefficient field.
    pub fn convert<G: Scalar>(&self) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(G::from_rational).collect())
    }
}

impl<F: Scalar> Add for &Poly<F> {
    type Output = Poly<F>;

    fn add(self, rhs: Self) -> Poly<F> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<F: Scalar> Sub for &Poly<F> {
    type Output = Poly<F>;

    fn sub(self, rhs: Self) -> Poly<F> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<F: Scalar> Mul for &Poly<F> {
    type Output = Poly<F>;

    fn mul(self, rhs: Self) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<F: Scalar> Neg for &Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<F: Scalar> $tr for Poly<F> {
            type Output = Poly<F>;

            fn $method(self, rhs: Self) -> Poly<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Scalar> Neg for Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl<F: Scalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = magnitude == "1";
            match i {
                0 => write!(f, "{magnitude}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{magnitude}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{magnitude}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn mul_mod_examples() {
        let m = p(&[-1, 0, 1]);
        assert_eq!(
            Polynomial::mul_mod(&p(&[0, 1]), &p(&[1, 1]), &m).unwrap(),
            p(&[1, 1])
        );
        assert_eq!(
            Polynomial::mul_mod(&p(&[0, 1]), &p(&[1, 3]), &m).unwrap(),
            p(&[3, 1])
        );
        let s = p(&[4, -2, 7, 1]);
        assert_eq!(
            Polynomial::mul_mod(&p(&[1]), &s, &m).unwrap(),
            s.rem(&m).unwrap()
        );
    }

    #[test]
    fn mul_mod_rejects_constant_modulus() {
        assert_eq!(
            Polynomial::mul_mod(&p(&[1]), &p(&[1]), &p(&[3])),
            Err(PolyError::InvalidModulus)
        );
        assert_eq!(
            Polynomial::mul_mod(&p(&[1]), &p(&[1]), &Polynomial::zero()),
            Err(PolyError::InvalidModulus)
        );
    }

    #[test]
    fn inverse_of_x_modulo_xn_minus_a() {
        let a = rat(3, 2);
        let n = 5;
        let modulus = &Polynomial::monomial(n, rat(1, 1)) - &Polynomial::constant(a.clone());
        let inv = Polynomial::inv_mod(&Polynomial::x(), &modulus)
            .unwrap()
            .unwrap();
        assert_eq!(inv, Polynomial::monomial(n - 1, rat(1, 1) / a));
    }

    #[test]
    fn x_not_invertible_modulo_xn() {
        let modulus = Polynomial::monomial(4, rat(1, 1));
        assert_eq!(
            Polynomial::inv_mod(&Polynomial::x(), &modulus).unwrap(),
            None
        );
    }

    #[test]
    fn inverse_of_x_plus_two() {
        let modulus = p(&[-1, 0, 1]);
        let inv = Polynomial::inv_mod(&p(&[2, 1]), &modulus).unwrap().unwrap();
        assert_eq!(inv, Polynomial::new(vec![rat(2, 3), rat(-1, 3)]));
        let check = Polynomial::mul_mod(&inv, &p(&[2, 1]), &modulus).unwrap();
        assert_eq!(check, Polynomial::one());
    }

    #[test]
    fn gcd_and_separability() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        assert_eq!(Polynomial::gcd(&a, &b), b);
        assert!(a.is_separable());
        assert!(!p(&[1, 2, 1]).is_separable());
    }

    #[test]
    fn compose_and_derivative() {
        let q = p(&[1, 1]);
        assert_eq!(p(&[0, 0, 1]).compose(&q), p(&[1, 2, 1]));
        assert_eq!(p(&[5, 3, 0, 4]).derivative(), p(&[3, 0, 12]));
    }

    #[test]
    fn pow_mod_matches_repeated_product() {
        let m = p(&[-1, 0, 0, 0, 1]);
        let x = Polynomial::x();
        assert_eq!(x.pow_mod(6, &m).unwrap(), p(&[0, 0, 1]));
    }

    #[test]
    fn display_formatting() {
        assert_eq!(p(&[-1, 0, 2]).to_string(), "2x^2 - 1");
        assert_eq!(p(&[0, 6, 0, -32, 0, 32]).to_string(), "32x^5 - 32x^3 + 6x");
        assert_eq!(
            Polynomial::new(vec![rat(1, 2), rat(-1, 1)]).to_string(),
            "-x + 1/2"
        );
    }

    #[test]
    fn real_division_truncates_remainder() {
        let d: RealPoly = Poly::new(vec![-0.5, 0.0, 1.0]);
        let num: RealPoly = Poly::new(vec![0.0, 0.0, 0.0, 1.0]);
        let (q, r) = num.div_rem(&d).unwrap();
        assert_eq!(q.coeffs(), &[0.0, 1.0]);
        assert_eq!(r.coeffs(), &[0.0, 0.5]);
    }
}

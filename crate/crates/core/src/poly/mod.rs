//! Exact polynomial arithmetic and the Chebyshev families.

mod chebyshev;
mod polynomial;
mod recurrence;
mod scalar;

use thiserror::Error;

pub use chebyshev::{
    boundary_poly, cheb_poly, cheb_range, cheb_zeros, endpoint_values, extension_period_formula,
    factored_form, leading_coefficient, verify_cheb_identity, BoundaryForm, ChebyshevKind,
};
pub use polynomial::{Poly, Polynomial, RealPoly};
pub use recurrence::Recurrence;
pub use scalar::{cos_pi_rational, parse_rational, rat, Rational, Scalar};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum PolyError {
    #[error("modulus must have degree at least 1")]
    InvalidModulus,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("size must be at least 1, got {0}")]
    InvalidSize(i64),

    #[error("unknown Chebyshev kind '{0}' (expected T, U, V or W)")]
    UnknownKind(String),

    #[error("invalid three-term recurrence: {0}")]
    InvalidRecurrence(String),
}

/// Remainder of `a·b` modulo `p` over the rationals.
pub fn mul_mod(a: &Polynomial, b: &Polynomial, p: &Polynomial) -> Result<Polynomial, PolyError> {
    Polynomial::mul_mod(a, b, p)
}

/// Inverse of `q` modulo `p`, or `None` when `gcd(q, p) ≠ 1`.
pub fn inv_mod(q: &Polynomial, p: &Polynomial) -> Result<Option<Polynomial>, PolyError> {
    Polynomial::inv_mod(q, p)
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn small_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-4i64..=4, 1i64..=3), 0..=max_deg + 1)
            .prop_map(|pairs| Polynomial::new(pairs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    fn modulus(max_deg: usize) -> impl Strategy<Value = Polynomial> {
        small_poly(max_deg).prop_filter("degree at least 1", |p| p.degree().unwrap_or(0) >= 1)
    }

    proptest! {
        #[test]
        fn mul_mod_matches_naive(a in small_poly(4), b in small_poly(4), p in modulus(4)) {
            let got = mul_mod(&a, &b, &p).unwrap();
            let product = &a * &b;
            let (q, r) = product.div_rem(&p).unwrap();
            prop_assert_eq!(&got, &r);
            prop_assert_eq!(&(&(&q * &p) + &r), &product);
            prop_assert!(got.degree().is_none_or(|d| d < p.degree().unwrap()));
        }

        #[test]
        fn inverse_when_coprime(q in small_poly(4), p in modulus(4)) {
            let g = Polynomial::gcd(&q.rem(&p).unwrap(), &p);
            match inv_mod(&q, &p).unwrap() {
                Some(r) => {
                    prop_assert_eq!(g.degree(), Some(0));
                    prop_assert_eq!(mul_mod(&r, &q, &p).unwrap(), Polynomial::one());
                }
                None => prop_assert!(g.degree() != Some(0)),
            }
        }

        #[test]
        fn recurrence_and_symmetry(n in -16i64..=16) {
            let x2 = Polynomial::from_i64s(&[0, 2]);
            for kind in ChebyshevKind::ALL {
                let next = cheb_poly(kind, n + 1);
                let expect = &(&x2 * &cheb_poly(kind, n)) - &cheb_poly(kind, n - 1);
                prop_assert_eq!(next, expect);
            }
            prop_assert_eq!(cheb_poly(ChebyshevKind::T, -n), cheb_poly(ChebyshevKind::T, n));
            prop_assert_eq!(cheb_poly(ChebyshevKind::U, -n), -cheb_poly(ChebyshevKind::U, n - 2));
            prop_assert_eq!(cheb_poly(ChebyshevKind::V, -n), cheb_poly(ChebyshevKind::V, n - 1));
            prop_assert_eq!(cheb_poly(ChebyshevKind::W, -n), -cheb_poly(ChebyshevKind::W, n - 1));
        }

        #[test]
        fn product_rule_with_t(k in 0i64..=12, n in 0i64..=12) {
            let t = cheb_poly(ChebyshevKind::T, k);
            for kind in ChebyshevKind::ALL {
                let lhs = (&t * &cheb_poly(kind, n)).scale(&rat(2, 1));
                let rhs = &cheb_poly(kind, n + k) + &cheb_poly(kind, n - k);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

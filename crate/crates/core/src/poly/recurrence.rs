use super::polynomial::{Poly, Polynomial};
use super::scalar::{rat, Rational, Scalar};
use super::PolyError;
use crate::poly::ChebyshevKind;

/// Three-term recurrence `x·P_k = a_k·P_{k−1} + b_k·P_k + c_k·P_{k+1}` with `P_0 = 1`.
///
/// Coefficients are stored for `k = 0, …, len−1`; `a_0` is never used.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    pub name: String,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

impl Recurrence {
    /// Builds a recurrence from closures of `k`, for `k < len`.
    pub fn from_fn(
        name: &str,
        len: usize,
        a: impl Fn(usize) -> Rational,
        b: impl Fn(usize) -> Rational,
        c: impl Fn(usize) -> Rational,
    ) -> Self {
        Self {
            name: name.to_string(),
            a: (0..len).map(&a).collect(),
            b: (0..len).map(&b).collect(),
            c: (0..len).map(&c).collect(),
        }
    }

    /// Recurrence of a Chebyshev family, valid up to `P_len`.
    pub fn chebyshev(kind: ChebyshevKind, len: usize) -> Self {
        let half = rat(1, 2);
        let b0 = match kind {
            ChebyshevKind::T | ChebyshevKind::U => rat(0, 1),
            ChebyshevKind::V => rat(1, 2),
            ChebyshevKind::W => rat(-1, 2),
        };
        let c0 = match kind {
            ChebyshevKind::T => rat(1, 1),
            _ => half.clone(),
        };
        Self::from_fn(
            &format!("chebyshev-{}", kind.to_string().to_lowercase()),
            len,
            |_| half.clone(),
            |k| if k == 0 { b0.clone() } else { rat(0, 1) },
            |k| if k == 0 { c0.clone() } else { half.clone() },
        )
    }

    /// Legendre polynomials: `x·P_k = k/(2k+1)·P_{k−1} + (k+1)/(2k+1)·P_{k+1}`.
    pub fn legendre(len: usize) -> Self {
        Self::from_fn(
            "legendre",
            len,
            |k| rat(k as i64, 2 * k as i64 + 1),
            |_| rat(0, 1),
            |k| rat(k as i64 + 1, 2 * k as i64 + 1),
        )
    }

    /// Looks up a named recurrence: `chebyshev-t`, `chebyshev-u`, `chebyshev-v`,
    /// `chebyshev-w`, `legendre` (short forms `t`, `u`, `v`, `w` accepted).
    pub fn named(name: &str, len: usize) -> Option<Self> {
        let lower = name.to_ascii_lowercase();
        let key = lower.trim_start_matches("chebyshev-");
        match key {
            "legendre" => Some(Self::legendre(len)),
            other => other.parse().ok().map(|k| Self::chebyshev(k, len)),
        }
    }

    pub fn len(&self) -> usize {
        self.a.len().min(self.b.len()).min(self.c.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rejects recurrences with a vanishing `a_k` (k ≥ 1) or `c_k` among the first `n` steps.
    pub fn validate(&self, n: usize) -> Result<(), PolyError> {
        if self.len() < n {
            return Err(PolyError::InvalidRecurrence(format!(
                "needs {n} coefficient triples, has {}",
                self.len()
            )));
        }
        for k in 0..n {
            if self.c[k].negligible() {
                return Err(PolyError::InvalidRecurrence(format!("c_{k} = 0")));
            }
            if k >= 1 && self.a[k].negligible() {
                return Err(PolyError::InvalidRecurrence(format!("a_{k} = 0")));
            }
        }
        Ok(())
    }

    /// `P_0, …, P_n`.
    pub fn polynomials(&self, n: usize) -> Result<Vec<Polynomial>, PolyError> {
        self.validate(n)?;
        let mut out = vec![Polynomial::one()];
        let x = Polynomial::x();
        for k in 0..n {
            let mut next = &(&x - &Poly::constant(self.b[k].clone())) * &out[k];
            if k >= 1 {
                next = &next - &out[k - 1].scale(&self.a[k]);
            }
            let inv = Rational::from_i64(1) / self.c[k].clone();
            out.push(next.scale(&inv));
        }
        Ok(out)
    }

    /// Relative norms `μ_k / μ_0` from `μ_{k+1}/μ_k = a_{k+1}/c_k`.
    pub fn norm_ratios(&self, n: usize) -> Result<Vec<Rational>, PolyError> {
        self.validate(n)?;
        let mut mu = vec![rat(1, 1)];
        for k in 0..n.saturating_sub(1) {
            let next = mu[k].clone() * self.a[k + 1].clone() / self.c[k].clone();
            if next <= rat(0, 1) {
                return Err(PolyError::InvalidRecurrence(format!(
                    "a_{}/c_{} is not positive; no positive weight exists",
                    k + 1,
                    k
                )));
            }
            mu.push(next);
        }
        Ok(mu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::cheb_poly;

    #[test]
    fn chebyshev_recurrences_reproduce_families() {
        for kind in ChebyshevKind::ALL {
            let rec = Recurrence::chebyshev(kind, 10);
            let polys = rec.polynomials(9).unwrap();
            for (k, p) in polys.iter().enumerate() {
                assert_eq!(*p, cheb_poly(kind, k as i64), "{kind} {k}");
            }
        }
    }

    #[test]
    fn legendre_p2_and_norms() {
        let rec = Recurrence::legendre(6);
        let polys = rec.polynomials(3).unwrap();
        assert_eq!(
            polys[2],
            Polynomial::new(vec![rat(-1, 2), rat(0, 1), rat(3, 2)])
        );
        let mu = rec.norm_ratios(4).unwrap();
        // mu_k = 2/(2k+1), relative to mu_0 = 2
        assert_eq!(mu, vec![rat(1, 1), rat(1, 3), rat(1, 5), rat(1, 7)]);
    }

    #[test]
    fn chebyshev_t_norms() {
        let mu = Recurrence::chebyshev(ChebyshevKind::T, 5)
            .norm_ratios(4)
            .unwrap();
        assert_eq!(mu, vec![rat(1, 1), rat(1, 2), rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn zero_coefficient_rejected() {
        let mut rec = Recurrence::legendre(5);
        rec.c[2] = rat(0, 1);
        assert!(matches!(
            rec.polynomials(4),
            Err(PolyError::InvalidRecurrence(_))
        ));
        let mut rec = Recurrence::legendre(5);
        rec.a[1] = rat(0, 1);
        assert!(rec.validate(3).is_err());
    }

    #[test]
    fn named_lookup() {
        assert!(Recurrence::named("legendre", 4).is_some());
        assert!(Recurrence::named("chebyshev-u", 4).is_some());
        assert!(Recurrence::named("t", 4).is_some());
        assert!(Recurrence::named("hermite", 4).is_none());
    }
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::RMatrix;
use crate::poly::{BoundaryForm, ChebyshevKind};
use crate::trig::{cos_pi, sin_pi};

use super::TransformError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Trig {
    Cos,
    Sin,
}

/// One of the sixteen discrete cosine and sine transforms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dtt {
    pub trig: Trig,
    pub ty: u8,
}

/// Which DTT each (basis, boundary) cell of the 4×4 grid produces.
///
/// Rows follow `ChebyshevKind::ALL`, columns follow `BoundaryForm::ALL`.
const PAIRING: [[(Trig, u8); 4]; 4] = [
    [
        (Trig::Cos, 1),
        (Trig::Cos, 3),
        (Trig::Cos, 5),
        (Trig::Cos, 7),
    ],
    [
        (Trig::Sin, 3),
        (Trig::Sin, 1),
        (Trig::Sin, 7),
        (Trig::Sin, 5),
    ],
    [
        (Trig::Cos, 6),
        (Trig::Cos, 8),
        (Trig::Cos, 2),
        (Trig::Cos, 4),
    ],
    [
        (Trig::Sin, 8),
        (Trig::Sin, 6),
        (Trig::Sin, 4),
        (Trig::Sin, 2),
    ],
];

/// Entry parameters in half-units: the angle is `(2k+R)(2l+C)π / (2(2n+D))`.
struct EntryParams {
    row: i128,
    col: i128,
    den_shift: i128,
}

impl Dtt {
    pub const fn dct(ty: u8) -> Self {
        Self {
            trig: Trig::Cos,
            ty,
        }
    }

    pub const fn dst(ty: u8) -> Self {
        Self {
            trig: Trig::Sin,
            ty,
        }
    }

    /// All sixteen, DCT-1..8 then DST-1..8.
    pub fn all() -> Vec<Dtt> {
        let mut out: Vec<Dtt> = (1..=8).map(Dtt::dct).collect();
        out.extend((1..=8).map(Dtt::dst));
        out
    }

    pub fn name(&self) -> String {
        let prefix = match self.trig {
            Trig::Cos => "DCT",
            Trig::Sin => "DST",
        };
        format!("{prefix}-{}", self.ty)
    }

    /// The basis and boundary polynomial of the signal model this DTT decomposes.
    pub fn pairing(&self) -> (ChebyshevKind, BoundaryForm) {
        for (i, row) in PAIRING.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if *cell == (self.trig, self.ty) {
                    return (ChebyshevKind::ALL[i], BoundaryForm::ALL[j]);
                }
            }
        }
        unreachable!("every DTT appears in the pairing table")
    }

    pub fn from_pairing(kind: ChebyshevKind, form: BoundaryForm) -> Dtt {
        let (trig, ty) = PAIRING[kind.index()][form.index()];
        Dtt { trig, ty }
    }

    /// The DTT at the mirrored grid position.
    pub fn dual(&self) -> Dtt {
        let (kind, form) = self.pairing();
        Dtt::from_pairing(
            ChebyshevKind::ALL[form.index()],
            BoundaryForm::ALL[kind.index()],
        )
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual() == *self
    }

    /// The Chebyshev family that, up to linear factors, makes up the boundary polynomial.
    pub fn group(&self) -> ChebyshevKind {
        use BoundaryForm as B;
        use ChebyshevKind::*;
        let (kind, form) = self.pairing();
        match (kind, form) {
            (k, B::Plain) => k,
            (T, B::MinusTwoBack) | (V, B::MinusOneBack) | (W, B::PlusOneBack) => U,
            (U, B::MinusTwoBack) | (V, B::PlusOneBack) | (W, B::MinusOneBack) => T,
            (T, B::PlusOneBack) | (U, B::MinusOneBack) | (W, B::MinusTwoBack) => V,
            (T, B::MinusOneBack) | (U, B::PlusOneBack) | (V, B::MinusTwoBack) => W,
        }
    }

    fn entry_params(&self) -> EntryParams {
        let (row, col, den_shift) = match (self.trig, self.ty) {
            (Trig::Cos, 1) => (0, 0, -2),
            (Trig::Cos, 2) => (0, 1, 0),
            (Trig::Cos, 3) => (1, 0, 0),
            (Trig::Cos, 4) => (1, 1, 0),
            (Trig::Cos, 5) => (0, 0, -1),
            (Trig::Cos, 6) => (0, 1, -1),
            (Trig::Cos, 7) => (1, 0, -1),
            (Trig::Cos, 8) => (1, 1, 1),
            (Trig::Sin, 1) => (2, 2, 2),
            (Trig::Sin, 2) => (2, 1, 0),
            (Trig::Sin, 3) => (1, 2, 0),
            (Trig::Sin, 4) => (1, 1, 0),
            (Trig::Sin, 5) => (2, 2, 1),
            (Trig::Sin, 6) => (2, 1, 1),
            (Trig::Sin, 7) => (1, 2, 1),
            (Trig::Sin, 8) => (1, 1, -1),
            _ => unreachable!("type validated on construction"),
        };
        EntryParams {
            row,
            col,
            den_shift,
        }
    }

    /// Smallest supported size.
    pub fn min_size(&self) -> usize {
        if *self == Dtt::dct(1) {
            2
        } else {
            1
        }
    }

    pub fn check_size(&self, n: usize) -> Result<(), TransformError> {
        if !(1..=8).contains(&self.ty) {
            return Err(TransformError::InvalidType(self.name()));
        }
        if n < self.min_size() {
            return Err(TransformError::InvalidSize {
                name: self.name(),
                n,
                reason: format!("requires n >= {}", self.min_size()),
            });
        }
        Ok(())
    }

    /// `θ_k` as the fraction `(num, den)` of π, so that `α_k = cos θ_k`.
    pub fn theta(&self, k: usize, n: usize) -> (i128, i128) {
        let p = self.entry_params();
        (2 * k as i128 + p.row, 2 * n as i128 + p.den_shift)
    }

    /// Zeros of the boundary polynomial in row order.
    pub fn zeros(&self, n: usize) -> Vec<f64> {
        (0..n)
            .map(|k| {
                let (num, den) = self.theta(k, n);
                cos_pi(num, den)
            })
            .collect()
    }

    /// The scaling function `f(α_k)` relating this DTT to its polynomial transform.
    pub fn scaling(&self, n: usize) -> Vec<f64> {
        let (kind, _) = self.pairing();
        (0..n)
            .map(|k| {
                let (num, den) = self.theta(k, n);
                match kind {
                    ChebyshevKind::T => 1.0,
                    ChebyshevKind::U => sin_pi(num, den),
                    ChebyshevKind::V => cos_pi(num, 2 * den),
                    ChebyshevKind::W => sin_pi(num, 2 * den),
                }
            })
            .collect()
    }

    /// The pure cosine or sine matrix.
    pub fn unscaled(&self, n: usize) -> Result<RMatrix, TransformError> {
        self.check_size(n)?;
        let p = self.entry_params();
        let den = 2 * (2 * n as i128 + p.den_shift);
        Ok(RMatrix::from_fn(n, n, |k, l| {
            let num = (2 * k as i128 + p.row) * (2 * l as i128 + p.col);
            match self.trig {
                Trig::Cos => cos_pi(num, den),
                Trig::Sin => sin_pi(num, den),
            }
        }))
    }

    /// Orthogonal version: the unscaled matrix with row, column and global factors.
    pub fn orthogonal(&self, n: usize) -> Result<RMatrix, TransformError> {
        let base = self.unscaled(n)?;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let first = |i: usize| if i == 0 { h } else { 1.0 };
        let last = |i: usize| if i + 1 == n { h } else { 1.0 };
        let nf = n as f64;
        type Weight<'a> = &'a dyn Fn(usize) -> f64;
        let (global, row, col): (f64, Weight, Weight) = match (self.trig, self.ty) {
            (Trig::Cos, 1) => ((2.0 / (nf - 1.0)).sqrt(), &|i| first(i) * last(i), &|i| {
                first(i) * last(i)
            }),
            (Trig::Cos, 2) => ((2.0 / nf).sqrt(), &first, &|_| 1.0),
            (Trig::Cos, 3) => ((2.0 / nf).sqrt(), &|_| 1.0, &first),
            (Trig::Cos, 4) => ((2.0 / nf).sqrt(), &|_| 1.0, &|_| 1.0),
            (Trig::Cos, 5) => ((2.0 / (nf - 0.5)).sqrt(), &first, &first),
            (Trig::Cos, 6) => ((2.0 / (nf - 0.5)).sqrt(), &first, &last),
            (Trig::Cos, 7) => ((2.0 / (nf - 0.5)).sqrt(), &last, &first),
            (Trig::Cos, 8) => ((2.0 / (nf + 0.5)).sqrt(), &|_| 1.0, &|_| 1.0),
            (Trig::Sin, 1) => ((2.0 / (nf + 1.0)).sqrt(), &|_| 1.0, &|_| 1.0),
            (Trig::Sin, 2) => ((2.0 / nf).sqrt(), &last, &|_| 1.0),
            (Trig::Sin, 3) => ((2.0 / nf).sqrt(), &|_| 1.0, &last),
            (Trig::Sin, 4) => ((2.0 / nf).sqrt(), &|_| 1.0, &|_| 1.0),
            (Trig::Sin, 5) | (Trig::Sin, 6) | (Trig::Sin, 7) => {
                ((2.0 / (nf + 0.5)).sqrt(), &|_| 1.0, &|_| 1.0)
            }
            (Trig::Sin, 8) => ((2.0 / (nf - 0.5)).sqrt(), &last, &last),
            _ => unreachable!("type validated by unscaled()"),
        };
        Ok(RMatrix::from_fn(n, n, |k, l| {
            global * row(k) * col(l) * base[(k, l)]
        }))
    }
}

impl fmt::Display for Dtt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Dtt {
    type Err = TransformError;

    /// Accepts `dct2`, `DCT-2`, `dst7` and similar.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase().replace('-', "");
        let (trig, rest) = if let Some(rest) = lower.strip_prefix("dct") {
            (Trig::Cos, rest)
        } else if let Some(rest) = lower.strip_prefix("dst") {
            (Trig::Sin, rest)
        } else {
            return Err(TransformError::UnknownFamily(s.to_string()));
        };
        let ty: u8 = rest
            .parse()
            .map_err(|_| TransformError::UnknownFamily(s.to_string()))?;
        if !(1..=8).contains(&ty) {
            return Err(TransformError::InvalidType(s.to_string()));
        }
        Ok(Dtt { trig, ty })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn pairing_is_a_bijection() {
        let mut seen = std::collections::HashSet::new();
        for kind in ChebyshevKind::ALL {
            for form in BoundaryForm::ALL {
                let d = Dtt::from_pairing(kind, form);
                assert_eq!(d.pairing(), (kind, form));
                seen.insert(d);
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn duals_and_self_duals() {
        assert_eq!(Dtt::dct(3).dual(), Dtt::dst(3));
        for d in Dtt::all() {
            assert_eq!(d.dual().dual(), d);
        }
        let self_dual: Vec<String> = Dtt::all()
            .into_iter()
            .filter(Dtt::is_self_dual)
            .map(|d| d.name())
            .collect();
        assert_eq!(self_dual, vec!["DCT-1", "DCT-2", "DST-1", "DST-2"]);
    }

    #[test]
    fn groups_have_four_members() {
        for g in ChebyshevKind::ALL {
            assert_eq!(Dtt::all().iter().filter(|d| d.group() == g).count(), 4);
        }
        for d in [Dtt::dct(3), Dtt::dct(4), Dtt::dst(3), Dtt::dst(4)] {
            assert_eq!(d.group(), ChebyshevKind::T);
        }
    }

    #[test]
    fn dct2_entries() {
        let m = Dtt::dct(2).unscaled(4).unwrap();
        for k in 0..4 {
            for l in 0..4 {
                let expect = (k as f64 * (l as f64 + 0.5) * PI / 4.0).cos();
                assert!((m[(k, l)] - expect).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn dct1_requires_two_points() {
        assert!(Dtt::dct(1).unscaled(1).is_err());
        assert!(Dtt::dst(1).unscaled(1).is_ok());
    }

    #[test]
    fn parse_names() {
        assert_eq!("dct2".parse::<Dtt>().unwrap(), Dtt::dct(2));
        assert_eq!("DST-7".parse::<Dtt>().unwrap(), Dtt::dst(7));
        assert!("dct9".parse::<Dtt>().is_err());
        assert!("dft2".parse::<Dtt>().is_err());
    }
}

//! Identities between DTTs: duality, sparse base changes inside a group, and
//! the translations between skew DTTs.

use std::collections::{HashMap, VecDeque};

use nalgebra::DMatrix;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{self, inverse_real, max_abs_real, RMatrix};
use crate::poly::{boundary_poly, cheb_poly, rat, ChebyshevKind, Polynomial, Rational, Scalar};
use crate::spectral::{crt_base_change, SpectralError};
use crate::transforms::{
    inverse_skew, inverse_skew_base, skew_dtt, skew_scaling, skew_translation, Dtt, TransformError,
};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum RelationError {
    #[error("no base change connects {from} and {to}")]
    UnsupportedPair { from: String, to: String },

    #[error("zero orders of {from} and {to} do not match")]
    OrderMismatch { from: String, to: String },

    #[error("scaling of {0} vanishes at a shared zero")]
    VanishingScale(String),

    #[error(transparent)]
    Transform(#[from] TransformError),

    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

impl From<linalg::LinalgError> for RelationError {
    fn from(e: linalg::LinalgError) -> Self {
        RelationError::Transform(e.into())
    }
}

/// The four DTTs whose boundary polynomials share one Chebyshev factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DttGroup {
    pub tag: ChebyshevKind,
    pub members: Vec<Dtt>,
}

impl DttGroup {
    pub fn new(tag: ChebyshevKind) -> Self {
        let members = Dtt::all()
            .into_iter()
            .filter(|d| d.group() == tag)
            .collect();
        DttGroup { tag, members }
    }

    pub fn all() -> Vec<DttGroup> {
        ChebyshevKind::ALL.iter().map(|&k| Self::new(k)).collect()
    }

    pub fn of(dtt: Dtt) -> Self {
        Self::new(dtt.group())
    }

    pub fn name(&self) -> String {
        format!("{:?}-group", self.tag)
    }

    pub fn contains(&self, dtt: Dtt) -> bool {
        self.members.contains(&dtt)
    }
}

/// `diag((−1)^k)·DTT_n = DTT′_n·J_n` for the dual `DTT′`.
#[derive(Clone, Debug)]
pub struct Duality {
    pub dtt: Dtt,
    pub dual: Dtt,
    pub j: RMatrix,
    pub d: Vec<f64>,
    pub residual: f64,
}

pub fn dual_of(dtt: Dtt, n: usize) -> Result<Duality, RelationError> {
    let dual = dtt.dual();
    let a = dtt.unscaled(n)?;
    let b = dual.unscaled(n)?;
    let j = linalg::real_part(&linalg::reversal(n));
    let d: Vec<f64> = (0..n)
        .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    let residual = max_abs_real(&(linalg::diag_real(&d) * a - b * &j));
    Ok(Duality {
        dtt,
        dual,
        j,
        d,
        residual,
    })
}

/// How the two sides of a [`BaseChange`] are arranged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// `diag(d)·from = to·S`, both of size `n`.
    SameModule,
    /// `diag(d)·from_{n+1} = Π·(to_n ⊕ I_1)·S`, where `Π` moves the last row to `root_row`.
    Crt { root_row: usize },
    /// `S·from·diag(d) = to`.
    Inverted,
}

/// A verified sparse relation between two DTTs.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub from: Dtt,
    pub from_n: usize,
    pub to: Dtt,
    pub to_n: usize,
    pub form: Form,
    pub d: Vec<f64>,
    pub s: DMatrix<Rational>,
    pub residual: f64,
}

impl BaseChange {
    pub fn s_f64(&self) -> RMatrix {
        self.s.map(|v| Scalar::to_f64(&v))
    }

    pub fn nonzeros(&self) -> usize {
        self.s.iter().filter(|v| !v.is_zero()).count()
    }

    /// Factors `(A, B)` with `S = A·B⁻¹` and both factors sparse.
    ///
    /// A sparse `S` is returned as `(S, None)`. Otherwise `B` converts the `T` basis into
    /// the `from` basis, so `A = S·B` expresses `T_ℓ` in the target coordinates.
    pub fn sparse_factors(&self) -> (DMatrix<Rational>, Option<DMatrix<Rational>>) {
        let size = self.from_n.max(self.to_n);
        if self.form == Form::Inverted || self.nonzeros() <= 3 * size {
            return (self.s.clone(), None);
        }
        let (kind, _) = self.from.pairing();
        let b = chebyshev_base_change(ChebyshevKind::T, kind, self.s.ncols());
        let a = DMatrix::from_fn(self.s.nrows(), b.ncols(), |i, j| {
            (0..b.nrows()).fold(Rational::zero(), |acc, k| {
                acc + self.s[(i, k)].clone() * b[(k, j)].clone()
            })
        });
        (a, Some(b))
    }

    /// `Π·(to ⊕ I_1)` for the CRT form, `to` otherwise.
    fn padded(&self, to: &RMatrix) -> RMatrix {
        match self.form {
            Form::Crt { root_row } => {
                let m = self.from_n;
                let mut out = RMatrix::zeros(m, m);
                let mut src = 0;
                for row in 0..m {
                    if row == root_row {
                        out[(row, m - 1)] = 1.0;
                    } else {
                        for c in 0..m - 1 {
                            out[(row, c)] = to[(src, c)];
                        }
                        src += 1;
                    }
                }
                out
            }
            _ => to.clone(),
        }
    }

    /// Recomputes `to` from `from` through the relation.
    pub fn forward(&self, from: &RMatrix) -> Result<RMatrix, RelationError> {
        let s = self.s_f64();
        let d = linalg::diag_real(&self.d);
        Ok(match self.form {
            Form::Inverted => s * from * d,
            Form::SameModule => d * from * inverse_real(&s)?,
            Form::Crt { root_row } => {
                let full = d * from * inverse_real(&s)?;
                let n = self.to_n;
                let rows: Vec<usize> = (0..=n).filter(|&r| r != root_row).collect();
                RMatrix::from_fn(n, n, |i, j| full[(rows[i], j)])
            }
        })
    }

    /// Recomputes `from` from `to` through the relation.
    pub fn backward(&self, to: &RMatrix) -> Result<RMatrix, RelationError> {
        let s = self.s_f64();
        Ok(match self.form {
            Form::Inverted => {
                let dinv: Vec<f64> = self.d.iter().map(|v| 1.0 / v).collect();
                inverse_real(&s)? * to * linalg::diag_real(&dinv)
            }
            _ => {
                let dinv: Vec<f64> = self.d.iter().map(|v| 1.0 / v).collect();
                linalg::diag_real(&dinv) * self.padded(to) * s
            }
        })
    }

    fn verify(mut self) -> Result<Self, RelationError> {
        let from = self.from.unscaled(self.from_n)?;
        let to = self.to.unscaled(self.to_n)?;
        let s = self.s_f64();
        let d = linalg::diag_real(&self.d);
        let (lhs, rhs) = match self.form {
            Form::Inverted => (&s * from * &d, to),
            _ => (&d * from, self.padded(&to) * s),
        };
        self.residual = max_abs_real(&(lhs - rhs));
        Ok(self)
    }
}

fn exact_to_f64(m: &DMatrix<Rational>) -> RMatrix {
    m.map(|v| Scalar::to_f64(&v))
}

fn basis(kind: ChebyshevKind, n: usize) -> Vec<Polynomial> {
    (0..n as i64).map(|l| cheb_poly(kind, l)).collect()
}

fn boundary(dtt: Dtt, n: usize) -> Polynomial {
    let (kind, form) = dtt.pairing();
    boundary_poly(kind, form, n as i64)
}

/// Coordinates of each `C_ℓ` (ℓ < n) in the `C′` basis, as columns.
fn chebyshev_base_change(from: ChebyshevKind, to: ChebyshevKind, n: usize) -> DMatrix<Rational> {
    let target = basis(to, n);
    let mut s = DMatrix::from_element(n, n, Rational::zero());
    for (l, b) in basis(from, n).into_iter().enumerate() {
        let mut rest = b;
        for k in (0..=l).rev() {
            let lead = target[k]
                .leading()
                .cloned()
                .expect("Chebyshev polynomials are nonzero");
            let c = rest.coeff(k) / lead;
            rest = &rest - &target[k].scale(&c);
            s[(k, l)] = c;
        }
    }
    s
}

fn same_zeros(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
}

fn same_module(from: Dtt, to: Dtt, n: usize) -> Result<BaseChange, RelationError> {
    let (kf, _) = from.pairing();
    let (kt, _) = to.pairing();
    if !same_zeros(&from.zeros(n), &to.zeros(n)) {
        return Err(RelationError::OrderMismatch {
            from: from.name(),
            to: to.name(),
        });
    }
    let ff = from.scaling(n);
    if ff.iter().any(|v| v.abs() < 1e-14) {
        return Err(RelationError::VanishingScale(from.name()));
    }
    let d = to.scaling(n).iter().zip(&ff).map(|(t, f)| t / f).collect();
    BaseChange {
        from,
        from_n: n,
        to,
        to_n: n,
        form: Form::SameModule,
        d,
        s: chebyshev_base_change(kf, kt, n),
        residual: f64::NAN,
    }
    .verify()
}

/// Relation between `big` of size `n+1` and `small` of size `n` when
/// `p_big = (x − ρ)·p_small` up to a scalar.
fn crt(big: Dtt, small: Dtt, n: usize) -> Result<BaseChange, RelationError> {
    let unsupported = || RelationError::UnsupportedPair {
        from: format!("{}_{}", big.name(), n + 1),
        to: format!("{}_{}", small.name(), n),
    };
    if n < small.min_size() || n + 1 < big.min_size() {
        return Err(unsupported());
    }
    let p_big = boundary(big, n + 1);
    let p_small = boundary(small, n);
    let (q, r) = p_big.div_rem(&p_small).map_err(|_| unsupported())?;
    if !r.is_zero() || q.degree() != Some(1) {
        return Err(unsupported());
    }
    let linear = q.monic();
    let root = -linear.coeff(0);
    let rho = Scalar::to_f64(&root);
    let (kb, _) = big.pairing();
    let (ks, _) = small.pairing();
    let s = crt_base_change(
        &p_big,
        &basis(kb, n + 1),
        &[(p_small, basis(ks, n)), (linear, vec![Polynomial::one()])],
    )?;
    let zb = big.zeros(n + 1);
    let root_row = zb
        .iter()
        .position(|z| (z - rho).abs() < 1e-12)
        .ok_or_else(unsupported)?;
    let rest: Vec<f64> = (0..=n).filter(|&k| k != root_row).map(|k| zb[k]).collect();
    if !same_zeros(&rest, &small.zeros(n)) {
        return Err(RelationError::OrderMismatch {
            from: big.name(),
            to: small.name(),
        });
    }
    let fb = big.scaling(n + 1);
    if fb.iter().any(|v| v.abs() < 1e-14) {
        return Err(RelationError::VanishingScale(big.name()));
    }
    let fs = small.scaling(n);
    let mut g = Vec::with_capacity(n + 1);
    let mut src = 0;
    for k in 0..=n {
        if k == root_row {
            g.push(1.0);
        } else {
            g.push(fs[src]);
            src += 1;
        }
    }
    let d = g.iter().zip(&fb).map(|(a, b)| a / b).collect();
    BaseChange {
        from: big,
        from_n: n + 1,
        to: small,
        to_n: n,
        form: Form::Crt { root_row },
        d,
        s,
        residual: f64::NAN,
    }
    .verify()
}

/// `S′_n`: `(0,0) = 1`, and `½` at `(ℓ,ℓ)` and `(ℓ−1,ℓ)` for `ℓ ≥ 1`.
pub fn s_prime(n: usize) -> DMatrix<Rational> {
    DMatrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => rat(1, 1),
        (i, j) if j >= 1 && (i == j || i + 1 == j) => rat(1, 2),
        _ => rat(0, 1),
    })
}

/// `S_n`: ones on the diagonal and the superdiagonal.
pub fn s_upper(n: usize) -> DMatrix<Rational> {
    DMatrix::from_fn(n, n, |i, j| {
        if i == j || i + 1 == j {
            rat(1, 1)
        } else {
            rat(0, 1)
        }
    })
}

/// `B_{n+1}`: `T_ℓ mod (V_n − V_{n−1})` in the `V` basis, over the row `((−1)^ℓ)`.
pub fn b_matrix(n: usize) -> DMatrix<Rational> {
    let mut b = DMatrix::from_element(n + 1, n + 1, rat(0, 1));
    b[(0, 0)] = rat(1, 1);
    for l in 1..n {
        b[(l, l)] = rat(1, 2);
        b[(l - 1, l)] = rat(1, 2);
    }
    if n >= 1 {
        b[(n - 1, n)] = rat(1, 1);
    }
    for l in 0..=n {
        b[(n, l)] = rat(if l % 2 == 0 { 1 } else { -1 }, 1);
    }
    b
}

/// `diag(cos((2k+1)π/(4n)))`, the ratio of the DCT-4 and DCT-3 scalings.
fn dct4_scaling(n: usize) -> Vec<f64> {
    Dtt::dct(4).scaling(n)
}

/// The inverted relation `S_n·DCT-2_n·½D_n⁻¹ = DCT-4_n`.
fn inverted(n: usize) -> Result<BaseChange, RelationError> {
    let d = dct4_scaling(n).iter().map(|v| 0.5 / v).collect();
    BaseChange {
        from: Dtt::dct(2),
        from_n: n,
        to: Dtt::dct(4),
        to_n: n,
        form: Form::Inverted,
        d,
        s: s_upper(n),
        residual: f64::NAN,
    }
    .verify()
}

/// The transposed relation `½D_n⁻¹·DCT-3_n·S_nᵀ = DCT-4_n`; returns its residual.
pub fn transposed_residual(n: usize) -> Result<f64, RelationError> {
    let d: Vec<f64> = dct4_scaling(n).iter().map(|v| 0.5 / v).collect();
    let lhs =
        linalg::diag_real(&d) * Dtt::dct(3).unscaled(n)? * exact_to_f64(&s_upper(n)).transpose();
    Ok(max_abs_real(&(lhs - Dtt::dct(4).unscaled(n)?)))
}

/// Sparse base change between `from` and `to`, verified numerically.
///
/// Same-module pairs return `diag(d)·from = to·S` with `S` built from the
/// Chebyshev conversion identities; when `from`'s basis is dense in `to`'s,
/// the pair is swapped so that `S` stays sparse. Pairs whose boundary
/// polynomials differ by one linear factor use the Chinese remainder form, with
/// the larger transform of size `n+1` as `from`. The pair (DCT-2, DCT-4) is
/// the inverted relation.
pub fn base_change(from: Dtt, to: Dtt, n: usize) -> Result<BaseChange, RelationError> {
    from.check_size(n)?;
    to.check_size(n)?;
    if from == Dtt::dct(2) && to == Dtt::dct(4) {
        return inverted(n);
    }
    if from.group() != to.group() {
        return Err(RelationError::UnsupportedPair {
            from: from.name(),
            to: to.name(),
        });
    }
    if boundary(from, n).monic() == boundary(to, n).monic() {
        let forward = same_module(from, to, n)?;
        if forward.nonzeros() <= 3 * n || from == to {
            return Ok(forward);
        }
        return same_module(to, from, n);
    }
    crt(from, to, n).or_else(|_| crt(to, from, n))
}

/// One step of a base-change path, with the direction it is walked in.
#[derive(Clone, Debug)]
pub struct PathStep {
    pub relation: BaseChange,
    pub reversed: bool,
}

/// A chain of relations from `(from, n)` to `(to, n)` and the residual of the composition.
#[derive(Clone, Debug)]
pub struct BaseChangePath {
    pub steps: Vec<PathStep>,
    pub residual: f64,
    pub max_nonzeros_ratio: f64,
}

type Node = (Dtt, usize);

fn neighbours(node: Node, lo: usize, hi: usize) -> Vec<(Node, BaseChange, bool)> {
    let (dtt, m) = node;
    let mut out = Vec::new();
    for other in DttGroup::of(dtt).members {
        if other == dtt {
            continue;
        }
        if m >= other.min_size() && boundary(dtt, m).monic() == boundary(other, m).monic() {
            if let Ok(rel) = same_module(dtt, other, m) {
                if rel.nonzeros() <= 3 * m {
                    out.push(((other, m), rel, false));
                } else if let Ok(rev) = same_module(other, dtt, m) {
                    out.push(((other, m), rev, true));
                }
            }
        }
        if m > lo {
            if let Ok(rel) = crt(dtt, other, m - 1) {
                out.push(((other, m - 1), rel, false));
            }
        }
        if m < hi {
            if let Ok(rel) = crt(other, dtt, m) {
                out.push(((other, m + 1), rel, true));
            }
        }
    }
    out
}

/// Shortest chain of same-module and CRT relations inside one group, with sizes kept within `n ± 2`.
pub fn base_change_path(from: Dtt, to: Dtt, n: usize) -> Result<BaseChangePath, RelationError> {
    if from.group() != to.group() {
        return Err(RelationError::UnsupportedPair {
            from: from.name(),
            to: to.name(),
        });
    }
    from.check_size(n)?;
    to.check_size(n)?;
    let (lo, hi) = (n.saturating_sub(2).max(1), n + 2);
    let start = (from, n);
    let goal = (to, n);
    let mut prev: HashMap<Node, (Node, BaseChange, bool)> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    let mut seen = vec![start];
    while let Some(node) = queue.pop_front() {
        if node == goal {
            break;
        }
        for (next, rel, reversed) in neighbours(node, lo, hi) {
            if !seen.contains(&next) {
                seen.push(next);
                prev.insert(next, (node, rel, reversed));
                queue.push_back(next);
            }
        }
    }
    let mut steps = Vec::new();
    let mut cur = goal;
    while cur != start {
        let (p, rel, reversed) = prev
            .get(&cur)
            .cloned()
            .ok_or(RelationError::UnsupportedPair {
                from: from.name(),
                to: to.name(),
            })?;
        steps.push(PathStep {
            relation: rel,
            reversed,
        });
        cur = p;
    }
    steps.reverse();
    let mut m = from.unscaled(n)?;
    let mut ratio: f64 = 0.0;
    for step in &steps {
        let r = &step.relation;
        ratio = ratio.max(r.nonzeros() as f64 / (3 * r.from_n.max(r.to_n)) as f64);
        m = if step.reversed {
            r.backward(&m)?
        } else {
            r.forward(&m)?
        };
    }
    let residual = max_abs_real(&(m - to.unscaled(n)?));
    Ok(BaseChangePath {
        steps,
        residual,
        max_nonzeros_ratio: ratio,
    })
}

/// Residuals of the skew identities for one `(n, r)`.
#[derive(Clone, Debug)]
pub struct SkewRelations {
    pub n: usize,
    pub r: Rational,
    /// `D(r)·DCT-3(r) = DCT-4(r)·S′` and its analogues for every pair of families.
    pub base_change: f64,
    /// `iDTT(r)·DTT(r) = n/2·E`.
    pub inverse: f64,
    /// `iDTT(r) = X(r)⁻¹·iDTT(½)`.
    pub translated_inverse: f64,
    /// `S·iDCT-3(r)·½D(r)⁻¹ = iDCT-4(r)`.
    pub inverted_base_change: f64,
}

impl SkewRelations {
    pub fn max_residual(&self) -> f64 {
        [
            self.base_change,
            self.inverse,
            self.translated_inverse,
            self.inverted_base_change,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `diag(f_to/f_from)·DTT_from(r) = DTT_to(r)·S` residual with `S` from the Chebyshev conversions.
pub fn skew_base_change_residual(
    from: ChebyshevKind,
    to: ChebyshevKind,
    n: usize,
    r: &Rational,
) -> Result<f64, RelationError> {
    let s = exact_to_f64(&chebyshev_base_change(from, to, n));
    let ff = skew_scaling(from, n, r);
    let ft = skew_scaling(to, n, r);
    let d: Vec<f64> = ft.iter().zip(&ff).map(|(t, f)| t / f).collect();
    let lhs = linalg::diag_real(&d) * skew_dtt(from, n, r)?;
    Ok(max_abs_real(&(lhs - skew_dtt(to, n, r)? * s)))
}

/// Checks every skew identity at `(n, r)`; `r` must keep the skew transforms invertible.
pub fn skew_relations(n: usize, r: &Rational) -> Result<SkewRelations, RelationError> {
    use ChebyshevKind::*;
    let mut base: f64 = 0.0;
    for (from, to) in [(T, U), (T, V), (T, W), (V, U), (W, U)] {
        base = base.max(skew_base_change_residual(from, to, n, r)?);
    }
    let half_n = n as f64 / 2.0;
    let mut inverse: f64 = 0.0;
    let mut translated: f64 = 0.0;
    for kind in ChebyshevKind::ALL {
        let fwd = skew_dtt(kind, n, r)?;
        let inv = inverse_skew(kind, n, r)?;
        let e: Vec<f64> = (0..n)
            .map(|k| match kind {
                T if k == 0 => 2.0,
                U if k + 1 == n => 2.0,
                _ => 1.0,
            } * half_n)
            .collect();
        inverse = inverse.max(max_abs_real(&(&inv * &fwd - linalg::diag_real(&e))));
        let x_inv = inverse_real(&skew_translation(kind, n, r))?;
        let base_inv = inverse_skew_base(kind).unscaled(n)?;
        translated = translated.max(max_abs_real(&(x_inv * base_inv - inv)));
    }
    let d: Vec<f64> = skew_scaling(V, n, r).iter().map(|v| 0.5 / v).collect();
    let lhs = exact_to_f64(&s_upper(n)) * inverse_skew(T, n, r)? * linalg::diag_real(&d);
    let inverted = max_abs_real(&(lhs - inverse_skew(V, n, r)?));
    Ok(SkewRelations {
        n,
        r: r.clone(),
        base_change: base,
        inverse,
        translated_inverse: translated,
        inverted_base_change: inverted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_have_four_members() {
        for g in DttGroup::all() {
            assert_eq!(g.members.len(), 4, "{}", g.name());
        }
        assert!(DttGroup::new(ChebyshevKind::T).contains(Dtt::dct(4)));
    }

    #[test]
    fn dct3_dual_is_dst3() {
        let d = dual_of(Dtt::dct(3), 6).unwrap();
        assert_eq!(d.dual, Dtt::dst(3));
        assert!(d.residual < 1e-12);
        let j2 = &d.j * &d.j;
        assert_eq!(j2, RMatrix::identity(6, 6));
    }

    #[test]
    fn dct1_is_self_dual() {
        let d = dual_of(Dtt::dct(1), 5).unwrap();
        assert_eq!(d.dual, Dtt::dct(1));
        assert!(d.residual < 1e-12);
    }

    #[test]
    fn dct3_to_dct4_uses_s_prime() {
        for n in 1..=9 {
            let b = base_change(Dtt::dct(3), Dtt::dct(4), n).unwrap();
            assert_eq!(b.s, s_prime(n));
            assert!(b.residual < 1e-12);
            for (k, v) in b.d.iter().enumerate() {
                let expect = ((2 * k + 1) as f64 * std::f64::consts::PI / (4 * n) as f64).cos();
                assert!((v - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn dct2_to_dct4_inverted() {
        for n in 1..=9 {
            let b = base_change(Dtt::dct(2), Dtt::dct(4), n).unwrap();
            assert_eq!(b.form, Form::Inverted);
            assert!(b.residual < 1e-12, "n={n} residual {}", b.residual);
            assert!(transposed_residual(n).unwrap() < 1e-12);
        }
    }

    #[test]
    fn dct1_dct2_crt_matrix() {
        let b = base_change(Dtt::dct(1), Dtt::dct(2), 3).unwrap();
        assert_eq!(b.form, Form::Crt { root_row: 3 });
        assert_eq!(b.s, b_matrix(3));
        assert!(b.residual < 1e-12);
        let h = rat(1, 2);
        let expect = [
            [rat(1, 1), h.clone(), rat(0, 1), rat(0, 1)],
            [rat(0, 1), h.clone(), h.clone(), rat(0, 1)],
            [rat(0, 1), rat(0, 1), h, rat(1, 1)],
            [rat(1, 1), rat(-1, 1), rat(1, 1), rat(-1, 1)],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(&b.s[(i, j)], v);
            }
        }
    }

    #[test]
    fn cross_group_is_rejected() {
        assert!(matches!(
            base_change(Dtt::dct(3), Dtt::dct(1), 4),
            Err(RelationError::UnsupportedPair { .. })
        ));
    }

    #[test]
    fn u_group_path() {
        let p = base_change_path(Dtt::dct(2), Dtt::dst(2), 6).unwrap();
        assert!(p.steps.len() >= 2);
        assert!(p.residual < 1e-9, "residual {}", p.residual);
        assert!(p.max_nonzeros_ratio <= 1.0);
    }

    #[test]
    fn skew_identities_at_one_third() {
        let rel = skew_relations(4, &rat(1, 3)).unwrap();
        assert!(rel.max_residual() < 1e-10, "{rel:?}");
    }

    #[test]
    fn skew_identities_reduce_at_half() {
        let rel = skew_relations(5, &rat(1, 2)).unwrap();
        assert!(rel.max_residual() < 1e-10);
        for kind in ChebyshevKind::ALL {
            let inv = inverse_skew(kind, 5, &rat(1, 2)).unwrap();
            let base = inverse_skew_base(kind).unscaled(5).unwrap();
            assert!(max_abs_real(&(inv - base)) < 1e-12);
        }
    }
}

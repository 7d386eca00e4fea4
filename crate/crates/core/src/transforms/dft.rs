//! DFTs of types 1–4, their real versions (RDFT, DHT) and the rational QDFT.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::TransformError;
use crate::linalg::{c, direct_sum, kron, to_complex, CMatrix, RMatrix};
use crate::poly::{rat, Rational};
use crate::trig::{cos_pi, sin_pi};

fn check_type(name: &str, t: u8) -> Result<(), TransformError> {
    if (1..=4).contains(&t) {
        Ok(())
    } else {
        Err(TransformError::InvalidType(format!("{name}-{t}")))
    }
}

fn check_n(name: &str, n: usize) -> Result<(), TransformError> {
    if n == 0 {
        return Err(TransformError::InvalidSize {
            name: name.into(),
            n,
            reason: "requires n >= 1".into(),
        });
    }
    Ok(())
}

/// Offsets `(2c, 2d)` of `DFT-t = [ω^{(k+c)(ℓ+d)}]`.
fn offsets(t: u8) -> (i128, i128) {
    match t {
        1 => (0, 0),
        2 => (0, 1),
        3 => (1, 0),
        _ => (1, 1),
    }
}

/// Angle `2π(k+c)(ℓ+d)/n` as the fraction `(num, den)` of π.
fn angle(t: u8, n: usize, k: usize, l: usize) -> (i128, i128) {
    let (c2, d2) = offsets(t);
    ((2 * k as i128 + c2) * (2 * l as i128 + d2), 2 * n as i128)
}

/// `DFT-t_n = [ω_n^{(k+c)(ℓ+d)}]` with `ω_n = e^{−2πj/n}`.
pub fn dft(t: u8, n: usize) -> Result<CMatrix, TransformError> {
    check_type("DFT", t)?;
    check_n("DFT", n)?;
    Ok(CMatrix::from_fn(n, n, |k, l| {
        let (num, den) = angle(t, n, k, l);
        Complex64::new(cos_pi(num, den), -sin_pi(num, den))
    }))
}

/// `(1/√n)·DFT-t_n`.
pub fn dft_unitary(t: u8, n: usize) -> Result<CMatrix, TransformError> {
    Ok(dft(t, n)? * c(1.0 / (n as f64).sqrt()))
}

/// Zeros in DFT row order: `ω_n^k` for types 1, 2 and `ω_n^{k+½}` for types 3, 4.
pub fn dft_zeros(t: u8, n: usize) -> Vec<Complex64> {
    let half = if t >= 3 { 1 } else { 0 };
    (0..n)
        .map(|k| {
            let num = 2 * k as i128 + half;
            Complex64::new(cos_pi(num, n as i128), -sin_pi(num, n as i128))
        })
        .collect()
}

/// Number of leading cosine rows of `RDFT-t_n`.
fn cos_rows(t: u8, n: usize) -> usize {
    match t {
        1 => n / 2 + 1,
        2 | 3 => (n - 1) / 2 + 1,
        _ => n / 2,
    }
}

/// `RDFT-t_n`: cosine rows followed by negated sine rows.
pub fn rdft(t: u8, n: usize) -> Result<RMatrix, TransformError> {
    check_type("RDFT", t)?;
    check_n("RDFT", n)?;
    let split = cos_rows(t, n);
    Ok(RMatrix::from_fn(n, n, |k, l| {
        let (num, den) = angle(t, n, k, l);
        if k < split {
            cos_pi(num, den)
        } else {
            -sin_pi(num, den)
        }
    }))
}

/// `√(2/n)·D·RDFT-t_n` with `D` holding `1/√2` at the rows that carry a real one-dimensional component.
pub fn rdft_orthogonal(t: u8, n: usize) -> Result<RMatrix, TransformError> {
    let m = rdft(t, n)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let special = |k: usize| match t {
        1 | 2 => k == 0 || (n.is_multiple_of(2) && k == n / 2),
        _ => n % 2 == 1 && k == (n - 1) / 2,
    };
    let g = (2.0 / n as f64).sqrt();
    Ok(RMatrix::from_fn(n, n, |k, l| {
        g * if special(k) { h } else { 1.0 } * m[(k, l)]
    }))
}

/// `DHT-t_n = [cas 2π(k+c)(ℓ+d)/n]`.
pub fn dht(t: u8, n: usize) -> Result<RMatrix, TransformError> {
    check_type("DHT", t)?;
    check_n("DHT", n)?;
    Ok(RMatrix::from_fn(n, n, |k, l| {
        let (num, den) = angle(t, n, k, l);
        cos_pi(num, den) + sin_pi(num, den)
    }))
}

pub fn dht_orthogonal(t: u8, n: usize) -> Result<RMatrix, TransformError> {
    Ok(dht(t, n)? / (n as f64).sqrt())
}

/// Positions allowed in the x-shaped matrices relating real DFTs to `DFT-t`.
///
/// Types 1, 2 pair `k` with `(n−k) mod n`; types 3, 4 pair `k` with `n−1−k`.
pub fn xshape_pattern(t: u8, n: usize) -> Vec<Vec<bool>> {
    let mut pattern = vec![vec![false; n]; n];
    for (k, row) in pattern.iter_mut().enumerate() {
        row[k] = true;
        let partner = if t <= 2 { (n - k) % n } else { n - 1 - k };
        row[partner] = true;
    }
    pattern
}

/// Exact `QDFT_{2^k}` via `QDFT_{2m} = (QDFT_m ⊕ I_m)(DFT_2 ⊗ I_m)`.
pub fn qdft_exact(n: usize) -> Result<DMatrix<Rational>, TransformError> {
    if n < 2 || !n.is_power_of_two() {
        return Err(TransformError::InvalidSize {
            name: "QDFT".into(),
            n,
            reason: "requires a power of two >= 2".into(),
        });
    }
    let one = rat(1, 1);
    let zero = rat(0, 1);
    let mut q =
        DMatrix::from_row_slice(2, 2, &[one.clone(), one.clone(), one.clone(), -one.clone()]);
    let mut m = 2;
    while m < n {
        let size = 2 * m;
        let mut left = DMatrix::from_element(size, size, zero.clone());
        for i in 0..m {
            for j in 0..m {
                left[(i, j)] = q[(i, j)].clone();
            }
            left[(m + i, m + i)] = one.clone();
        }
        let mut right = DMatrix::from_element(size, size, zero.clone());
        for i in 0..m {
            right[(i, i)] = one.clone();
            right[(i, m + i)] = one.clone();
            right[(m + i, i)] = one.clone();
            right[(m + i, m + i)] = -one.clone();
        }
        q = mat_mul(&left, &right);
        m = size;
    }
    Ok(q)
}

fn mat_mul(a: &DMatrix<Rational>, b: &DMatrix<Rational>) -> DMatrix<Rational> {
    DMatrix::from_fn(a.nrows(), b.ncols(), |i, j| {
        (0..a.ncols()).fold(rat(0, 1), |acc, k| {
            acc + a[(i, k)].clone() * b[(k, j)].clone()
        })
    })
}

/// Numeric `QDFT_n`, built by the same recursion in floating point.
pub fn qdft(n: usize) -> Result<CMatrix, TransformError> {
    let exact = qdft_exact(n)?;
    Ok(exact.map(|v| c(crate::poly::Scalar::to_f64(&v))))
}

/// Numeric recursion used as an independent check of [`qdft_exact`].
pub fn qdft_recursive(n: usize) -> Result<CMatrix, TransformError> {
    qdft_exact(n)?;
    let dft2 = to_complex(&RMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, -1.0]));
    let mut q = dft2.clone();
    let mut m = 2;
    while m < n {
        let id = CMatrix::identity(m, m);
        q = direct_sum(&q, &id) * kron(&dft2, &id);
        m *= 2;
    }
    Ok(q)
}

/// Block sizes `1, 1, 2, 4, …, n/2` of the QDFT decomposition.
pub fn qdft_blocks(n: usize) -> Vec<usize> {
    let mut blocks = vec![1];
    let mut m = 1;
    while m < n {
        blocks.push(m);
        m *= 2;
    }
    blocks
}

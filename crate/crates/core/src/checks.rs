//! Verification suites for the identities this crate implements.
//!
//! Each suite returns a [`Report`] holding the worst residual it observed. The
//! suites are deterministic: random filters and signals come from a seeded
//! ChaCha generator.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gmrf::{
    self, cyclic_shift, injective_on, is_spd, klt_residual, klt_vs_fourier, stochastic_normalize,
    GmrfCase, GmrfError, GmrfModel,
};
use crate::linalg::{
    self, diag_matrix, inverse, max_abs, max_abs_real, max_diff, off_diag_max, to_complex,
    unitarity_residual, CMatrix, LinalgError, RMatrix,
};
use crate::model::{
    model_from_matrix, subalgebra_of, support_size, BasisSpec, MatrixModel, ModelCatalog,
    ModelError, ProductModel, SignalModel,
};
use crate::poly::{
    cheb_poly, cheb_range, endpoint_values, extension_period_formula, leading_coefficient, rat,
    verify_cheb_identity, BoundaryForm, ChebyshevKind, Poly, PolyError, Polynomial, Rational,
    Recurrence, Scalar,
};
use crate::relations::{
    self, base_change, base_change_path, dual_of, s_prime, skew_relations, transposed_residual,
    DttGroup, RelationError,
};
use crate::spectral::{
    block_residual, convolve, diag_residual, xshape_residual, Report, SpectralError,
};
use crate::transforms::{
    dct1_orthogonalized, derive_scaling, dft, dft_unitary, dft_zeros, dht, dht_orthogonal,
    gnn_transform, pairing_table, qdft, qdft_blocks, qdft_exact, qdft_recursive, rdft,
    rdft_orthogonal, skew_base, skew_dtt, skew_polynomial, skew_scaling, skew_translation,
    xshape_pattern, Dtt, TransformError,
};

#[derive(Error, Debug)]
pub enum CheckError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Gmrf(#[from] GmrfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

type CheckResult = Result<Vec<Report>, CheckError>;

/// One named verification suite.
#[derive(Clone, Copy)]
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    run: fn() -> CheckResult,
}

impl Criterion {
    /// The individual checks of the suite.
    pub fn details(&self) -> Result<Vec<Report>, CheckError> {
        (self.run)()
    }

    /// Runs the suite; an internal error becomes a failing report naming the error.
    pub fn run(&self) -> Report {
        match self.details() {
            Ok(parts) => Report::combine(self.name, &parts),
            Err(e) => Report::new(
                &format!("{} (error: {e})", self.name),
                Vec::new(),
                f64::NAN,
                0.0,
            ),
        }
    }
}

/// All suites in order.
pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "chebyshev-exactness",
            run: chebyshev_exactness,
        },
        Criterion {
            id: 2,
            name: "dtt-pairing",
            run: || dtt_pairing(&(2..=16).collect::<Vec<_>>()),
        },
        Criterion {
            id: 3,
            name: "fourier-diagonalization",
            run: fourier_diagonalization,
        },
        Criterion {
            id: 4,
            name: "spectral-convolution",
            run: spectral_convolution,
        },
        Criterion {
            id: 5,
            name: "orthogonality",
            run: orthogonality,
        },
        Criterion {
            id: 6,
            name: "signal-extensions",
            run: signal_extensions,
        },
        Criterion {
            id: 7,
            name: "relations-web",
            run: relations_web,
        },
        Criterion {
            id: 8,
            name: "qdft",
            run: qdft_suite,
        },
        Criterion {
            id: 9,
            name: "real-dft",
            run: real_dft,
        },
        Criterion {
            id: 10,
            name: "realizability",
            run: realizability,
        },
        Criterion {
            id: 11,
            name: "gmrf",
            run: gmrf_suite,
        },
        Criterion {
            id: 12,
            name: "multidimensional",
            run: multidimensional,
        },
    ]
}

/// Looks a suite up by number or name.
pub fn find(key: &str) -> Option<Criterion> {
    criteria()
        .into_iter()
        .find(|c| c.name == key || key.parse::<usize>().ok() == Some(c.id))
}

pub fn run_all() -> Vec<Report> {
    criteria().iter().map(Criterion::run).collect()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Polynomial of degree `deg` with coefficients `k/64`, `|k| ≤ 64`.
fn random_poly<F: Scalar>(rng: &mut ChaCha8Rng, deg: usize) -> Poly<F> {
    Poly::new(
        (0..=deg)
            .map(|_| F::from_rational(&rat(rng.random_range(-64..=64), 64)))
            .collect(),
    )
}

fn random_signal(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), 0.0))
        .collect()
}

fn max_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn real_residual(m: &RMatrix, target: &RMatrix) -> f64 {
    max_abs_real(&(m - target))
}

fn orthogonality_residual(m: &RMatrix) -> f64 {
    let n = m.nrows();
    real_residual(&(m * m.transpose()), &RMatrix::identity(n, n))
}

fn check(name: &str, sizes: Vec<usize>, residual: f64, tol: f64) -> Report {
    Report::new(name, sizes, residual, tol)
}

// 1. Chebyshev polynomials.

fn chebyshev_exactness() -> CheckResult {
    use ChebyshevKind::*;
    const R: i64 = 16;
    let offset = 2 * R + 2;
    let two_x = Polynomial::from_i64s(&[0, 2]);
    let half = rat(1, 2);
    let t_all = cheb_range(T, -offset, offset);
    let u_all = cheb_range(U, -offset, offset);
    let at = |v: &[Polynomial], n: i64| v[(n + offset) as usize].clone();
    let mut parts = Vec::new();
    for kind in ChebyshevKind::ALL {
        let all = cheb_range(kind, -offset, offset);
        let c = |n: i64| at(&all, n);
        let sizes = vec![R as usize];
        let recurrence = (-R..R).all(|n| c(n + 1) == &(&two_x * &c(n)) - &c(n - 1))
            && (-R..=R).all(|n| c(n) == cheb_poly(kind, n));
        parts.push(Report::boolean(
            &format!("{kind} recurrence"),
            sizes.clone(),
            recurrence,
        ));
        let symmetry = (-R..=R).all(|n| {
            c(-n)
                == match kind {
                    T => c(n),
                    U => -c(n - 2),
                    V => c(n - 1),
                    W => -c(n - 1),
                }
        });
        parts.push(Report::boolean(
            &format!("{kind} symmetry"),
            sizes.clone(),
            symmetry,
        ));
        let lemma_iii =
            (-R..=R).all(|n| c(n) == &(&c(1) * &at(&u_all, n - 1)) - &(&c(0) * &at(&u_all, n - 2)));
        parts.push(Report::boolean(
            &format!("{kind} U-expansion"),
            sizes.clone(),
            lemma_iii,
        ));
        let lemma_iv = (-R..=R).all(|k| {
            (-R..=R).all(|n| &at(&t_all, k) * &c(n) == (&c(n + k) + &c(n - k)).scale(&half))
        });
        parts.push(Report::boolean(
            &format!("{kind} product rule"),
            sizes.clone(),
            lemma_iv,
        ));
        let one = rat(1, 1);
        let lemma_47 = (0..=R).all(|n| {
            let p = c(n);
            p.leading() == Some(&leading_coefficient(kind, n as u32))
                && (p.eval(&one), p.eval(&-one.clone())) == endpoint_values(kind, n)
        });
        parts.push(Report::boolean(
            &format!("{kind} leading/endpoints"),
            sizes.clone(),
            lemma_47,
        ));
        for form in BoundaryForm::ALL {
            let ok = verify_cheb_identity(kind, form, -R..=R);
            parts.push(Report::boolean(
                &format!("{kind} {form} factorization"),
                sizes.clone(),
                ok,
            ));
        }
    }
    Ok(parts)
}

// 2. DTT pairing.

/// `unscaled·polynomial⁻¹` must be diagonal and equal to the closed-form scaling.
pub fn dtt_pairing(sizes: &[usize]) -> CheckResult {
    let mut parts = Vec::new();
    for dtt in Dtt::all() {
        for &n in sizes.iter().filter(|&&n| n >= dtt.min_size()) {
            let poly = ModelCatalog::dtt(dtt, n)?.polynomial_transform()?;
            let unscaled = to_complex(&dtt.unscaled(n)?);
            let d = &unscaled * inverse(&poly)?;
            let off = off_diag_max(&d);
            let expected: Vec<Complex64> = dtt.scaling(n).into_iter().map(linalg::c).collect();
            let scaling_err = match derive_scaling(&unscaled, &poly) {
                Ok(found) => max_dist(&found, &expected),
                Err(_) => f64::INFINITY,
            };
            parts.push(check(
                &format!("{dtt} n={n}"),
                vec![n],
                off.max(scaling_err),
                1e-8,
            ));
        }
    }
    let table = pairing_table();
    let stable = table == pairing_table()
        && table.len() == 16
        && Dtt::all().into_iter().all(|d| {
            let (kind, form) = d.pairing();
            Dtt::from_pairing(kind, form) == d
        });
    parts.push(Report::boolean("pairing table", Vec::new(), stable));
    Ok(parts)
}

// 3. Fourier transforms diagonalize every filter.

fn diagonalizes<F: Scalar>(
    model: &SignalModel<F>,
    rng: &mut ChaCha8Rng,
    filters: usize,
) -> Result<Report, CheckError> {
    let f = model.polynomial_transform()?;
    let n = model.n();
    let q = model.generator();
    let q_real = q.to_real();
    let zeros = model.zeros();
    let mut worst: f64 = 0.0;
    for _ in 0..filters {
        let h: Poly<F> = random_poly(rng, n - 1);
        let hq = if model.is_regular() {
            h.clone()
        } else {
            compose_mod(&h, &q, model.p())?
        };
        let a = to_complex(&model.filter_matrix(&hq)?);
        let (diag, off) = diag_residual(&f, &a)?;
        let h_real = h.to_real();
        let response: Vec<Complex64> = zeros
            .iter()
            .map(|&a| h_real.eval_complex(q_real.eval_complex(a)))
            .collect();
        let scale = response.iter().map(|z| z.norm()).fold(1.0, f64::max);
        worst = worst
            .max(off / scale)
            .max(max_dist(&diag, &response) / scale);
    }
    Ok(check(&model.name, vec![n], worst, 1e-8))
}

/// `h(q) mod p` by Horner's rule.
fn compose_mod<F: Scalar>(h: &Poly<F>, q: &Poly<F>, p: &Poly<F>) -> Result<Poly<F>, CheckError> {
    let mut acc = Poly::zero();
    for c in h.coeffs().iter().rev() {
        acc = &Poly::mul_mod(&acc, q, p)? + &Poly::constant(c.clone());
    }
    Ok(acc)
}

fn exact_catalog(n: usize) -> Result<Vec<SignalModel>, CheckError> {
    let mut models = vec![
        ModelCatalog::time(n, &rat(1, 1))?,
        ModelCatalog::time(n, &rat(-1, 1))?,
        ModelCatalog::time(n, &rat(2, 1))?,
        ModelCatalog::alternative_space(n, &rat(1, 1))?,
        ModelCatalog::gnn(&Recurrence::legendre(n + 1), n)?,
        ModelCatalog::gnn(&Recurrence::chebyshev(ChebyshevKind::U, n + 1), n)?,
    ];
    for dtt in Dtt::all() {
        models.push(ModelCatalog::dtt(dtt, n)?);
        if let Ok(m) = ModelCatalog::dtt_symmetric(dtt, n) {
            models.push(m);
        }
    }
    Ok(models)
}

fn skew_rs() -> [Rational; 3] {
    [rat(1, 4), rat(1, 3), rat(2, 3)]
}

fn fourier_diagonalization() -> CheckResult {
    let mut rng = rng(5);
    let mut parts = Vec::new();
    for n in [4, 8, 12] {
        for model in exact_catalog(n)? {
            parts.push(diagonalizes(&model, &mut rng, 20)?);
        }
        for kind in ChebyshevKind::ALL {
            for r in skew_rs() {
                parts.push(diagonalizes(
                    &ModelCatalog::skew(kind, n, &r)?,
                    &mut rng,
                    20,
                )?);
            }
        }
    }
    Ok(parts)
}

// 4. Convolution theorem.

fn convolution_error<F: Scalar>(
    model: &SignalModel<F>,
    d: &[f64],
    rng: &mut ChaCha8Rng,
) -> Result<Report, CheckError> {
    let n = model.n();
    let d: Vec<Complex64> = d.iter().copied().map(linalg::c).collect();
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let h: Poly<F> = random_poly(rng, n - 1);
        let s = random_signal(rng, n);
        worst = worst.max(convolve(model, &h, &s, &d)?.relative_error);
    }
    Ok(check(&model.name, vec![n], worst, 1e-8))
}

fn spectral_convolution() -> CheckResult {
    let n = 8;
    let mut rng = rng(6);
    let ones = vec![1.0; n];
    let mut parts = vec![
        convolution_error(&ModelCatalog::time(n, &rat(1, 1))?, &ones, &mut rng)?,
        convolution_error(&ModelCatalog::time(n, &rat(-1, 1))?, &ones, &mut rng)?,
    ];
    for dtt in Dtt::all() {
        parts.push(convolution_error(
            &ModelCatalog::dtt(dtt, n)?,
            &dtt.scaling(n),
            &mut rng,
        )?);
    }
    for kind in ChebyshevKind::ALL {
        for r in skew_rs() {
            let model = ModelCatalog::skew(kind, n, &r)?;
            parts.push(convolution_error(
                &model,
                &skew_scaling(kind, n, &r),
                &mut rng,
            )?);
        }
    }
    for rec in [
        Recurrence::legendre(n + 1),
        Recurrence::chebyshev(ChebyshevKind::T, n + 1),
    ] {
        let d: Vec<f64> = gnn_transform(&rec, n)?.d.iter().map(|v| v.sqrt()).collect();
        parts.push(convolution_error(
            &ModelCatalog::gnn(&rec, n)?,
            &d,
            &mut rng,
        )?);
    }
    Ok(parts)
}

// 5. Orthogonal and unitary versions.

fn orthogonality() -> CheckResult {
    let mut parts = Vec::new();
    let tol = 1e-9;
    for n in 1..=16usize {
        for dtt in Dtt::all() {
            if n >= dtt.min_size() {
                let r = orthogonality_residual(&dtt.orthogonal(n)?);
                parts.push(check(&format!("{dtt} n={n}"), vec![n], r, tol));
            }
        }
        for t in 1..=4 {
            let u = unitarity_residual(&dft_unitary(t, n)?);
            parts.push(check(&format!("DFT-{t} n={n}"), vec![n], u, tol));
            let r = orthogonality_residual(&rdft_orthogonal(t, n)?);
            parts.push(check(&format!("RDFT-{t} n={n}"), vec![n], r, tol));
            let h = orthogonality_residual(&dht_orthogonal(t, n)?);
            parts.push(check(&format!("DHT-{t} n={n}"), vec![n], h, tol));
        }
        if n >= 2 {
            let r = orthogonality_residual(&dct1_orthogonalized(n)?);
            parts.push(check(&format!("DCT-1 construction n={n}"), vec![n], r, tol));
        }
        let mut recs = vec![Recurrence::legendre(n + 1)];
        recs.extend(ChebyshevKind::ALL.map(|k| Recurrence::chebyshev(k, n + 1)));
        for rec in recs {
            let r = orthogonality_residual(&gnn_transform(&rec, n)?.orthogonal());
            parts.push(check(&format!("GNN {} n={n}", rec.name), vec![n], r, tol));
        }
    }
    Ok(parts)
}

// 6. Signal extensions.

fn unit(n: usize, sign: i64, index: usize) -> Vec<Rational> {
    let mut v = vec![rat(0, 1); n];
    v[index] = rat(sign, 1);
    v
}

/// Expected reduction of `b_{−k}`, `k ≥ 1`, from the left boundary of `kind`.
fn left_image(kind: ChebyshevKind, k: usize) -> Option<(i64, Option<usize>)> {
    use ChebyshevKind::*;
    match kind {
        T => Some((1, Some(k))),
        U if k == 1 => Some((0, None)),
        U => Some((-1, Some(k - 2))),
        V => Some((1, Some(k - 1))),
        W => Some((-1, Some(k - 1))),
    }
}

/// Expected reduction of `b_{n+j}`, `j ≥ 0`, from the right boundary `form`.
fn right_image(form: BoundaryForm, n: usize, j: usize) -> Option<(i64, Option<usize>)> {
    match form {
        BoundaryForm::MinusTwoBack => (n >= j + 2).then(|| (1, Some(n - 2 - j))),
        BoundaryForm::Plain if j == 0 => Some((0, None)),
        BoundaryForm::Plain => (n >= j).then(|| (-1, Some(n - j))),
        BoundaryForm::MinusOneBack => (n > j).then(|| (1, Some(n - 1 - j))),
        BoundaryForm::PlusOneBack => (n > j).then(|| (-1, Some(n - 1 - j))),
    }
}

fn matches_image(coords: &[Rational], image: (i64, Option<usize>)) -> bool {
    let n = coords.len();
    match image {
        (_, None) => coords.iter().all(|c| *c == rat(0, 1)),
        (sign, Some(i)) => coords == unit(n, sign, i).as_slice(),
    }
}

/// Whether every `C_{−k}`, `1 ≤ k ≤ depth`, is zero or `±C_j` for some `j ≥ 0`.
fn left_monomial(c1: &Polynomial, depth: usize) -> bool {
    let two_x = Polynomial::from_i64s(&[0, 2]);
    let mut forward = vec![Polynomial::one(), c1.clone()];
    for k in 2..=2 * depth + 2 {
        forward.push(&(&two_x * &forward[k - 1]) - &forward[k - 2]);
    }
    let (mut next, mut cur) = (Polynomial::one(), &two_x - c1);
    for _ in 0..depth {
        let ok = cur.is_zero() || forward.iter().any(|f| *f == cur || *f == -cur.clone());
        if !ok {
            return false;
        }
        let prev = &(&two_x * &cur) - &next;
        next = std::mem::replace(&mut cur, prev);
    }
    true
}

fn signal_extensions() -> CheckResult {
    let mut parts = Vec::new();

    // Monomial basis modulo x^n − r(x).
    let n = 4;
    let constants = [rat(2, 1), rat(-1, 1), rat(1, 3)];
    let mut lemma8 = true;
    for a in &constants {
        let model = ModelCatalog::time(n, a)?;
        for k in -(2 * n as i64)..=(3 * n as i64) {
            let coords = model.extension(k)?;
            let (q, i) = (k.div_euclid(n as i64), k.rem_euclid(n as i64) as usize);
            let mut expect = vec![rat(0, 1); n];
            expect[i] = num_traits::Pow::pow(a.clone(), q as i32);
            lemma8 &= coords == expect;
        }
    }
    for r in [
        Polynomial::from_i64s(&[1, 1]),
        Polynomial::from_i64s(&[-3, 0, 1]),
        Polynomial::from_i64s(&[1, 0, 0, 2]),
    ] {
        let p = &Polynomial::monomial(n, rat(1, 1)) - &r;
        let model = SignalModel::new("x^n = r", p, BasisSpec::Monomial)?;
        let found = (0..=3 * n as i64)
            .map(|k| model.extension(k).map(|c| support_size(&c)))
            .collect::<Result<Vec<_>, _>>()?;
        lemma8 &= found.iter().any(|&s| s > 1);
    }
    parts.push(Report::boolean("monomial iff constant", vec![n], lemma8));

    // Left boundary: C_1 = ax + b.
    let mut lemma10 = true;
    for a in [-2i64, 1, 2, 3] {
        for b in -2i64..=2 {
            let monomial = left_monomial(&Polynomial::from_i64s(&[b, a]), 8);
            let expected = matches!((a, b), (1, 0) | (2, 0) | (2, -1) | (2, 1));
            lemma10 &= monomial == expected;
        }
    }
    parts.push(Report::boolean(
        "left boundary classification",
        Vec::new(),
        lemma10,
    ));

    // Right boundary: p = C_n + βC_{n−1} + γC_{n−2}.
    let mut lemma11 = true;
    let n = 5usize;
    for kind in ChebyshevKind::ALL {
        for beta in -2i64..=2 {
            for gamma in -2i64..=2 {
                let p = &(&cheb_poly(kind, n as i64)
                    + &cheb_poly(kind, n as i64 - 1).scale(&rat(beta, 1)))
                    + &cheb_poly(kind, n as i64 - 2).scale(&rat(gamma, 1));
                let model = SignalModel::new("right", p, BasisSpec::Chebyshev(kind))?;
                let mut monomial = true;
                for k in n..=3 * n {
                    monomial &= support_size(&model.extension(k as i64)?) <= 1;
                }
                let expected = matches!((beta, gamma), (0, -1) | (0, 0) | (-1, 0) | (1, 0));
                lemma11 &= monomial == expected;
            }
        }
    }
    parts.push(Report::boolean(
        "right boundary classification",
        vec![n],
        lemma11,
    ));

    // All sixteen models: periods and sign patterns.
    for kind in ChebyshevKind::ALL {
        for form in BoundaryForm::ALL {
            let dtt = Dtt::from_pairing(kind, form);
            let mut periods = true;
            let mut patterns = true;
            for n in 4..=8usize {
                let model = ModelCatalog::chebyshev(kind, form, n)?;
                let want = extension_period_formula(kind, form, n as i64) as usize;
                periods &= model.extension_period(want)? == Some(want);
                for k in 1..=n + 1 {
                    if let Some(image @ (_, idx)) = left_image(kind, k) {
                        if idx.is_none_or(|i| i < n) {
                            patterns &= matches_image(&model.extension(-(k as i64))?, image);
                        }
                    }
                }
                for j in 0..n {
                    if let Some(image) = right_image(form, n, j) {
                        patterns &= matches_image(&model.extension((n + j) as i64)?, image);
                    }
                }
                for k in -(2 * n as i64)..=(3 * n as i64) {
                    patterns &= support_size(&model.extension(k)?) <= 1;
                }
            }
            parts.push(Report::boolean(
                &format!("{dtt} period"),
                vec![4, 8],
                periods,
            ));
            parts.push(Report::boolean(
                &format!("{dtt} extension"),
                vec![4, 8],
                patterns,
            ));
        }
    }

    // Skew models: two-term extensions.
    for kind in ChebyshevKind::ALL {
        for n in 4..=6usize {
            let exact =
                ModelCatalog::skew_exact(kind, n, &rat(1, 3))?.expect("cos(π/3) is rational");
            let ok = skew_extension_exact(&exact, kind, n, &rat(1, 2))?;
            parts.push(Report::boolean(
                &format!("skew {kind} r=1/3 n={n}"),
                vec![n],
                ok,
            ));
            let real = ModelCatalog::skew(kind, n, &rat(1, 4))?;
            let r = skew_extension_real(&real, kind, n, std::f64::consts::FRAC_1_SQRT_2)?;
            parts.push(check(
                &format!("skew {kind} r=1/4 n={n}"),
                vec![n],
                r,
                1e-10,
            ));
        }
    }
    Ok(parts)
}

/// `u_j = U_j(c)` with `u_{−1} = 0`.
fn u_coeff<F: Scalar>(j: i64, c: &F) -> F {
    if j < 0 {
        F::zero()
    } else {
        cheb_poly(ChebyshevKind::U, j).convert::<F>().eval(c)
    }
}

fn skew_extension_exact(
    model: &SignalModel,
    kind: ChebyshevKind,
    n: usize,
    c: &Rational,
) -> Result<bool, CheckError> {
    let mut ok = true;
    for j in 0..=3i64 {
        for m in 0..n as i64 {
            let k = j * n as i64 + m;
            let expected = &cheb_poly(kind, m).scale(&u_coeff(j, c))
                - &cheb_poly(kind, m - n as i64).scale(&u_coeff(j - 1, c));
            let got = model.extension(k)?;
            ok &= got == model.coordinates(&expected)? && support_size(&got) <= 2;
        }
    }
    Ok(ok)
}

fn skew_extension_real(
    model: &SignalModel<f64>,
    kind: ChebyshevKind,
    n: usize,
    c: f64,
) -> Result<f64, CheckError> {
    let mut worst: f64 = 0.0;
    for j in 0..=2i64 {
        for m in 0..n as i64 {
            let k = j * n as i64 + m;
            let expected = &cheb_poly(kind, m).convert::<f64>().scale(&u_coeff(j, &c))
                - &cheb_poly(kind, m - n as i64)
                    .convert::<f64>()
                    .scale(&u_coeff(j - 1, &c));
            let got = model.extension(k)?;
            let want = model.coordinates(&expected)?;
            let diff = got
                .iter()
                .zip(&want)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            worst = worst.max(diff);
            if support_size(&got) > 2 {
                worst = f64::INFINITY;
            }
        }
    }
    Ok(worst)
}

// 7. Relations between DTTs.

fn relations_web() -> CheckResult {
    let tol = 1e-9;
    let mut parts = Vec::new();
    for n in 2..=12usize {
        let sizes = vec![n];
        for dtt in Dtt::all() {
            let d = dual_of(dtt, n)?;
            parts.push(check(
                &format!("{dtt} dual n={n}"),
                sizes.clone(),
                d.residual,
                tol,
            ));
        }
        let b = base_change(Dtt::dct(3), Dtt::dct(4), n)?;
        parts.push(Report::boolean(
            "DCT-3 to DCT-4 factor",
            sizes.clone(),
            b.s == s_prime(n),
        ));
        parts.push(check("DCT-3 to DCT-4", sizes.clone(), b.residual, tol));
        let b = base_change(Dtt::dct(2), Dtt::dct(4), n)?;
        parts.push(check("DCT-2 to DCT-4", sizes.clone(), b.residual, tol));
        parts.push(check(
            "transposed",
            sizes.clone(),
            transposed_residual(n)?,
            tol,
        ));
        let b = base_change(Dtt::dct(1), Dtt::dct(2), n)?;
        let matches = b.s == relations::b_matrix(n) && b.nonzeros() <= 3 * (n + 1);
        parts.push(Report::boolean(
            "DCT-1 to DCT-2 factor",
            sizes.clone(),
            matches,
        ));
        parts.push(check("DCT-1 to DCT-2", sizes.clone(), b.residual, tol));
        for group in DttGroup::all() {
            let mut found = 0;
            for &from in &group.members {
                for &to in &group.members {
                    if from == to || n < from.min_size().max(to.min_size()) {
                        continue;
                    }
                    let Ok(rel) = base_change(from, to, n) else {
                        continue;
                    };
                    found += 1;
                    let size = rel.from_n.max(rel.to_n);
                    let name = format!("{from} to {to} n={n}");
                    parts.push(check(&name, sizes.clone(), rel.residual, tol));
                    let count = |m: &nalgebra::DMatrix<Rational>| {
                        m.iter().filter(|v| **v != rat(0, 1)).count()
                    };
                    let (a, b) = rel.sparse_factors();
                    let sparse =
                        count(&a) <= 3 * size && b.as_ref().is_none_or(|b| count(b) <= 3 * size);
                    parts.push(Report::boolean(
                        &format!("{name} sparse"),
                        sizes.clone(),
                        sparse,
                    ));
                }
            }
            let name = format!("{} relations n={n}", group.name());
            parts.push(Report::boolean(&name, sizes.clone(), found >= 4));
        }
        if n >= 2 {
            let path = base_change_path(Dtt::dct(2), Dtt::dst(2), n)?;
            parts.push(check(
                "DCT-2 to DST-2 via CRT",
                sizes.clone(),
                path.residual,
                tol,
            ));
        }
        for r in skew_rs() {
            let s = skew_relations(n, &r)?;
            parts.push(check(
                &format!("skew n={n} r={r}"),
                sizes.clone(),
                s.max_residual(),
                tol,
            ));
            for kind in ChebyshevKind::ALL {
                let x = skew_translation(kind, n, &r);
                let base = skew_base(kind);
                let unscaled = real_residual(&(base.unscaled(n)? * &x), &skew_dtt(kind, n, &r)?);
                let name = format!("skew {kind} translation n={n} r={r}");
                parts.push(check(&name, sizes.clone(), unscaled, tol));
                if kind == ChebyshevKind::T {
                    let poly = ModelCatalog::dtt(base, n)?
                        .polynomial_transform()?
                        .map(|z| z.re);
                    let polynomial = real_residual(&(poly * &x), &skew_polynomial(kind, n, &r)?);
                    parts.push(check(
                        &format!("{name} polynomial"),
                        sizes.clone(),
                        polynomial,
                        tol,
                    ));
                }
            }
        }
    }
    Ok(parts)
}

// 8. Rational DFT.

fn qdft_suite() -> CheckResult {
    let mut rng = rng(8);
    let mut parts = Vec::new();
    for n in [2usize, 4, 8, 16] {
        let exact = qdft_exact(n)?;
        let integral = exact.iter().all(|v| v.is_integer());
        parts.push(Report::boolean(
            &format!("QDFT n={n} rational"),
            vec![n],
            integral,
        ));
        let r = max_diff(&qdft(n)?, &qdft_recursive(n)?);
        parts.push(check(&format!("QDFT n={n} recursion"), vec![n], r, 1e-12));
        let blocks = qdft_blocks(n);
        parts.push(Report::boolean(
            &format!("QDFT n={n} block sizes"),
            vec![n],
            blocks.iter().sum::<usize>() == n,
        ));
        let model = ModelCatalog::time(n, &rat(1, 1))?;
        let q = qdft(n)?;
        let q_inv = inverse(&q)?;
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let h = Polynomial::new((0..n).map(|_| rat(rng.random_range(-5..=5), 1)).collect());
            let c = to_complex(&model.filter_matrix(&h)?);
            worst = worst.max(block_residual(&(&q * c * &q_inv), &blocks));
        }
        parts.push(check(&format!("QDFT n={n} blocks"), vec![n], worst, 1e-10));
    }
    Ok(parts)
}

// 9. Real DFTs and DHTs.

fn pattern_violations(x: &CMatrix, pattern: &[Vec<bool>]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..x.nrows() {
        for j in 0..x.ncols() {
            let v = x[(i, j)].norm();
            if pattern[i][j] {
                if v < 1e-12 {
                    worst = f64::INFINITY;
                }
            } else {
                worst = worst.max(v);
            }
        }
    }
    worst
}

fn real_dft() -> CheckResult {
    let mut rng = rng(9);
    let mut parts = Vec::new();
    for n in 2..=12usize {
        for t in 1..=4u8 {
            let f = dft(t, n)?;
            let f_inv = inverse(&f)?;
            let pattern = xshape_pattern(t, n);
            let alpha = dft_zeros(t, n);
            for (name, m) in [("RDFT", rdft(t, n)?), ("DHT", dht(t, n)?)] {
                let m = to_complex(&m);
                let x = &m * &f_inv;
                let r = pattern_violations(&x, &pattern);
                parts.push(check(
                    &format!("{name}-{t} n={n} factor"),
                    vec![n],
                    r,
                    1e-12,
                ));
                let mut worst: f64 = 0.0;
                for _ in 0..5 {
                    let h: Poly<f64> = random_poly(&mut rng, n - 1);
                    let lambda: Vec<Complex64> = alpha.iter().map(|&a| h.eval_complex(a)).collect();
                    let filter = &f_inv * diag_matrix(&lambda) * &f;
                    let scale = max_abs(&filter).max(1.0);
                    worst = worst.max(xshape_residual(&m, &filter, &pattern)? / scale);
                }
                parts.push(check(
                    &format!("{name}-{t} n={n} filters"),
                    vec![n],
                    worst,
                    1e-9,
                ));
            }
        }
        for (t, a) in [(1u8, 1i64), (3, -1)] {
            let model = ModelCatalog::time(n, &rat(a, 1))?;
            let pattern = xshape_pattern(t, n);
            let h: Polynomial = random_poly(&mut rng, n - 1);
            let c = to_complex(&model.filter_matrix(&h)?);
            let r = xshape_residual(&to_complex(&rdft(t, n)?), &c, &pattern)?;
            parts.push(check(
                &format!("RDFT-{t} n={n} circulant"),
                vec![n],
                r,
                1e-9,
            ));
        }
        for t in [1u8, 4] {
            let h = dht_orthogonal(t, n)?;
            let r = real_residual(&(&h * &h), &RMatrix::identity(n, n));
            parts.push(check(
                &format!("DHT-{t} n={n} involution"),
                vec![n],
                r,
                1e-9,
            ));
        }
    }
    Ok(parts)
}

// 10. Which matrices define signal models.

fn realizability() -> CheckResult {
    let mut parts = Vec::new();
    for n in 2..=16usize {
        let p = &Polynomial::monomial(n, rat(1, 1)) - &Polynomial::one();
        let q = &Polynomial::monomial(1, rat(1, 2)) + &Polynomial::monomial(n - 1, rat(1, 2));
        let report = subalgebra_of(&p, &q)?;
        let want = if n % 2 == 0 { n / 2 + 1 } else { n.div_ceil(2) };
        let ok = report.dimension == want && report.rank_dimension == want;
        parts.push(Report::boolean(&format!("subalgebra n={n}"), vec![n], ok));
    }

    let c = linalg::c;
    let companion = CMatrix::from_fn(4, 4, |i, j| {
        let p = [6.0, -5.0, -5.0, 5.0];
        if j == 3 {
            c(-p[i])
        } else if i == j + 1 {
            c(1.0)
        } else {
            c(0.0)
        }
    });
    let regular = matches!(model_from_matrix(&companion)?, MatrixModel::Regular { .. });
    let eig = linalg::eigenvalues(&companion);
    let separable = (0..4).all(|i| (i + 1..4).all(|j| (eig[i] - eig[j]).norm() > 1e-6));
    parts.push(Report::boolean("companion", vec![4], regular && separable));

    let jordan = CMatrix::from_fn(4, 4, |i, j| if i + 1 == j { c(1.0) } else { c(0.0) });
    let ok = match model_from_matrix(&jordan)? {
        MatrixModel::Regular { p } => {
            let expect = [0.0, 0.0, 0.0, 0.0, 1.0];
            p.iter().zip(expect).all(|(a, b)| (a - c(b)).norm() < 1e-8)
        }
        _ => false,
    };
    parts.push(Report::boolean("jordan block", vec![4], ok));

    let rot = nalgebra::Rotation3::from_euler_angles(0.4, -0.7, 1.1);
    let d = nalgebra::Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 1.0, 2.0));
    let m = rot.matrix() * d * rot.matrix().transpose();
    let repeated = CMatrix::from_fn(3, 3, |i, j| c(m[(i, j)]));
    let ok = matches!(
        model_from_matrix(&repeated)?,
        MatrixModel::Nonregular {
            minimal_degree: 2,
            ..
        }
    );
    parts.push(Report::boolean("repeated eigenvalue", vec![3], ok));

    let mut defective = CMatrix::zeros(3, 3);
    defective[(0, 1)] = c(1.0);
    let ok = matches!(
        model_from_matrix(&defective)?,
        MatrixModel::Unrealizable { .. }
    );
    parts.push(Report::boolean("defective", vec![3], ok));

    for n in 4..=8usize {
        let mut count = 0;
        for dtt in Dtt::all() {
            let a = ModelCatalog::dtt(dtt, n)?.shift_matrix()?;
            if stochastic_normalize(&a).is_feasible() {
                count += 1;
            }
        }
        parts.push(Report::boolean(
            &format!("stochastic n={n}"),
            vec![n],
            count == 9,
        ));
    }
    Ok(parts)
}

// 11. Gauss-Markov random fields.

fn spectral_radius(a: &RMatrix) -> f64 {
    linalg::eigenvalues(&to_complex(a))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

fn gmrf_suite() -> CheckResult {
    let tol = 1e-9;
    let mut parts = Vec::new();
    let space =
        |n: usize| RMatrix::from_fn(n, n, |i, j| if i.abs_diff(j) == 1 { 0.5 } else { 0.0 });
    for (name, a, case) in [
        ("positive definite", space(6) * 0.9, GmrfCase::SymPosDef),
        ("indefinite", space(6) * 3.0, GmrfCase::SymIndefinite),
        ("nonsymmetric", cyclic_shift(6, 0.5), GmrfCase::NonSym),
    ] {
        let m = GmrfModel::new(a, 1.0)?;
        let sigma = m.covariance()?;
        parts.push(Report::boolean(
            name,
            vec![6],
            m.case == case && is_spd(&sigma),
        ));
        parts.push(check(name, vec![6], m.consistency_residual(&sigma), tol));
    }

    for n in [5usize, 8] {
        for dtt in Dtt::all() {
            let Ok(model) = ModelCatalog::dtt_symmetric(dtt, n) else {
                continue;
            };
            let shift = model.shift_matrix()?;
            let rho = spectral_radius(&shift);
            for scale in [0.9 / rho, 2.5 / rho] {
                let m = GmrfModel::new(&shift * scale, 1.0)?;
                let cmp = klt_vs_fourier(&m)?;
                let sigma = m.covariance()?;
                let name = format!("{dtt} symmetric n={n}");
                parts.push(check(&name, vec![n], m.consistency_residual(&sigma), tol));
                parts.push(Report::boolean(
                    &name,
                    vec![n],
                    is_spd(&sigma) && cmp.fourier_is_klt,
                ));
            }
        }
    }

    for n in [6usize, 8] {
        let m = GmrfModel::new(cyclic_shift(n, 0.5), 1.0)?;
        let cmp = klt_vs_fourier(&m)?;
        let sigma = m.covariance()?;
        let r = to_complex(&rdft_orthogonal(1, n)?);
        let zeros: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect();
        let one = linalg::c(1.0);
        let q_injective = injective_on(&zeros, |z| (one - z) * (one - z.powu(n as u32 - 1)));
        let ok = cmp.in_scope
            && cmp.fourier_is_klt
            && !cmp.converse_holds
            && !q_injective
            && klt_residual(&r, &sigma) < 1e-10
            && gmrf::fourier_residual(&r, &m.a) > 1e-3;
        parts.push(Report::boolean(&format!("circulant n={n}"), vec![n], ok));
    }
    Ok(parts)
}

// 12. Separable 2-D models.

fn multidimensional() -> CheckResult {
    let n = 4;
    let mut parts = Vec::new();
    let pairs = [
        (
            ModelCatalog::dtt(Dtt::dct(2), n)?,
            ModelCatalog::dtt(Dtt::dct(2), n)?,
        ),
        (
            ModelCatalog::time(n, &rat(1, 1))?,
            ModelCatalog::dtt(Dtt::dst(3), n)?,
        ),
        (
            ModelCatalog::dtt(Dtt::dct(4), n)?,
            ModelCatalog::gnn(&Recurrence::legendre(n + 1), n)?,
        ),
    ];
    for (a, b) in pairs {
        let name = format!("{} x {}", a.name, b.name);
        let product = ProductModel::new(vec![a, b]);
        let f = product.polynomial_transform()?;
        for shift in product.shift_matrices()? {
            let (_, off) = diag_residual(&f, &to_complex(&shift))?;
            parts.push(check(&name, vec![n, n], off, 1e-9));
        }
    }
    let dct2 = ModelCatalog::dtt(Dtt::dct(2), n)?;
    let line = dct2.visualize()?;
    let grid = ProductModel::new(vec![dct2.clone(), dct2]).visualize()?;
    let same = grid.adjacency == line.direct_product(&line).adjacency;
    parts.push(Report::boolean("DCT-2 grid graph", vec![n, n], same));
    Ok(parts)
}

//! Randomized invariants over sizes, indices and filters.

use algsp::gmrf::{klt, klt_residual, stochastic_normalize, Stochastic};
use algsp::linalg::{max_abs_real, to_complex, RMatrix};
use algsp::model::{support_size, ModelCatalog};
use algsp::poly::{
    cheb_poly, extension_period_formula, rat, BoundaryForm, ChebyshevKind, Polynomial,
};
use algsp::relations::{base_change, dual_of};
use algsp::spectral::convolve;
use algsp::transforms::{from_csv, generate, to_csv, Dtt, TransformSpec};
use num_complex::Complex64;
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = ChebyshevKind> {
    prop::sample::select(ChebyshevKind::ALL.to_vec())
}

fn form() -> impl Strategy<Value = BoundaryForm> {
    prop::sample::select(BoundaryForm::ALL.to_vec())
}

fn dtt() -> impl Strategy<Value = Dtt> {
    prop::sample::select(Dtt::all())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_rule_holds(kind in kind(), k in -20i64..=20, n in -20i64..=20) {
        let lhs = &cheb_poly(ChebyshevKind::T, k) * &cheb_poly(kind, n);
        let rhs = (&cheb_poly(kind, n + k) + &cheb_poly(kind, n - k)).scale(&rat(1, 2));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn recurrence_runs_both_ways(kind in kind(), n in -25i64..=25) {
        let two_x = Polynomial::from_i64s(&[0, 2]);
        let next = &(&two_x * &cheb_poly(kind, n)) - &cheb_poly(kind, n - 1);
        prop_assert_eq!(next, cheb_poly(kind, n + 1));
    }

    #[test]
    fn orthogonal_dtts_are_orthogonal(d in dtt(), n in 2usize..=24) {
        let m = d.orthogonal(n).unwrap();
        let residual = max_abs_real(&(&m * m.transpose() - RMatrix::identity(n, n)));
        prop_assert!(residual < 1e-10, "{d} n={n}: {residual:e}");
    }

    #[test]
    fn duals_are_related_by_reversal(d in dtt(), n in 2usize..=16) {
        let rel = dual_of(d, n).unwrap();
        prop_assert_eq!(rel.dual.dual(), d);
        prop_assert!(rel.residual < 1e-10);
    }

    #[test]
    fn dct3_to_dct4_roundtrip(n in 1usize..=14) {
        let rel = base_change(Dtt::dct(3), Dtt::dct(4), n).unwrap();
        let there = rel.forward(&Dtt::dct(3).unscaled(n).unwrap()).unwrap();
        let back = rel.backward(&there).unwrap();
        prop_assert!(max_abs_real(&(back - Dtt::dct(3).unscaled(n).unwrap())) < 1e-10);
        prop_assert!(rel.nonzeros() <= 3 * n);
    }

    #[test]
    fn dtt_convolution_matches_direct(
        d in dtt(),
        n in 2usize..=10,
        coeffs in prop::collection::vec(-9i64..=9, 10),
        signal in prop::collection::vec(-1.0f64..1.0, 10),
    ) {
        let model = ModelCatalog::dtt(d, n).unwrap();
        let h = Polynomial::from_i64s(&coeffs[..n]);
        let s: Vec<Complex64> = signal[..n].iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let scale: Vec<Complex64> = d.scaling(n).into_iter().map(|v| Complex64::new(v, 0.0)).collect();
        let out = convolve(&model, &h, &s, &scale).unwrap();
        prop_assert!(out.relative_error < 1e-8, "{d} n={n}: {:e}", out.relative_error);
    }

    #[test]
    fn extension_periods_match_formula(kind in kind(), form in form(), n in 3usize..=7) {
        let model = ModelCatalog::chebyshev(kind, form, n).unwrap();
        let want = extension_period_formula(kind, form, n as i64) as usize;
        prop_assert_eq!(model.extension_period(want).unwrap(), Some(want));
    }

    #[test]
    fn skew_extension_has_two_terms(kind in kind(), n in 2usize..=6, k in 0i64..=30) {
        let model = ModelCatalog::skew_exact(kind, n, &rat(1, 3)).unwrap().unwrap();
        prop_assert!(support_size(&model.extension(k).unwrap()) <= 2);
    }

    #[test]
    fn stochastic_columns_sum_to_one(entries in prop::collection::vec(0.01f64..5.0, 16)) {
        let a = RMatrix::from_row_slice(4, 4, &entries);
        match stochastic_normalize(&a) {
            Stochastic::Normalized(m) => {
                for col in m.column_iter() {
                    prop_assert!((col.sum() - 1.0).abs() < 1e-12);
                }
            }
            Stochastic::Infeasible(e) => prop_assert!(false, "{e:?}"),
        }
    }

    #[test]
    fn klt_diagonalizes_covariances(entries in prop::collection::vec(-1.0f64..1.0, 25)) {
        let b = RMatrix::from_row_slice(5, 5, &entries);
        let sigma = &b * b.transpose() + RMatrix::identity(5, 5);
        let (f, values) = klt(&sigma).unwrap();
        prop_assert!(klt_residual(&to_complex(&f), &sigma) < 1e-9);
        prop_assert!(values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn csv_roundtrip(d in dtt(), n in 2usize..=12) {
        let spec: TransformSpec = format!("{}:{n}", d.name().to_lowercase().replace('-', "")).parse().unwrap();
        let t = generate(&spec).unwrap();
        let (_, back) = from_csv(&to_csv(&t).unwrap()).unwrap();
        let diff = (&back - &t.entries).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(diff < 1e-12);
    }
}

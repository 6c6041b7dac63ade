//! Property tests: structural invariants of the spectral machinery and
//! the mean axioms, over randomized inputs.

use num_complex::Complex64;
use proptest::prelude::*;

use opmean::means::{barbour2, weighted_harmonic};
use opmean::measure::{mean_from_measure, BorelMeasure};
use opmean::{
    adjoint, dual, evaluate_mean, named_mean, transpose, ComplexMatrix, HermitianMatrix, MeanKind,
};

fn complex_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(-1.0..1.0f64, 2 * n * n).prop_map(move |vals| {
        ComplexMatrix::from_fn(n, |i, j| {
            Complex64::new(vals[2 * (i * n + j)], vals[2 * (i * n + j) + 1])
        })
    })
}

fn hermitian(n: usize) -> impl Strategy<Value = HermitianMatrix> {
    complex_matrix(n).prop_map(|m| HermitianMatrix::new(m.hermitian_part()).unwrap())
}

/// Positive definite matrix with spectrum in `[lo, hi)` in a random basis.
fn pd(n: usize, lo: f64, hi: f64) -> impl Strategy<Value = HermitianMatrix> {
    (hermitian(n), prop::collection::vec(lo..hi, n))
        .prop_map(|(h, vals)| h.eig().unwrap().recompose(&vals))
}

fn pd_pair(lo: f64, hi: f64) -> impl Strategy<Value = (HermitianMatrix, HermitianMatrix)> {
    (1..=4usize).prop_flat_map(move |n| (pd(n, lo, hi), pd(n, lo, hi)))
}

fn relative_gap(x: &HermitianMatrix, y: &HermitianMatrix) -> f64 {
    x.sub(y).unwrap().frobenius() / x.frobenius().max(y.frobenius()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectral_reconstruction_reproduces_the_matrix(
        h in (1..=5usize).prop_flat_map(hermitian)
    ) {
        let dec = h.eig().unwrap();
        let rebuilt = dec.recompose(&dec.eigenvalues);
        prop_assert!(relative_gap(&h, &rebuilt) <= 1e-13);
    }

    #[test]
    fn eigenvalues_are_monotone_under_psd_perturbation(
        (h, p) in (1..=4usize).prop_flat_map(|n| (hermitian(n), pd(n, 0.0, 1.0)))
    ) {
        let before = h.eigvals_desc().unwrap();
        let after = h.add(&p).unwrap().eigvals_desc().unwrap();
        for (b, a) in before.iter().zip(&after) {
            prop_assert!(a - b >= -1e-11, "{b} rose only to {a}");
        }
    }

    #[test]
    fn gram_products_share_spectra(
        x in (1..=4usize).prop_flat_map(complex_matrix)
    ) {
        let left = HermitianMatrix::new(x.adjoint().mul(&x).unwrap().hermitian_part()).unwrap();
        let right = HermitianMatrix::new(x.mul(&x.adjoint()).unwrap().hermitian_part()).unwrap();
        let le = left.eigvals_desc().unwrap();
        let re = right.eigvals_desc().unwrap();
        let scale = left.frobenius().max(1.0);
        for (l, r) in le.iter().zip(&re) {
            prop_assert!((l - r).abs() <= 1e-11 * scale);
        }
    }

    #[test]
    fn mean_of_equal_arguments_is_the_argument(
        a in (1..=4usize).prop_flat_map(|n| pd(n, 0.2, 2.0)),
        mu in 0.05..0.95f64,
    ) {
        for f in [
            named_mean(MeanKind::Geometric, mu).unwrap(),
            named_mean(MeanKind::Harmonic, mu).unwrap(),
            barbour2(mu).unwrap(),
        ] {
            let m = evaluate_mean(&f, &a, &a).unwrap();
            prop_assert!(relative_gap(&m, &a) <= 1e-12, "{}", f.label);
        }
    }

    #[test]
    fn means_sit_between_weighted_harmonic_and_arithmetic(
        (a, b) in pd_pair(0.2, 2.0),
        mu in 0.05..0.95f64,
    ) {
        for f in [named_mean(MeanKind::Geometric, mu).unwrap(), barbour2(mu).unwrap()] {
            let weight = f.effective_moments().0;
            let lower = weighted_harmonic(weight, &a, &b).unwrap();
            let upper = a.affine(&b, weight).unwrap();
            let mid = evaluate_mean(&f, &a, &b).unwrap();
            prop_assert!(lower.loewner_leq(&mid, 1e-10).unwrap().holds, "{}", f.label);
            prop_assert!(mid.loewner_leq(&upper, 1e-10).unwrap().holds, "{}", f.label);
        }
    }

    #[test]
    fn means_are_monotone_in_both_arguments(
        (a, b, pa, pb) in (1..=4usize).prop_flat_map(|n| {
            (pd(n, 0.2, 2.0), pd(n, 0.2, 2.0), pd(n, 0.0, 1.0), pd(n, 0.0, 1.0))
        }),
        mu in 0.05..0.95f64,
    ) {
        let f = named_mean(MeanKind::Geometric, mu).unwrap();
        let before = evaluate_mean(&f, &a, &b).unwrap();
        let after = evaluate_mean(&f, &a.add(&pa).unwrap(), &b.add(&pb).unwrap()).unwrap();
        prop_assert!(before.loewner_leq(&after, 1e-9).unwrap().holds);
    }

    #[test]
    fn means_commute_with_congruence(
        (a, b) in pd_pair(0.2, 2.0),
        mu in 0.05..0.95f64,
    ) {
        let x = HermitianMatrix::identity(a.dim())
            .scale(1.0)
            .affine(&a, 0.3)
            .unwrap();
        for f in [named_mean(MeanKind::Geometric, mu).unwrap(), barbour2(mu).unwrap()] {
            let outside = evaluate_mean(&f, &a, &b).unwrap().conj_with(&x).unwrap();
            let inside =
                evaluate_mean(&f, &a.conj_with(&x).unwrap(), &b.conj_with(&x).unwrap()).unwrap();
            prop_assert!(relative_gap(&outside, &inside) <= 1e-10, "{}", f.label);
        }
    }

    #[test]
    fn means_are_jointly_homogeneous(
        (a, b) in pd_pair(0.2, 2.0),
        c in 0.1..10.0f64,
        mu in 0.05..0.95f64,
    ) {
        let f = named_mean(MeanKind::Geometric, mu).unwrap();
        let scaled = evaluate_mean(&f, &a.scale(c), &b.scale(c)).unwrap();
        let unscaled = evaluate_mean(&f, &a, &b).unwrap().scale(c);
        prop_assert!(relative_gap(&scaled, &unscaled) <= 1e-12);
    }

    #[test]
    fn measure_means_are_linear_in_the_measure(
        (a, b) in pd_pair(0.3, 2.0),
        l1 in 0.05..0.95f64,
        l2 in 0.05..0.95f64,
        w in 0.1..0.9f64,
    ) {
        let m1 = BorelMeasure::dirac(l1).unwrap();
        let m2 = BorelMeasure::dirac(l2).unwrap();
        let mixed = BorelMeasure::mix(&m1, &m2, w).unwrap();
        let via_mix = mean_from_measure(&mixed, &a, &b).unwrap();
        let by_hand = mean_from_measure(&m1, &a, &b)
            .unwrap()
            .scale(w)
            .add(&mean_from_measure(&m2, &a, &b).unwrap().scale(1.0 - w))
            .unwrap();
        prop_assert!(relative_gap(&via_mix, &by_hand) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn transforms_are_involutions(r in 0.1..0.9f64, t in 0.01..100.0f64) {
        let f = barbour2(r).unwrap();
        let twice_adjoint = adjoint(&adjoint(&f).unwrap()).unwrap();
        let twice_transpose = transpose(&transpose(&f).unwrap()).unwrap();
        let twice_dual = dual(&dual(&f).unwrap()).unwrap();
        let want = f.eval(t);
        prop_assert!((twice_adjoint.eval(t) - want).abs() <= 1e-11 * want.max(1.0));
        prop_assert!((twice_transpose.eval(t) - want).abs() <= 1e-11 * want.max(1.0));
        prop_assert!((twice_dual.eval(t) - want).abs() <= 1e-11 * want.max(1.0));
    }

    #[test]
    fn representing_function_is_the_scalar_mean(
        r in 0.1..0.9f64,
        t in 0.01..100.0f64,
    ) {
        let f = barbour2(r).unwrap();
        let one = HermitianMatrix::from_diagonal(&[1.0]);
        let arg = HermitianMatrix::from_diagonal(&[t]);
        let m = evaluate_mean(&f, &one, &arg).unwrap();
        let want = f.eval(t);
        prop_assert!((m.entry(0, 0).re - want).abs() <= 1e-12 * want.max(1.0));
    }

    #[test]
    fn harmonic_difference_identity_holds_for_scalars(
        a in 0.05..5.0f64,
        b in 0.05..5.0f64,
        mu in 0.05..0.95f64,
    ) {
        let nabla = (1.0 - mu) * a + mu * b;
        let harm = 1.0 / ((1.0 - mu) / a + mu / b);
        let rhs = mu * (1.0 - mu) * (a - b) * (a - b) / ((1.0 - mu) * b + mu * a);
        let scale = nabla.max(1.0);
        prop_assert!((nabla - harm - rhs).abs() <= 1e-13 * scale);
    }

    #[test]
    fn commuting_geometric_mean_is_entrywise_power(
        d in prop::collection::vec(0.1..4.0f64, 1..5),
        e_seed in prop::collection::vec(0.1..4.0f64, 5),
        mu in 0.05..0.95f64,
    ) {
        let n = d.len();
        let e: Vec<f64> = e_seed.into_iter().take(n).collect();
        let a = HermitianMatrix::from_diagonal(&d);
        let b = HermitianMatrix::from_diagonal(&e);
        let f = named_mean(MeanKind::Geometric, mu).unwrap();
        let m = evaluate_mean(&f, &a, &b).unwrap();
        for i in 0..n {
            let want = d[i].powf(1.0 - mu) * e[i].powf(mu);
            prop_assert!((m.entry(i, i).re - want).abs() <= 1e-12 * want.max(1.0));
        }
    }
}

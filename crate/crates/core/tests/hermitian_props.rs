//! Property suites for forms, bounds, and certificates.

mod common;

use common::{power_iteration_norm, random_form_matrix, random_hermitian, random_unitary, rng, C64};
use proptest::prelude::*;
use specloc_core::hermitian::{
    hermitian_eigenvalues, operator_norm, rigidity_bound, HermitianForm, RawHermitian,
};
use specloc_core::homotopy::{linear_homotopy, perturbation_homotopy, whitehead_path};

fn form_from_seed(seed: u64, n: usize, min_gap: f64) -> HermitianForm {
    let mut r = rng(seed);
    HermitianForm::new(random_form_matrix(&mut r, n, min_gap), None).unwrap()
}

proptest! {
    /// Cached gap and signature agree with a fresh eigendecomposition.
    #[test]
    fn spectral_consistency(seed in 0u64..500, n in 2usize..7) {
        let x = form_from_seed(seed, n, 0.05);
        let eigs = hermitian_eigenvalues(x.data());
        let gap = eigs.iter().fold(f64::INFINITY, |acc, v| acc.min(v.abs()));
        let sig = eigs.iter().filter(|&&v| v > 0.0).count() as i64
            - eigs.iter().filter(|&&v| v < 0.0).count() as i64;
        prop_assert!((gap - x.gap()).abs() <= 1e-12 * gap.max(1.0));
        prop_assert_eq!(sig, x.signature());
        prop_assert_eq!(x.signature().rem_euclid(2), (n as i64).rem_euclid(2));
        prop_assert!(x.signature().abs() <= n as i64);
    }

    /// Conjugation by a unitary preserves gap and signature.
    #[test]
    fn unitary_invariance(seed in 0u64..500, n in 2usize..7) {
        let mut r = rng(seed);
        let x = HermitianForm::new(random_form_matrix(&mut r, n, 0.05), None).unwrap();
        let u = random_unitary(&mut r, n);
        let conj = HermitianForm::new(&u * x.data() * u.adjoint(), Some(x.tol_zero())).unwrap();
        prop_assert!((conj.gap() - x.gap()).abs() <= 1e-10);
        prop_assert_eq!(conj.signature(), x.signature());
    }

    /// Direct sums take the minimum gap and add signatures.
    #[test]
    fn direct_sum_laws(seed in 0u64..300, n in 2usize..5, m in 2usize..5) {
        let mut r = rng(seed);
        let x = HermitianForm::new(random_form_matrix(&mut r, n, 0.05), None).unwrap();
        let y = HermitianForm::new(random_form_matrix(&mut r, m, 0.05), None).unwrap();
        let s = x.direct_sum(&y);
        prop_assert_eq!(s.signature(), x.signature() + y.signature());
        prop_assert_eq!(s.gap(), x.gap().min(y.gap()));
        // and the cache agrees with the actual spectrum of the block matrix
        let eigs = hermitian_eigenvalues(s.data());
        let gap = eigs.iter().fold(f64::INFINITY, |acc, v| acc.min(v.abs()));
        prop_assert!((gap - s.gap()).abs() <= 1e-12);
    }

    /// Doubling a form doubles the signature and keeps the gap.
    #[test]
    fn direct_sum_doubling(seed in 0u64..200, n in 2usize..6) {
        let x = form_from_seed(seed, n, 0.05);
        let s = x.direct_sum(&x);
        prop_assert_eq!(s.signature(), 2 * x.signature());
        prop_assert_eq!(s.gap(), x.gap());
    }

    /// Largest singular value against the power-iteration oracle.
    #[test]
    fn operator_norm_matches_power_iteration(seed in 0u64..300, n in 2usize..8) {
        let mut r = rng(seed);
        let a = common::random_complex_matrix(&mut r, n);
        let exact = operator_norm(&a);
        let oracle = power_iteration_norm(&a, 500, seed ^ 0x9e3779b9);
        prop_assert!((exact - oracle).abs() <= 1e-8 * exact.max(1.0));
    }
}

#[test]
fn rigidity_bound_certifies_actual_gaps() {
    // perturbations built inside the admissible radius
    let mut r = rng(42);
    for trial in 0..200 {
        let n = 2 + (trial % 7);
        let x = HermitianForm::new(random_form_matrix(&mut r, n, 0.05), None).unwrap();
        let norm_x = operator_norm(x.data());
        let limit = x.gap() * x.gap() / (2.0 * norm_x);
        let h = random_hermitian(&mut r, n);
        let hn = operator_norm(&h);
        let target: f64 = r.random_range(0.01..0.95);
        let y_mat = x.data() + h * C64::new(target * limit / hn, 0.0);
        let y = RawHermitian::new(y_mat).unwrap();
        let (eps, certified) = rigidity_bound(&x, &y).unwrap();
        let actual = y.gap();
        assert!(
            actual * actual >= x.gap() * x.gap() - 2.0 * eps * norm_x - 1e-9,
            "trial {trial}: actual {actual}, certified {certified}"
        );
        assert!(actual >= certified - 1e-9);
    }
}

#[test]
fn linear_path_gap_bound_at_every_sample() {
    let mut r = rng(7);
    for trial in 0..100 {
        let n = 2 + (trial % 5);
        let x = HermitianForm::new(random_form_matrix(&mut r, n, 0.2), None).unwrap();
        let h = random_hermitian(&mut r, n);
        let hn = operator_norm(&h);
        let scale: f64 = r.random_range(0.05..0.9);
        let y_mat = x.data() + h * C64::new(scale * x.gap() / hn, 0.0);
        let y = match HermitianForm::new(y_mat, Some(x.tol_zero())) {
            Ok(y) => y,
            Err(_) => continue,
        };
        let g = x.gap().min(y.gap());
        let eps = operator_norm(&(x.data() - y.data()));
        if eps * eps / 4.0 >= g * g {
            continue;
        }
        let cert = linear_homotopy(&x, &y, 101).unwrap();
        for s in &cert.samples {
            assert!(
                s.gap * s.gap >= g * g - eps * eps / 4.0 - 1e-9,
                "trial {trial} at t = {}: gap {} below bound",
                s.t,
                s.gap
            );
        }
    }
}

#[test]
fn certified_certificates_preserve_signature() {
    let mut r = rng(11);
    let mut certified = 0;
    for trial in 0..100 {
        let n = 2 + (trial % 5);
        let x = HermitianForm::new(random_form_matrix(&mut r, n, 0.3), None).unwrap();
        let h = random_hermitian(&mut r, n);
        let hn = operator_norm(&h);
        let y = RawHermitian::new(x.data() + h * C64::new(0.05 * x.gap() / hn, 0.0)).unwrap();
        let cert = perturbation_homotopy(&x, &y).unwrap();
        if cert.certified {
            certified += 1;
            assert_eq!(
                cert.endpoints.0.signature(),
                cert.endpoints.1.signature(),
                "trial {trial}"
            );
        }
    }
    assert!(certified >= 90, "only {certified} certificates certified");
}

#[test]
fn whitehead_gap_is_constant_along_the_rotation() {
    let mut r = rng(23);
    for trial in 0..50 {
        let n = 2 + (trial % 4);
        // sampled gaps match min(gap, 1) to 1e-10 for any form
        let x = HermitianForm::new(random_form_matrix(&mut r, n, 0.1), None).unwrap();
        let u = random_unitary(&mut r, n);
        let cert = whitehead_path(&u, &x, 31).unwrap();
        let expected = x.gap().min(1.0);
        for s in &cert.samples {
            assert!(
                (s.gap - expected).abs() <= 1e-10,
                "trial {trial}: sampled gap {} vs {expected}",
                s.gap
            );
        }
        // with a healthy gap and fine enough sampling the inter-sample
        // floor certifies
        let wide = HermitianForm::new(random_form_matrix(&mut r, n, 0.5), None).unwrap();
        let u2 = random_unitary(&mut r, n);
        let cert = whitehead_path(&u2, &wide, 301).unwrap();
        assert!(cert.certified, "trial {trial}");
    }
}

#[test]
fn witt_projection_consistency() {
    let mut r = rng(5);
    for trial in 0..100 {
        let n = 2 + (trial % 7);
        let x = HermitianForm::new(random_form_matrix(&mut r, n, 0.05), None).unwrap();
        let p = x.witt_projection();
        assert!(operator_norm(&(&p * &p - &p)) <= 1e-10, "trial {trial}");
        assert!(operator_norm(&(&p - p.adjoint())) <= 1e-10);
        let rank = hermitian_eigenvalues(&p)
            .iter()
            .filter(|&&v| v > 0.5)
            .count();
        assert_eq!(rank, x.negative_inertia(), "trial {trial}");
    }
}

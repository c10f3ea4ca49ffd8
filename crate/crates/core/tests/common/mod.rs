//! Shared generators and oracles for the test suites.
#![allow(dead_code)] // each test binary uses its own subset

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex_matrix(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let a = random_complex_matrix(rng, n);
    (&a + a.adjoint()) * C64::new(0.5, 0.0)
}

pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    random_complex_matrix(rng, n).qr().q()
}

/// Invertible Hermitian matrix with prescribed minimum |eigenvalue|:
/// a random unitary conjugation of a random signed diagonal.
pub fn random_form_matrix(rng: &mut ChaCha8Rng, n: usize, min_gap: f64) -> CMatrix {
    let u = random_unitary(rng, n);
    let diag = DVector::from_fn(n, |_, _| {
        let magnitude = rng.random_range(min_gap..2.0);
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        C64::new(sign * magnitude, 0.0)
    });
    &u * CMatrix::from_diagonal(&diag) * u.adjoint()
}

/// Independent operator-norm oracle: power iteration on `a* a`.
pub fn power_iteration_norm(a: &CMatrix, iterations: usize, seed: u64) -> f64 {
    let gram = a.adjoint() * a;
    let n = gram.nrows();
    let mut r = rng(seed);
    let mut v = DVector::from_fn(n, |_, _| {
        C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
    });
    v /= C64::new(v.norm(), 0.0);
    let mut estimate = 0.0;
    for _ in 0..iterations {
        let w = &gram * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        estimate = norm;
        v = w / C64::new(norm, 0.0);
    }
    estimate.sqrt()
}

//! Shared helpers for the integration tests: deterministic random
//! matrices and an eigensolver-independent characteristic polynomial
//! oracle (Faddeev-LeVerrier coefficients, sign-sampled bisection roots).

#![allow(dead_code)]

use num_complex::Complex64;
use opmean::trials::{random_hermitian as random_hermitian_with, trial_rng};
use opmean::{ComplexMatrix, HermitianMatrix};

pub fn random_hermitian(seed: u64, n: usize) -> HermitianMatrix {
    let mut rng = trial_rng(seed, 0);
    random_hermitian_with(&mut rng, n)
}

fn trace(m: &ComplexMatrix) -> Complex64 {
    (0..m.dim()).map(|i| m[(i, i)]).sum()
}

fn plus_scaled_identity(m: &ComplexMatrix, c: f64) -> ComplexMatrix {
    let mut out = m.clone();
    for i in 0..m.dim() {
        out[(i, i)] += Complex64::new(c, 0.0);
    }
    out
}

/// Coefficients of the monic characteristic polynomial:
/// `det(xI - H) = x^n + c[0] x^(n-1) + ... + c[n-1]`.
pub fn charpoly(h: &HermitianMatrix) -> Vec<f64> {
    let a = h.as_complex();
    let n = a.dim();
    let mut coeffs = Vec::with_capacity(n);
    let mut m = a.clone();
    for k in 1..=n {
        let c = -trace(&m).re / k as f64;
        coeffs.push(c);
        if k < n {
            m = a.mul(&plus_scaled_identity(&m, c)).expect("square product");
        }
    }
    coeffs
}

pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    let mut value = 1.0;
    for &c in coeffs {
        value = value * x + c;
    }
    value
}

/// All real roots of the monic polynomial inside `[-radius, radius]`,
/// located by sign sampling and bisection, descending. Panics unless
/// exactly `coeffs.len()` sign changes are found, so callers must pass
/// polynomials with that many simple real roots in range.
pub fn charpoly_roots_desc(coeffs: &[f64], radius: f64) -> Vec<f64> {
    let n = coeffs.len();
    let samples = 50_000usize;
    let step = 2.0 * radius / samples as f64;
    let mut roots = Vec::with_capacity(n);
    let mut prev_x = -radius;
    let mut prev_v = horner(coeffs, prev_x);
    for k in 1..=samples {
        let x = -radius + step * k as f64;
        let v = horner(coeffs, x);
        if v == 0.0 {
            roots.push(x);
        } else if prev_v != 0.0 && prev_v.signum() != v.signum() {
            let (mut lo, mut hi) = (prev_x, x);
            let mut lo_v = prev_v;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let mid_v = horner(coeffs, mid);
                if mid_v == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if lo_v.signum() != mid_v.signum() {
                    hi = mid;
                } else {
                    lo = mid;
                    lo_v = mid_v;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    assert_eq!(
        roots.len(),
        n,
        "expected {n} bracketed roots, found {}",
        roots.len()
    );
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}

//! Gauss-Legendre and Gauss-Jacobi quadrature on the unit interval.
//!
//! Nodes and weights come from the Golub-Welsch method: the symmetric
//! tridiagonal matrix of the three-term recurrence is diagonalized with the
//! crate's Jacobi eigensolver, nodes are the eigenvalues, and each weight is
//! the zeroth moment times the squared first component of the corresponding
//! normalized eigenvector.

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::matrix::ComplexMatrix;
use num_complex::Complex64;

/// Quadrature rule on `(0, 1)`: `sum(w_i g(x_i))` approximates the weighted
/// integral of `g` stated by the constructor.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }
}

/// Golub-Welsch for a symmetric tridiagonal recurrence matrix with diagonal
/// `diag`, off-diagonal `offdiag`, and zeroth moment `mu0`. Nodes ascend.
fn golub_welsch(diag: &[f64], offdiag: &[f64], mu0: f64) -> Result<GaussRule> {
    let n = diag.len();
    let t = ComplexMatrix::from_fn(n, |i, j| {
        let v = if i == j {
            diag[i]
        } else if j + 1 == i {
            offdiag[j]
        } else if i + 1 == j {
            offdiag[i]
        } else {
            0.0
        };
        Complex64::new(v, 0.0)
    });
    let dec = HermitianMatrix::new(t)?.eig()?;
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let first = dec.eigenvectors[(0, j)].norm_sqr();
            (dec.eigenvalues[j], mu0 * first)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}

/// `n`-point Gauss-Legendre rule on `(0, 1)`:
/// `sum(w_i g(x_i)) ~ integral_0^1 g(x) dx`.
pub fn gauss_legendre_01(n: usize) -> Result<GaussRule> {
    if n == 0 {
        return Err(Error::PreconditionViolated(
            "quadrature rule needs at least one node".into(),
        ));
    }
    let diag = vec![0.0; n];
    let offdiag: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    let rule = golub_welsch(&diag, &offdiag, 2.0)?;
    // Map from [-1, 1] to [0, 1].
    Ok(GaussRule {
        nodes: rule.nodes.iter().map(|x| 0.5 * (x + 1.0)).collect(),
        weights: rule.weights.iter().map(|w| 0.5 * w).collect(),
    })
}

/// `n`-point Gauss-Jacobi rule on `(0, 1)` for the weight
/// `x^beta (1 - x)^alpha`:
/// `sum(w_i g(x_i)) ~ integral_0^1 g(x) x^beta (1 - x)^alpha dx`.
///
/// Requires `alpha > -1` and `beta > -1`.
pub fn gauss_jacobi_01(n: usize, alpha: f64, beta: f64) -> Result<GaussRule> {
    if n == 0 {
        return Err(Error::PreconditionViolated(
            "quadrature rule needs at least one node".into(),
        ));
    }
    if alpha <= -1.0 || beta <= -1.0 {
        return Err(Error::PreconditionViolated(format!(
            "Jacobi weight exponents must exceed -1, got alpha = {alpha}, beta = {beta}"
        )));
    }

    let ab = alpha + beta;
    let mut diag = Vec::with_capacity(n);
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n {
        let kf = k as f64;
        let d = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        diag.push(d);
    }
    for k in 1..n {
        let kf = k as f64;
        // k = 1 uses the cancelled form, which stays finite when ab is
        // -1 or 0 where the generic ratio degenerates to 0/0.
        let b2 = if k == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0))
        } else {
            let t = 2.0 * kf + ab;
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (t * t * (t + 1.0) * (t - 1.0))
        };
        offdiag.push(b2.sqrt());
    }

    // mu0 on [-1, 1] is 2^(ab + 1) B(alpha + 1, beta + 1); the interval map
    // to [0, 1] multiplies weights by 2^-(ab + 1), leaving the Beta value.
    let ln_beta = libm::lgamma(alpha + 1.0) + libm::lgamma(beta + 1.0) - libm::lgamma(ab + 2.0);
    let mu0 = (std::f64::consts::LN_2 * (ab + 1.0) + ln_beta).exp();
    let rule = golub_welsch(&diag, &offdiag, mu0)?;
    let scale = 0.5_f64.powf(ab + 1.0);
    Ok(GaussRule {
        nodes: rule.nodes.iter().map(|x| 0.5 * (x + 1.0)).collect(),
        weights: rule.weights.iter().map(|w| scale * w).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let rule = gauss_legendre_01(5).unwrap();
        // Exact for degree <= 9: integral of x^k over [0,1] is 1/(k+1).
        for k in 0..=9 {
            let got = rule.integrate(|x| x.powi(k));
            let want = 1.0 / (k as f64 + 1.0);
            assert!((got - want).abs() < 1e-14, "k = {k}: {got} vs {want}");
        }
    }

    #[test]
    fn legendre_node_count_and_symmetry() {
        let rule = gauss_legendre_01(8).unwrap();
        assert_eq!(rule.len(), 8);
        for i in 0..8 {
            let a = rule.nodes[i];
            let b = rule.nodes[7 - i];
            assert!((a + b - 1.0).abs() < 1e-14);
            assert!((rule.weights[i] - rule.weights[7 - i]).abs() < 1e-14);
        }
        assert!((rule.weights.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_mass_matches_beta_function() {
        // integral_0^1 x^(b) (1-x)^(a) dx = B(a+1, b+1).
        let rule = gauss_jacobi_01(16, -0.4, 0.4).unwrap();
        let mass: f64 = rule.weights.iter().sum();
        let want = (libm::lgamma(0.6) + libm::lgamma(1.4) - libm::lgamma(2.0)).exp();
        assert!((mass - want).abs() < 1e-13, "{mass} vs {want}");
    }

    #[test]
    fn jacobi_first_moment_matches_beta_ratio() {
        // integral x * x^b (1-x)^a dx / B = (b+1) / (a+b+2).
        let alpha = 0.3;
        let beta = -0.7;
        let rule = gauss_jacobi_01(16, alpha, beta).unwrap();
        let mass: f64 = rule.weights.iter().sum();
        let m1 = rule.integrate(|x| x) / mass;
        let want = (beta + 1.0) / (alpha + beta + 2.0);
        assert!((m1 - want).abs() < 1e-13, "{m1} vs {want}");
    }

    #[test]
    fn jacobi_zero_exponents_reduce_to_legendre() {
        let leg = gauss_legendre_01(6).unwrap();
        let jac = gauss_jacobi_01(6, 0.0, 0.0).unwrap();
        for i in 0..6 {
            assert!((leg.nodes[i] - jac.nodes[i]).abs() < 1e-12);
            assert!((leg.weights[i] - jac.weights[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn jacobi_integrates_smooth_function_accurately() {
        // Reference value for integral_0^1 exp(x) x^(-1/2) dx computed by
        // series: sum_k 1/(k! (k + 1/2)).
        let mut want = 0.0;
        let mut fact = 1.0;
        for k in 0..40 {
            if k > 0 {
                fact *= k as f64;
            }
            want += 1.0 / (fact * (k as f64 + 0.5));
        }
        let rule = gauss_jacobi_01(24, 0.0, -0.5).unwrap();
        let got = rule.integrate(|x| x.exp());
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(gauss_legendre_01(0).is_err());
        assert!(gauss_jacobi_01(4, -1.0, 0.0).is_err());
        assert!(gauss_jacobi_01(4, 0.0, -1.5).is_err());
    }
}

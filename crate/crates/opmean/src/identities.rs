//! Exact identities satisfied by operator means, checked as residuals.
//!
//! The central one expresses the gap between the weighted arithmetic mean
//! and any other mean with the same weight as a quadratic form:
//!
//! ```text
//! A nabla_mu B - A s B = -(f''(1)/2) (A - B) (A t B)^-1 (A - B)
//! ```
//!
//! where the companion mean `t` has representing function
//!
//! ```text
//! g(t) = -(f''(1)/2) (t - 1)^2 / (1 - mu + mu t - f(t)).
//! ```
//!
//! For measure-backed means the companion is evaluated by integrating
//! `lambda (1-lambda) (B nabla_lambda A)^-1` against the same measure, so
//! mean, weight, curvature, and companion all share one discretization and
//! the residual stays at roundoff level.

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::means::{
    adjoint_mean, evaluate_mean, transpose_mean, weighted_arithmetic, weighted_geometric,
    weighted_harmonic, RepresentingFunction,
};
use crate::measure::{lambda_weighted_inverse_integral, mean_from_measure, phi_lambda};

/// Half-width of the interval around `t = 1` where the companion formula
/// is replaced by linear interpolation.
pub const COMPANION_WINDOW: f64 = 1e-4;

/// Offset of the interpolation anchors `1 +- COMPANION_ANCHOR`.
pub const COMPANION_ANCHOR: f64 = 1e-3;

/// Two sides of an identity with the Frobenius residual between them.
/// Passes when `residual_fro <= tol * scale` with
/// `scale = max(‖lhs‖_F, ‖rhs‖_F, 1)`.
#[derive(Debug, Clone)]
pub struct IdentityResidual {
    pub lhs: HermitianMatrix,
    pub rhs: HermitianMatrix,
    pub residual_fro: f64,
    pub scale: f64,
    pub tol: f64,
    pub passes: bool,
}

impl IdentityResidual {
    pub fn new(lhs: HermitianMatrix, rhs: HermitianMatrix, tol: f64) -> Result<Self> {
        let residual_fro = lhs.sub(&rhs)?.frobenius();
        let scale = lhs.frobenius().max(rhs.frobenius()).max(1.0);
        Ok(IdentityResidual {
            lhs,
            rhs,
            residual_fro,
            scale,
            tol,
            passes: residual_fro <= tol * scale,
        })
    }

    /// Residual relative to the scale.
    pub fn relative(&self) -> f64 {
        self.residual_fro / self.scale
    }
}

/// Representing function of the companion mean, from the difference
/// quotient. Inside `|t - 1| < 1e-4` the indeterminate quotient is
/// replaced by linear interpolation between `g(1) = 1` and the formula
/// values at `1 +- 1e-3`; the recorded derivative data are finite
/// difference estimates over those anchors. Errors for linear means, where
/// no companion exists.
pub fn g_from_f(f: &RepresentingFunction) -> Result<RepresentingFunction> {
    let (mu, f2) = f.effective_moments();
    if f2 == 0.0 || f.is_linear {
        return Err(Error::LinearMean(f.label.clone()));
    }
    let inner = f.clone();
    let formula = move |t: f64| {
        let d = t - 1.0;
        -(f2 / 2.0) * d * d / (1.0 - mu + mu * t - inner.eval(t))
    };

    let gp = formula(1.0 + COMPANION_ANCHOR);
    let gm = formula(1.0 - COMPANION_ANCHOR);
    if !gp.is_finite() || !gm.is_finite() {
        return Err(Error::PreconditionViolated(format!(
            "companion of `{}` is not finite near t = 1",
            f.label
        )));
    }
    let gamma = (gp - gm) / (2.0 * COMPANION_ANCHOR);
    if !(1e-6..=1.0 - 1e-6).contains(&gamma) {
        return Err(Error::PreconditionViolated(format!(
            "companion slope {gamma} of `{}` is not strictly inside (0, 1)",
            f.label
        )));
    }
    let second = ((gp - 2.0 + gm) / (COMPANION_ANCHOR * COMPANION_ANCHOR)).min(0.0);

    let eval = move |t: f64| {
        let d = t - 1.0;
        if d.abs() < COMPANION_WINDOW {
            if d >= 0.0 {
                1.0 + (gp - 1.0) * d / COMPANION_ANCHOR
            } else {
                1.0 + (gm - 1.0) * (-d) / COMPANION_ANCHOR
            }
        } else {
            formula(t)
        }
    };
    RepresentingFunction::new(eval, gamma, second, format!("companion({})", f.label), None)
}

/// The companion mean itself, `A t B` for the companion of `f`.
pub fn companion_mean(
    f: &RepresentingFunction,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    match &f.measure {
        Some(m) => crate::measure::tau_from_measure(m, a, b),
        None => evaluate_mean(&g_from_f(f)?, a, b),
    }
}

/// Residual of the arithmetic-difference identity for the mean of `f`.
///
/// Measure-backed means take every ingredient (the mean, the weight, the
/// curvature, and the companion kernel) from the attached measure; others
/// evaluate the companion through its representing function. Linear means
/// reduce to `0 = 0`.
pub fn mean_difference_residual(
    f: &RepresentingFunction,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tol: f64,
) -> Result<IdentityResidual> {
    let (mu, f2) = f.effective_moments();
    let sigma = match &f.measure {
        Some(m) => mean_from_measure(m, a, b)?,
        None => evaluate_mean(f, a, b)?,
    };
    let lhs = weighted_arithmetic(mu, a, b)?.sub(&sigma)?;
    let rhs = if f2 == 0.0 {
        HermitianMatrix::zeros(a.dim())
    } else {
        let d = a.sub(b)?;
        match &f.measure {
            // (A-B) (integral lambda(1-lambda) (B nabla_lambda A)^-1 dm) (A-B):
            // the curvature factor and the inverted companion cancel exactly.
            Some(m) => lambda_weighted_inverse_integral(m, b, a)?.conj_with(&d)?,
            None => {
                let tau = evaluate_mean(&g_from_f(f)?, a, b)?;
                tau.inv_pd()?.conj_with(&d)?.scale(-f2 / 2.0)
            }
        }
    };
    IdentityResidual::new(lhs, rhs, tol)
}

/// Specialization to the unweighted geometric mean:
///
/// ```text
/// A nabla B - A # B = 1/8 (A - B) ((A nabla B + A # B) / 2)^-1 (A - B)
/// ```
pub fn balanced_geometric_difference_residual(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tol: f64,
) -> Result<IdentityResidual> {
    let nabla = weighted_arithmetic(0.5, a, b)?;
    let sharp = weighted_geometric(0.5, a, b)?;
    let tau = nabla.add(&sharp)?.scale(0.5);
    let lhs = nabla.sub(&sharp)?;
    let d = a.sub(b)?;
    let rhs = tau.inv_pd()?.conj_with(&d)?.scale(0.125);
    IdentityResidual::new(lhs, rhs, tol)
}

/// Difference identity for the weighted geometric mean. The balanced case
/// `mu = 1/2` has the closed companion above; other weights go through the
/// measure-backed route.
pub fn geometric_difference_residual(
    mu: f64,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tol: f64,
) -> Result<IdentityResidual> {
    if mu == 0.5 {
        return balanced_geometric_difference_residual(a, b, tol);
    }
    let f = crate::means::named_mean(crate::means::MeanKind::Geometric, mu)?;
    mean_difference_residual(&f, a, b, tol)
}

/// Difference identity for the weighted harmonic mean, fully closed:
///
/// ```text
/// A nabla_mu B - A !_mu B = mu (1-mu) (A - B) (B nabla_mu A)^-1 (A - B)
/// ```
pub fn harmonic_difference_residual(
    mu: f64,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tol: f64,
) -> Result<IdentityResidual> {
    let lhs = weighted_arithmetic(mu, a, b)?.sub(&weighted_harmonic(mu, a, b)?)?;
    let d = a.sub(b)?;
    let rhs = b
        .affine(a, mu)?
        .inv_pd()?
        .conj_with(&d)?
        .scale(mu * (1.0 - mu));
    IdentityResidual::new(lhs, rhs, tol)
}

/// Transposed difference identity:
///
/// ```text
/// mu A + (1-mu) B - B s A = -(f''(1)/2) (A - B) (B t A)^-1 (A - B)
/// ```
pub fn transpose_identity_residual(
    f: &RepresentingFunction,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tol: f64,
) -> Result<IdentityResidual> {
    let (mu, f2) = f.effective_moments();
    let sigma_t = match &f.measure {
        Some(m) => mean_from_measure(m, b, a)?,
        None => transpose_mean(f, a, b)?,
    };
    let lhs = weighted_arithmetic(1.0 - mu, a, b)?.sub(&sigma_t)?;
    let rhs = if f2 == 0.0 {
        HermitianMatrix::zeros(a.dim())
    } else {
        let d = a.sub(b)?;
        match &f.measure {
            Some(m) => lambda_weighted_inverse_integral(m, a, b)?.conj_with(&d)?,
            None => {
                let tau_t = evaluate_mean(&g_from_f(f)?, b, a)?;
                tau_t.inv_pd()?.conj_with(&d)?.scale(-f2 / 2.0)
            }
        }
    };
    IdentityResidual::new(lhs, rhs, tol)
}

/// The three conjugation identities tying a mean, its adjoint, and its
/// transpose together through the unweighted geometric mean.
#[derive(Debug, Clone)]
pub struct ConjugationResiduals {
    /// `(A#B)^-1 (A s* B) (A#B)^-1 = (B s A)^-1`
    pub adjoint_transpose: IdentityResidual,
    /// `(A#B)^-1 (A nabla_(1-nu) B - B s A) (A#B)^-1 = (A !_nu B)^-1 - (A s* B)^-1`
    pub arithmetic_gap: IdentityResidual,
    /// `(A#B)^-1 (A s* B - A !_nu B) (A#B)^-1 = (B s A)^-1 - (A nabla_(1-nu) B)^-1`
    pub harmonic_gap: IdentityResidual,
}

/// Evaluates the conjugation identities for any mean `f` and any weight
/// `nu` in `[0, 1]` used by the arithmetic and harmonic reference means.
pub fn sharp_conjugation_residuals(
    f: &RepresentingFunction,
    nu: f64,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tol: f64,
) -> Result<ConjugationResiduals> {
    let sharp_inv = weighted_geometric(0.5, a, b)?.inv_pd()?;
    let sigma_star = adjoint_mean(f, a, b)?;
    let sigma_t = transpose_mean(f, a, b)?;
    let arith = weighted_arithmetic(1.0 - nu, a, b)?;
    let harm = weighted_harmonic(nu, a, b)?;

    let adjoint_transpose = IdentityResidual::new(
        sigma_star.conj_with(&sharp_inv)?,
        sigma_t.inv_pd()?,
        tol,
    )?;
    let arithmetic_gap = IdentityResidual::new(
        arith.sub(&sigma_t)?.conj_with(&sharp_inv)?,
        harm.inv_pd()?.sub(&sigma_star.inv_pd()?)?,
        tol,
    )?;
    let harmonic_gap = IdentityResidual::new(
        sigma_star.sub(&harm)?.conj_with(&sharp_inv)?,
        sigma_t.inv_pd()?.sub(&arith.inv_pd()?)?,
        tol,
    )?;
    Ok(ConjugationResiduals {
        adjoint_transpose,
        arithmetic_gap,
        harmonic_gap,
    })
}

/// Scalar form of the pointwise identity behind the measure route:
/// `1 nabla_lambda t - phi_lambda(t) = lambda (1-lambda) (t-1)^2 / (t nabla_lambda 1)`.
/// Returns the absolute residual.
pub fn scalar_phi_identity_residual(lambda: f64, t: f64) -> f64 {
    let lhs = 1.0 - lambda + lambda * t - phi_lambda(lambda, t);
    let rhs = lambda * (1.0 - lambda) * (t - 1.0) * (t - 1.0) / ((1.0 - lambda) * t + lambda);
    (lhs - rhs).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::means::{named_mean, MeanKind};
    use crate::measure::{f_from_measure, geometric_measure};

    fn real_pd(rows: &[Vec<f64>]) -> HermitianMatrix {
        HermitianMatrix::new(crate::matrix::ComplexMatrix::from_real_rows(rows).unwrap()).unwrap()
    }

    fn sample_pair() -> (HermitianMatrix, HermitianMatrix) {
        (
            real_pd(&[vec![2.0, 0.5], vec![0.5, 1.0]]),
            real_pd(&[vec![1.5, -0.25], vec![-0.25, 3.0]]),
        )
    }

    #[test]
    fn companion_of_harmonic_is_reversed_arithmetic() {
        let f = named_mean(MeanKind::Harmonic, 0.3).unwrap();
        let g = g_from_f(&f).unwrap();
        // g(t) = mu + (1 - mu) t.
        for &t in &[0.0, 0.5, 2.0, 3.0, 10.0] {
            let want = 0.3 + 0.7 * t;
            assert!((g.eval(t) - want).abs() < 1e-10, "t = {t}: {}", g.eval(t));
        }
        assert!((g.mu - 0.7).abs() < 1e-6);
    }

    #[test]
    fn companion_of_sqrt_has_known_value() {
        // For f = t^(1/2): g(4) = (1/8)(9) / (2.5 - 2) = 2.25.
        let f = RepresentingFunction::new(|t: f64| t.sqrt(), 0.5, -0.25, "sqrt", None).unwrap();
        let g = g_from_f(&f).unwrap();
        assert!((g.eval(4.0) - 2.25).abs() < 1e-13, "{}", g.eval(4.0));
    }

    #[test]
    fn companion_bridge_is_continuous_and_fixes_one() {
        let f = named_mean(MeanKind::Geometric, 0.3).unwrap();
        let g = g_from_f(&f).unwrap();
        assert_eq!(g.eval(1.0), 1.0);
        // The points are 2e-6 apart, so the slope alone moves the value
        // by up to 2e-6; a seam at the window edge would jump by far more.
        let just_in = g.eval(1.0 + 0.99e-4);
        let just_out = g.eval(1.0 + 1.01e-4);
        assert!((just_in - just_out).abs() < 3e-6);
        let left_in = g.eval(1.0 - 0.99e-4);
        let left_out = g.eval(1.0 - 1.01e-4);
        assert!((left_in - left_out).abs() < 3e-6);
    }

    #[test]
    fn companion_refuses_linear_means() {
        let f = named_mean(MeanKind::Arithmetic, 0.3).unwrap();
        assert!(matches!(g_from_f(&f), Err(Error::LinearMean(_))));
    }

    #[test]
    fn difference_identity_scalar_harmonic_halves() {
        // Scalars a = 1, b = 3, harmonic weight 1/2: both sides are 1/2.
        let a = HermitianMatrix::from_diagonal(&[1.0]);
        let b = HermitianMatrix::from_diagonal(&[3.0]);
        let f = named_mean(MeanKind::Harmonic, 0.5).unwrap();
        let r = mean_difference_residual(&f, &a, &b, 1e-10).unwrap();
        assert!((r.lhs.entry(0, 0).re - 0.5).abs() < 1e-14);
        assert!((r.rhs.entry(0, 0).re - 0.5).abs() < 1e-14);
        assert!(r.passes);
    }

    #[test]
    fn difference_identity_measure_backed_geometric_matrix_case() {
        let (a, b) = sample_pair();
        let f = f_from_measure(&geometric_measure(0.3, 64).unwrap()).unwrap();
        let r = mean_difference_residual(&f, &a, &b, 1e-10).unwrap();
        assert!(r.passes, "relative residual {:.3e}", r.relative());
    }

    #[test]
    fn difference_identity_linear_mean_reduces_to_zero() {
        let (a, b) = sample_pair();
        let f = named_mean(MeanKind::Arithmetic, 0.7).unwrap();
        let r = mean_difference_residual(&f, &a, &b, 1e-12).unwrap();
        assert!(r.passes);
        assert!(r.rhs.frobenius() == 0.0);
    }

    #[test]
    fn geometric_half_scalar_case() {
        // Scalars 1 and 9: nabla - sharp = 2, tau = 4, rhs = (64/4)/8 = 2.
        let a = HermitianMatrix::from_diagonal(&[1.0]);
        let b = HermitianMatrix::from_diagonal(&[9.0]);
        let r = balanced_geometric_difference_residual(&a, &b, 1e-12).unwrap();
        assert!((r.lhs.entry(0, 0).re - 2.0).abs() < 1e-13);
        assert!((r.rhs.entry(0, 0).re - 2.0).abs() < 1e-13);
        assert!(r.passes);
    }

    #[test]
    fn geometric_identity_matrix_cases() {
        let (a, b) = sample_pair();
        for &mu in &[0.3, 0.5, 0.7] {
            let r = geometric_difference_residual(mu, &a, &b, 1e-10).unwrap();
            assert!(r.passes, "mu = {mu}: residual {:.3e}", r.relative());
        }
    }

    #[test]
    fn harmonic_identity_matrix_cases() {
        let (a, b) = sample_pair();
        for &mu in &[0.1, 0.5, 0.9] {
            let r = harmonic_difference_residual(mu, &a, &b, 1e-12).unwrap();
            assert!(r.passes, "mu = {mu}: residual {:.3e}", r.relative());
        }
    }

    #[test]
    fn transpose_identity_measure_and_closed_paths() {
        let (a, b) = sample_pair();
        let f = named_mean(MeanKind::Geometric, 0.3).unwrap();
        let r = transpose_identity_residual(&f, &a, &b, 1e-10).unwrap();
        assert!(r.passes, "residual {:.3e}", r.relative());

        let h = named_mean(MeanKind::Harmonic, 0.7).unwrap();
        let r = transpose_identity_residual(&h, &a, &b, 1e-10).unwrap();
        assert!(r.passes, "residual {:.3e}", r.relative());
    }

    #[test]
    fn conjugation_identities_hold_for_all_families() {
        let (a, b) = sample_pair();
        for f in [
            named_mean(MeanKind::Geometric, 0.3).unwrap(),
            named_mean(MeanKind::Harmonic, 0.6).unwrap(),
            named_mean(MeanKind::Arithmetic, 0.25).unwrap(),
            crate::means::barbour2(0.4).unwrap(),
        ] {
            for &nu in &[0.25, 0.5, f.mu] {
                let c = sharp_conjugation_residuals(&f, nu, &a, &b, 1e-10).unwrap();
                assert!(
                    c.adjoint_transpose.passes,
                    "{} nu={nu}: {:.3e}",
                    f.label,
                    c.adjoint_transpose.relative()
                );
                assert!(
                    c.arithmetic_gap.passes,
                    "{} nu={nu}: {:.3e}",
                    f.label,
                    c.arithmetic_gap.relative()
                );
                assert!(
                    c.harmonic_gap.passes,
                    "{} nu={nu}: {:.3e}",
                    f.label,
                    c.harmonic_gap.relative()
                );
            }
        }
    }

    #[test]
    fn scalar_phi_identity_is_tight() {
        for &lambda in &[0.0, 0.1, 0.5, 0.9, 1.0] {
            for &t in &[1e-3, 0.5, 1.0, 2.0, 1e3] {
                assert!(
                    scalar_phi_identity_residual(lambda, t) <= 1e-12 * t.max(1.0),
                    "lambda = {lambda}, t = {t}"
                );
            }
        }
    }

    #[test]
    fn companion_matches_measure_route_on_scalars() {
        let m = geometric_measure(0.3, 64).unwrap();
        let f = f_from_measure(&m).unwrap();
        let g = g_from_f(&f).unwrap();
        for &t in &[0.01, 0.1, 0.5, 2.0, 10.0, 100.0] {
            let one = HermitianMatrix::from_diagonal(&[1.0]);
            let tm = HermitianMatrix::from_diagonal(&[t]);
            let tau = crate::measure::tau_from_measure(&m, &one, &tm).unwrap();
            let got = tau.entry(0, 0).re;
            let want = g.eval(t);
            assert!(
                (got - want).abs() <= 1e-8 * want.max(1.0),
                "t = {t}: {got} vs {want}"
            );
        }
    }
}

//! Ky Fan type inequalities for scalars and operators, with equality
//! diagnostics.
//!
//! The scalar suite compares means of numbers `x_i` in `(0, 1/2]` with the
//! means of their complements `1 - x_i`. The operator versions replace the
//! numbers by a matrix `0 < A <= I/2` and its complement `I - A`; some
//! survive in the Loewner order, some only eigenvalue by eigenvalue, and
//! one explicit 2x2 pair shows the Loewner versions genuinely fail.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermitian::{HermitianMatrix, OrderComparison};
use crate::matrix::ComplexMatrix;
use crate::means::{
    adjoint_mean, evaluate_mean, named_mean, weighted_arithmetic, weighted_harmonic,
    ComplementPair, MeanKind, RepresentingFunction,
};

/// Named tolerances used across suites; every checker takes the values it
/// needs from here. Adjustable from the command line by name.
#[derive(Debug, Clone)]
pub struct Tolerances {
    /// Relative Frobenius residual allowed in identity checks.
    pub identity: f64,
    /// Allowed negative part in Loewner comparisons.
    pub loewner: f64,
    /// Allowed per-index violation in eigenvalue comparisons.
    pub eigen: f64,
    /// Allowed negative slack in scalar inequalities.
    pub scalar: f64,
    /// Slack allowed in the `0 < A <= I/2` band check.
    pub band: f64,
    /// Gap below which an inequality counts as equality.
    pub equality_gap: f64,
    /// Input distance above which strictness is asserted.
    pub strict_distance: f64,
    /// Gap that well-separated inputs must produce.
    pub strict_gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            identity: 1e-10,
            loewner: 1e-10,
            eigen: 1e-9,
            scalar: 1e-14,
            band: 1e-12,
            equality_gap: 1e-11,
            strict_distance: 0.01,
            strict_gap: 1e-8,
        }
    }
}

impl Tolerances {
    /// Sets a tolerance by its command line name.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::ParseError {
                position: 0,
                message: format!("tolerance value {value} must be a nonnegative number"),
            });
        }
        match name {
            "identity" => self.identity = value,
            "loewner" => self.loewner = value,
            "eigen" => self.eigen = value,
            "scalar" => self.scalar = value,
            "band" => self.band = value,
            "equality_gap" => self.equality_gap = value,
            "strict_distance" => self.strict_distance = value,
            "strict_gap" => self.strict_gap = value,
            other => {
                return Err(Error::ParseError {
                    position: 0,
                    message: format!(
                        "unknown tolerance `{other}` (expected identity, loewner, eigen, scalar, \
                         band, equality_gap, strict_distance, or strict_gap)"
                    ),
                })
            }
        }
        Ok(())
    }
}

/// Positive numbers in `(0, 1/2]` with probability weights.
#[derive(Debug, Clone)]
pub struct ScalarMeansInput {
    pub xs: Vec<f64>,
    pub weights: Vec<f64>,
}

impl ScalarMeansInput {
    pub fn new(xs: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if xs.len() < 2 || xs.len() != weights.len() {
            return Err(Error::PreconditionViolated(format!(
                "need n >= 2 values with matching weights, got {} and {}",
                xs.len(),
                weights.len()
            )));
        }
        for &x in &xs {
            if !(x.is_finite() && x > 0.0 && x <= 0.5) {
                return Err(Error::PreconditionViolated(format!(
                    "value {x} outside (0, 1/2]"
                )));
            }
        }
        let mut total = 0.0;
        for &w in &weights {
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::PreconditionViolated(format!(
                    "weight {w} is not a nonnegative number"
                )));
            }
            total += w;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::PreconditionViolated(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(ScalarMeansInput { xs, weights })
    }

    /// Weighted arithmetic, geometric, and harmonic means of `values`.
    fn means_of(&self, values: impl Iterator<Item = f64>) -> (f64, f64, f64) {
        let mut a = 0.0;
        let mut log_g = 0.0;
        let mut inv_h = 0.0;
        for (x, &w) in values.zip(&self.weights) {
            a += w * x;
            log_g += w * x.ln();
            inv_h += w / x;
        }
        (a, log_g.exp(), 1.0 / inv_h)
    }

    /// Means of the values themselves.
    pub fn means(&self) -> (f64, f64, f64) {
        self.means_of(self.xs.iter().copied())
    }

    /// Means of the complements `1 - x_i`.
    pub fn complement_means(&self) -> (f64, f64, f64) {
        self.means_of(self.xs.iter().map(|&x| 1.0 - x))
    }
}

/// One scalar inequality outcome: `slack >= 0` means it held exactly.
#[derive(Debug, Clone, Serialize)]
pub struct ScalarCheck {
    pub id: &'static str,
    pub slack: f64,
    pub holds: bool,
}

/// The eight scalar complement inequalities. With `A, G, H` the means of
/// the values and `A', G', H'` the means of the complements:
///
/// ```text
/// additive_ag     A' - G'   <=  A - G
/// additive_ah     A' - H'   <=  A - H
/// reciprocal_ga   1/G'-1/A' <=  1/G - 1/A
/// reciprocal_hg   1/H'-1/G' <=  1/H - 1/G
/// reciprocal_ha   1/H'-1/A' <=  1/H - 1/A
/// ratio_ag        A'/G'     <=  A/G
/// ratio_gh        G'/H'     <=  G/H
/// ratio_ah        A'/H'     <=  A/H
/// ```
///
/// The difference `G - H` is not on the list: neither direction holds for
/// all inputs.
pub fn scalar_kyfan_suite(input: &ScalarMeansInput, tol: f64) -> Vec<ScalarCheck> {
    let (a, g, h) = input.means();
    let (ap, gp, hp) = input.complement_means();
    let checks = [
        ("additive_ag", (a - g) - (ap - gp)),
        ("additive_ah", (a - h) - (ap - hp)),
        ("reciprocal_ga", (1.0 / g - 1.0 / a) - (1.0 / gp - 1.0 / ap)),
        ("reciprocal_hg", (1.0 / h - 1.0 / g) - (1.0 / hp - 1.0 / gp)),
        ("reciprocal_ha", (1.0 / h - 1.0 / a) - (1.0 / hp - 1.0 / ap)),
        ("ratio_ag", a / g - ap / gp),
        ("ratio_gh", g / h - gp / hp),
        ("ratio_ah", a / h - ap / hp),
    ];
    checks
        .into_iter()
        .map(|(id, slack)| ScalarCheck {
            id,
            slack,
            holds: slack >= -tol,
        })
        .collect()
}

/// Two-sided slack of the power difference bound for `a < 0`:
///
/// ```text
/// a v^(a-1) (u - v)  <=  u^a - v^a  <=  a u^(a-1) (u - v)
/// ```
///
/// with equality on both sides exactly when `u = v`.
#[derive(Debug, Clone)]
pub struct PowerBoundCheck {
    pub lower_slack: f64,
    pub upper_slack: f64,
    pub equality: bool,
}

pub fn power_bound_check(u: f64, v: f64, a: f64) -> Result<PowerBoundCheck> {
    if !(u.is_finite() && u > 0.0 && v.is_finite() && v > 0.0) {
        return Err(Error::PreconditionViolated(format!(
            "power bound needs positive arguments, got u = {u}, v = {v}"
        )));
    }
    if !(a.is_finite() && a < 0.0) {
        return Err(Error::PreconditionViolated(format!(
            "power bound needs a negative exponent, got a = {a}"
        )));
    }
    let diff = u.powf(a) - v.powf(a);
    Ok(PowerBoundCheck {
        lower_slack: diff - a * v.powf(a - 1.0) * (u - v),
        upper_slack: a * u.powf(a - 1.0) * (u - v) - diff,
        equality: u == v,
    })
}

/// Verdict on an inequality's equality behaviour for one input pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Inputs are (numerically) equal and the gap vanishes.
    EqualityConsistent,
    /// Inputs are apart and the gap is decisively positive.
    StrictConsistent,
    /// Calibrated expectations violated: equal inputs with a visible gap,
    /// or well-separated inputs with a vanishing gap.
    Inconsistent,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::EqualityConsistent => "equality_consistent",
            Verdict::StrictConsistent => "strict_consistent",
            Verdict::Inconsistent => "inconsistent",
        }
    }
}

/// Distance and gap for one inequality instance, classified.
#[derive(Debug, Clone)]
pub struct EqualityVerdict {
    pub input_distance: f64,
    pub inequality_gap: f64,
    pub verdict: Verdict,
}

impl EqualityVerdict {
    /// Classifies against the calibrated thresholds. Inputs closer than
    /// numerical equality must show a vanishing gap; inputs farther apart
    /// than `strict_distance` must show at least `strict_gap`. The band in
    /// between asserts nothing and is labelled by gap size alone.
    pub fn classify(input_distance: f64, inequality_gap: f64, tols: &Tolerances) -> Self {
        let verdict = if input_distance <= 1e-12 {
            if inequality_gap <= tols.equality_gap {
                Verdict::EqualityConsistent
            } else {
                Verdict::Inconsistent
            }
        } else if input_distance >= tols.strict_distance {
            if inequality_gap >= tols.strict_gap {
                Verdict::StrictConsistent
            } else {
                Verdict::Inconsistent
            }
        } else if inequality_gap > tols.equality_gap {
            Verdict::StrictConsistent
        } else {
            Verdict::EqualityConsistent
        };
        EqualityVerdict {
            input_distance,
            inequality_gap,
            verdict,
        }
    }
}

/// Outcome of one operator comparison in the Loewner order, with equality
/// diagnostics.
#[derive(Debug, Clone)]
pub struct LoewnerReport {
    pub comparison: OrderComparison,
    pub equality: EqualityVerdict,
}

/// Additive operator Ky Fan inequality. For `0 < A, B <= I/2` with
/// complements `A' = I - A`, `B' = I - B`:
///
/// ```text
/// A' nabla_mu B' - A' s B'  <=  A nabla_mu B - A s B
/// ```
///
/// Equality holds exactly when `A = B` (for non-linear `f`). Returns the
/// Loewner comparison of the two sides and the equality verdict; errors if
/// either input leaves the band.
pub fn additive_comparison(
    f: &RepresentingFunction,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tols: &Tolerances,
) -> Result<LoewnerReport> {
    let pa = ComplementPair::new(a, tols.band)?;
    let pb = ComplementPair::new(b, tols.band)?;
    let (mu, _) = f.effective_moments();

    let unprimed = weighted_arithmetic(mu, a, b)?.sub(&evaluate_mean(f, a, b)?)?;
    let primed = weighted_arithmetic(mu, &pa.a_prime, &pb.a_prime)?
        .sub(&evaluate_mean(f, &pa.a_prime, &pb.a_prime)?)?;

    let comparison = primed.loewner_leq(&unprimed, tols.loewner)?;
    let input_distance = a.sub(b)?.frobenius();
    let gap = unprimed.sub(&primed)?.frobenius();
    let equality = if f.is_linear {
        // Both sides vanish identically; no strictness to assert.
        EqualityVerdict {
            input_distance,
            inequality_gap: gap,
            verdict: Verdict::EqualityConsistent,
        }
    } else {
        EqualityVerdict::classify(input_distance, gap, tols)
    };
    Ok(LoewnerReport {
        comparison,
        equality,
    })
}

/// Index-by-index comparison of two decreasing eigenvalue sequences:
/// holds when `lhs_j <= rhs_j + tol` for every `j`.
#[derive(Debug, Clone)]
pub struct EigSeqComparison {
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    /// `min_j (rhs_j - lhs_j)`; the comparison holds when this is `>= -tol`.
    pub min_slack: f64,
    /// `max_j |rhs_j - lhs_j|`, the gap used for equality verdicts.
    pub max_gap: f64,
    pub tolerance: f64,
    pub holds: bool,
}

impl EigSeqComparison {
    pub fn compare(lhs_op: &HermitianMatrix, rhs_op: &HermitianMatrix, tol: f64) -> Result<Self> {
        let lhs = lhs_op.eigvals_desc()?;
        let rhs = rhs_op.eigvals_desc()?;
        let mut min_slack = f64::INFINITY;
        let mut max_gap = 0.0_f64;
        for (l, r) in lhs.iter().zip(&rhs) {
            min_slack = min_slack.min(r - l);
            max_gap = max_gap.max((r - l).abs());
        }
        Ok(EigSeqComparison {
            lhs,
            rhs,
            min_slack,
            max_gap,
            tolerance: tol,
            holds: min_slack >= -tol,
        })
    }
}

/// Outcome of one eigenvalue-sequence comparison with equality diagnostics.
#[derive(Debug, Clone)]
pub struct EigenReport {
    pub comparison: EigSeqComparison,
    pub equality: EqualityVerdict,
}

fn eigen_report(
    lhs_op: &HermitianMatrix,
    rhs_op: &HermitianMatrix,
    input_distance: f64,
    linear: bool,
    tols: &Tolerances,
) -> Result<EigenReport> {
    let comparison = EigSeqComparison::compare(lhs_op, rhs_op, tols.eigen)?;
    let equality = if linear {
        EqualityVerdict {
            input_distance,
            inequality_gap: comparison.max_gap,
            verdict: Verdict::EqualityConsistent,
        }
    } else {
        EqualityVerdict::classify(input_distance, comparison.max_gap, tols)
    };
    Ok(EigenReport {
        comparison,
        equality,
    })
}

/// Eigenvalue Ky Fan inequalities for inverse differences. For matrices in
/// the band and every `j`:
///
/// ```text
/// lambda_j((A' s B')^-1 - (A' nabla_mu B')^-1)  <=  lambda_j((A s B)^-1 - (A nabla_mu B)^-1)
/// lambda_j((A' !_mu B')^-1 - (A' s* B')^-1)     <=  lambda_j((A !_mu B)^-1 - (A s* B)^-1)
/// ```
///
/// Returns the two reports in that order.
pub fn difference_eigen_comparisons(
    f: &RepresentingFunction,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tols: &Tolerances,
) -> Result<(EigenReport, EigenReport)> {
    let pa = ComplementPair::new(a, tols.band)?;
    let pb = ComplementPair::new(b, tols.band)?;
    let (mu, _) = f.effective_moments();
    let input_distance = a.sub(b)?.frobenius();

    let inverse_diff = |x: &HermitianMatrix, y: &HermitianMatrix| -> Result<HermitianMatrix> {
        evaluate_mean(f, x, y)?
            .inv_pd()?
            .sub(&weighted_arithmetic(mu, x, y)?.inv_pd()?)
    };
    let first = eigen_report(
        &inverse_diff(&pa.a_prime, &pb.a_prime)?,
        &inverse_diff(a, b)?,
        input_distance,
        f.is_linear,
        tols,
    )?;

    let adjoint_diff = |x: &HermitianMatrix, y: &HermitianMatrix| -> Result<HermitianMatrix> {
        weighted_harmonic(mu, x, y)?
            .inv_pd()?
            .sub(&adjoint_mean(f, x, y)?.inv_pd()?)
    };
    let second = eigen_report(
        &adjoint_diff(&pa.a_prime, &pb.a_prime)?,
        &adjoint_diff(a, b)?,
        input_distance,
        f.is_linear,
        tols,
    )?;
    Ok((first, second))
}

/// Eigenvalue Ky Fan inequalities in multiplicative form:
///
/// ```text
/// lambda_j((A' s B')^-1/2 (A' nabla_mu B') (A' s B')^-1/2)  <=  lambda_j((A s B)^-1/2 (A nabla_mu B) (A s B)^-1/2)
/// lambda_j((A' !_mu B')^-1/2 (A' s* B') (A' !_mu B')^-1/2)  <=  lambda_j((A !_mu B)^-1/2 (A s* B) (A !_mu B)^-1/2)
/// ```
pub fn ratio_eigen_comparisons(
    f: &RepresentingFunction,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tols: &Tolerances,
) -> Result<(EigenReport, EigenReport)> {
    let pa = ComplementPair::new(a, tols.band)?;
    let pb = ComplementPair::new(b, tols.band)?;
    let (mu, _) = f.effective_moments();
    let input_distance = a.sub(b)?.frobenius();

    let ratio = |x: &HermitianMatrix, y: &HermitianMatrix| -> Result<HermitianMatrix> {
        weighted_arithmetic(mu, x, y)?.conj_with(&evaluate_mean(f, x, y)?.inv_sqrt_pd()?)
    };
    let first = eigen_report(
        &ratio(&pa.a_prime, &pb.a_prime)?,
        &ratio(a, b)?,
        input_distance,
        f.is_linear,
        tols,
    )?;

    let adjoint_ratio = |x: &HermitianMatrix, y: &HermitianMatrix| -> Result<HermitianMatrix> {
        adjoint_mean(f, x, y)?.conj_with(&weighted_harmonic(mu, x, y)?.inv_sqrt_pd()?)
    };
    let second = eigen_report(
        &adjoint_ratio(&pa.a_prime, &pb.a_prime)?,
        &adjoint_ratio(a, b)?,
        input_distance,
        f.is_linear,
        tols,
    )?;
    Ok((first, second))
}

/// The two-sided inverse-difference sandwich for ordered means
/// `A s B <= A t B`:
///
/// ```text
/// (AtB)^-1 (AtB - AsB) (AtB)^-1  <=  (AsB)^-1 - (AtB)^-1  <=  (AsB)^-1 (AtB - AsB) (AsB)^-1
/// ```
///
/// Equality on either side forces `A = B` whenever the representing
/// functions differ everywhere off `t = 1`; if they agree somewhere, both
/// sides can collapse with `A != B`.
#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub left: OrderComparison,
    pub right: OrderComparison,
    pub left_gap: f64,
    pub right_gap: f64,
    pub input_distance: f64,
}

pub fn ordered_sandwich(
    f_sigma: &RepresentingFunction,
    f_tau: &RepresentingFunction,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tols: &Tolerances,
) -> Result<SandwichReport> {
    let s = evaluate_mean(f_sigma, a, b)?;
    let t = evaluate_mean(f_tau, a, b)?;
    let si = s.inv_pd()?;
    let ti = t.inv_pd()?;
    let diff = t.sub(&s)?;
    let mid = si.sub(&ti)?;
    let left_side = diff.conj_with(&ti)?;
    let right_side = diff.conj_with(&si)?;

    let left = left_side.loewner_leq(&mid, tols.loewner)?;
    let right = mid.loewner_leq(&right_side, tols.loewner)?;
    Ok(SandwichReport {
        left,
        right,
        left_gap: mid.sub(&left_side)?.frobenius(),
        right_gap: right_side.sub(&mid)?.frobenius(),
        input_distance: a.sub(b)?.frobenius(),
    })
}

/// The sandwich specialized to `t = nabla_mu`, the arithmetic mean with
/// the weight of `f`.
pub fn arithmetic_sandwich(
    f: &RepresentingFunction,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tols: &Tolerances,
) -> Result<SandwichReport> {
    let (mu, _) = f.effective_moments();
    let nabla = named_mean(MeanKind::Arithmetic, mu)?;
    ordered_sandwich(f, &nabla, a, b, tols)
}

/// Equality in the sandwich with `A != B`: two distinct means whose
/// representing functions cross at `t0 = 1/2` (both take the value `5/7`
/// there), evaluated at `A = 2I`, `B = I`, where the spectrum of
/// `A^-1/2 B A^-1/2` sits exactly on the crossing point. Both sandwich
/// inequalities collapse to equalities although the inputs are far apart.
#[derive(Debug, Clone)]
pub struct CrossingReport {
    pub sandwich: SandwichReport,
    /// True when both gaps vanish within `equality_gap` while the inputs
    /// differ by at least `strict_distance`.
    pub equality_with_distinct_inputs: bool,
}

pub fn barbour_crossing(r: f64, s: f64, tols: &Tolerances) -> Result<CrossingReport> {
    let f = crate::means::barbour2(r)?;
    let g = crate::means::barbour2(s)?;
    let a = HermitianMatrix::identity(2).scale(2.0);
    let b = HermitianMatrix::identity(2);
    let sandwich = ordered_sandwich(&f, &g, &a, &b, tols)?;
    let equality_with_distinct_inputs = sandwich.left_gap <= tols.equality_gap
        && sandwich.right_gap <= tols.equality_gap
        && sandwich.input_distance >= tols.strict_distance;
    Ok(CrossingReport {
        sandwich,
        equality_with_distinct_inputs,
    })
}

/// Reference entries of the bundled 2x2 counterexample, frozen to six
/// significant digits: the Loewner versions of the inverse-difference and
/// ratio comparisons fail on this pair even though all eigenvalue
/// versions hold.
pub const COUNTEREXAMPLE_PRINTED: [[[f64; 2]; 2]; 3] = [
    [[0.226844, 0.0685098], [0.0685098, 0.0204844]],
    [[0.0292946, 0.00560064], [0.00560064, 0.00101542]],
    [[0.0293063, 0.00556985], [0.00556985, 0.00100374]],
];

/// Everything the counterexample reproduction checks.
#[derive(Debug, Clone)]
pub struct CounterexampleReport {
    /// The three difference matrices, unprimed side minus primed side.
    pub computed: [HermitianMatrix; 3],
    /// Entrywise distance from the printed values.
    pub max_entry_error: [f64; 3],
    /// Minimum eigenvalue of each difference; all must be clearly negative.
    pub min_eigenvalue: [f64; 3],
    /// Loewner comparisons `primed <= unprimed`, all expected to fail,
    /// each carrying a witness vector.
    pub loewner: [OrderComparison; 3],
    /// Eigenvalue versions of the same three comparisons, all expected to
    /// hold.
    pub eigen: [EigSeqComparison; 3],
    /// The construction promises `0 < B <= A <= I/2`.
    pub b_leq_a: bool,
    /// Entry errors within `5e-6` and every minimum eigenvalue below
    /// `-1e-6`.
    pub matches_printed: bool,
}

/// Reproduces the bundled 2x2 counterexample:
///
/// ```text
/// A = [[1/5, -1/10], [-1/10, 1/3]],   B = [[2/15, -1/10], [-1/10, 1/3]]
/// ```
///
/// with the unweighted arithmetic and geometric means.
pub fn reproduce_counterexample(tols: &Tolerances) -> Result<CounterexampleReport> {
    let a = HermitianMatrix::new(ComplexMatrix::from_real_rows(&[
        vec![1.0 / 5.0, -1.0 / 10.0],
        vec![-1.0 / 10.0, 1.0 / 3.0],
    ])?)?;
    let b = HermitianMatrix::new(ComplexMatrix::from_real_rows(&[
        vec![2.0 / 15.0, -1.0 / 10.0],
        vec![-1.0 / 10.0, 1.0 / 3.0],
    ])?)?;
    let pa = ComplementPair::new(&a, tols.band)?;
    let pb = ComplementPair::new(&b, tols.band)?;
    let b_leq_a = b.loewner_leq(&a, tols.loewner)?.holds;

    // The three comparison operators on a pair (X, Y).
    let ops = |x: &HermitianMatrix, y: &HermitianMatrix| -> Result<[HermitianMatrix; 3]> {
        let nabla = weighted_arithmetic(0.5, x, y)?;
        let sharp = crate::means::weighted_geometric(0.5, x, y)?;
        let d1 = sharp.inv_pd()?.sub(&nabla.inv_pd()?)?;
        let d2 = nabla.conj_with(&sharp.inv_sqrt_pd()?)?;
        let d3 = sharp.inv_pd()?.conj_with(&nabla.sqrt_psd()?)?;
        Ok([d1, d2, d3])
    };
    let unprimed = ops(&a, &b)?;
    let primed = ops(&pa.a_prime, &pb.a_prime)?;

    let mut computed = Vec::with_capacity(3);
    let mut max_entry_error = [0.0_f64; 3];
    let mut min_eigenvalue = [0.0_f64; 3];
    let mut loewner = Vec::with_capacity(3);
    let mut eigen = Vec::with_capacity(3);
    for k in 0..3 {
        let diff = unprimed[k].sub(&primed[k])?;
        let mut err = 0.0_f64;
        for (i, row) in COUNTEREXAMPLE_PRINTED[k].iter().enumerate() {
            for (j, printed) in row.iter().enumerate() {
                err = err.max((diff.entry(i, j).re - printed).abs());
                err = err.max(diff.entry(i, j).im.abs());
            }
        }
        max_entry_error[k] = err;
        min_eigenvalue[k] = diff.min_eigenvalue()?;
        loewner.push(primed[k].loewner_leq(&unprimed[k], tols.loewner)?);
        eigen.push(EigSeqComparison::compare(&primed[k], &unprimed[k], tols.eigen)?);
        computed.push(diff);
    }

    let matches_printed = max_entry_error.iter().all(|&e| e <= 5e-6)
        && min_eigenvalue.iter().all(|&m| m < -1e-6);
    Ok(CounterexampleReport {
        computed: computed.try_into().expect("three entries"),
        max_entry_error,
        min_eigenvalue,
        loewner: loewner.try_into().expect("three entries"),
        eigen: eigen.try_into().expect("three entries"),
        b_leq_a,
        matches_printed,
    })
}

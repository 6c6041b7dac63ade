//! Operator means, their representing functions, and transforms.
//!
//! A mean `s` on positive definite matrices is evaluated through its
//! representing function `f` (operator monotone, `f(1) = 1`):
//!
//! ```text
//! A s B = A^(1/2) f(A^(-1/2) B A^(-1/2)) A^(1/2)
//! ```
//!
//! The weight of the mean is `mu = f'(1)`, and `f''(1) <= 0` measures how
//! far the mean sits from the arithmetic one. Transforms of `f` give the
//! adjoint `(A^-1 s B^-1)^-1`, the transpose `B s A`, and the dual
//! `(B^-1 s A^-1)^-1`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::measure::{f_from_measure, geometric_measure, BorelMeasure};

/// Tolerance for `f(1) = 1` at construction.
pub const AT_ONE_TOL: f64 = 1e-12;

/// Values of `|f''(1)|` below this are snapped to zero (linear mean).
pub const LINEAR_SNAP: f64 = 1e-14;

/// Default quadrature size for measures attached to named geometric means.
pub const GEOMETRIC_NODES: usize = 64;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Representing function of an operator mean together with its derivative
/// data at `t = 1` and, when one is available, the measure behind it.
///
/// For functions built from finite differences (see
/// [`crate::identities::g_from_f`]) `mu` and `second_at_one` are estimates;
/// exact constructions carry exact values.
#[derive(Clone)]
pub struct RepresentingFunction {
    eval: ScalarFn,
    pub mu: f64,
    pub second_at_one: f64,
    pub is_linear: bool,
    pub label: String,
    pub measure: Option<Arc<BorelMeasure>>,
}

impl fmt::Debug for RepresentingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RepresentingFunction")
            .field("label", &self.label)
            .field("mu", &self.mu)
            .field("second_at_one", &self.second_at_one)
            .field("is_linear", &self.is_linear)
            .field("measure", &self.measure.is_some())
            .finish()
    }
}

impl RepresentingFunction {
    /// Wraps a scalar function after checking the mean axioms it can check
    /// pointwise: `f(1) = 1` within `1e-12`, weight in `[0, 1]`,
    /// `f''(1) <= 0`, and monotonicity on a sample grid.
    pub fn new(
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        mu: f64,
        second_at_one: f64,
        label: impl Into<String>,
        measure: Option<Arc<BorelMeasure>>,
    ) -> Result<Self> {
        let label = label.into();
        let at_one = eval(1.0);
        let fixes_one = (at_one - 1.0).abs() <= AT_ONE_TOL;
        if !fixes_one {
            return Err(Error::PreconditionViolated(format!(
                "`{label}`: f(1) = {at_one} is not 1 within {AT_ONE_TOL:e}"
            )));
        }
        const SLOP: f64 = 1e-6;
        if !(-SLOP..=1.0 + SLOP).contains(&mu) {
            return Err(Error::PreconditionViolated(format!(
                "`{label}`: weight f'(1) = {mu} outside [0, 1]"
            )));
        }
        if second_at_one > SLOP {
            return Err(Error::PreconditionViolated(format!(
                "`{label}`: f''(1) = {second_at_one} is positive"
            )));
        }
        let mu = mu.clamp(0.0, 1.0);
        let mut second = second_at_one.min(0.0);
        if second.abs() <= LINEAR_SNAP {
            second = 0.0;
        }

        // Monotonicity spot check on a logarithmic grid.
        let mut prev = eval(0.0);
        if !prev.is_finite() {
            return Err(Error::PreconditionViolated(format!(
                "`{label}`: f(0) = {prev} is not finite"
            )));
        }
        for k in 0..=24 {
            let t = 10f64.powf(-3.0 + 0.25 * k as f64);
            let v = eval(t);
            if !v.is_finite() {
                return Err(Error::PreconditionViolated(format!(
                    "`{label}`: f({t}) = {v} is not finite"
                )));
            }
            if v < prev - 1e-9 * prev.abs().max(1.0) {
                return Err(Error::PreconditionViolated(format!(
                    "`{label}`: not monotone near t = {t}"
                )));
            }
            prev = v;
        }

        Ok(RepresentingFunction {
            eval: Arc::new(eval),
            mu,
            second_at_one: second,
            is_linear: second == 0.0,
            label,
            measure,
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    /// Weight and curvature seen by identity checks: taken from the
    /// attached measure when there is one, so that the mean, its companion,
    /// and the derivative data all come from the same discretization.
    pub fn effective_moments(&self) -> (f64, f64) {
        match &self.measure {
            Some(m) => (m.moment_mu(), m.moment_second()),
            None => (self.mu, self.second_at_one),
        }
    }
}

/// The three classical weighted mean families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanKind {
    Arithmetic,
    Geometric,
    Harmonic,
}

impl MeanKind {
    pub fn name(self) -> &'static str {
        match self {
            MeanKind::Arithmetic => "arithmetic",
            MeanKind::Geometric => "geometric",
            MeanKind::Harmonic => "harmonic",
        }
    }
}

fn check_weight(mu: f64) -> Result<()> {
    if !(mu.is_finite() && (0.0..=1.0).contains(&mu)) {
        return Err(Error::PreconditionViolated(format!(
            "mean weight {mu} outside [0, 1]"
        )));
    }
    Ok(())
}

/// Weighted mean from one of the named families.
///
/// * arithmetic: `f(t) = 1 - mu + mu t`
/// * geometric: `f(t) = t^mu`
/// * harmonic: `f(t) = ((1 - mu) + mu / t)^-1`
///
/// Each carries its exact representing measure; the geometric one carries
/// its 64-node discretization (for `mu` strictly inside `(0, 1)`).
pub fn named_mean(kind: MeanKind, mu: f64) -> Result<RepresentingFunction> {
    check_weight(mu)?;
    let label = format!("{}:{mu}", kind.name());
    match kind {
        MeanKind::Arithmetic => RepresentingFunction::new(
            move |t| 1.0 - mu + mu * t,
            mu,
            0.0,
            label,
            Some(Arc::new(BorelMeasure::arithmetic(mu)?)),
        ),
        MeanKind::Geometric => {
            let measure = if mu > 0.0 && mu < 1.0 {
                geometric_measure(mu, GEOMETRIC_NODES)?
            } else {
                BorelMeasure::dirac(mu)?
            };
            RepresentingFunction::new(
                move |t| t.powf(mu),
                mu,
                mu * (mu - 1.0),
                label,
                Some(Arc::new(measure)),
            )
        }
        MeanKind::Harmonic => RepresentingFunction::new(
            move |t| crate::measure::phi_lambda(mu, t),
            mu,
            -2.0 * mu * (1.0 - mu),
            label,
            Some(Arc::new(BorelMeasure::dirac(mu)?)),
        ),
    }
}

/// Floor substituted for `t = 0` inside transforms that divide by `t`, so
/// evaluation realizes the limit value.
const T_FLOOR: f64 = 1e-300;

/// Adjoint transform `f*(t) = f(1/t)^-1`, representing
/// `(A^-1 s B^-1)^-1`. Weight is unchanged;
/// `f*''(1) = -f''(1) + 2 mu (mu - 1)`.
pub fn adjoint(f: &RepresentingFunction) -> Result<RepresentingFunction> {
    let inner = f.eval.clone();
    let mu = f.mu;
    let second = -f.second_at_one + 2.0 * mu * (mu - 1.0);
    RepresentingFunction::new(
        move |t| 1.0 / inner(1.0 / t.max(T_FLOOR)),
        mu,
        second,
        format!("adjoint({})", f.label),
        None,
    )
}

/// Transpose transform `f°(t) = t f(1/t)`, representing `B s A`. The
/// weight reflects to `1 - mu` and `f°''(1) = f''(1)`. An attached measure
/// reflects with it.
pub fn transpose(f: &RepresentingFunction) -> Result<RepresentingFunction> {
    let inner = f.eval.clone();
    let measure = match &f.measure {
        Some(m) => Some(Arc::new(m.reflected()?)),
        None => None,
    };
    RepresentingFunction::new(
        move |t| {
            let t = t.max(T_FLOOR);
            t * inner(1.0 / t)
        },
        1.0 - f.mu,
        f.second_at_one,
        format!("transpose({})", f.label),
        measure,
    )
}

/// Dual transform `f!(t) = t / f(t)`, representing `(B^-1 s A^-1)^-1`.
/// Weight reflects to `1 - mu`; `f!''(1) = -f''(1) + 2 mu (mu - 1)`.
pub fn dual(f: &RepresentingFunction) -> Result<RepresentingFunction> {
    let inner = f.eval.clone();
    let mu = f.mu;
    let second = -f.second_at_one + 2.0 * mu * (mu - 1.0);
    RepresentingFunction::new(
        move |t| {
            let t = t.max(T_FLOOR);
            t / inner(t)
        },
        1.0 - mu,
        second,
        format!("dual({})", f.label),
        None,
    )
}

/// Monotone nonnegative curve on `(0, infinity)` with recorded value and
/// first two derivatives at `t = 1`. The input to the mean-producing map
/// below; unlike a representing function it need not equal 1 at 1.
#[derive(Clone)]
pub struct MonotoneCurve {
    eval: ScalarFn,
    pub at_one: f64,
    pub deriv_at_one: f64,
    pub second_at_one: f64,
    pub label: String,
}

impl fmt::Debug for MonotoneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneCurve")
            .field("label", &self.label)
            .field("at_one", &self.at_one)
            .field("deriv_at_one", &self.deriv_at_one)
            .field("second_at_one", &self.second_at_one)
            .finish()
    }
}

impl MonotoneCurve {
    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    /// The mean-producing map `g -> (t + g) / (1 + g)`. For any
    /// nonnegative monotone `g` the image takes the value 1 at `t = 1`,
    /// has slope `1 / (1 + g(1))` there, and second derivative
    /// `-2 g'(1) / (1 + g(1))^2`.
    pub fn barbour(&self) -> MonotoneCurve {
        let inner = self.eval.clone();
        let d = 1.0 + self.at_one;
        MonotoneCurve {
            eval: Arc::new(move |t| {
                let g = inner(t);
                (t + g) / (1.0 + g)
            }),
            at_one: 1.0,
            deriv_at_one: 1.0 / d,
            second_at_one: -2.0 * self.deriv_at_one / (d * d),
            label: format!("barbour({})", self.label),
        }
    }

    /// Upgrades a curve with `g(1) = 1` to a representing function.
    pub fn into_representing_function(self) -> Result<RepresentingFunction> {
        if (self.at_one - 1.0).abs() > AT_ONE_TOL {
            return Err(Error::PreconditionViolated(format!(
                "`{}`: value at 1 is {}, not 1",
                self.label, self.at_one
            )));
        }
        let eval = self.eval.clone();
        RepresentingFunction::new(
            move |t| eval(t),
            self.deriv_at_one,
            self.second_at_one,
            self.label,
            None,
        )
    }
}

/// The curve `(c t)^r` for `c > 0`, `0 < r <= 1`.
pub fn power_curve(c: f64, r: f64) -> Result<MonotoneCurve> {
    if !(c.is_finite() && c > 0.0) || !(r.is_finite() && r > 0.0 && r <= 1.0) {
        return Err(Error::PreconditionViolated(format!(
            "power curve needs c > 0 and 0 < r <= 1, got c = {c}, r = {r}"
        )));
    }
    let v = c.powf(r);
    Ok(MonotoneCurve {
        eval: Arc::new(move |t| (c * t).powf(r)),
        at_one: v,
        deriv_at_one: r * v,
        second_at_one: r * (r - 1.0) * v,
        label: format!("({c}t)^{r}"),
    })
}

/// The mean obtained by applying the mean-producing map twice to
/// `(2t)^r`. Its weight is exactly `1/2` and
/// `f''(1) = -1 / (2 (1 + 2^r))`.
pub fn barbour2(r: f64) -> Result<RepresentingFunction> {
    let mut f = power_curve(2.0, r)?.barbour().barbour();
    f.label = format!("barbour2:(2t)^r:r={r}");
    f.into_representing_function()
}

/// Evaluates `A s B = A^(1/2) f(A^(-1/2) B A^(-1/2)) A^(1/2)`.
///
/// Both matrices must be positive definite. Tiny negative eigenvalues of
/// the congruenced middle factor (roundoff from the similarity) are clamped
/// to zero before applying `f`.
pub fn evaluate_mean(
    f: &RepresentingFunction,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let dec = a.pd_decomposition()?;
    let sqrt_vals: Vec<f64> = dec.eigenvalues.iter().map(|&x| x.sqrt()).collect();
    let isqrt_vals: Vec<f64> = sqrt_vals.iter().map(|&s| 1.0 / s).collect();
    let a_sqrt = dec.recompose(&sqrt_vals);
    let a_isqrt = dec.recompose(&isqrt_vals);
    let t = b.conj_with(&a_isqrt)?;
    let ft = t.matrix_function_pd(|x| f.eval(x))?;
    ft.conj_with(&a_sqrt)
}

/// `(A^-1 s B^-1)^-1` evaluated directly on the inverses.
pub fn adjoint_mean(
    f: &RepresentingFunction,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    evaluate_mean(f, &a.inv_pd()?, &b.inv_pd()?)?.inv_pd()
}

/// `B s A`.
pub fn transpose_mean(
    f: &RepresentingFunction,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    evaluate_mean(f, b, a)
}

/// `(B^-1 s A^-1)^-1`.
pub fn dual_mean(
    f: &RepresentingFunction,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    evaluate_mean(f, &b.inv_pd()?, &a.inv_pd()?)?.inv_pd()
}

/// Weighted arithmetic mean `(1 - mu) A + mu B`, closed form.
pub fn weighted_arithmetic(
    mu: f64,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    check_weight(mu)?;
    a.affine(b, mu)
}

/// Weighted harmonic mean `((1 - mu) A^-1 + mu B^-1)^-1`, closed form.
pub fn weighted_harmonic(
    mu: f64,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    check_weight(mu)?;
    if mu == 0.0 {
        return Ok(a.clone());
    }
    if mu == 1.0 {
        return Ok(b.clone());
    }
    a.inv_pd()?.affine(&b.inv_pd()?, mu)?.inv_pd()
}

/// Weighted geometric mean via the spectral formula.
pub fn weighted_geometric(
    mu: f64,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    check_weight(mu)?;
    let dec = a.pd_decomposition()?;
    let sqrt_vals: Vec<f64> = dec.eigenvalues.iter().map(|&x| x.sqrt()).collect();
    let isqrt_vals: Vec<f64> = sqrt_vals.iter().map(|&s| 1.0 / s).collect();
    let a_sqrt = dec.recompose(&sqrt_vals);
    let a_isqrt = dec.recompose(&isqrt_vals);
    let t = b.conj_with(&a_isqrt)?;
    let ft = t.matrix_function_pd(|x| x.powf(mu))?;
    ft.conj_with(&a_sqrt)
}

/// A matrix `0 < A <= I/2` together with its complement `A' = I - A`.
#[derive(Debug, Clone)]
pub struct ComplementPair {
    pub a: HermitianMatrix,
    pub a_prime: HermitianMatrix,
}

impl ComplementPair {
    /// Validates `0 < A <= I/2` within `band_tol` and forms `I - A`.
    pub fn new(a: &HermitianMatrix, band_tol: f64) -> Result<Self> {
        let vals = a.eigvals_desc()?;
        let max = vals[0];
        let min = vals[vals.len() - 1];
        if min <= 0.0 {
            return Err(Error::PreconditionViolated(format!(
                "matrix is not positive definite (min eigenvalue {min:.3e})"
            )));
        }
        if max > 0.5 + band_tol {
            return Err(Error::PreconditionViolated(format!(
                "matrix exceeds I/2 (max eigenvalue {max:.6})"
            )));
        }
        let a_prime = HermitianMatrix::identity(a.dim()).sub(a)?;
        Ok(ComplementPair {
            a: a.clone(),
            a_prime,
        })
    }
}

/// Parses a mean specification string:
///
/// * `arithmetic:0.5`, `geometric:0.3`, `harmonic:0.5`
/// * `measure:<path to measure JSON>`
/// * `barbour2:(2t)^r:r=0.3`
///
/// Parse errors carry the byte position of the offending token.
pub fn parse_mean_spec(spec: &str) -> Result<RepresentingFunction> {
    let colon = spec.find(':').ok_or_else(|| Error::ParseError {
        position: spec.len(),
        message: "expected `:` after the mean kind".into(),
    })?;
    let kind = &spec[..colon];
    let rest = &spec[colon + 1..];
    let rest_pos = colon + 1;

    let parse_weight = |text: &str, pos: usize| -> Result<f64> {
        let mu: f64 = text.parse().map_err(|_| Error::ParseError {
            position: pos,
            message: format!("expected a number, got `{text}`"),
        })?;
        if !(0.0..=1.0).contains(&mu) {
            return Err(Error::ParseError {
                position: pos,
                message: format!("weight {mu} outside [0, 1]"),
            });
        }
        Ok(mu)
    };

    match kind {
        "arithmetic" => named_mean(MeanKind::Arithmetic, parse_weight(rest, rest_pos)?),
        "geometric" => named_mean(MeanKind::Geometric, parse_weight(rest, rest_pos)?),
        "harmonic" => named_mean(MeanKind::Harmonic, parse_weight(rest, rest_pos)?),
        "measure" => {
            if rest.is_empty() {
                return Err(Error::ParseError {
                    position: rest_pos,
                    message: "expected a measure file path".into(),
                });
            }
            let text = std::fs::read_to_string(rest).map_err(|e| Error::ParseError {
                position: rest_pos,
                message: format!("cannot read measure file `{rest}`: {e}"),
            })?;
            let m = BorelMeasure::from_json_str(&text)?;
            f_from_measure(&m)
        }
        "barbour2" => {
            let expected = "(2t)^r:";
            let tail = rest.strip_prefix(expected).ok_or_else(|| Error::ParseError {
                position: rest_pos,
                message: format!("expected `{expected}r=<value>` after `barbour2:`"),
            })?;
            let r_pos = rest_pos + expected.len();
            let r_text = tail.strip_prefix("r=").ok_or_else(|| Error::ParseError {
                position: r_pos,
                message: "expected `r=<value>`".into(),
            })?;
            let r: f64 = r_text.parse().map_err(|_| Error::ParseError {
                position: r_pos + 2,
                message: format!("expected a number, got `{r_text}`"),
            })?;
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::ParseError {
                    position: r_pos + 2,
                    message: format!("exponent r = {r} outside (0, 1)"),
                });
            }
            barbour2(r)
        }
        other => Err(Error::ParseError {
            position: 0,
            message: format!(
                "unknown mean kind `{other}` (expected arithmetic, geometric, harmonic, measure, or barbour2)"
            ),
        }),
    }
}

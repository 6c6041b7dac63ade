//! Positive Borel measures on `[0, 1]` and the integral representation of
//! operator means.
//!
//! Every operator mean is an integral of weighted harmonic means:
//!
//! ```text
//! f(t)    = integral of phi_lambda(t) dm(lambda),   phi_lambda(t) = t / ((1-lambda) t + lambda)
//! A s B   = integral of (A !_lambda B) dm(lambda)
//! ```
//!
//! with `m` a probability measure on `[0, 1]`. The first moment of `m` is
//! the weight `f'(1)` and `f''(1) = -2 integral lambda (1-lambda) dm`.
//! Continuous parts are discretized into nodes and weights at construction,
//! so downstream consumers only ever see a finite support.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::means::RepresentingFunction;
use crate::quadrature::{gauss_jacobi_01, gauss_legendre_01};

/// Mass tolerance for measures used as operator means.
pub const MASS_TOL: f64 = 1e-10;

/// Default node count for discretizing continuous densities.
pub const DEFAULT_NODES: usize = 64;

/// Point mass: weight `w > 0` at `lambda` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub lambda: f64,
    pub w: f64,
}

/// Continuous part of a measure, kept for serialization fidelity; the
/// discretized points live alongside it.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DensitySpec {
    /// Density of the weighted geometric mean `t^mu`:
    /// `(sin(mu pi) / pi) lambda^(mu-1) (1-lambda)^(-mu) d lambda`.
    Geometric { mu: f64 },
    /// Tabulated density values at the Gauss-Legendre nodes of a rule with
    /// as many points as values; the discrete weight at node `i` is the
    /// quadrature weight times `values[i]`.
    Table { values: Vec<f64> },
}

#[derive(Debug, Clone)]
struct DensityPart {
    spec: DensitySpec,
    nodes: usize,
    points: Vec<Atom>,
}

/// Finite-support positive measure on `[0, 1]`: explicit atoms plus an
/// optional discretized density. Weights are normalized to unit total mass
/// at construction; the raw discrete mass before normalization is kept in
/// [`BorelMeasure::raw_mass`].
#[derive(Debug, Clone)]
pub struct BorelMeasure {
    atoms: Vec<Atom>,
    density: Option<DensityPart>,
    raw_mass: f64,
}

/// Serialization form of a measure.
#[derive(Debug, Serialize, Deserialize)]
pub struct MeasureJson {
    #[serde(default)]
    pub atoms: Vec<Atom>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<DensitySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
}

fn validate_atom(a: &Atom) -> Result<()> {
    if !a.lambda.is_finite() || !(0.0..=1.0).contains(&a.lambda) {
        return Err(Error::InvalidMeasure(format!(
            "atom location {} outside [0, 1]",
            a.lambda
        )));
    }
    if !a.w.is_finite() || a.w <= 0.0 {
        return Err(Error::InvalidMeasure(format!(
            "atom weight {} is not positive",
            a.w
        )));
    }
    Ok(())
}

impl BorelMeasure {
    /// Purely atomic measure. Requires unit total mass within `1e-10`;
    /// weights are then rescaled to sum to one.
    pub fn from_atoms(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("measure has no support".into()));
        }
        for a in &atoms {
            validate_atom(a)?;
        }
        Self::normalized(atoms, None)
    }

    /// Point mass at `lambda`, the measure of the weighted harmonic mean.
    pub fn dirac(lambda: f64) -> Result<Self> {
        Self::from_atoms(vec![Atom { lambda, w: 1.0 }])
    }

    /// Measure of the weighted arithmetic mean: `(1-mu)` at `0`, `mu` at `1`.
    pub fn arithmetic(mu: f64) -> Result<Self> {
        let mut atoms = Vec::new();
        if mu < 1.0 {
            atoms.push(Atom {
                lambda: 0.0,
                w: 1.0 - mu,
            });
        }
        if mu > 0.0 {
            atoms.push(Atom { lambda: 1.0, w: mu });
        }
        Self::from_atoms(atoms)
    }

    /// Convex combination `w_a * a + (1 - w_a) * b`. The combined support
    /// is stored as plain atoms.
    pub fn mix(a: &Self, b: &Self, w_a: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&w_a) {
            return Err(Error::InvalidMeasure(format!(
                "mixture weight {w_a} outside [0, 1]"
            )));
        }
        let mut atoms = Vec::new();
        for p in a.support() {
            if w_a > 0.0 {
                atoms.push(Atom {
                    lambda: p.lambda,
                    w: w_a * p.w,
                });
            }
        }
        for p in b.support() {
            if w_a < 1.0 {
                atoms.push(Atom {
                    lambda: p.lambda,
                    w: (1.0 - w_a) * p.w,
                });
            }
        }
        Self::from_atoms(atoms)
    }

    fn normalized(atoms: Vec<Atom>, density: Option<DensityPart>) -> Result<Self> {
        let raw_mass: f64 = atoms
            .iter()
            .chain(density.iter().flat_map(|d| d.points.iter()))
            .map(|a| a.w)
            .sum();
        if (raw_mass - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidMeasure(format!(
                "total mass {raw_mass} differs from 1 by more than {MASS_TOL:e}"
            )));
        }
        let mut m = BorelMeasure {
            atoms,
            density,
            raw_mass,
        };
        for a in &mut m.atoms {
            a.w /= raw_mass;
        }
        if let Some(d) = &mut m.density {
            for a in &mut d.points {
                a.w /= raw_mass;
            }
        }
        Ok(m)
    }

    /// All support points: atoms followed by discretized density points.
    pub fn support(&self) -> impl Iterator<Item = &Atom> {
        self.atoms
            .iter()
            .chain(self.density.iter().flat_map(|d| d.points.iter()))
    }

    /// Discrete mass before normalization; 1 up to discretization error.
    pub fn raw_mass(&self) -> f64 {
        self.raw_mass
    }

    /// Pushforward under `lambda -> 1 - lambda`, the measure of the
    /// transposed mean. The result is stored as plain atoms.
    pub fn reflected(&self) -> Result<Self> {
        Self::from_atoms(
            self.support()
                .map(|a| Atom {
                    lambda: 1.0 - a.lambda,
                    w: a.w,
                })
                .collect(),
        )
    }

    /// First moment, the mean weight `f'(1)`.
    pub fn moment_mu(&self) -> f64 {
        self.support().map(|a| a.w * a.lambda).sum()
    }

    /// Second derivative at one: `-2 integral lambda (1-lambda) dm`.
    pub fn moment_second(&self) -> f64 {
        -2.0 * self
            .support()
            .map(|a| a.w * a.lambda * (1.0 - a.lambda))
            .sum::<f64>()
    }

    pub fn to_json_value(&self) -> MeasureJson {
        MeasureJson {
            atoms: self.atoms.clone(),
            density: self.density.as_ref().map(|d| d.spec.clone()),
            nodes: self.density.as_ref().map(|d| d.nodes),
        }
    }

    pub fn from_json_value(j: &MeasureJson) -> Result<Self> {
        let nodes = j.nodes.unwrap_or(DEFAULT_NODES);
        for a in &j.atoms {
            validate_atom(a)?;
        }
        let density = match &j.density {
            None => None,
            Some(DensitySpec::Geometric { mu }) => {
                Some(geometric_density_points(*mu, nodes)?)
            }
            Some(DensitySpec::Table { values }) => Some(table_density_points(values)?),
        };
        if j.atoms.is_empty() && density.is_none() {
            return Err(Error::InvalidMeasure("measure has no support".into()));
        }
        Self::normalized(j.atoms.clone(), density)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: MeasureJson = serde_json::from_str(s)?;
        Self::from_json_value(&j)
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json_value())?)
    }
}

/// Weighted harmonic mean of scalars, the integrand of the representation.
/// Continuous in `t` on `[0, infinity)` with `phi_0 = 1` and `phi_1 = t`.
pub fn phi_lambda(lambda: f64, t: f64) -> f64 {
    if lambda == 0.0 {
        1.0
    } else if lambda == 1.0 {
        t
    } else {
        t / ((1.0 - lambda) * t + lambda)
    }
}

/// Discretization of the geometric-mean density for `t^mu`.
///
/// The density `(sin(mu pi)/pi) lambda^(mu-1) (1-lambda)^(-mu)` has
/// endpoint singularities matching a Jacobi weight, but integrands
/// `phi_lambda(t)` for extreme `t` put a pole just outside `[0, 1]`, which
/// plain Gauss-Jacobi resolves poorly. The substitution
/// `lambda = w^2 / (w^2 + (1-w)^2)` spreads nodes toward both endpoints;
/// in the `w` variable the weight becomes `2 w^(2mu-1) (1-w)^(1-2mu) / S`
/// with `S = w^2 + (1-w)^2`, so a Gauss-Jacobi rule with exponents
/// `alpha = 1 - 2mu`, `beta = 2mu - 1` absorbs the singular factors and the
/// smooth remainder `2/S` folds into the weights.
fn geometric_density_points(mu: f64, nodes: usize) -> Result<DensityPart> {
    if !(mu.is_finite() && 0.0 < mu && mu < 1.0) {
        return Err(Error::LinearMean(format!(
            "geometric weight {mu} has no density representation"
        )));
    }
    let rule = gauss_jacobi_01(nodes, 1.0 - 2.0 * mu, 2.0 * mu - 1.0)?;
    let sin_factor = (mu * std::f64::consts::PI).sin() / std::f64::consts::PI;
    let points = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&w, &omega)| {
            let s = w * w + (1.0 - w) * (1.0 - w);
            Atom {
                lambda: w * w / s,
                w: sin_factor * omega * 2.0 / s,
            }
        })
        .collect();
    Ok(DensityPart {
        spec: DensitySpec::Geometric { mu },
        nodes,
        points,
    })
}

fn table_density_points(values: &[f64]) -> Result<DensityPart> {
    if values.is_empty() {
        return Err(Error::InvalidMeasure("empty density table".into()));
    }
    for &v in values {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidMeasure(format!(
                "density value {v} is not a finite nonnegative number"
            )));
        }
    }
    let rule = gauss_legendre_01(values.len())?;
    let points = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .zip(values)
        .filter(|(_, &v)| v > 0.0)
        .map(|((&x, &w), &v)| Atom { lambda: x, w: w * v })
        .collect();
    Ok(DensityPart {
        spec: DensitySpec::Table {
            values: values.to_vec(),
        },
        nodes: values.len(),
        points,
    })
}

/// Probability measure representing the weighted geometric mean `t^mu`,
/// discretized with `nodes` quadrature points. Errors for `mu` in `{0, 1}`
/// where the mean degenerates to a linear one.
pub fn geometric_measure(mu: f64, nodes: usize) -> Result<BorelMeasure> {
    let density = geometric_density_points(mu, nodes)?;
    BorelMeasure::normalized(Vec::new(), Some(density))
}

/// Builds the representing function of a measure by summing weighted
/// harmonic means over the support.
pub fn f_from_measure(m: &BorelMeasure) -> Result<RepresentingFunction> {
    let support: Vec<Atom> = m.support().copied().collect();
    let label = match &m.density {
        Some(DensityPart {
            spec: DensitySpec::Geometric { mu },
            ..
        }) if m.atoms.is_empty() => format!("measure:geometric:{mu}"),
        Some(_) => format!(
            "measure(atoms={},density,points={})",
            m.atoms.len(),
            support.len()
        ),
        None => format!("measure(atoms={})", support.len()),
    };
    let eval_support = support.clone();
    RepresentingFunction::new(
        move |t| {
            eval_support
                .iter()
                .map(|a| a.w * phi_lambda(a.lambda, t))
                .sum()
        },
        m.moment_mu(),
        m.moment_second(),
        label,
        Some(std::sync::Arc::new(m.clone())),
    )
}

fn check_same_dim(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// Operator mean by integrating weighted harmonic means:
/// `A s B = sum of w (A !_lambda B)` over the support, with
/// `A !_lambda B = ((1-lambda) A^-1 + lambda B^-1)^-1`.
pub fn mean_from_measure(
    m: &BorelMeasure,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    check_same_dim(a, b)?;
    let ai = a.inv_pd()?;
    let bi = b.inv_pd()?;
    let mut acc = HermitianMatrix::zeros(a.dim());
    for p in m.support() {
        let term = if p.lambda == 0.0 {
            a.scale(p.w)
        } else if p.lambda == 1.0 {
            b.scale(p.w)
        } else {
            ai.affine(&bi, p.lambda)?.inv_pd()?.scale(p.w)
        };
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `integral of lambda (1-lambda) ((1-lambda) X + lambda Y)^-1 dm`, the
/// quadratic-form kernel of the difference identities.
pub(crate) fn lambda_weighted_inverse_integral(
    m: &BorelMeasure,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    check_same_dim(x, y)?;
    let mut acc = HermitianMatrix::zeros(x.dim());
    for p in m.support() {
        let c = p.w * p.lambda * (1.0 - p.lambda);
        if c == 0.0 {
            continue;
        }
        let term = x.affine(y, p.lambda)?.inv_pd()?.scale(c);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// The companion mean of the difference identity, evaluated from the same
/// measure as the mean itself:
///
/// ```text
/// A t B = -(f''(1)/2) (integral of lambda (1-lambda) (B nabla_lambda A)^-1 dm)^-1
/// ```
///
/// with `B nabla_lambda A = (1-lambda) B + lambda A` and `f''(1)` the second
/// moment of `m`. Errors for measures supported on `{0, 1}` (linear means).
pub fn tau_from_measure(
    m: &BorelMeasure,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    let f2 = m.moment_second();
    if f2 == 0.0 {
        return Err(Error::LinearMean(
            "companion mean undefined for a measure supported on {0, 1}".into(),
        ));
    }
    let acc = lambda_weighted_inverse_integral(m, b, a)?;
    Ok(acc.inv_pd()?.scale(-f2 / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirac_moments() {
        let m = BorelMeasure::dirac(0.3).unwrap();
        assert_eq!(m.moment_mu(), 0.3);
        assert!((m.moment_second() + 2.0 * 0.3 * 0.7).abs() < 1e-16);
    }

    #[test]
    fn arithmetic_measure_is_linear() {
        let m = BorelMeasure::arithmetic(0.7).unwrap();
        assert!((m.moment_mu() - 0.7).abs() < 1e-15);
        assert_eq!(m.moment_second(), 0.0);
    }

    #[test]
    fn atoms_are_validated() {
        assert!(BorelMeasure::from_atoms(vec![Atom { lambda: 1.5, w: 1.0 }]).is_err());
        assert!(BorelMeasure::from_atoms(vec![Atom { lambda: 0.5, w: 0.0 }]).is_err());
        assert!(BorelMeasure::from_atoms(vec![Atom { lambda: 0.5, w: 0.5 }]).is_err());
        assert!(BorelMeasure::from_atoms(vec![]).is_err());
    }

    #[test]
    fn geometric_measure_mass_and_moments() {
        for &mu in &[0.1, 0.3, 0.5, 0.7, 0.9] {
            let m = geometric_measure(mu, 64).unwrap();
            assert!(
                (m.raw_mass() - 1.0).abs() < 1e-10,
                "mu = {mu}: raw mass {}",
                m.raw_mass()
            );
            assert!((m.moment_mu() - mu).abs() < 1e-10, "mu = {mu}");
            let want_second = mu * (mu - 1.0);
            assert!(
                (m.moment_second() - want_second).abs() < 1e-9,
                "mu = {mu}: second {} vs {want_second}",
                m.moment_second()
            );
        }
    }

    #[test]
    fn geometric_measure_rejects_endpoints() {
        assert!(geometric_measure(0.0, 64).is_err());
        assert!(geometric_measure(1.0, 64).is_err());
    }

    #[test]
    fn representing_function_of_geometric_measure_matches_power() {
        let mu = 0.3;
        let f = f_from_measure(&geometric_measure(mu, 64).unwrap()).unwrap();
        for &t in &[1e-3_f64, 1e-2, 0.1, 0.5, 1.0, 2.0, 10.0, 1e2, 1e3] {
            let want = t.powf(mu);
            let got = f.eval(t);
            assert!(
                (got - want).abs() <= 1e-8 * want.max(1e-30),
                "t = {t}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn mean_from_dirac_is_weighted_harmonic() {
        let m = BorelMeasure::dirac(0.5).unwrap();
        let a = HermitianMatrix::from_diagonal(&[1.0, 2.0]);
        let b = HermitianMatrix::from_diagonal(&[3.0, 6.0]);
        let h = mean_from_measure(&m, &a, &b).unwrap();
        // Harmonic mean of 1,3 is 1.5; of 2,6 is 3.
        assert!((h.entry(0, 0).re - 1.5).abs() < 1e-13);
        assert!((h.entry(1, 1).re - 3.0).abs() < 1e-13);
    }

    #[test]
    fn tau_from_dirac_is_reversed_arithmetic() {
        // For the weighted harmonic mean the companion works out to
        // B nabla_mu A, checked here on commuting matrices.
        let m = BorelMeasure::dirac(0.3).unwrap();
        let a = HermitianMatrix::from_diagonal(&[2.0]);
        let b = HermitianMatrix::from_diagonal(&[5.0]);
        let tau = tau_from_measure(&m, &a, &b).unwrap();
        assert!((tau.entry(0, 0).re - (0.7 * 5.0 + 0.3 * 2.0)).abs() < 1e-12);
    }

    #[test]
    fn tau_refuses_linear_measures() {
        let m = BorelMeasure::arithmetic(0.5).unwrap();
        let a = HermitianMatrix::from_diagonal(&[1.0]);
        let b = HermitianMatrix::from_diagonal(&[2.0]);
        assert!(matches!(
            tau_from_measure(&m, &a, &b),
            Err(Error::LinearMean(_))
        ));
    }

    #[test]
    fn json_round_trip_geometric() {
        let m = geometric_measure(0.4, 32).unwrap();
        let s = m.to_json_string().unwrap();
        let back = BorelMeasure::from_json_str(&s).unwrap();
        assert!((back.moment_mu() - m.moment_mu()).abs() < 1e-15);
        assert_eq!(back.support().count(), m.support().count());
    }

    #[test]
    fn json_atoms_and_table_density() {
        let s = r#"{
            "atoms": [{"lambda": 0.25, "w": 0.5}],
            "density": {"kind": "table", "values": [0.5, 0.5, 0.5, 0.5]}
        }"#;
        let m = BorelMeasure::from_json_str(s).unwrap();
        // Table mass = 0.5 * 1 = 0.5, atoms 0.5, total 1.
        assert!((m.raw_mass() - 1.0).abs() < 1e-12);
        assert_eq!(m.support().count(), 5);
    }

    #[test]
    fn json_rejects_bad_mass() {
        let s = r#"{"atoms": [{"lambda": 0.25, "w": 0.8}]}"#;
        assert!(matches!(
            BorelMeasure::from_json_str(s),
            Err(Error::InvalidMeasure(_))
        ));
    }

    #[test]
    fn mixture_preserves_mass_and_moments() {
        let a = BorelMeasure::dirac(0.2).unwrap();
        let b = BorelMeasure::dirac(0.8).unwrap();
        let m = BorelMeasure::mix(&a, &b, 0.25).unwrap();
        assert!((m.moment_mu() - (0.25 * 0.2 + 0.75 * 0.8)).abs() < 1e-15);
    }

    #[test]
    fn phi_lambda_edges() {
        assert_eq!(phi_lambda(0.0, 7.0), 1.0);
        assert_eq!(phi_lambda(1.0, 7.0), 7.0);
        assert_eq!(phi_lambda(0.5, 0.0), 0.0);
        assert!((phi_lambda(0.5, 1e300) - 2.0).abs() < 1e-12);
    }
}

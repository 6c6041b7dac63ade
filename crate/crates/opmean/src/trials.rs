//! Deterministic randomized verification suites.
//!
//! Each trial derives its own generator from the master seed and the trial
//! index, so suites are reproducible record for record regardless of
//! thread scheduling. The identity suite checks exact operator identities
//! to tight relative tolerances on ill-conditioned inputs; the inequality
//! suite checks order relations on the complement band; the scalar and
//! equality suites calibrate slacks and equality detection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::identities::{
    balanced_geometric_difference_residual, geometric_difference_residual, harmonic_difference_residual,
    scalar_phi_identity_residual, sharp_conjugation_residuals, mean_difference_residual,
    transpose_identity_residual, IdentityResidual,
};
use crate::inequalities::{
    arithmetic_sandwich, power_bound_check, ordered_sandwich, barbour_crossing, scalar_kyfan_suite,
    ratio_eigen_comparisons, additive_comparison, difference_eigen_comparisons, EigenReport, LoewnerReport, ScalarMeansInput,
    Tolerances,
};
use crate::means::{barbour2, named_mean, MeanKind, RepresentingFunction};
use crate::measure::{f_from_measure, geometric_measure, BorelMeasure};
use crate::report::{sort_records, TrialRecord};

/// Seed used when neither the command line nor the environment names one.
pub const DEFAULT_SEED: u64 = 20250101;

/// Weights the randomized suites draw from.
pub const SUITE_WEIGHTS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// Shared suite parameters.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub dim_lo: usize,
    pub dim_hi: usize,
    pub tolerances: Tolerances,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            trials: 200,
            dim_lo: 1,
            dim_hi: 8,
            tolerances: Tolerances::default(),
        }
    }
}

impl SuiteConfig {
    fn validate(&self) -> Result<()> {
        if self.dim_lo == 0 || self.dim_lo > self.dim_hi {
            return Err(Error::PreconditionViolated(format!(
                "dimension range {}..{} is empty or starts at zero",
                self.dim_lo, self.dim_hi
            )));
        }
        if self.trials == 0 {
            return Err(Error::PreconditionViolated("trials must be positive".into()));
        }
        Ok(())
    }
}

/// Generator for one trial: seeded by the master seed, separated by the
/// trial index through the stream counter.
pub fn trial_rng(master_seed: u64, index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Dense Hermitian matrix with entries drawn uniformly from the unit
/// square of the complex plane (real diagonal).
pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> HermitianMatrix {
    let mut m = crate::matrix::ComplexMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = num_complex::Complex64::new(2.0 * rng.gen::<f64>() - 1.0, 0.0);
        for j in (i + 1)..n {
            let z = num_complex::Complex64::new(
                2.0 * rng.gen::<f64>() - 1.0,
                2.0 * rng.gen::<f64>() - 1.0,
            );
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix::symmetrized(m)
}

/// Positive definite matrix with eigenvalues drawn uniformly from
/// `[lo, hi]` in a random eigenbasis.
pub fn random_pd_in_band(
    rng: &mut impl Rng,
    n: usize,
    lo: f64,
    hi: f64,
) -> Result<HermitianMatrix> {
    if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo <= hi) {
        return Err(Error::PreconditionViolated(format!(
            "eigenvalue band [{lo}, {hi}] is not positive and ordered"
        )));
    }
    let basis = random_hermitian(rng, n).eig()?;
    let values: Vec<f64> = (0..n).map(|_| lo + (hi - lo) * rng.gen::<f64>()).collect();
    Ok(basis.recompose(&values))
}

/// Nearby partner: `A` plus `eps` times a unit-norm Hermitian direction,
/// with the spectrum clamped back into `[lo, hi]`.
pub fn perturbed_partner(
    rng: &mut impl Rng,
    a: &HermitianMatrix,
    eps: f64,
    lo: f64,
    hi: f64,
) -> Result<HermitianMatrix> {
    let direction = random_hermitian(rng, a.dim());
    let norm = direction.frobenius();
    let step = if norm == 0.0 {
        HermitianMatrix::identity(a.dim()).scale(eps)
    } else {
        direction.scale(eps / norm)
    };
    let shifted = a.add(&step)?;
    let eig = shifted.eig()?;
    let clamped: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&v| v.clamp(lo, hi))
        .collect();
    Ok(eig.recompose(&clamped))
}

fn residual_record(
    cfg: &SuiteConfig,
    trial: u64,
    dim: usize,
    mean_spec: &str,
    check_id: &str,
    residual: &IdentityResidual,
) -> TrialRecord {
    TrialRecord {
        seed: cfg.seed,
        trial,
        dim,
        mean_spec: mean_spec.to_string(),
        check_id: check_id.to_string(),
        slack: -residual.relative(),
        gap: residual.relative(),
        verdict: if residual.passes { "pass" } else { "fail" }.to_string(),
        witness: None,
    }
}

/// The mean family a trial exercises, cycled by trial index.
fn identity_mean(index: u64, mu: f64) -> Result<(RepresentingFunction, String)> {
    match index % 3 {
        0 => Ok((
            named_mean(MeanKind::Geometric, mu)?,
            format!("geometric:{mu}"),
        )),
        1 => Ok((
            named_mean(MeanKind::Harmonic, mu)?,
            format!("harmonic:{mu}"),
        )),
        _ => {
            let mixed = BorelMeasure::mix(
                &BorelMeasure::dirac(mu)?,
                &geometric_measure(mu, 64)?,
                0.5,
            )?;
            Ok((
                f_from_measure(&mixed)?,
                format!("mix:0.5*dirac+0.5*geometric:{mu}"),
            ))
        }
    }
}

fn identity_trial(cfg: &SuiteConfig, index: u64) -> Result<Vec<TrialRecord>> {
    let mut rng = trial_rng(cfg.seed, index);
    let n = rng.gen_range(cfg.dim_lo..=cfg.dim_hi);
    let condition = 10f64.powf(4.0 * rng.gen::<f64>());
    let lo = 1.0 / condition;
    let a = random_pd_in_band(&mut rng, n, lo, 1.0)?;
    let b = if index.is_multiple_of(2) {
        random_pd_in_band(&mut rng, n, lo, 1.0)?
    } else {
        perturbed_partner(&mut rng, &a, 0.05, 0.5 * lo, 1.5)?
    };
    let mu = SUITE_WEIGHTS[rng.gen_range(0..SUITE_WEIGHTS.len())];
    let (f, spec) = identity_mean(index, mu)?;
    let tol = cfg.tolerances.identity;

    let mut records = Vec::with_capacity(8);
    records.push(residual_record(
        cfg,
        index,
        n,
        &spec,
        "mean_difference",
        &mean_difference_residual(&f, &a, &b, tol)?,
    ));
    records.push(residual_record(
        cfg,
        index,
        n,
        &spec,
        "transposed_difference",
        &transpose_identity_residual(&f, &a, &b, tol)?,
    ));

    let nu = [0.25, 0.5, mu][rng.gen_range(0..3)];
    let conj = sharp_conjugation_residuals(&f, nu, &a, &b, tol)?;
    let conj_spec = format!("{spec};nu={nu}");
    records.push(residual_record(
        cfg,
        index,
        n,
        &conj_spec,
        "conjugation_adjoint",
        &conj.adjoint_transpose,
    ));
    records.push(residual_record(
        cfg,
        index,
        n,
        &conj_spec,
        "conjugation_arithmetic",
        &conj.arithmetic_gap,
    ));
    records.push(residual_record(
        cfg,
        index,
        n,
        &conj_spec,
        "conjugation_harmonic",
        &conj.harmonic_gap,
    ));

    match index % 3 {
        0 => {
            records.push(residual_record(
                cfg,
                index,
                n,
                &spec,
                "geometric_difference",
                &geometric_difference_residual(mu, &a, &b, tol)?,
            ));
            if mu == 0.5 {
                records.push(residual_record(
                    cfg,
                    index,
                    n,
                    &spec,
                    "balanced_geometric_difference",
                    &balanced_geometric_difference_residual(&a, &b, tol)?,
                ));
            }
        }
        1 => {
            records.push(residual_record(
                cfg,
                index,
                n,
                &spec,
                "harmonic_difference",
                &harmonic_difference_residual(mu, &a, &b, tol)?,
            ));
        }
        _ => {}
    }

    let lambda = rng.gen::<f64>();
    let t = 10f64.powf(6.0 * rng.gen::<f64>() - 3.0);
    let phi_residual = scalar_phi_identity_residual(lambda, t);
    let phi_scale = t.max(1.0);
    records.push(TrialRecord {
        seed: cfg.seed,
        trial: index,
        dim: 1,
        mean_spec: format!("phi:lambda={lambda:.6}"),
        check_id: "scalar_phi_identity".to_string(),
        slack: -phi_residual / phi_scale,
        gap: phi_residual / phi_scale,
        verdict: if phi_residual <= tol * phi_scale {
            "pass"
        } else {
            "fail"
        }
        .to_string(),
        witness: None,
    });
    Ok(records)
}

/// Identity suite: exact operator identities on random Hermitian pairs
/// with condition numbers up to `1e4`, every residual within the identity
/// tolerance.
pub fn identity_suite(cfg: &SuiteConfig) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    let mut records = collect_trials(cfg, identity_trial)?;
    sort_records(&mut records);
    Ok(records)
}

/// The inequality suite's mean family, cycled by trial index.
fn inequality_mean(index: u64, rng: &mut impl Rng) -> Result<(RepresentingFunction, String)> {
    match index % 3 {
        0 => {
            let mu = SUITE_WEIGHTS[rng.gen_range(0..SUITE_WEIGHTS.len())];
            Ok((
                named_mean(MeanKind::Geometric, mu)?,
                format!("geometric:{mu}"),
            ))
        }
        1 => {
            let mu = SUITE_WEIGHTS[rng.gen_range(0..SUITE_WEIGHTS.len())];
            Ok((
                named_mean(MeanKind::Harmonic, mu)?,
                format!("harmonic:{mu}"),
            ))
        }
        _ => {
            let r = 0.1 + 0.8 * rng.gen::<f64>();
            Ok((barbour2(r)?, format!("barbour2:{r:.6}")))
        }
    }
}

fn loewner_record(
    cfg: &SuiteConfig,
    trial: u64,
    dim: usize,
    mean_spec: &str,
    check_id: &str,
    report: &LoewnerReport,
) -> TrialRecord {
    TrialRecord {
        seed: cfg.seed,
        trial,
        dim,
        mean_spec: mean_spec.to_string(),
        check_id: check_id.to_string(),
        slack: report.comparison.min_eigenvalue,
        gap: report.equality.inequality_gap,
        verdict: if report.comparison.holds {
            report.equality.verdict.as_str().to_string()
        } else {
            "fail".to_string()
        },
        witness: report.comparison.witness.clone(),
    }
}

fn eigen_record(
    cfg: &SuiteConfig,
    trial: u64,
    dim: usize,
    mean_spec: &str,
    check_id: &str,
    report: &EigenReport,
) -> TrialRecord {
    TrialRecord {
        seed: cfg.seed,
        trial,
        dim,
        mean_spec: mean_spec.to_string(),
        check_id: check_id.to_string(),
        slack: report.comparison.min_slack,
        gap: report.equality.inequality_gap,
        verdict: if report.comparison.holds {
            report.equality.verdict.as_str().to_string()
        } else {
            "fail".to_string()
        },
        witness: None,
    }
}

/// Band for complement-compatible inputs, strictly inside `(0, 1/2]`.
const BAND_LO: f64 = 0.05;
const BAND_HI: f64 = 0.45;

fn inequality_trial(cfg: &SuiteConfig, index: u64) -> Result<Vec<TrialRecord>> {
    let mut rng = trial_rng(cfg.seed, index);
    let n = rng.gen_range(cfg.dim_lo..=cfg.dim_hi);
    let a = random_pd_in_band(&mut rng, n, BAND_LO, BAND_HI)?;
    let b = if index.is_multiple_of(2) {
        random_pd_in_band(&mut rng, n, BAND_LO, BAND_HI)?
    } else {
        let eps = 10f64.powf(2.3 * rng.gen::<f64>() - 3.0);
        perturbed_partner(&mut rng, &a, eps, BAND_LO, BAND_HI)?
    };
    let (f, spec) = inequality_mean(index, &mut rng)?;
    let tols = &cfg.tolerances;

    let mut records = Vec::with_capacity(11);
    let additive = additive_comparison(&f, &a, &b, tols)?;
    records.push(loewner_record(
        cfg,
        index,
        n,
        &spec,
        "additive_loewner",
        &additive,
    ));

    let (h1, h2) = difference_eigen_comparisons(&f, &a, &b, tols)?;
    records.push(eigen_record(
        cfg,
        index,
        n,
        &spec,
        "inverse_difference_eigen",
        &h1,
    ));
    records.push(eigen_record(
        cfg,
        index,
        n,
        &spec,
        "adjoint_difference_eigen",
        &h2,
    ));
    let (m1, m2) = ratio_eigen_comparisons(&f, &a, &b, tols)?;
    records.push(eigen_record(cfg, index, n, &spec, "ratio_eigen", &m1));
    records.push(eigen_record(
        cfg,
        index,
        n,
        &spec,
        "adjoint_ratio_eigen",
        &m2,
    ));

    let push_order =
        |records: &mut Vec<TrialRecord>, check_id: &str, cmp: &crate::hermitian::OrderComparison, gap: f64| {
            records.push(TrialRecord {
                seed: cfg.seed,
                trial: index,
                dim: n,
                mean_spec: spec.clone(),
                check_id: check_id.to_string(),
                slack: cmp.min_eigenvalue,
                gap,
                verdict: if cmp.holds { "pass" } else { "fail" }.to_string(),
                witness: cmp.witness.clone(),
            });
        };

    let sandwich = arithmetic_sandwich(&f, &a, &b, tols)?;
    push_order(
        &mut records,
        "arithmetic_sandwich_lower",
        &sandwich.left,
        sandwich.left_gap,
    );
    push_order(
        &mut records,
        "arithmetic_sandwich_upper",
        &sandwich.right,
        sandwich.right_gap,
    );

    let mu = f.effective_moments().0;
    let harmonic = named_mean(MeanKind::Harmonic, mu)?;
    let geometric = named_mean(MeanKind::Geometric, mu)?;
    let ordered = ordered_sandwich(&harmonic, &geometric, &a, &b, tols)?;
    push_order(
        &mut records,
        "ordered_sandwich_lower",
        &ordered.left,
        ordered.left_gap,
    );
    push_order(
        &mut records,
        "ordered_sandwich_upper",
        &ordered.right,
        ordered.right_gap,
    );
    Ok(records)
}

/// Inequality suite: Loewner and eigenvalue comparisons on the complement
/// band, plus the two-sided inverse-difference sandwiches.
pub fn inequality_suite(cfg: &SuiteConfig) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    let mut records = collect_trials(cfg, inequality_trial)?;
    sort_records(&mut records);
    Ok(records)
}

fn scalar_record(
    cfg: &SuiteConfig,
    trial: u64,
    dim: usize,
    check_id: String,
    slack: f64,
    verdict: &str,
) -> TrialRecord {
    TrialRecord {
        seed: cfg.seed,
        trial,
        dim,
        mean_spec: "scalar".to_string(),
        check_id,
        slack,
        gap: slack.abs(),
        verdict: verdict.to_string(),
        witness: None,
    }
}

fn scalar_trial(cfg: &SuiteConfig, index: u64) -> Result<Vec<TrialRecord>> {
    let mut rng = trial_rng(cfg.seed, index);
    let n = rng.gen_range(2..=10usize);
    let xs: Vec<f64> = (0..n).map(|_| 0.5 * (1.0 - rng.gen::<f64>())).collect();
    let raw: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let input = ScalarMeansInput::new(xs, weights)?;

    let mut records: Vec<TrialRecord> = scalar_kyfan_suite(&input, cfg.tolerances.scalar)
        .into_iter()
        .map(|c| {
            scalar_record(
                cfg,
                index,
                n,
                c.id.to_string(),
                c.slack,
                if c.holds { "pass" } else { "fail" },
            )
        })
        .collect();

    let u = 0.5 + 1.5 * rng.gen::<f64>();
    let v = 0.5 + 1.5 * rng.gen::<f64>();
    let exponent = -2.0 + 1.5 * rng.gen::<f64>();
    let bound = power_bound_check(u, v, exponent)?;
    records.push(scalar_record(
        cfg,
        index,
        1,
        "power_bound_lower".to_string(),
        bound.lower_slack,
        if bound.lower_slack >= -1e-13 { "pass" } else { "fail" },
    ));
    records.push(scalar_record(
        cfg,
        index,
        1,
        "power_bound_upper".to_string(),
        bound.upper_slack,
        if bound.upper_slack >= -1e-13 { "pass" } else { "fail" },
    ));
    Ok(records)
}

fn scalar_equality_trial(cfg: &SuiteConfig, index: u64) -> Result<Vec<TrialRecord>> {
    let mut rng = trial_rng(cfg.seed, u64::MAX / 2 + index);
    let mut records = Vec::with_capacity(16);

    // All-equal inputs: every slack must vanish.
    let n = rng.gen_range(2..=10usize);
    let x = 0.5 * (1.0 - rng.gen::<f64>());
    let raw: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let equal = ScalarMeansInput::new(vec![x; n], weights)?;
    for c in scalar_kyfan_suite(&equal, cfg.tolerances.scalar) {
        let verdict = if c.slack.abs() <= 1e-12 {
            "equality_consistent"
        } else {
            "inconsistent"
        };
        records.push(scalar_record(
            cfg,
            index,
            n,
            format!("{}_equal", c.id),
            c.slack,
            verdict,
        ));
    }

    // Well-separated inputs: every slack must be decisively positive.
    let n = rng.gen_range(2..=5usize);
    let xs: Vec<f64> = (0..n)
        .map(|i| {
            let base = 0.05 + 0.4 * (i as f64) / ((n - 1) as f64);
            base + 0.002 * (rng.gen::<f64>() - 0.5)
        })
        .collect();
    let spread = ScalarMeansInput::new(xs, vec![1.0 / n as f64; n])?;
    for c in scalar_kyfan_suite(&spread, cfg.tolerances.scalar) {
        let verdict = if c.slack >= 1e-10 {
            "strict_consistent"
        } else {
            "inconsistent"
        };
        records.push(scalar_record(
            cfg,
            index,
            n,
            format!("{}_spread", c.id),
            c.slack,
            verdict,
        ));
    }
    Ok(records)
}

/// Scalar suite: the eight complement inequalities on random inputs, the
/// negative-power difference bounds, and equality calibration batches.
pub fn scalar_suite(cfg: &SuiteConfig) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    let mut records = collect_trials(cfg, scalar_trial)?;
    let equality_cfg = SuiteConfig {
        trials: (cfg.trials / 20).max(50),
        ..cfg.clone()
    };
    records.extend(collect_trials(&equality_cfg, scalar_equality_trial)?);
    sort_records(&mut records);
    Ok(records)
}

fn equality_trial(cfg: &SuiteConfig, index: u64) -> Result<Vec<TrialRecord>> {
    let mut rng = trial_rng(cfg.seed, index);
    let n = rng.gen_range(cfg.dim_lo.max(1)..=cfg.dim_hi);
    let a = random_pd_in_band(&mut rng, n, BAND_LO, BAND_HI)?;
    let (f, spec) = inequality_mean(index, &mut rng)?;
    let tols = &cfg.tolerances;
    let mut records = Vec::with_capacity(8);

    // Identical inputs: gaps must vanish.
    let additive = additive_comparison(&f, &a, &a, tols)?;
    records.push(loewner_record(
        cfg,
        index,
        n,
        &spec,
        "additive_loewner_equal",
        &additive,
    ));
    let (h1, _) = difference_eigen_comparisons(&f, &a, &a, tols)?;
    records.push(eigen_record(
        cfg,
        index,
        n,
        &spec,
        "inverse_difference_eigen_equal",
        &h1,
    ));
    let (m1, _) = ratio_eigen_comparisons(&f, &a, &a, tols)?;
    records.push(eigen_record(cfg, index, n, &spec, "ratio_eigen_equal", &m1));

    // Separated inputs: a shift of at least 0.01 in every direction keeps
    // the pair inside the band while forcing a strict gap.
    let direction = random_hermitian(&mut rng, n);
    let norm = direction.frobenius().max(1.0);
    let b = a
        .add(&HermitianMatrix::identity(n).scale(0.02))?
        .add(&direction.scale(0.01 / norm))?;
    let additive = additive_comparison(&f, &a, &b, tols)?;
    records.push(loewner_record(
        cfg,
        index,
        n,
        &spec,
        "additive_loewner_separated",
        &additive,
    ));
    let (h1, _) = difference_eigen_comparisons(&f, &a, &b, tols)?;
    records.push(eigen_record(
        cfg,
        index,
        n,
        &spec,
        "inverse_difference_eigen_separated",
        &h1,
    ));
    let (m1, _) = ratio_eigen_comparisons(&f, &a, &b, tols)?;
    records.push(eigen_record(
        cfg,
        index,
        n,
        &spec,
        "ratio_eigen_separated",
        &m1,
    ));

    // Crossing pair: sandwich equality with inputs far apart is expected.
    let r = 0.15 + 0.3 * rng.gen::<f64>();
    let s = 0.55 + 0.3 * rng.gen::<f64>();
    let crossing = barbour_crossing(r, s, tols)?;
    records.push(TrialRecord {
        seed: cfg.seed,
        trial: index,
        dim: 2,
        mean_spec: format!("barbour2:{r:.6}|barbour2:{s:.6}"),
        check_id: "crossing_equality".to_string(),
        slack: -(crossing.sandwich.left_gap.max(crossing.sandwich.right_gap)),
        gap: crossing.sandwich.left_gap.max(crossing.sandwich.right_gap),
        verdict: if crossing.equality_with_distinct_inputs {
            "expected_equality"
        } else {
            "fail"
        }
        .to_string(),
        witness: None,
    });
    Ok(records)
}

/// Equality suite: equality detection on identical inputs, strictness on
/// separated inputs, and the crossing construction where sandwich equality
/// occurs with distinct inputs.
pub fn equality_suite(cfg: &SuiteConfig) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    let mut records = collect_trials(cfg, equality_trial)?;
    sort_records(&mut records);
    Ok(records)
}

fn collect_trials(
    cfg: &SuiteConfig,
    trial: fn(&SuiteConfig, u64) -> Result<Vec<TrialRecord>>,
) -> Result<Vec<TrialRecord>> {
    let nested: Vec<Vec<TrialRecord>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|index| trial(cfg, index))
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// All suite names, in the order `all` runs them.
pub const SUITE_NAMES: [&str; 4] = ["identity", "inequality", "scalar", "equality"];

/// Runs the named suites (or all of them for `all`) and returns the
/// concatenated, sorted records.
pub fn run_suites(names: &[String], cfg: &SuiteConfig) -> Result<Vec<TrialRecord>> {
    let mut selected: Vec<&str> = Vec::new();
    for name in names {
        match name.as_str() {
            "all" => selected.extend(SUITE_NAMES),
            "identity" | "inequality" | "scalar" | "equality" => selected.push(name),
            other => {
                return Err(Error::ParseError {
                    position: 0,
                    message: format!(
                        "unknown suite `{other}` (expected identity, inequality, scalar, \
                         equality, or all)"
                    ),
                })
            }
        }
    }
    if selected.is_empty() {
        selected.extend(SUITE_NAMES);
    }
    let mut records = Vec::new();
    for name in selected {
        let suite = match name {
            "identity" => identity_suite,
            "inequality" => inequality_suite,
            "scalar" => scalar_suite,
            _ => equality_suite,
        };
        records.extend(suite(cfg)?);
    }
    Ok(records)
}

//! Hermitian matrices, spectral decompositions, and matrix functions.
//!
//! Eigenvalues come from a cyclic Jacobi iteration with complex Givens
//! rotations. Each rotation factors the pivot `a_pq = r e^{i phi}` into a
//! phase and a real 2x2 rotation, so the real symmetric formulas carry over
//! unchanged. The sweep order is fixed, which makes the decomposition
//! deterministic for a fixed input.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Relative asymmetry allowed when constructing a Hermitian matrix.
pub const HERMITIAN_TOL: f64 = 1e-13;

/// Relative off-diagonal norm at which the Jacobi iteration stops.
pub const JACOBI_TOL: f64 = 1e-13;

/// Maximum number of Jacobi sweeps before giving up.
pub const JACOBI_MAX_SWEEPS: usize = 40;

/// Relative floor below which eigenvalues count as zero for `sqrt_psd`,
/// and below which `inv_pd` refuses to invert.
pub const PD_TOL: f64 = 1e-12;

/// Complex matrix constrained to be Hermitian.
///
/// Construction checks `‖M - M*‖_F <= 1e-13 * max(1, ‖M‖_F)` and then
/// replaces `M` by its Hermitian part, so stored entries satisfy
/// `m[i][j] == conj(m[j][i])` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    m: ComplexMatrix,
}

/// Eigenvalues in decreasing order with a unitary matrix of column
/// eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

/// Outcome of a Loewner order test `A <= B`.
#[derive(Debug, Clone)]
pub struct OrderComparison {
    pub holds: bool,
    /// Minimum eigenvalue of `B - A`.
    pub min_eigenvalue: f64,
    pub tolerance: f64,
    /// Unit eigenvector for the most negative eigenvalue when the order
    /// fails, as `(re, im)` pairs.
    pub witness: Option<Vec<[f64; 2]>>,
}

/// Serialization form: square `re`/`im` arrays plus the dimension.
#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl HermitianMatrix {
    /// Validates the Hermitian constraint and symmetrizes.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let asym = m.asymmetry();
        let tol = HERMITIAN_TOL * m.frobenius().max(1.0);
        if asym > tol {
            return Err(Error::NonHermitian { asymmetry: asym, tol });
        }
        Ok(Self::symmetrized(m))
    }

    /// Symmetrizes without the asymmetry check. For internal results such
    /// as `V f(D) V*` that are Hermitian up to roundoff by construction.
    pub(crate) fn symmetrized(m: ComplexMatrix) -> Self {
        HermitianMatrix {
            m: m.hermitian_part(),
        }
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(d: &[f64]) -> Self {
        let n = d.len();
        HermitianMatrix {
            m: ComplexMatrix::from_fn(n, |i, j| {
                if i == j {
                    Complex64::new(d[i], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
        }
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix {
            m: ComplexMatrix::identity(n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix {
            m: ComplexMatrix::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn as_complex(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn frobenius(&self) -> f64 {
        self.m.frobenius()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(HermitianMatrix {
            m: self.m.add(&other.m)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(HermitianMatrix {
            m: self.m.sub(&other.m)?,
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        HermitianMatrix {
            m: self.m.scale(c),
        }
    }

    /// Conjugation `X M X` for Hermitian `X`, `M`; the result is Hermitian
    /// and is symmetrized to kill roundoff.
    pub fn conj_with(&self, x: &Self) -> Result<Self> {
        let p = x.m.mul(&self.m)?.mul(&x.m)?;
        Ok(Self::symmetrized(p))
    }

    /// Affine combination `(1 - mu) * self + mu * other`.
    pub fn affine(&self, other: &Self, mu: f64) -> Result<Self> {
        self.scale(1.0 - mu).add(&other.scale(mu))
    }

    /// Cyclic Jacobi eigendecomposition. Eigenvalues are sorted in
    /// decreasing order and eigenvector columns are permuted to match.
    pub fn eig(&self) -> Result<SpectralDecomposition> {
        let n = self.dim();
        let mut a = self.m.clone();
        let mut v = ComplexMatrix::identity(n);
        let hnorm = a.frobenius();
        let stop = JACOBI_TOL * hnorm;

        let mut sweeps = 0;
        loop {
            let off = off_diagonal_norm(&a);
            if off <= stop {
                break;
            }
            if sweeps >= JACOBI_MAX_SWEEPS {
                return Err(Error::NumericalFailure {
                    sweeps,
                    offdiag: off,
                });
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
            sweeps += 1;
        }

        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
        order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]).then(i.cmp(&j)));

        let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
        let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
        Ok(SpectralDecomposition {
            eigenvalues,
            eigenvectors,
        })
    }

    /// Eigenvalues in decreasing order.
    pub fn eigvals_desc(&self) -> Result<Vec<f64>> {
        Ok(self.eig()?.eigenvalues)
    }

    /// Spectral functional calculus `V phi(D) V*`. Errors if `phi` is not
    /// finite at some eigenvalue.
    pub fn matrix_function(&self, phi: impl Fn(f64) -> f64) -> Result<Self> {
        let dec = self.eig()?;
        let mapped: Vec<f64> = dec
            .eigenvalues
            .iter()
            .map(|&x| {
                let y = phi(x);
                if y.is_finite() {
                    Ok(y)
                } else {
                    Err(Error::DomainError {
                        eigenvalue: x,
                        detail: format!("function value {y}"),
                    })
                }
            })
            .collect::<Result<_>>()?;
        Ok(dec.recompose(&mapped))
    }

    /// Functional calculus on a positive semidefinite matrix: eigenvalues
    /// in `[-1e-12 * max(1, ‖H‖_F), 0)` are clamped to zero before `phi`
    /// is applied; anything more negative is an error.
    pub fn matrix_function_psd(&self, phi: impl Fn(f64) -> f64) -> Result<Self> {
        let dec = self.eig()?;
        let floor = -PD_TOL * self.frobenius().max(1.0);
        let mapped: Vec<f64> = dec
            .eigenvalues
            .iter()
            .map(|&x| {
                let x = if x >= 0.0 {
                    x
                } else if x >= floor {
                    0.0
                } else {
                    return Err(Error::NotPositiveDefinite { min_eigenvalue: x });
                };
                let y = phi(x);
                if y.is_finite() {
                    Ok(y)
                } else {
                    Err(Error::DomainError {
                        eigenvalue: x,
                        detail: format!("function value {y}"),
                    })
                }
            })
            .collect::<Result<_>>()?;
        Ok(dec.recompose(&mapped))
    }

    /// Functional calculus on a positive definite matrix: every
    /// eigenvalue must exceed `1e-12 * max(1, ‖H‖_F)`.
    pub fn matrix_function_pd(&self, phi: impl Fn(f64) -> f64) -> Result<Self> {
        let dec = self.pd_decomposition()?;
        let mapped: Vec<f64> = dec
            .eigenvalues
            .iter()
            .map(|&x| {
                let y = phi(x);
                if y.is_finite() {
                    Ok(y)
                } else {
                    Err(Error::DomainError {
                        eigenvalue: x,
                        detail: format!("function value {y}"),
                    })
                }
            })
            .collect::<Result<_>>()?;
        Ok(dec.recompose(&mapped))
    }

    /// Square root of a positive semidefinite matrix. Eigenvalues in
    /// `[-1e-12 * max(1, ‖H‖_F), 0)` are clamped to zero; anything more
    /// negative is an error.
    pub fn sqrt_psd(&self) -> Result<Self> {
        let dec = self.eig()?;
        let floor = -PD_TOL * self.frobenius().max(1.0);
        let mapped: Vec<f64> = dec
            .eigenvalues
            .iter()
            .map(|&x| {
                if x >= 0.0 {
                    Ok(x.sqrt())
                } else if x >= floor {
                    Ok(0.0)
                } else {
                    Err(Error::NotPositiveDefinite { min_eigenvalue: x })
                }
            })
            .collect::<Result<_>>()?;
        Ok(dec.recompose(&mapped))
    }

    pub(crate) fn pd_decomposition(&self) -> Result<SpectralDecomposition> {
        let dec = self.eig()?;
        let floor = PD_TOL * self.frobenius().max(1.0);
        let min = *dec.eigenvalues.last().expect("nonempty spectrum");
        if min <= floor {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: min,
            });
        }
        Ok(dec)
    }

    /// Inverse of a positive definite matrix. Requires the minimum
    /// eigenvalue to exceed `1e-12 * max(1, ‖H‖_F)`.
    pub fn inv_pd(&self) -> Result<Self> {
        let dec = self.pd_decomposition()?;
        let mapped: Vec<f64> = dec.eigenvalues.iter().map(|&x| 1.0 / x).collect();
        Ok(dec.recompose(&mapped))
    }

    /// Inverse square root of a positive definite matrix.
    pub fn inv_sqrt_pd(&self) -> Result<Self> {
        let dec = self.pd_decomposition()?;
        let mapped: Vec<f64> = dec.eigenvalues.iter().map(|&x| 1.0 / x.sqrt()).collect();
        Ok(dec.recompose(&mapped))
    }

    /// Minimum eigenvalue.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(*self.eig()?.eigenvalues.last().expect("nonempty spectrum"))
    }

    /// Tests `self <= other` in the Loewner order: the minimum eigenvalue
    /// of `other - self` must be at least `-tol`. On failure the witness is
    /// a unit vector `x` with `x* (other - self) x < -tol`.
    pub fn loewner_leq(&self, other: &Self, tol: f64) -> Result<OrderComparison> {
        let diff = other.sub(self)?;
        let dec = diff.eig()?;
        let n = diff.dim();
        let min = dec.eigenvalues[n - 1];
        let holds = min >= -tol;
        let witness = if holds {
            None
        } else {
            Some(
                (0..n)
                    .map(|i| {
                        let z = dec.eigenvectors[(i, n - 1)];
                        [z.re, z.im]
                    })
                    .collect(),
            )
        };
        Ok(OrderComparison {
            holds,
            min_eigenvalue: min,
            tolerance: tol,
            witness,
        })
    }

    /// Serialization form with the imaginary part omitted when it is zero.
    pub fn to_json_value(&self) -> MatrixJson {
        let n = self.dim();
        let re: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j).re).collect())
            .collect();
        let has_im = (0..n).any(|i| (0..n).any(|j| self.entry(i, j).im != 0.0));
        let im = if has_im {
            Some(
                (0..n)
                    .map(|i| (0..n).map(|j| self.entry(i, j).im).collect())
                    .collect(),
            )
        } else {
            None
        };
        MatrixJson { n, re, im }
    }

    pub fn from_json_value(j: &MatrixJson) -> Result<Self> {
        let n = j.n;
        let check_shape = |name: &str, rows: &Vec<Vec<f64>>| -> Result<()> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::ParseError {
                    position: 0,
                    message: format!("field `{name}` is not an {n}x{n} array"),
                });
            }
            Ok(())
        };
        check_shape("re", &j.re)?;
        if let Some(im) = &j.im {
            check_shape("im", im)?;
        }
        let m = ComplexMatrix::from_fn(n, |i, r| {
            let im = j.im.as_ref().map_or(0.0, |v| v[i][r]);
            Complex64::new(j.re[i][r], im)
        });
        Self::new(m)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json_value())?)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: MatrixJson = serde_json::from_str(s)?;
        Self::from_json_value(&j)
    }

    pub fn read_json(path: &std::path::Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn write_json(&self, path: &std::path::Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_json_string()?)?)
    }
}

impl SpectralDecomposition {
    /// Rebuilds `V diag(values) V*` for eigenvalue replacements `values`.
    pub fn recompose(&self, values: &[f64]) -> HermitianMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        let mut vd = v.clone();
        for j in 0..n {
            for i in 0..n {
                vd[(i, j)] *= values[j];
            }
        }
        let m = vd.mul(&v.adjoint()).expect("matching dimensions");
        HermitianMatrix::symmetrized(m)
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                s += a[(p, q)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation zeroing `a[(p, q)]`, accumulated into `v`.
///
/// With `a_pq = r e^{i phi}`, the unitary is the identity outside rows
/// `p, q` and
///
/// ```text
/// U[p][p] = c      U[p][q] = s e^{i phi}
/// U[q][p] = -s e^{-i phi}   U[q][q] = c
/// ```
///
/// where `tan(2 theta) = 2 r / (a_qq - a_pp)` as in the real symmetric
/// case, picking the smaller angle for stability.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;

    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = 0.5 * (aqq - app) / r;
    let t = if theta >= 0.0 {
        1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.dim();
    let s_phase = phase * s;

    // Columns p and q of A (rows follow by conjugate symmetry).
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = akp * c - akq * s_phase.conj();
        let new_kq = akp * s_phase + akq * c;
        a[(k, p)] = new_kp;
        a[(p, k)] = new_kp.conj();
        a[(k, q)] = new_kq;
        a[(q, k)] = new_kq.conj();
    }
    a[(p, p)] = Complex64::new(app - t * r, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * r, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s_phase.conj();
        v[(k, q)] = vkp * s_phase + vkq * c;
    }
}

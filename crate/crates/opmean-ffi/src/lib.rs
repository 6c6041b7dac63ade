//! C interface to the operator mean toolkit.
//!
//! Matrices travel as opaque handles created from row-major entry arrays;
//! every call returns a status code aligned with the command line exit
//! codes, and the last error message is kept per thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use num_complex::Complex64;
use opmean::inequalities::{reproduce_counterexample, Tolerances};
use opmean::{evaluate_mean, parse_mean_spec, ComplexMatrix, Error, HermitianMatrix};

/// Outcome of an interface call. Nonzero values match the command line
/// exit codes, with `NullPointer` for missing required pointers.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpmeanStatus {
    Ok = 0,
    CheckFailed = 1,
    InvalidInput = 2,
    PreconditionViolated = 3,
    NumericalFailure = 4,
    NullPointer = 5,
}

/// Opaque handle to a validated Hermitian matrix.
pub struct OpmeanMatrix {
    inner: HermitianMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

fn store_error(message: String) {
    let text = CString::new(message).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn error_status(e: &Error) -> OpmeanStatus {
    store_error(e.to_string());
    match e.exit_code() {
        3 => OpmeanStatus::PreconditionViolated,
        4 => OpmeanStatus::NumericalFailure,
        _ => OpmeanStatus::InvalidInput,
    }
}

fn null_pointer(what: &str) -> OpmeanStatus {
    store_error(format!("{what} must not be null"));
    OpmeanStatus::NullPointer
}

/// Message for the most recent failure on this thread, or null when the
/// last call succeeded. The pointer stays valid until the next failing
/// call on the same thread.
#[no_mangle]
pub extern "C" fn opmean_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |text| text.as_ptr())
    })
}

/// Creates an `n` by `n` Hermitian matrix from row-major entries. `re`
/// must point to `n * n` doubles; `im` may be null for a real matrix.
/// On success writes a handle to `out`, to be released with
/// `opmean_matrix_free`.
///
/// # Safety
///
/// `re` (and `im` when non-null) must be readable for `n * n` doubles,
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opmean_matrix_new(
    n: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut OpmeanMatrix,
) -> OpmeanStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    if re.is_null() {
        return null_pointer("re");
    }
    if n == 0 {
        store_error("matrix dimension must be positive".to_string());
        return OpmeanStatus::InvalidInput;
    }
    clear_error();
    let m = ComplexMatrix::from_fn(n, |i, j| {
        let k = i * n + j;
        Complex64::new(*re.add(k), if im.is_null() { 0.0 } else { *im.add(k) })
    });
    match HermitianMatrix::new(m) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(OpmeanMatrix { inner }));
            OpmeanStatus::Ok
        }
        Err(e) => error_status(&e),
    }
}

/// Releases a matrix handle. Null is ignored.
///
/// # Safety
///
/// `m` must be null or a handle from this interface that has not been
/// freed already.
#[no_mangle]
pub unsafe extern "C" fn opmean_matrix_free(m: *mut OpmeanMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of a matrix handle; zero for null.
///
/// # Safety
///
/// `m` must be null or a live handle from this interface.
#[no_mangle]
pub unsafe extern "C" fn opmean_matrix_dim(m: *const OpmeanMatrix) -> usize {
    if m.is_null() {
        0
    } else {
        (*m).inner.dim()
    }
}

/// Copies the entries of a matrix handle into row-major arrays of
/// `n * n` doubles. `im` may be null to skip the imaginary parts.
///
/// # Safety
///
/// `m` must be a live handle; `re` (and `im` when non-null) must be
/// writable for `n * n` doubles.
#[no_mangle]
pub unsafe extern "C" fn opmean_matrix_entries(
    m: *const OpmeanMatrix,
    re: *mut f64,
    im: *mut f64,
) -> OpmeanStatus {
    if m.is_null() {
        return null_pointer("m");
    }
    if re.is_null() {
        return null_pointer("re");
    }
    clear_error();
    let inner = &(*m).inner;
    let n = inner.dim();
    for i in 0..n {
        for j in 0..n {
            let entry = inner.entry(i, j);
            *re.add(i * n + j) = entry.re;
            if !im.is_null() {
                *im.add(i * n + j) = entry.im;
            }
        }
    }
    OpmeanStatus::Ok
}

/// Evaluates the mean named by `spec` (for example `geometric:0.5`,
/// `harmonic:0.3`, `arithmetic:0.25`, or `barbour2:(2t)^r:r=0.4`) on two
/// positive definite matrices of equal dimension. On success writes a new
/// handle to `out`.
///
/// # Safety
///
/// `spec` must be a NUL-terminated string; `a` and `b` must be live
/// handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn opmean_mean(
    spec: *const c_char,
    a: *const OpmeanMatrix,
    b: *const OpmeanMatrix,
    out: *mut *mut OpmeanMatrix,
) -> OpmeanStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    if spec.is_null() {
        return null_pointer("spec");
    }
    if a.is_null() || b.is_null() {
        return null_pointer("matrix arguments");
    }
    clear_error();
    let spec = match CStr::from_ptr(spec).to_str() {
        Ok(text) => text,
        Err(_) => {
            store_error("spec is not valid UTF-8".to_string());
            return OpmeanStatus::InvalidInput;
        }
    };
    let f = match parse_mean_spec(spec) {
        Ok(f) => f,
        Err(e) => return error_status(&e),
    };
    match evaluate_mean(&f, &(*a).inner, &(*b).inner) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(OpmeanMatrix { inner }));
            OpmeanStatus::Ok
        }
        Err(e) => error_status(&e),
    }
}

/// Tests `A <= B` in the Loewner order with the given tolerance on the
/// most negative eigenvalue of `B - A`. Writes the verdict to `holds`
/// and the minimum eigenvalue to `min_eigenvalue` (either may be null).
///
/// # Safety
///
/// `a` and `b` must be live handles; `holds` and `min_eigenvalue` must
/// be null or writable.
#[no_mangle]
pub unsafe extern "C" fn opmean_loewner_leq(
    a: *const OpmeanMatrix,
    b: *const OpmeanMatrix,
    tol: f64,
    holds: *mut bool,
    min_eigenvalue: *mut f64,
) -> OpmeanStatus {
    if a.is_null() || b.is_null() {
        return null_pointer("matrix arguments");
    }
    clear_error();
    match (*a).inner.loewner_leq(&(*b).inner, tol) {
        Ok(cmp) => {
            if !holds.is_null() {
                *holds = cmp.holds;
            }
            if !min_eigenvalue.is_null() {
                *min_eigenvalue = cmp.min_eigenvalue;
            }
            OpmeanStatus::Ok
        }
        Err(e) => error_status(&e),
    }
}

/// Recomputes the bundled 2x2 counterexample and writes whether it
/// reproduced (printed entries matched, Loewner comparisons failed,
/// eigenvalue comparisons held) to `reproduced`. Returns `CheckFailed`
/// when the computation succeeded but the outcome did not reproduce.
///
/// # Safety
///
/// `reproduced` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn opmean_counterexample_verify(reproduced: *mut bool) -> OpmeanStatus {
    clear_error();
    match reproduce_counterexample(&Tolerances::default()) {
        Ok(rep) => {
            let ok = rep.matches_printed
                && rep.b_leq_a
                && rep.loewner.iter().all(|c| !c.holds)
                && rep.eigen.iter().all(|c| c.holds);
            if !reproduced.is_null() {
                *reproduced = ok;
            }
            if ok {
                OpmeanStatus::Ok
            } else {
                store_error("counterexample did not reproduce".to_string());
                OpmeanStatus::CheckFailed
            }
        }
        Err(e) => error_status(&e),
    }
}

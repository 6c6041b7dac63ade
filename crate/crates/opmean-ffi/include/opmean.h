#ifndef OPMEAN_H
#define OPMEAN_H

/* Generated from the opmean-ffi crate. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of an interface call. Nonzero values match the command line
 * exit codes, with `NullPointer` for missing required pointers.
 */
typedef enum OpmeanStatus {
  OpmeanStatus_Ok = 0,
  OpmeanStatus_CheckFailed = 1,
  OpmeanStatus_InvalidInput = 2,
  OpmeanStatus_PreconditionViolated = 3,
  OpmeanStatus_NumericalFailure = 4,
  OpmeanStatus_NullPointer = 5,
} OpmeanStatus;

/**
 * Opaque handle to a validated Hermitian matrix.
 */
typedef struct OpmeanMatrix OpmeanMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null when the
 * last call succeeded. The pointer stays valid until the next failing
 * call on the same thread.
 */
const char *opmean_last_error_message(void);

/**
 * Creates an `n` by `n` Hermitian matrix from row-major entries. `re`
 * must point to `n * n` doubles; `im` may be null for a real matrix.
 * On success writes a handle to `out`, to be released with
 * `opmean_matrix_free`.
 *
 * # Safety
 *
 * `re` (and `im` when non-null) must be readable for `n * n` doubles,
 * and `out` must be writable.
 */
enum OpmeanStatus opmean_matrix_new(uintptr_t n,
                                    const double *re,
                                    const double *im,
                                    struct OpmeanMatrix **out);

/**
 * Releases a matrix handle. Null is ignored.
 *
 * # Safety
 *
 * `m` must be null or a handle from this interface that has not been
 * freed already.
 */
void opmean_matrix_free(struct OpmeanMatrix *m);

/**
 * Dimension of a matrix handle; zero for null.
 *
 * # Safety
 *
 * `m` must be null or a live handle from this interface.
 */
uintptr_t opmean_matrix_dim(const struct OpmeanMatrix *m);

/**
 * Copies the entries of a matrix handle into row-major arrays of
 * `n * n` doubles. `im` may be null to skip the imaginary parts.
 *
 * # Safety
 *
 * `m` must be a live handle; `re` (and `im` when non-null) must be
 * writable for `n * n` doubles.
 */
enum OpmeanStatus opmean_matrix_entries(const struct OpmeanMatrix *m, double *re, double *im);

/**
 * Evaluates the mean named by `spec` (for example `geometric:0.5`,
 * `harmonic:0.3`, `arithmetic:0.25`, or `barbour2:(2t)^r:r=0.4`) on two
 * positive definite matrices of equal dimension. On success writes a new
 * handle to `out`.
 *
 * # Safety
 *
 * `spec` must be a NUL-terminated string; `a` and `b` must be live
 * handles; `out` must be writable.
 */
enum OpmeanStatus opmean_mean(const char *spec,
                              const struct OpmeanMatrix *a,
                              const struct OpmeanMatrix *b,
                              struct OpmeanMatrix **out);

/**
 * Tests `A <= B` in the Loewner order with the given tolerance on the
 * most negative eigenvalue of `B - A`. Writes the verdict to `holds`
 * and the minimum eigenvalue to `min_eigenvalue` (either may be null).
 *
 * # Safety
 *
 * `a` and `b` must be live handles; `holds` and `min_eigenvalue` must
 * be null or writable.
 */
enum OpmeanStatus opmean_loewner_leq(const struct OpmeanMatrix *a,
                                     const struct OpmeanMatrix *b,
                                     double tol,
                                     bool *holds,
                                     double *min_eigenvalue);

/**
 * Recomputes the bundled 2x2 counterexample and writes whether it
 * reproduced (printed entries matched, Loewner comparisons failed,
 * eigenvalue comparisons held) to `reproduced`. Returns `CheckFailed`
 * when the computation succeeded but the outcome did not reproduce.
 *
 * # Safety
 *
 * `reproduced` must be null or writable.
 */
enum OpmeanStatus opmean_counterexample_verify(bool *reproduced);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OPMEAN_H */

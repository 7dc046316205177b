#ifndef KNOTLAB_H
#define KNOTLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KnotlabStatus {
  KNOTLAB_STATUS_OK = 0,
  KNOTLAB_STATUS_NULL_POINTER = 1,
  KNOTLAB_STATUS_INVALID_INPUT = 2,
  KNOTLAB_STATUS_NUMERICAL = 3,
  KNOTLAB_STATUS_BUFFER_TOO_SMALL = 4,
  KNOTLAB_STATUS_PANIC = 5,
} KnotlabStatus;

typedef enum KnotlabVerdict {
  KNOTLAB_VERDICT_ADMISSIBLE = 0,
  KNOTLAB_VERDICT_REJECTED = 1,
  KNOTLAB_VERDICT_INDETERMINATE = 2,
} KnotlabVerdict;

typedef enum KnotlabWeights {
  KNOTLAB_WEIGHTS_BIORTHOGONAL = 0,
  KNOTLAB_WEIGHTS_UNIT = 1,
} KnotlabWeights;

/**
 * Opaque contour handle.
 */
typedef struct KnotlabContour KnotlabContour;

/**
 * Opaque metric model handle.
 */
typedef struct KnotlabMetric KnotlabMetric;

typedef struct KnotlabContourSample {
  double s;
  double rho;
  /**
   * Unwrapped angle.
   */
  double theta;
  double x;
  double y;
  double velocity_re;
  double velocity_im;
} KnotlabContourSample;

typedef struct KnotlabHankel {
  double h1_re;
  double h1_im;
  double h2_re;
  double h2_im;
  double dh1_re;
  double dh1_im;
  double dh2_re;
  double dh2_im;
} KnotlabHankel;

typedef struct KnotlabShootResult {
  double ratio;
  double wronskian_drift;
  double coefficient_ratio_re;
  double coefficient_ratio_im;
  enum KnotlabVerdict verdict;
  /**
   * Whether the exact rule predicts admissibility.
   */
  bool predicted;
} KnotlabShootResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len - 1` bytes).  Returns the full message length.
 *
 * # Safety
 * `buf` must be NULL or valid for writes of `len` bytes.
 */
size_t knotlab_last_error_message(char *buf, size_t len);

/**
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum KnotlabStatus knotlab_contour_new(uint32_t winding,
                                       double s0,
                                       double eps,
                                       double r0,
                                       struct KnotlabContour **out);

/**
 * # Safety
 * `contour` must be NULL or a handle from [`knotlab_contour_new`] not yet freed.
 */
void knotlab_contour_free(struct KnotlabContour *contour);

/**
 * # Safety
 * `contour` must be a live handle and `out` valid for writes.
 */
enum KnotlabStatus knotlab_contour_sample(const struct KnotlabContour *contour,
                                          double s,
                                          struct KnotlabContourSample *out);

/**
 * Hankel functions and derivatives at `rho·e^{iθ}` on the surface.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum KnotlabStatus knotlab_hankel(double nu, double rho, double theta, struct KnotlabHankel *out);

/**
 * Exact admissibility of `ν = nu_num/nu_den` for winding `N`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum KnotlabStatus knotlab_is_admissible(int64_t nu_num,
                                         int64_t nu_den,
                                         int64_t winding,
                                         bool *out);

/**
 * `ℓ = (M − N)/(2N)` in lowest terms.
 *
 * # Safety
 * `num` and `den` must be valid for writes.
 */
enum KnotlabStatus knotlab_allowed_ell(int64_t winding, int64_t label, int64_t *num, int64_t *den);

/**
 * Coupling `γ` supporting label `M` in dimension `D`, partial wave `m`.
 *
 * # Safety
 * `num` and `den` must be valid for writes.
 */
enum KnotlabStatus knotlab_gamma(int64_t dimension,
                                 int64_t partial_wave,
                                 int64_t winding,
                                 int64_t label,
                                 int64_t *num,
                                 int64_t *den);

/**
 * Shooting check along `contour` (its winding number is used).
 *
 * # Safety
 * `contour` must be a live handle and `out` valid for writes.
 */
enum KnotlabStatus knotlab_shoot(const struct KnotlabContour *contour,
                                 double nu,
                                 double kappa,
                                 double tol,
                                 struct KnotlabShootResult *out);

/**
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum KnotlabStatus knotlab_metric_new(size_t dim,
                                      uint64_t seed,
                                      double skew,
                                      struct KnotlabMetric **out);

/**
 * # Safety
 * `metric` must be NULL or a handle from [`knotlab_metric_new`] not yet freed.
 */
void knotlab_metric_free(struct KnotlabMetric *metric);

/**
 * # Safety
 * `metric` must be a live handle and `out` valid for writes.
 */
enum KnotlabStatus knotlab_metric_dim(const struct KnotlabMetric *metric, size_t *out);

/**
 * Residuals of the truncated metric for `M = 1..dim`, written to
 * `residuals[0..dim]`.
 *
 * # Safety
 * `metric` must be a live handle and `residuals` valid for `len` writes.
 */
enum KnotlabStatus knotlab_metric_residual_curve(const struct KnotlabMetric *metric,
                                                 enum KnotlabWeights weights,
                                                 double *residuals,
                                                 size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KNOTLAB_H */

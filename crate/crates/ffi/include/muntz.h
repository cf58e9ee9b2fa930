/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef MUNTZ_H
#define MUNTZ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MuntzDensity {
  MUNTZ_DENSITY_DENSE = 0,
  MUNTZ_DENSITY_NOT_DENSE = 1,
  MUNTZ_DENSITY_INCONCLUSIVE = 2,
} MuntzDensity;

typedef enum MuntzStatus {
  MUNTZ_STATUS_OK = 0,
  MUNTZ_STATUS_INVALID_INPUT = 1,
  MUNTZ_STATUS_NON_FINITE = 2,
  MUNTZ_STATUS_CERTIFICATE = 3,
  MUNTZ_STATUS_ILL_CONDITIONED = 4,
  MUNTZ_STATUS_NULL_POINTER = 5,
  MUNTZ_STATUS_BUFFER_TOO_SMALL = 6,
  MUNTZ_STATUS_PANIC = 7,
} MuntzStatus;

// Opaque constructive approximant `Q_n`.
typedef struct MuntzApproximant MuntzApproximant;

// Opaque generalized polynomial.
typedef struct MuntzPolynomial MuntzPolynomial;

// Summary of a Weierstrass error certificate.
typedef struct MuntzCertificate {
  uint32_t n;
  double analytic_bound;
  double grid_estimate;
  size_t violations;
} MuntzCertificate;

typedef struct MuntzEulerReport {
  uint64_t n;
  double harmonic;
  double product_plus;
  double product_minus;
  double basel;
  bool inequality_holds;
} MuntzEulerReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call into this library.
const char *muntz_last_error(void);

// Library version as a static NUL-terminated string.
const char *muntz_version(void);

// Parses a polynomial on `[0, 1]` from JSON `[{"c": .., "lambda": ..}, ..]`.
//
// # Safety
// `json` must be a NUL-terminated string and `out_handle` writable.
enum MuntzStatus muntz_polynomial_from_json(const char *json, struct MuntzPolynomial **out_handle);

// # Safety
// `p` must come from [`muntz_polynomial_from_json`]; `out_value` writable.
enum MuntzStatus muntz_polynomial_eval(const struct MuntzPolynomial *p,
                                       double x,
                                       double *out_value);

// # Safety
// `p` must come from [`muntz_polynomial_from_json`] or be null.
void muntz_polynomial_free(struct MuntzPolynomial *p);

// Builds `Q_n` from the first `n` of `len` exponents.
//
// # Safety
// `lambdas` must point to `len` doubles; `out_handle` writable.
enum MuntzStatus muntz_approximant_new(double q,
                                       const double *lambdas,
                                       size_t len,
                                       size_t n,
                                       struct MuntzApproximant **out_handle);

// # Safety
// `a` must come from [`muntz_approximant_new`]; `out_value` writable.
enum MuntzStatus muntz_approximant_eval(const struct MuntzApproximant *a,
                                        double x,
                                        double *out_value);

// `∏ |1 − q/λ_i|`, or NaN for a null handle.
//
// # Safety
// `a` must come from [`muntz_approximant_new`] or be null.
double muntz_approximant_bound(const struct MuntzApproximant *a);

// Copies the coefficients `a_{n,i}` into `buf`. `out_len` always receives
// the count; a short buffer yields `BufferTooSmall` and nothing is copied.
//
// # Safety
// `buf` must have room for `capacity` doubles; `out_len` writable.
enum MuntzStatus muntz_approximant_coefficients(const struct MuntzApproximant *a,
                                                double *buf,
                                                size_t capacity,
                                                size_t *out_len);

// # Safety
// `a` must come from [`muntz_approximant_new`] or be null.
void muntz_approximant_free(struct MuntzApproximant *a);

// `p_n(t)` for `t ∈ [0, 1]`.
//
// # Safety
// `out_value` must be writable.
enum MuntzStatus muntz_sqrt_iterate_eval(uint32_t n, double t, double *out_value);

// Certificate on a uniform grid of `grid_points` points in `[0, 1]`.
// Violations are reported in the struct and as status `Certificate`.
//
// # Safety
// `out_cert` must be writable.
enum MuntzStatus muntz_sqrt_certificate(uint32_t n,
                                        size_t grid_points,
                                        struct MuntzCertificate *out_cert);

// `q_n(t) = a·p_n(t²/a²)`.
//
// # Safety
// `out_value` must be writable.
enum MuntzStatus muntz_abs_approximant_eval(double a, uint32_t n, double t, double *out_value);

// `L²[0,1]` distance from `x^q` to the span of `x^{λ_i}`.
//
// # Safety
// `lambdas` must point to `len` doubles; `out_delta` writable.
enum MuntzStatus muntz_distance_to_span(double q,
                                        const double *lambdas,
                                        size_t len,
                                        double *out_delta);

// Closed-form determinant of `1/(x_i + y_j)`.
//
// # Safety
// `xs` and `ys` must each point to `len` doubles; `out_det` writable.
enum MuntzStatus muntz_cauchy_determinant(const double *xs,
                                          const double *ys,
                                          size_t len,
                                          double *out_det);

// Density verdict for a sequence descriptor such as `"2*i+1"` or `"i^2"`.
//
// # Safety
// `sequence` must be a NUL-terminated string; `out_verdict` writable.
enum MuntzStatus muntz_density_check(const char *sequence,
                                     size_t n_max,
                                     enum MuntzDensity *out_verdict);

// Euler inequality quantities at `n`; `exact` recomputes in rationals
// (n <= 1000) and checks the inequality exactly.
//
// # Safety
// `out_report` must be writable.
enum MuntzStatus muntz_euler_report(uint64_t n, bool exact, struct MuntzEulerReport *out_report);

// Primes `<= n`. `out_count` always receives the count; a short buffer
// yields `BufferTooSmall` and nothing is copied.
//
// # Safety
// `buf` must have room for `capacity` values; `out_count` writable.
enum MuntzStatus muntz_primes_up_to(uint64_t n, uint64_t *buf, size_t capacity, size_t *out_count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MUNTZ_H */

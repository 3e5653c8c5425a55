#ifndef HYPERCHAOS_H
#define HYPERCHAOS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HcSectionKind {
  HC_SECTION_KIND_EMPTY = 0,
  HC_SECTION_KIND_POINT = 1,
  HC_SECTION_KIND_INTERVAL = 2,
} HcSectionKind;

typedef enum HcStatus {
  HC_STATUS_OK = 0,
  HC_STATUS_NULL_POINTER = 1,
  HC_STATUS_INVALID_ARGUMENT = 2,
  HC_STATUS_GRID = 3,
  HC_STATUS_BRANCH = 4,
  HC_STATUS_POLE = 5,
  HC_STATUS_TRUNCATION_DOMINATED = 6,
  HC_STATUS_NON_INTEGRABLE = 7,
  HC_STATUS_SOLVE = 8,
  /**
   * A panic was caught at the boundary; the handle arguments are unchanged.
   */
  HC_STATUS_PANIC = 9,
} HcStatus;

typedef enum HcVerdict {
  HC_VERDICT_CHAOTIC_EVIDENCE = 0,
  HC_VERDICT_SUBSPACE_CHAOTIC_EVIDENCE = 1,
  HC_VERDICT_NO_EVIDENCE = 2,
} HcVerdict;

/**
 * Opaque handle to a chaos certificate.
 */
typedef struct HcCertificate HcCertificate;

/**
 * Opaque handle to a hyperbolic space H^n.
 */
typedef struct HcSpace HcSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or "" after a success.
 * Valid until the next call on the same thread.
 */
const char *hc_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *hc_version(void);

/**
 * Creates H^n, n >= 2.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum HcStatus hc_space_new(uint32_t n, struct HcSpace **out);

/**
 * # Safety
 * `space` must come from [`hc_space_new`] and not be freed twice. Null is
 * ignored.
 */
void hc_space_free(struct HcSpace *space);

/**
 * ρ = (n - 1)/2.
 *
 * # Safety
 * `space` must be a live handle and `out` writable.
 */
enum HcStatus hc_space_rho(const struct HcSpace *space, double *out);

/**
 * φ_λ at `len` ascending radii, λ = lambda_re + i lambda_im.
 *
 * # Safety
 * `radii`, `out_re` and `out_im` must each hold `len` doubles.
 */
enum HcStatus hc_spherical(const struct HcSpace *space,
                           double lambda_re,
                           double lambda_im,
                           const double *radii,
                           size_t len,
                           double *out_re,
                           double *out_im);

/**
 * Imaginary-axis section of the eigenvalue region of Δ - c on L^p.
 * `out_half_length` receives Y for an interval, 0 for a point and NaN when
 * empty.
 *
 * # Safety
 * `space` must be a live handle; the out-pointers must be writable.
 */
enum HcStatus hc_region_section(const struct HcSpace *space,
                                double p,
                                double c,
                                enum HcSectionKind *out_kind,
                                double *out_half_length);

/**
 * T(t)f for a real radial profile sampled at r_k = k h, k < len, with
 * T(t) = e^{-t(Δ - c)} on L^p. Results are written on the same grid.
 *
 * # Safety
 * `values`, `out_re` and `out_im` must each hold `len` doubles.
 */
enum HcStatus hc_evolve(const struct HcSpace *space,
                        double p,
                        double c,
                        double t,
                        double h,
                        const double *values,
                        size_t len,
                        double *out_re,
                        double *out_im);

/**
 * Runs the chaos certificate with default options and targets.
 *
 * # Safety
 * `space` must be a live handle and `out` writable.
 */
enum HcStatus hc_certify(const struct HcSpace *space,
                         double p,
                         double c,
                         uint64_t seed,
                         struct HcCertificate **out);

/**
 * # Safety
 * `cert` must be a live handle and `out` writable.
 */
enum HcStatus hc_certificate_verdict(const struct HcCertificate *cert, enum HcVerdict *out);

/**
 * Borrows the certificate as JSON. The string lives as long as the handle.
 *
 * # Safety
 * `cert` must be a live handle and `out` writable.
 */
enum HcStatus hc_certificate_json(const struct HcCertificate *cert, const char **out);

/**
 * # Safety
 * `cert` must come from [`hc_certify`] and not be freed twice. Null is
 * ignored.
 */
void hc_certificate_free(struct HcCertificate *cert);

/**
 * Copies the last error message into `buf` (NUL-terminated, truncated to
 * `cap`) and returns the full message length.
 *
 * # Safety
 * `buf` must hold `cap` bytes, or be null with `cap` = 0.
 */
size_t hc_copy_last_error(char *buf, size_t cap);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERCHAOS_H */

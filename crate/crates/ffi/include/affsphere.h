#ifndef AFFSPHERE_H
#define AFFSPHERE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum AffsStatus {
  AFFS_STATUS_OK = 0,
  AFFS_STATUS_NULL_POINTER = 1,
  AFFS_STATUS_DOMAIN_ERROR = 2,
  AFFS_STATUS_INVALID_ARGUMENT = 3,
  AFFS_STATUS_UNKNOWN_SUITE = 4,
  AFFS_STATUS_CONFIG_ERROR = 5,
  AFFS_STATUS_BUFFER_TOO_SMALL = 6,
  AFFS_STATUS_INTERNAL = 7,
} AffsStatus;

/**
 * Opaque suite configuration.
 */
typedef struct AffsConfig AffsConfig;

/**
 * Opaque list of check results together with the configuration used.
 */
typedef struct AffsReport AffsReport;

/**
 * Numeric fields of one check result.
 */
typedef struct AffsCheck {
  uint64_t points_tested;
  double max_residual;
  double tolerance;
  bool pass;
  uint64_t wall_time_ms;
} AffsCheck;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf`.
 *
 * # Safety
 * `buf` must be writable for `cap` bytes or null; `needed` must be null or
 * valid for one write.
 */
enum AffsStatus affs_last_error(char *buf, size_t cap, size_t *needed);

/**
 * New configuration with default settings. Never returns null.
 */
struct AffsConfig *affs_config_new(void);

/**
 * # Safety
 * `cfg` must come from [`affs_config_new`] and not be used afterwards.
 */
void affs_config_free(struct AffsConfig *cfg);

/**
 * Sets one configuration key, using the same names as the CLI config file.
 *
 * # Safety
 * `cfg` must be a live handle; `key` and `value` NUL-terminated strings.
 */
enum AffsStatus affs_config_set(struct AffsConfig *cfg, const char *key, const char *value);

/**
 * # Safety
 * `cfg` must be a live handle.
 */
enum AffsStatus affs_config_set_samples(struct AffsConfig *cfg, size_t samples);

/**
 * # Safety
 * `cfg` must be a live handle.
 */
enum AffsStatus affs_config_set_seed(struct AffsConfig *cfg, uint64_t seed);

/**
 * Runs the named suite and stores a new report handle in `out`.
 *
 * # Safety
 * `suite` must be a NUL-terminated string, `cfg` a live handle, `out` valid
 * for one write.
 */
enum AffsStatus affs_run_suite(const char *suite,
                               const struct AffsConfig *cfg,
                               struct AffsReport **out);

/**
 * # Safety
 * `report` must come from [`affs_run_suite`] and not be used afterwards.
 */
void affs_report_free(struct AffsReport *report);

/**
 * # Safety
 * `report` must be a live handle and `len` valid for one write.
 */
enum AffsStatus affs_report_len(const struct AffsReport *report, size_t *len);

/**
 * # Safety
 * `report` must be a live handle and `passed` valid for one write.
 */
enum AffsStatus affs_report_all_passed(const struct AffsReport *report, bool *passed);

/**
 * Numeric fields of result `index`.
 *
 * # Safety
 * `report` must be a live handle and `out` valid for one write.
 */
enum AffsStatus affs_report_check(const struct AffsReport *report,
                                  size_t index,
                                  struct AffsCheck *out);

/**
 * Check id of result `index`, copied as a NUL-terminated string.
 *
 * # Safety
 * `report` must be a live handle; see [`affs_last_error`] for the buffer
 * contract.
 */
enum AffsStatus affs_report_check_id(const struct AffsReport *report,
                                     size_t index,
                                     char *buf,
                                     size_t cap,
                                     size_t *needed);

/**
 * Renders the report; `format` is 0 for JSON and 1 for markdown.
 *
 * # Safety
 * `report` must be a live handle; see [`affs_last_error`] for the buffer
 * contract.
 */
enum AffsStatus affs_report_render(const struct AffsReport *report,
                                   uint32_t format,
                                   char *buf,
                                   size_t cap,
                                   size_t *needed);

/**
 * `k(x) = (x3^2 - x1^2 - x2^2)^{-3/2}` for `x` inside the cone.
 *
 * # Safety
 * `x` must point to 3 doubles, `out` to one.
 */
enum AffsStatus affs_characteristic_function(const double *x, double *out);

/**
 * Cheng-Yau metric matrix at `x`.
 *
 * # Safety
 * `x` must point to 3 doubles, `out` to 9.
 */
enum AffsStatus affs_cheng_yau_metric(const double *x, double *out);

/**
 * Klein disk to upper half-plane; `out = (x, y)`.
 *
 * # Safety
 * `out` must point to 2 doubles.
 */
enum AffsStatus affs_klein_to_halfplane(double t1, double t2, double *out);

/**
 * Upper half-plane to Klein disk; `out = (t1, t2)`.
 *
 * # Safety
 * `out` must point to 2 doubles.
 */
enum AffsStatus affs_halfplane_to_klein(double x, double y, double *out);

/**
 * `f(x + iy)` on the hyperboloid.
 *
 * # Safety
 * `out` must point to 3 doubles.
 */
enum AffsStatus affs_parametrize_hyperboloid(double x, double y, double *out);

/**
 * `Phi(A)` for `A` in `SL(2,R)`.
 *
 * # Safety
 * `a` must point to 4 doubles, `out` to 9.
 */
enum AffsStatus affs_phi_group(const double *a, double *out);

/**
 * Derivative of `Phi` at `[[a, b], [c, -a]]`.
 *
 * # Safety
 * `out` must point to 9 doubles.
 */
enum AffsStatus affs_phi_algebra(double a, double b, double c, double *out);

/**
 * Fiber metric `l(A, B)` at `f(x + iy)` for traceless `A`, `B`.
 *
 * # Safety
 * `a`, `b` must point to 9 doubles each, `out` to one.
 */
enum AffsStatus affs_fiber_metric(double x,
                                  double y,
                                  const double *a,
                                  const double *b,
                                  double *out);

/**
 * `l(A, A)` for the holomorphic tangent matrix `A` at `x + iy`; the value
 * is real and equals `16 y^2`.
 *
 * # Safety
 * `out` must point to one double.
 */
enum AffsStatus affs_holomorphic_pairing(double x, double y, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AFFSPHERE_H */

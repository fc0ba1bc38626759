/* C interface to vanlab: cyclotomic invariants of odd primes. */

#ifndef VANLAB_H
#define VANLAB_H

/* Generated by cbindgen from crates/ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum VanlabStatus {
  VANLAB_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  VANLAB_STATUS_NULL_ARGUMENT = 1,
  /**
   * The prime argument is not an odd prime.
   */
  VANLAB_STATUS_NOT_ODD_PRIME = 2,
  /**
   * The eigenspace-exponent computation ran out of integer precision.
   */
  VANLAB_STATUS_PRECISION_EXHAUSTED = 3,
  /**
   * The operation is not defined for this prime.
   */
  VANLAB_STATUS_UNSUPPORTED = 4,
  /**
   * A panic or other unexpected failure; the output is untouched.
   */
  VANLAB_STATUS_INTERNAL = 5,
} VanlabStatus;

/**
 * Opaque handle to the invariant report of one odd prime.
 */
typedef struct VanlabReport VanlabReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Compute the full invariant report for the odd prime `p` and store a
 * heap-allocated handle in `*out`.
 *
 * `max_aux` is the number of auxiliary primes tried per irregular pair and
 * `precision_cap` the ceiling for eigenspace-exponent precision; pass 10
 * and 16 for the defaults used by the CLI.
 *
 * On success returns `Ok` and `*out` must later be released with
 * [`vanlab_report_free`]; on any other status `*out` is left untouched.
 *
 * # Safety
 * `out` must be a valid pointer to writable memory for one pointer.
 */
enum VanlabStatus vanlab_report_compute(uint64_t p,
                                        uint64_t max_aux,
                                        uint32_t precision_cap,
                                        struct VanlabReport **out);

/**
 * Release a handle returned by [`vanlab_report_compute`]. Null is a no-op.
 *
 * # Safety
 * `report` must be null or a handle not yet freed.
 */
void vanlab_report_free(struct VanlabReport *report);

/**
 * Serialize the report as a JSON document and store a NUL-terminated,
 * heap-allocated string in `*out`; release it with [`vanlab_string_free`].
 *
 * # Safety
 * `report` must be a live handle and `out` a valid pointer to writable
 * memory for one pointer.
 */
enum VanlabStatus vanlab_report_to_json(const struct VanlabReport *report, char **out);

/**
 * Release a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void vanlab_string_free(char *s);

/**
 * The prime the report was computed for, or 0 if `report` is null.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
uint64_t vanlab_report_p(const struct VanlabReport *report);

/**
 * The unit-side invariant r0, or 0 if `report` is null.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
uint64_t vanlab_report_r0(const struct VanlabReport *report);

/**
 * dim V = (p-3)/2 + r0, or 0 if `report` is null.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
uint64_t vanlab_report_dim_v(const struct VanlabReport *report);

/**
 * The index of irregularity i(p), or 0 if `report` is null.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
uint64_t vanlab_report_index_of_irregularity(const struct VanlabReport *report);

/**
 * True when every identity check in the report passed; false for null.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
bool vanlab_report_checks_pass(const struct VanlabReport *report);

/**
 * Library version as a static NUL-terminated string; do not free.
 */
const char *vanlab_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VANLAB_H */

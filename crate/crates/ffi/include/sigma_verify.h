#ifndef SIGMA_VERIFY_H
#define SIGMA_VERIFY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a library call.
 */
typedef enum sv_status {
  /**
   * Success; for `sv_run`, every selected check passed.
   */
  SV_STATUS_OK = 0,
  /**
   * `sv_run` produced a report in which some check failed.
   */
  SV_STATUS_CHECKS_FAILED = 1,
  /**
   * Bad argument: precision below 64 bits, bad filter, unknown name.
   */
  SV_STATUS_USAGE_ERROR = 2,
  /**
   * A check could not be evaluated (non-convergence, domain error).
   */
  SV_STATUS_INTERNAL_ERROR = 3,
  SV_STATUS_NULL_POINTER = 4,
  SV_STATUS_INVALID_UTF8 = 5,
  SV_STATUS_PANIC = 6,
} sv_status;

/**
 * A finished run. Opaque to C.
 */
typedef struct sv_report sv_report;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Runs the checks whose id matches `filter` (null means all) at
 * `precision_bits` on `jobs` threads and stores the report in `*out`.
 *
 * The report is stored for `SV_STATUS_OK` and `SV_STATUS_CHECKS_FAILED`;
 * on any other status `*out` is set to null.
 *
 * # Safety
 * `filter` must be null or a valid NUL-terminated string; `out` must be a
 * valid pointer to writable storage.
 */
enum sv_status sv_run(uint32_t precision_bits,
                      const char *filter,
                      uint32_t jobs,
                      struct sv_report **out);

/**
 * Number of checks in the report; 0 for a null handle.
 *
 * # Safety
 * `r` must be null or a handle returned by `sv_run` and not yet freed.
 */
size_t sv_report_len(const struct sv_report *r);

/**
 * # Safety
 * As for `sv_report_len`.
 */
size_t sv_report_passed_count(const struct sv_report *r);

/**
 * # Safety
 * As for `sv_report_len`.
 */
size_t sv_report_failed_count(const struct sv_report *r);

/**
 * 1 if check `index` passed, 0 if it failed, -1 if the handle is null or the
 * index is out of range.
 *
 * # Safety
 * As for `sv_report_len`.
 */
int32_t sv_report_check_passed(const struct sv_report *r, size_t index);

/**
 * Id of check `index`, or null. Free with `sv_string_free`.
 *
 * # Safety
 * As for `sv_report_len`.
 */
char *sv_report_check_id(const struct sv_report *r, size_t index);

/**
 * The report as the JSON document the `verify` binary prints. Free with
 * `sv_string_free`.
 *
 * # Safety
 * As for `sv_report_len`.
 */
char *sv_report_to_json(const struct sv_report *r);

/**
 * # Safety
 * `r` must be null or a handle returned by `sv_run` and not yet freed.
 */
void sv_report_free(struct sv_report *r);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void sv_string_free(char *s);

/**
 * Decimal expansion of a named constant ("pi", "ln2", "catalan", "sigma")
 * at `precision_bits`, stored in `*out`. Free with `sv_string_free`.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string; `out` must be a valid
 * pointer to writable storage.
 */
enum sv_status sv_constant(const char *name, uint32_t precision_bits, char **out);

/**
 * Message of the last failed call on this thread; empty if none. Owned by
 * the library and valid until the next call on the same thread.
 */
const char *sv_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *sv_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIGMA_VERIFY_H */

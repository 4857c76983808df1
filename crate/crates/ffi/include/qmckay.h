#ifndef QMCKAY_H
#define QMCKAY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. The nonzero values below 5 match the CLI exit codes.
typedef enum QmckayStatus {
  QMCKAY_STATUS_OK = 0,
  QMCKAY_STATUS_VERIFICATION_FAILED = 1,
  QMCKAY_STATUS_INVALID_ARGUMENT = 2,
  QMCKAY_STATUS_UNSUPPORTED_GROUP = 3,
  QMCKAY_STATUS_INTERNAL = 4,
  QMCKAY_STATUS_NULL_POINTER = 5,
  QMCKAY_STATUS_PANIC = 6,
} QmckayStatus;

// Opaque group handle.
typedef struct QmckayGroup QmckayGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the next failing call.
const char *qmckay_last_error(void);

// Builds a group from `C:k`, `D:m`, `T`, `O`, `I` or an ADE label such as `D5`.
//
// # Safety
// `spec` must be a NUL-terminated string and `out` a valid pointer.
enum QmckayStatus qmckay_group_new(const char *spec,
                                   uint32_t precision_digits,
                                   struct QmckayGroup **out);

// # Safety
// `group` must come from `qmckay_group_new` and not be freed twice.
void qmckay_group_free(struct QmckayGroup *group);

// Order of G.
//
// # Safety
// `group` must be a live handle.
uintptr_t qmckay_group_order(const struct QmckayGroup *group);

// Number of curve-class coordinates (nontrivial irreps of G).
//
// # Safety
// `group` must be a live handle.
uintptr_t qmckay_group_class_rank(const struct QmckayGroup *group);

// Genus-zero GW invariant of the class `coefficients` (length `len`) as a reduced fraction.
//
// # Safety
// `group` must be a live handle, `coefficients` must point to `len` integers,
// `numerator` and `denominator` must be valid.
enum QmckayStatus qmckay_gw_genus0(const struct QmckayGroup *group,
                                   const int64_t *coefficients,
                                   uintptr_t len,
                                   int64_t *numerator,
                                   int64_t *denominator);

// Runs one report (`roots`, `group`, `bps`, `gw`, `partition`, `dt`, `intersect`,
// `crc`, `verify`) and returns it as JSON. `verify` returns
// `QMCKAY_STATUS_VERIFICATION_FAILED` with the report still written when a check fails.
//
// # Safety
// `group` must be a live handle, `command` NUL-terminated, `out` valid.
enum QmckayStatus qmckay_report_json(const struct QmckayGroup *group,
                                     const char *command,
                                     uint32_t max_q_degree,
                                     uint32_t q_series_degree,
                                     int32_t lambda_order,
                                     char **out);

// BPS table as JSON: `[{"class": [...], "n0": "p/q", "fiber_size": n}, ...]`.
//
// # Safety
// `group` must be a live handle and `out` valid.
enum QmckayStatus qmckay_bps_json(const struct QmckayGroup *group, char **out);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not be freed twice.
void qmckay_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QMCKAY_H */

#ifndef WQA_H
#define WQA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WqaStatus {
  WQA_STATUS_OK = 0,
  WQA_STATUS_NULL_POINTER = 1,
  WQA_STATUS_INVALID_UTF8 = 2,
  WQA_STATUS_VALIDATION = 3,
  WQA_STATUS_PARSE = 4,
  WQA_STATUS_SYNTAX = 5,
  WQA_STATUS_UNKNOWN_GENERATOR = 6,
  WQA_STATUS_INDEX_OUT_OF_RANGE = 7,
  WQA_STATUS_UNSUPPORTED_M = 8,
  WQA_STATUS_BUDGET_EXCEEDED = 9,
  // The suite ran but some check failed; the report is still written.
  WQA_STATUS_CHECKS_FAILED = 10,
  WQA_STATUS_OTHER = 11,
  WQA_STATUS_PANIC = 12,
} WqaStatus;

// Opaque presentation handle.
typedef struct WqaPresentation WqaPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a presentation from a row-major `rank x rank` matrix.
//
// `symmetrizers`, `tau_e` and `tau_f` may be null (all ones, all type one).
// A nonzero entry of `tau_e`/`tau_f` means type one, zero means type zero.
//
// # Safety
// Non-null pointers must reference `rank * rank` (matrix) or `rank`
// readable elements; `out` must be writable.
enum WqaStatus wqa_presentation_new(const int64_t *matrix,
                                    size_t rank,
                                    const int64_t *symmetrizers,
                                    const uint8_t *tau_e,
                                    const uint8_t *tau_f,
                                    int64_t m,
                                    struct WqaPresentation **out);

// Builds a presentation from a JSON configuration document.
//
// # Safety
// `config_json` must be a NUL-terminated string; `out` must be writable.
enum WqaStatus wqa_presentation_from_config(const char *config_json, struct WqaPresentation **out);

// # Safety
// `p` must be null or a handle from this library not yet freed.
void wqa_presentation_free(struct WqaPresentation *p);

// Rank of the datum, or 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t wqa_presentation_rank(const struct WqaPresentation *p);

// Reduces `expr` and writes its normal form.
//
// # Safety
// `p` must be a live handle, `expr` NUL-terminated, `out` writable.
enum WqaStatus wqa_reduce(const struct WqaPresentation *p, const char *expr, char **out);

// Writes whether `expr` reduces to zero.
//
// # Safety
// `p` must be a live handle, `expr` NUL-terminated, `out` writable.
enum WqaStatus wqa_is_zero(const struct WqaPresentation *p, const char *expr, bool *out);

// Runs a suite on a JSON configuration and writes the JSON report.
// Returns `ChecksFailed` when the report contains unexpected outcomes.
//
// # Safety
// `config_json` and `suite` must be NUL-terminated; `out_json` writable.
enum WqaStatus wqa_run_suite(const char *config_json, const char *suite, char **out_json);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void wqa_string_free(char *s);

// Message for the last failure on this thread, or null. Valid until the
// next call into this library on the same thread.
const char *wqa_last_error(void);

const char *wqa_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WQA_H */

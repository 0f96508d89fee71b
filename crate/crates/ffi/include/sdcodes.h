#ifndef SDCODES_H
#define SDCODES_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SdStatus {
  SD_STATUS_OK = 0,
  SD_STATUS_NULL_POINTER = 1,
  SD_STATUS_INVALID_ARGUMENT = 2,
  SD_STATUS_PARSE = 3,
  SD_STATUS_BUDGET = 4,
  SD_STATUS_INCONSISTENT = 5,
  SD_STATUS_INDEX_OUT_OF_RANGE = 6,
  SD_STATUS_OVERFLOW = 7,
  SD_STATUS_PANIC = 8,
} SdStatus;

/**
 * Opaque set of enumerated self-dual codes.
 */
typedef struct SdCodeSet SdCodeSet;

typedef struct SdCounts {
  uint64_t type4;
  uint64_t n;
  uint64_t nprime;
  uint64_t total;
} SdCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none.
 * Valid until the next failing call on the same thread.
 */
const char *sd_last_error(void);

/**
 * Enumerates every self-dual code for `(s, m)` into `*out`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum SdStatus sd_enumerate(uint32_t s, uint32_t m, uint64_t budget, struct SdCodeSet **out);

/**
 * Releases a set from [`sd_enumerate`]; null is ignored.
 *
 * # Safety
 * `set` must come from [`sd_enumerate`] and not be freed twice.
 */
void sd_code_set_free(struct SdCodeSet *set);

/**
 * # Safety
 * `set` must be a live set and `out` writable.
 */
enum SdStatus sd_code_set_len(const struct SdCodeSet *set, size_t *out);

/**
 * # Safety
 * `set` must be a live set and `out` writable.
 */
enum SdStatus sd_code_set_counts(const struct SdCodeSet *set, struct SdCounts *out);

/**
 * Type tag (1..=8) of code `index`.
 *
 * # Safety
 * `set` must be a live set and `out` writable.
 */
enum SdStatus sd_code_set_type(const struct SdCodeSet *set, size_t index, uint8_t *out);

/**
 * JSON document for code `index`; free with [`sd_string_free`].
 *
 * # Safety
 * `set` must be a live set and `out` writable.
 */
enum SdStatus sd_code_set_json(const struct SdCodeSet *set, size_t index, char **out);

/**
 * `1`, `N`, `N′` and the total for `(s, m)` without materializing codes.
 *
 * # Safety
 * `out` must be writable.
 */
enum SdStatus sd_count(uint32_t s, uint32_t m, uint64_t budget, struct SdCounts *out);

/**
 * Parses one JSON code document and reports whether it is self-dual.
 *
 * # Safety
 * `doc` must be a NUL-terminated string and `out` writable.
 */
enum SdStatus sd_verify_json(const char *doc, bool *out);

/**
 * Frees a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void sd_string_free(char *s);

/**
 * Static name of a status code, e.g. `"budget exceeded"`.
 */
const char *sd_status_name(enum SdStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SDCODES_H */

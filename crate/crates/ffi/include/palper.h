#ifndef PALPER_H
#define PALPER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum PalperStatus {
  PALPER_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  PALPER_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not UTF-8.
   */
  PALPER_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed or out-of-range input.
   */
  PALPER_STATUS_INVALID_INPUT = 3,
  /**
   * The input does not satisfy the hypotheses of the requested operation.
   */
  PALPER_STATUS_HYPOTHESIS = 4,
  /**
   * A derived fact failed its check on the letters.
   */
  PALPER_STATUS_VERIFICATION = 5,
  /**
   * The library panicked; the message holds the panic payload.
   */
  PALPER_STATUS_PANIC = 6,
} PalperStatus;

/**
 * Opaque word handle.
 */
typedef struct PalperWord PalperWord;

/**
 * The parameters of a g-word, with every ℤ/2 value doubled.
 */
typedef struct PalperGWordParams {
  int64_t doubled_offset;
  int64_t doubled_centre;
  int64_t doubled_half_period;
  size_t g;
  size_t n;
} PalperGWordParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *palper_version(void);

/**
 * Message of the last failed call on this thread, or null after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *palper_last_error(void);

/**
 * Parses a word in letter form (`"accab"`) or integer form (`"i:0,2,2"`).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum PalperStatus palper_word_parse(const char *text, struct PalperWord **out);

/**
 * Builds a word from `len` integer letters.
 *
 * # Safety
 * `letters` must point to `len` readable values (it may be null when `len`
 * is 0) and `out` must be writable.
 */
enum PalperStatus palper_word_from_letters(const uint32_t *letters,
                                           size_t len,
                                           struct PalperWord **out);

/**
 * Number of letters; 0 for a null handle.
 *
 * # Safety
 * `word` must be null or a live handle.
 */
size_t palper_word_len(const struct PalperWord *word);

/**
 * Releases a word. Null is ignored.
 *
 * # Safety
 * `word` must be null or a handle not yet freed.
 */
void palper_word_free(struct PalperWord *word);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void palper_string_free(char *s);

/**
 * Writes into `out` the least period, or 0 for the empty word.
 *
 * # Safety
 * `word` must be a live handle and `out` writable.
 */
enum PalperStatus palper_least_period(const struct PalperWord *word, size_t *out);

/**
 * Maximal palindromic periodicities, one JSON object per line.
 *
 * # Safety
 * `word` must be a live handle and `out` writable; free the result with
 * [`palper_string_free`].
 */
enum PalperStatus palper_detect_json(const struct PalperWord *word, char **out);

/**
 * Writes the number of (offset, half-period) pairs under which the whole
 * word is a palindromic periodicity.
 *
 * # Safety
 * `word` must be a live handle and `out` writable.
 */
enum PalperStatus palper_parameterization_count(const struct PalperWord *word, size_t *out);

/**
 * g-word parameters from doubled offset, centre and half-period.
 *
 * # Safety
 * `out` must be writable.
 */
enum PalperStatus palper_gword_params(int64_t doubled_offset,
                                      int64_t doubled_centre,
                                      int64_t doubled_half_period,
                                      struct PalperGWordParams *out);

/**
 * Least-period table of generic double palindromic periodicities for
 * lengths `max_len` down to `min_len`, as one JSON object.
 *
 * # Safety
 * `out` must be writable; free the result with [`palper_string_free`].
 */
enum PalperStatus palper_table_json(int64_t doubled_h1,
                                    int64_t doubled_h2,
                                    bool opposite_parity,
                                    size_t max_len,
                                    size_t min_len,
                                    char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PALPER_H */

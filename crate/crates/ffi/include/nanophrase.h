#ifndef NANOPHRASE_H
#define NANOPHRASE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NpStatus {
  NP_STATUS_OK = 0,
  NP_STATUS_NULL_POINTER = 1,
  NP_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed data, phrase or sum text.
   */
  NP_STATUS_PARSE = 3,
  /**
   * Well-formed input the operation does not accept.
   */
  NP_STATUS_PRECONDITION = 4,
  /**
   * The output buffer is too short; the needed length was written.
   */
  NP_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * Internal error; the library state is unchanged.
   */
  NP_STATUS_PANIC = 6,
} NpStatus;

/**
 * Homotopy data `(alpha, tau, S, nu)`.
 */
typedef struct NpData NpData;

/**
 * A computed group `G_n` together with its coordinate maps.
 */
typedef struct NpGroup NpGroup;

/**
 * A nanophrase, tied to the data it was parsed with.
 */
typedef struct NpPhrase NpPhrase;

/**
 * An invariant value: an integer when `modulus` is 0, otherwise a residue.
 */
typedef struct NpValue {
  int64_t value;
  uint32_t modulus;
} NpValue;

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *np_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void np_string_free(char *s);

/**
 * Built-in data: `"gauss"` or `"vknot"`.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum NpStatus np_data_preset(const char *name, struct NpData **out);

/**
 * Data from the `alpha: / tau: / S: / nu:` text format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum NpStatus np_data_parse(const char *text, struct NpData **out);

/**
 * # Safety
 * `data` must be null or a live handle from this library.
 */
void np_data_free(struct NpData *data);

/**
 * Parses a phrase such as `AB|A|B:ab`.
 *
 * # Safety
 * Pointers must be valid; `text` nul-terminated; `out` writable.
 */
enum NpStatus np_phrase_parse(const struct NpData *data, const char *text, struct NpPhrase **out);

/**
 * # Safety
 * `phrase` must be null or a live handle from this library.
 */
void np_phrase_free(struct NpPhrase *phrase);

/**
 * Number of letters and number of components.
 *
 * # Safety
 * `phrase` must be a live handle; outputs must be writable.
 */
enum NpStatus np_phrase_shape(const struct NpPhrase *phrase, size_t *rank, size_t *components);

/**
 * Canonical text of the phrase's isomorphism class. Free the result with
 * `np_string_free`.
 *
 * # Safety
 * Handles must be live; `out` writable.
 */
enum NpStatus np_phrase_canonical(const struct NpData *data,
                                  const struct NpPhrase *phrase,
                                  char **out);

/**
 * Evaluates a named invariant (`linking`, `t`, `u`, `l`, `lp`, `lpp`,
 * `v4`). Component indices are zero based, negative meaning absent;
 * symbols are given by name or null. Writes up to `cap` values and sets
 * `len` to the full count.
 *
 * # Safety
 * Handles must be live; strings nul-terminated or null where allowed;
 * `values` must hold `cap` entries; `len` writable.
 */
enum NpStatus np_invariant(const struct NpData *data,
                           const struct NpPhrase *phrase,
                           const char *name,
                           int32_t i,
                           int32_t j,
                           const char *a,
                           const char *b,
                           struct NpValue *values,
                           size_t cap,
                           size_t *len);

/**
 * `<u, x>` for two formal sums in text form, e.g. `"ABAB:aa"` and
 * `"ABACBC:aaa -2 AA:a"`.
 *
 * # Safety
 * `data` must be live; strings nul-terminated; `out` writable.
 */
enum NpStatus np_bracket(const struct NpData *data, const char *u, const char *x, int64_t *out);

/**
 * Computes `G_n` for `r`-component phrases, or its closed-homotopy
 * quotient when `closed` is nonzero.
 *
 * # Safety
 * `data` must be live; `out` writable.
 */
enum NpStatus np_group(const struct NpData *data,
                       size_t r,
                       size_t n,
                       bool closed,
                       struct NpGroup **out);

/**
 * # Safety
 * `group` must be null or a live handle from this library.
 */
void np_group_free(struct NpGroup *group);

/**
 * The group as `Z^f (+) Z/d1 (+) ...`. Free with `np_string_free`.
 *
 * # Safety
 * `group` must be live; `out` writable.
 */
enum NpStatus np_group_describe(const struct NpGroup *group, char **out);

/**
 * Coordinates of the universal invariant on `phrase`: free coordinates
 * first, then one residue per torsion factor. With `normalize` the
 * trivial phrase maps to zero. Buffer protocol as in `np_invariant`.
 *
 * # Safety
 * Handles must be live; `values` must hold `cap` entries; `len` writable.
 */
enum NpStatus np_gamma(const struct NpGroup *group,
                       const struct NpPhrase *phrase,
                       bool normalize,
                       struct NpValue *values,
                       size_t cap,
                       size_t *len);

#endif  /* NANOPHRASE_H */

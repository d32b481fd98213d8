#ifndef ODDSUN_H
#define ODDSUN_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OddsunStatus {
  ODDSUN_STATUS_OK = 0,
  ODDSUN_STATUS_NULL_POINTER = 1,
  ODDSUN_STATUS_INVALID_ARGUMENT = 2,
  ODDSUN_STATUS_TOO_LARGE = 3,
  ODDSUN_STATUS_PARSE_ERROR = 4,
  ODDSUN_STATUS_PRECONDITION_VIOLATED = 5,
  ODDSUN_STATUS_EVEN_N = 6,
  ODDSUN_STATUS_EMPTY_INSTANCE = 7,
  ODDSUN_STATUS_BUFFER_TOO_SMALL = 8,
  ODDSUN_STATUS_INVALID_UTF8 = 9,
  ODDSUN_STATUS_PANIC = 10,
} OddsunStatus;

/**
 * Result of a sunflower search.
 */
typedef enum OddsunOutcome {
  ODDSUN_OUTCOME_ABSENT = 0,
  ODDSUN_OUTCOME_FOUND = 1,
  ODDSUN_OUTCOME_BUDGET_EXCEEDED = 2,
} OddsunOutcome;

/**
 * A set family. Opaque to C.
 */
typedef struct OddsunFamily OddsunFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failing call on this thread, or null.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *oddsun_last_error(void);

/**
 * Builds a family from `count` members in compressed form: member `i` is
 * `elements[offsets[i] .. offsets[i + 1]]`, so `offsets` has `count + 1` entries.
 *
 * # Safety
 * `offsets` must point to `count + 1` values and `elements` to at least
 * `offsets[count]` values; `out` must be writable.
 */
enum OddsunStatus oddsun_family_new(size_t universe,
                                    const size_t *elements,
                                    const size_t *offsets,
                                    size_t count,
                                    struct OddsunFamily **out);

/**
 * Releases a family; null is ignored.
 *
 * # Safety
 * `f` must come from this library and not be used afterwards.
 */
void oddsun_family_free(struct OddsunFamily *f);

/**
 * Number of members, or 0 for null.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t oddsun_family_len(const struct OddsunFamily *f);

/**
 * Universe size, or 0 for null.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t oddsun_family_universe(const struct OddsunFamily *f);

/**
 * Writes member `index` (ascending elements) into `buf`; `len` receives its size.
 *
 * # Safety
 * `f` must be a live handle, `buf` writable for `cap` values, `len` writable.
 */
enum OddsunStatus oddsun_family_member(const struct OddsunFamily *f,
                                       size_t index,
                                       size_t *buf,
                                       size_t cap,
                                       size_t *len);

/**
 * Odd-sunflower search within `budget` nodes. On `ODDSUN_OUTCOME_FOUND`
 * the witness member indices (0-based, ascending) go to `buf`.
 *
 * # Safety
 * `f` must be a live handle; `outcome` and `len` writable; `buf` writable for `cap` values.
 */
enum OddsunStatus oddsun_find_odd(const struct OddsunFamily *f,
                                  uint64_t budget,
                                  enum OddsunOutcome *outcome,
                                  size_t *buf,
                                  size_t cap,
                                  size_t *len);

/**
 * Even-sunflower search; see [`oddsun_find_odd`] for the output convention.
 *
 * # Safety
 * As for [`oddsun_find_odd`].
 */
enum OddsunStatus oddsun_find_even(const struct OddsunFamily *f,
                                   enum OddsunOutcome *outcome,
                                   size_t *buf,
                                   size_t cap,
                                   size_t *len);

/**
 * Classic (three-petal) sunflower search; see [`oddsun_find_odd`].
 *
 * # Safety
 * As for [`oddsun_find_odd`].
 */
enum OddsunStatus oddsun_find_classic(const struct OddsunFamily *f,
                                      enum OddsunOutcome *outcome,
                                      size_t *buf,
                                      size_t cap,
                                      size_t *len);

/**
 * All `(n-1)`-subsets of `{1..n}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum OddsunStatus oddsun_c_n(size_t n, struct OddsunFamily **out);

/**
 * `C_n` plus `{1..n}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum OddsunStatus oddsun_c_n_plus(size_t n, struct OddsunFamily **out);

/**
 * # Safety
 * `f`, `g` must be live handles; `out` writable.
 */
enum OddsunStatus oddsun_direct_sum(const struct OddsunFamily *f,
                                    const struct OddsunFamily *g,
                                    struct OddsunFamily **out);

/**
 * # Safety
 * `f`, `g` must be live handles; `out` writable.
 */
enum OddsunStatus oddsun_wreath(const struct OddsunFamily *f,
                                const struct OddsunFamily *g,
                                struct OddsunFamily **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum OddsunStatus oddsun_construction1(size_t n, struct OddsunFamily **out);

/**
 * `C_9` wreath `C_3`: 59049 members.
 *
 * # Safety
 * `out` must be writable.
 */
enum OddsunStatus oddsun_construction2(struct OddsunFamily **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum OddsunStatus oddsun_binary_tree(size_t k, struct OddsunFamily **out);

/**
 * Growth-rate bound `id` (1, 2 or 3) with its stated threshold.
 *
 * # Safety
 * `value`, `threshold` and `holds` must be writable.
 */
enum OddsunStatus oddsun_bound(uint8_t id, double *value, double *threshold, bool *holds);

/**
 * Number of k-uniform minimal odd-sunflower classes. Zero bounds select
 * the defaults, which exist for `k <= 3`.
 *
 * # Safety
 * `count` must be writable.
 */
enum OddsunStatus oddsun_mos_count(size_t k,
                                   size_t max_members,
                                   size_t max_universe,
                                   size_t *count);

/**
 * Reduces a 3DM instance given as `count` triples `edges[3i], edges[3i+1], edges[3i+2]`.
 *
 * # Safety
 * `edges` must point to `3 * count` values; `out` writable.
 */
enum OddsunStatus oddsun_reduce_3dm(size_t n,
                                    const size_t *edges,
                                    size_t count,
                                    struct OddsunFamily **out);

/**
 * Parses family-file text.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` writable.
 */
enum OddsunStatus oddsun_family_parse(const char *text, struct OddsunFamily **out);

/**
 * Renders a family as family-file text; free the result with [`oddsun_string_free`].
 *
 * # Safety
 * `f` must be a live handle; `out` writable.
 */
enum OddsunStatus oddsun_family_render(const struct OddsunFamily *f, char **out);

/**
 * Releases a string from this library; null is ignored.
 *
 * # Safety
 * `s` must come from [`oddsun_family_render`] and not be used afterwards.
 */
void oddsun_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ODDSUN_H */

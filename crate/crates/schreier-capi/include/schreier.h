#ifndef SCHREIER_H
#define SCHREIER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a C API call.
 */
typedef enum SchreierStatus {
  SCHREIER_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  SCHREIER_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  SCHREIER_STATUS_INVALID_UTF8 = 2,
  /**
   * Input text did not parse (JSON document or word syntax).
   */
  SCHREIER_STATUS_PARSE_ERROR = 3,
  /**
   * Input parsed but violates an invariant (not a permutation, bad
   * basepoint, alphabet mismatch, ...).
   */
  SCHREIER_STATUS_INVALID_DATA = 4,
  /**
   * The covering is not connected.
   */
  SCHREIER_STATUS_NOT_CONNECTED = 5,
  /**
   * The word is not a member of the subgroup.
   */
  SCHREIER_STATUS_NOT_MEMBER = 6,
  /**
   * The generated subgroup has infinite index; the folded-graph
   * diagnostic is stored as the error message (JSON).
   */
  SCHREIER_STATUS_INFINITE_INDEX = 7,
  /**
   * An index argument was out of range.
   */
  SCHREIER_STATUS_OUT_OF_RANGE = 8,
  /**
   * An internal panic was caught; the handle states are unchanged.
   */
  SCHREIER_STATUS_INTERNAL = 9,
} SchreierStatus;

/**
 * Opaque basis handle; bundles the covering it was computed from so that
 * rewriting needs no second argument.
 */
typedef struct SchreierBasis SchreierBasis;

/**
 * Opaque covering handle.
 */
typedef struct SchreierCovering SchreierCovering;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or NULL if
 * none. The pointer stays valid until the next failing call on the same
 * thread; do not free it.
 */
const char *schreier_last_error_message(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned through a `char**`
 * out-parameter of this library, not yet freed, or NULL.
 */
void schreier_string_free(char *s);

/**
 * Parse a covering from its JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be a valid pointer.
 * On success `*out` owns a covering that must be released with
 * [`schreier_covering_free`].
 */
enum SchreierStatus schreier_covering_from_json(const char *json, struct SchreierCovering **out);

/**
 * Serialize a covering to its JSON document.
 *
 * # Safety
 * `covering` must be a live handle from this library; `out` must be valid.
 */
enum SchreierStatus schreier_covering_to_json(const struct SchreierCovering *covering, char **out);

/**
 * Fold generator words into the covering of the subgroup they generate.
 * `names` holds `name_count` generator names; `words` holds `word_count`
 * words in apostrophe syntax over those names.
 *
 * Returns `InfiniteIndex` (with a JSON diagnostic as the error message)
 * when the subgroup has no finite covering.
 *
 * # Safety
 * All array pointers must be valid for their stated lengths and the
 * strings NUL-terminated; `out` must be valid.
 */
enum SchreierStatus schreier_covering_fold(const char *const *names,
                                           size_t name_count,
                                           const char *const *words,
                                           size_t word_count,
                                           struct SchreierCovering **out);

/**
 * Release a covering handle.
 *
 * # Safety
 * `covering` must be a handle from this library, not yet freed, or NULL.
 */
void schreier_covering_free(struct SchreierCovering *covering);

/**
 * Number of free generators of the base group (0 on NULL).
 *
 * # Safety
 * `covering` must be a live handle or NULL.
 */
size_t schreier_covering_rank(const struct SchreierCovering *covering);

/**
 * Index of the subgroup: the fiber size (0 on NULL).
 *
 * # Safety
 * `covering` must be a live handle or NULL.
 */
size_t schreier_covering_fiber_size(const struct SchreierCovering *covering);

/**
 * Basepoint of the covering (0 on NULL).
 *
 * # Safety
 * `covering` must be a live handle or NULL.
 */
size_t schreier_covering_basepoint(const struct SchreierCovering *covering);

/**
 * Whether the total space is connected (false on NULL).
 *
 * # Safety
 * `covering` must be a live handle or NULL.
 */
bool schreier_covering_is_connected(const struct SchreierCovering *covering);

/**
 * Test membership of a word (apostrophe syntax) in the subgroup.
 *
 * # Safety
 * `covering` must be a live handle, `word` NUL-terminated, `out` valid.
 */
enum SchreierStatus schreier_covering_is_member(const struct SchreierCovering *covering,
                                                const char *word,
                                                bool *out);

/**
 * Trace a fiber point along a word.
 *
 * # Safety
 * `covering` must be a live handle, `word` NUL-terminated, `out` valid.
 */
enum SchreierStatus schreier_covering_trace(const struct SchreierCovering *covering,
                                            const char *word,
                                            size_t start,
                                            size_t *out);

/**
 * Whether two connected coverings present the same subgroup.
 *
 * # Safety
 * Both handles must be live; `out` must be valid.
 */
enum SchreierStatus schreier_coverings_isomorphic(const struct SchreierCovering *left,
                                                  const struct SchreierCovering *right,
                                                  bool *out);

/**
 * Compute the free basis of the subgroup a connected covering presents.
 *
 * # Safety
 * `covering` must be a live handle; `out` must be valid. On success
 * `*out` owns a basis that must be released with [`schreier_basis_free`].
 */
enum SchreierStatus schreier_basis_compute(const struct SchreierCovering *covering,
                                           struct SchreierBasis **out);

/**
 * Release a basis handle.
 *
 * # Safety
 * `basis` must be a handle from this library, not yet freed, or NULL.
 */
void schreier_basis_free(struct SchreierBasis *basis);

/**
 * Number of free generators in the basis (0 on NULL).
 *
 * # Safety
 * `basis` must be a live handle or NULL.
 */
size_t schreier_basis_rank(const struct SchreierBasis *basis);

/**
 * The `index`-th generator word, in the base alphabet's syntax.
 *
 * # Safety
 * `basis` must be a live handle; `out` must be valid.
 */
enum SchreierStatus schreier_basis_generator(const struct SchreierBasis *basis,
                                             size_t index,
                                             char **out);

/**
 * Rewrite a member word over the basis; the result uses the derived
 * names `s0, s1, …`. Returns `NotMember` for non-members.
 *
 * # Safety
 * `basis` must be a live handle, `word` NUL-terminated, `out` valid.
 */
enum SchreierStatus schreier_basis_rewrite(const struct SchreierBasis *basis,
                                           const char *word,
                                           char **out);

/**
 * Evaluate a word over the basis (names `s0, s1, …`) back into the base
 * free group.
 *
 * # Safety
 * `basis` must be a live handle, `basis_word` NUL-terminated, `out` valid.
 */
enum SchreierStatus schreier_basis_eval(const struct SchreierBasis *basis,
                                        const char *basis_word,
                                        char **out);

/**
 * Run the equivariance verification suite; writes the JSON report and
 * returns `Ok` whether or not all checks passed (consult the report).
 *
 * # Safety
 * `out` must be valid.
 */
enum SchreierStatus schreier_counterexample_report(char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SCHREIER_H */

#ifndef BORELPATHS_H
#define BORELPATHS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Largest `n` accepted by [`bp_classify`].
 */
#define BP_EXHAUSTIVE_CAP 20

/**
 * Outcome of the exhaustive minimality check at one size.
 */
typedef enum BpClassification {
  BP_CLASSIFICATION_LEX = 0,
  BP_CLASSIFICATION_REVLEX = 1,
  BP_CLASSIFICATION_TIE_LEX_REVLEX = 2,
  BP_CLASSIFICATION_UNIQUE_SINGLE_SET = 3,
  BP_CLASSIFICATION_OTHER = 4,
} BpClassification;

/**
 * Result of every fallible call.
 */
typedef enum BpStatus {
  BP_STATUS_OK = 0,
  BP_STATUS_NULL_POINTER = 1,
  BP_STATUS_INVALID_ARGUMENT = 2,
  BP_STATUS_OUT_OF_RANGE = 3,
  BP_STATUS_RESOURCE = 4,
  BP_STATUS_INCONCLUSIVE = 5,
  BP_STATUS_UNSUPPORTED_DEGREE = 6,
  BP_STATUS_PANIC = 7,
} BpStatus;

/**
 * Opaque handle to a strict partition (a shifted Ferrers diagram).
 */
typedef struct BpPartition BpPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the same thread.
 */
const char *bp_last_error(void);

/**
 * Builds a partition from `len` strictly decreasing positive parts.
 *
 * # Safety
 * `parts` must point to `len` readable values (or be null when `len` is 0);
 * `out` must be writable.
 */
enum BpStatus bp_partition_new(const uint32_t *parts, size_t len, struct BpPartition **out);

/**
 * Parses a comma-separated partition such as `"12,11,10,9,8,7,6,5,3"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum BpStatus bp_partition_parse(const char *text, struct BpPartition **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `handle` must come from this library and not have been freed.
 */
void bp_partition_free(struct BpPartition *handle);

/**
 * Largest part (number of columns); 0 for a null handle.
 *
 * # Safety
 * `handle` must be null or a live handle.
 */
uint32_t bp_partition_n(const struct BpPartition *handle);

/**
 * Number of boxes; 0 for a null handle.
 *
 * # Safety
 * `handle` must be null or a live handle.
 */
uint64_t bp_partition_size(const struct BpPartition *handle);

/**
 * Comma-separated text form, freed with [`bp_string_free`].
 *
 * # Safety
 * `handle` must be a live handle; `out` must be writable.
 */
enum BpStatus bp_partition_to_string(const struct BpPartition *handle, char **out);

/**
 * Number of maximal NE-paths, as a decimal string.
 *
 * # Safety
 * `handle` must be a live handle; `out` must be writable.
 */
enum BpStatus bp_path_count(const struct BpPartition *handle, char **out);

/**
 * `HF(i)` of the algebra generated by the diagram's monomials, as a decimal string.
 *
 * # Safety
 * `handle` must be a live handle; `out` must be writable.
 */
enum BpStatus bp_hilbert_function(const struct BpPartition *handle, uint64_t i, char **out);

/**
 * Lex segment of size `u` in `n` variables; requires `C(n,2) < u <= C(n+1,2)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum BpStatus bp_lex_segment(uint32_t n, uint64_t u, struct BpPartition **out);

/**
 * RevLex segment of size `u` in `n` variables.
 *
 * # Safety
 * `out` must be writable.
 */
enum BpStatus bp_revlex_segment(uint32_t n, uint64_t u, struct BpPartition **out);

/**
 * Closed-form multiplicity of the Lex segment, as a decimal string.
 *
 * # Safety
 * `out` must be writable.
 */
enum BpStatus bp_lex_multiplicity(uint32_t n, uint64_t u, char **out);

/**
 * Closed-form multiplicity of the RevLex segment, as a decimal string.
 *
 * # Safety
 * `out` must be writable.
 */
enum BpStatus bp_revlex_multiplicity(uint32_t n, uint64_t u, char **out);

/**
 * Exhaustive minimality verdict at `(n, u)`; `n` is limited to [`BP_EXHAUSTIVE_CAP`].
 *
 * # Safety
 * `out` must be writable.
 */
enum BpStatus bp_classify(uint32_t n, uint64_t u, enum BpClassification *out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void bp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BORELPATHS_H */

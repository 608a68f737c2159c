#ifndef TREELAB_H
#define TREELAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TreelabStatus {
  TREELAB_STATUS_OK = 0,
  TREELAB_STATUS_NULL_POINTER = 1,
  TREELAB_STATUS_INVALID_UTF8 = 2,
  TREELAB_STATUS_MALFORMED_JSON = 3,
  TREELAB_STATUS_REJECTED = 4,
  TREELAB_STATUS_NOT_CLOSED = 5,
  TREELAB_STATUS_RESOURCE = 6,
  TREELAB_STATUS_OVERFLOW = 7,
  TREELAB_STATUS_BUFFER_TOO_SMALL = 8,
  TREELAB_STATUS_PANIC = 9,
} TreelabStatus;

typedef enum TreelabTransform {
  TREELAB_TRANSFORM_MINUS = 0,
  TREELAB_TRANSFORM_PLUS = 1,
  TREELAB_TRANSFORM_STAR = 2,
  TREELAB_TRANSFORM_STAR_INVERT = 3,
} TreelabTransform;

/**
 * A finite hypergraph.
 */
typedef struct TreelabHypergraph TreelabHypergraph;

/**
 * A finite prefix-closed set of sequences.
 */
typedef struct TreelabTree TreelabTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or an empty string.
 * Valid until the next call into the library on the same thread.
 */
const char *treelab_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void treelab_string_free(char *s);

/**
 * Parses a JSON array of sequences. With `close`, missing prefixes are
 * added instead of rejecting the input.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum TreelabStatus treelab_tree_from_json(const char *json, bool close, struct TreelabTree **out);

/**
 * # Safety
 * `tree` must be null or a handle from this library not yet freed.
 */
void treelab_tree_free(struct TreelabTree *tree);

/**
 * Number of nodes, or 0 for a null handle.
 *
 * # Safety
 * `tree` must be null or a live handle.
 */
size_t treelab_tree_len(const struct TreelabTree *tree);

/**
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum TreelabStatus treelab_tree_to_json(const struct TreelabTree *tree, char **out);

/**
 * Applies a transform and returns a new handle. For `Star` the result is
 * the star tree itself; its leaves are the nodes ending in 0.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum TreelabStatus treelab_tree_transform(const struct TreelabTree *tree,
                                          enum TreelabTransform op,
                                          struct TreelabTree **out);

/**
 * Leaf set as a JSON array.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum TreelabStatus treelab_tree_leaves_json(const struct TreelabTree *tree, char **out);

/**
 * Whether the tree has no node of length `d`.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum TreelabStatus treelab_tree_wf_probe(const struct TreelabTree *tree, size_t d, bool *out);

/**
 * Whether the sequence `entries[0..len]` has `d`-splitting in the tree.
 *
 * # Safety
 * `tree` must be a live handle; `entries` must point to `len` readable
 * values (or be null when `len` is 0); `out` must be writable.
 */
enum TreelabStatus treelab_tree_has_d_splitting(const struct TreelabTree *tree,
                                                const uint64_t *entries,
                                                size_t len,
                                                size_t d,
                                                bool *out);

/**
 * Nodes with `d`-splitting as a JSON array.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum TreelabStatus treelab_tree_kernel_probe_json(const struct TreelabTree *tree,
                                                  size_t d,
                                                  char **out);

/**
 * Parses `{"vertices": n, "edges": [[...], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum TreelabStatus treelab_hypergraph_from_json(const char *json, struct TreelabHypergraph **out);

/**
 * # Safety
 * `h` must be null or a handle from this library not yet freed.
 */
void treelab_hypergraph_free(struct TreelabHypergraph *h);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum TreelabStatus treelab_hypergraph_to_json(const struct TreelabHypergraph *h, char **out);

/**
 * Decides proper `k`-colorability by backtracking, visiting at most
 * `ceiling` search nodes. When `witness_json` is not null it receives the
 * witness coloring as a JSON array, or null when there is none.
 *
 * # Safety
 * `h` must be a live handle; `colorable` must be writable; `witness_json`
 * must be null or writable.
 */
enum TreelabStatus treelab_hpc(const struct TreelabHypergraph *h,
                               uint32_t k,
                               uint64_t ceiling,
                               bool *colorable,
                               char **witness_json);

/**
 * The coloring gadget of a finite tree with its exact leaf set.
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum TreelabStatus treelab_wf_to_hpc(const struct TreelabTree *tree,
                                     uint32_t k,
                                     struct TreelabHypergraph **out);

/**
 * Sequence code of `entries[0..len]`.
 *
 * # Safety
 * `entries` must point to `len` readable values (or be null when `len` is
 * 0); `out` must be writable.
 */
enum TreelabStatus treelab_seq_encode(const uint64_t *entries, size_t len, uint64_t *out);

/**
 * Writes the sequence with code `code` into `buf` and its length into
 * `out_len`. When `cap` is too small nothing is written to `buf`,
 * `out_len` still receives the length, and the status is
 * `BufferTooSmall`.
 *
 * # Safety
 * `buf` must have room for `cap` values (or be null when `cap` is 0);
 * `out_len` must be writable.
 */
enum TreelabStatus treelab_seq_decode(uint64_t code, uint64_t *buf, size_t cap, size_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREELAB_H */

#ifndef CORANK_H
#define CORANK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CorankStatus {
  CORANK_STATUS_OK = 0,
  CORANK_STATUS_NULL_POINTER = 1,
  CORANK_STATUS_INVALID_PARAMETER = 2,
  CORANK_STATUS_CAPACITY = 3,
  CORANK_STATUS_PARSE = 4,
  CORANK_STATUS_SYMMETRY = 5,
  CORANK_STATUS_STRUCTURAL_FAILURE = 6,
  CORANK_STATUS_SAMPLING = 7,
  CORANK_STATUS_IO = 8,
  CORANK_STATUS_BUFFER_TOO_SMALL = 9,
  CORANK_STATUS_PANIC = 10,
} CorankStatus;

typedef enum CorankDiagonal {
  CORANK_DIAGONAL_ZERO = 0,
  CORANK_DIAGONAL_NONZERO = 1,
  CORANK_DIAGONAL_MIXED = 2,
} CorankDiagonal;

/**
 * Opaque graph.
 */
typedef struct CorankGraph CorankGraph;

/**
 * Opaque symmetric matrix.
 */
typedef struct CorankMatrix CorankMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *corank_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *corank_version(void);

/**
 * Parses a matrix in the text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CorankStatus corank_matrix_parse(const char *text, struct CorankMatrix **out);

/**
 * Samples `Q(W, p)` from a seed.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum CorankStatus corank_matrix_sample(size_t n,
                                       double p,
                                       enum CorankDiagonal diagonal,
                                       uint64_t seed,
                                       struct CorankMatrix **out);

/**
 * Releases a matrix. Null is ignored.
 *
 * # Safety
 * `m` must come from this library and not be used afterwards.
 */
void corank_matrix_free(struct CorankMatrix *m);

/**
 * # Safety
 * `m` must be a live matrix handle and `out` a writable pointer.
 */
enum CorankStatus corank_matrix_dimension(const struct CorankMatrix *m, size_t *out);

/**
 * Rank over the matrix's coefficient domain.
 *
 * # Safety
 * `m` must be a live matrix handle and `out` a writable pointer.
 */
enum CorankStatus corank_matrix_exact_rank(const struct CorankMatrix *m, size_t *out);

/**
 * Serializes a matrix to the text format. Free the result with
 * [`corank_string_free`].
 *
 * # Safety
 * `m` must be a live matrix handle and `out` a writable pointer.
 */
enum CorankStatus corank_matrix_to_text(const struct CorankMatrix *m, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void corank_string_free(char *s);

/**
 * Nonzero pattern of a matrix.
 *
 * # Safety
 * `m` must be a live matrix handle and `out` a writable pointer.
 */
enum CorankStatus corank_matrix_graph(const struct CorankMatrix *m, struct CorankGraph **out);

/**
 * Builds a graph from `len` edges `(us[k], vs[k])`; `u == v` is a loop.
 *
 * # Safety
 * `us` and `vs` must point to `len` readable values (or be null when
 * `len` is 0) and `out` must be a writable pointer.
 */
enum CorankStatus corank_graph_from_edges(size_t n,
                                          const size_t *us,
                                          const size_t *vs,
                                          size_t len,
                                          struct CorankGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void corank_graph_free(struct CorankGraph *g);

/**
 * Maximum matching size of the bipartite double cover.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a writable pointer.
 */
enum CorankStatus corank_graph_combinatorial_rank(const struct CorankGraph *g, size_t *out);

/**
 * Rank predicted by the obstruction decomposition with size bound `s`.
 * Returns `StructuralFailure` when the decomposition stalls.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a writable pointer.
 */
enum CorankStatus corank_graph_structural_rank(const struct CorankGraph *g, size_t s, size_t *out);

/**
 * Writes a minimum-deficiency witness set into `buf`. `out_len` receives
 * the set size; if it exceeds `cap` nothing is copied and
 * `BufferTooSmall` is returned.
 *
 * # Safety
 * `g` must be a live graph handle, `buf` must have room for `cap` values
 * (or be null when `cap` is 0) and `out_len` must be writable.
 */
enum CorankStatus corank_graph_witness(const struct CorankGraph *g,
                                       size_t *buf,
                                       size_t cap,
                                       size_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CORANK_H */

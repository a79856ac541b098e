#ifndef GRAPH_ENERGY_H
#define GRAPH_ENERGY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum GeStatus {
  GE_STATUS_OK = 0,
  // A required pointer argument was NULL.
  GE_STATUS_NULL_POINTER = 1,
  // An argument was out of range or violated a precondition.
  GE_STATUS_INVALID_ARGUMENT = 2,
  // Matrix text, edge-list text or a family spec could not be parsed.
  GE_STATUS_PARSE = 3,
  // Matrix dimensions were empty or inconsistent with the data.
  GE_STATUS_DIMENSION = 4,
  // The eigensolver did not converge.
  GE_STATUS_CONVERGENCE = 5,
  // A string argument was not valid UTF-8.
  GE_STATUS_UTF8 = 6,
  // The library panicked; this is a bug.
  GE_STATUS_PANIC = 7,
  // The caller's buffer is shorter than the result; the required length
  // was written.
  GE_STATUS_BUFFER_TOO_SMALL = 8,
} GeStatus;

// Opaque simple undirected graph.
typedef struct GeGraph GeGraph;

// Opaque dense real matrix.
typedef struct GeMatrix GeMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failed call on this thread, or NULL if the
// last call succeeded. The pointer stays valid until the next call into this
// library on the same thread; do not free it.
const char *ge_last_error_message(void);

// Frees a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void ge_string_free(char *s);

// Creates a `rows x cols` matrix from row-major `data`.
//
// # Safety
// `data` must point to `rows * cols` doubles; `out` must be valid for writes.
enum GeStatus ge_matrix_new(size_t rows, size_t cols, const double *data, struct GeMatrix **out);

// Parses the text matrix format: a `rows cols` header followed by rows of
// whitespace-separated numbers; `#` starts a comment.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be valid for writes.
enum GeStatus ge_matrix_parse(const char *text, struct GeMatrix **out);

// Frees a matrix. NULL is ignored.
//
// # Safety
// `m` must be NULL or a live handle from this library.
void ge_matrix_free(struct GeMatrix *m);

// Writes the matrix dimensions.
//
// # Safety
// `m` must be a live handle; `rows` and `cols` must be valid for writes.
enum GeStatus ge_matrix_shape(const struct GeMatrix *m, size_t *rows, size_t *cols);

// Sum of the singular values.
//
// # Safety
// `m` must be a live handle; `out` must be valid for writes.
enum GeStatus ge_matrix_energy(const struct GeMatrix *m, double *out);

// Singular values in descending order. Writes the count to `len`; if
// `capacity` is smaller, returns `GE_STATUS_BUFFER_TOO_SMALL` without
// touching `values`. Pass `values = NULL, capacity = 0` to query the count.
//
// # Safety
// `m` must be a live handle; `values` must hold `capacity` doubles;
// `len` must be valid for writes.
enum GeStatus ge_matrix_singular_values(const struct GeMatrix *m,
                                        double *values,
                                        size_t capacity,
                                        size_t *len);

// Evaluates every bound against the energy and writes the report as JSON.
// `certified` (optional) receives whether no bound was violated by more
// than `tolerance`.
//
// # Safety
// `m` must be a live handle; `json` must be valid for writes; `certified`
// must be NULL or valid for writes.
enum GeStatus ge_matrix_certify_json(const struct GeMatrix *m,
                                     double tolerance,
                                     char **json,
                                     bool *certified);

// Builds a graph on `order` vertices from `edge_count` pairs stored
// consecutively in `edges`.
//
// # Safety
// `edges` must point to `2 * edge_count` values (or be NULL when
// `edge_count` is 0); `out` must be valid for writes.
enum GeStatus ge_graph_new(size_t order,
                           const size_t *edges,
                           size_t edge_count,
                           struct GeGraph **out);

// Parses an edge list: the vertex count, then one `u v` pair per line.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be valid for writes.
enum GeStatus ge_graph_parse(const char *text, struct GeGraph **out);

// Builds a named family member such as `complete:5`, `cycle:8` or
// `petersen`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be valid for writes.
enum GeStatus ge_graph_family(const char *spec, struct GeGraph **out);

// Samples `G(n, 1/2)` from `seed`; identical to the Monte Carlo trials.
//
// # Safety
// `out` must be valid for writes.
enum GeStatus ge_graph_sample_gnp_half(size_t n, uint64_t seed, struct GeGraph **out);

// Frees a graph. NULL is ignored.
//
// # Safety
// `g` must be NULL or a live handle from this library.
void ge_graph_free(struct GeGraph *g);

// Writes the vertex and edge counts.
//
// # Safety
// `g` must be a live handle; `order` and `size` must be valid for writes.
enum GeStatus ge_graph_counts(const struct GeGraph *g, size_t *order, size_t *size);

// Sum of the absolute adjacency eigenvalues.
//
// # Safety
// `g` must be a live handle; `out` must be valid for writes.
enum GeStatus ge_graph_energy(const struct GeGraph *g, double *out);

// Adjacency matrix as a new matrix handle.
//
// # Safety
// `g` must be a live handle; `out` must be valid for writes.
enum GeStatus ge_graph_adjacency(const struct GeGraph *g, struct GeMatrix **out);

// Edge list in the format accepted by [`ge_graph_parse`].
//
// # Safety
// `g` must be a live handle; `out` must be valid for writes.
enum GeStatus ge_graph_edge_list(const struct GeGraph *g, char **out);

// Spectral histogram of the eigenvalues scaled by `1/sqrt(n)`, as JSON with
// `bin_edges`, `masses`, `reference_masses` and `l1_distance`.
//
// # Safety
// `g` must be a live handle; `out` must be valid for writes.
enum GeStatus ge_graph_histogram_json(const struct GeGraph *g, size_t bins, char **out);

// Monte Carlo statistics of `trials` samples of `G(n, 1/2)`, as JSON.
//
// # Safety
// `out` must be valid for writes.
enum GeStatus ge_montecarlo_json(size_t n, size_t trials, uint64_t seed, char **out);

// `integral of |x| times the semicircle density`, by Simpson quadrature.
double ge_semicircle_energy_constant(void);

// Searches for a maximum-energy graph on `n` vertices and writes the result
// as JSON. `iterations = 0` enumerates every graph (n <= 6); otherwise a
// seeded local search spends at most `iterations` energy evaluations.
//
// # Safety
// `out` must be valid for writes.
enum GeStatus ge_search_json(size_t n, uint64_t seed, uint64_t iterations, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPH_ENERGY_H */

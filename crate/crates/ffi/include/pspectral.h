#ifndef PSPECTRAL_H
#define PSPECTRAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Which extremum to compute.
typedef enum PsKind {
  PS_KIND_MAX = 0,
  PS_KIND_MIN = 1,
} PsKind;

// Status codes returned by every fallible function.
typedef enum PsStatus {
  PS_STATUS_OK = 0,
  PS_STATUS_NULL_POINTER = 1,
  PS_STATUS_INVALID_ARGUMENT = 2,
  PS_STATUS_EMPTY_OR_ZERO_WEIGHT = 3,
  PS_STATUS_BAD_EDGE = 4,
  PS_STATUS_DUPLICATE_EDGE = 5,
  PS_STATUS_DIMENSION_MISMATCH = 6,
  PS_STATUS_BAD_P = 7,
  PS_STATUS_NOT_PARTITE = 8,
  PS_STATUS_BAD_ARITY = 9,
  PS_STATUS_BAD_ORDER = 10,
  PS_STATUS_BAD_DENSITY = 11,
  PS_STATUS_ZERO_VECTOR = 12,
  PS_STATUS_NON_FINITE = 13,
  PS_STATUS_WRONG_ARITY = 14,
  PS_STATUS_TOO_LARGE = 15,
  PS_STATUS_THEOREM_INAPPLICABLE = 16,
  PS_STATUS_CONVERGENCE_SUSPECT = 17,
  PS_STATUS_PARSE = 18,
  PS_STATUS_IO = 19,
  PS_STATUS_PANIC = 20,
} PsStatus;

// Opaque solver result.
typedef struct PsEstimate PsEstimate;

// Opaque weighted hypergraph.
typedef struct PsHypergraph PsHypergraph;

// Solver settings; obtain defaults from [`ps_solver_config_default`].
typedef struct PsSolverConfig {
  double p;
  size_t restarts;
  size_t max_iters;
  double grad_tol;
  uint64_t seed;
  double step_initial;
  double step_shrink;
  double armijo;
} PsSolverConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len`). Returns the full message length in bytes, excluding
// the terminator.
//
// # Safety
// `buf` must be null or point to at least `len` writable bytes.
size_t ps_last_error_message(char *buf, size_t len);

// Builds a hypergraph from `m` edges of `r` 1-based vertices each
// (`vertices` has `m * r` entries, edge-major) and `m` weights.
//
// # Safety
// `vertices` and `weights` must point to arrays of the stated lengths;
// `out` must be a valid pointer.
enum PsStatus ps_hypergraph_new(size_t n,
                                size_t r,
                                size_t m,
                                const size_t *vertices,
                                const double *weights,
                                struct PsHypergraph **out);

// Reads a hypergraph in the text or JSON format.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be a valid pointer.
enum PsStatus ps_hypergraph_read(const char *path, struct PsHypergraph **out);

// The complete r-graph on `k` vertices.
//
// # Safety
// `out` must be a valid pointer.
enum PsStatus ps_hypergraph_complete(size_t k, size_t r, struct PsHypergraph **out);

// Complete regular k-partite r-graph with parts of size `t`. When
// `part_of` is non-null it receives the 1-based part of each of the
// `k * t` vertices.
//
// # Safety
// `out` must be a valid pointer; `part_of` must be null or point to `k * t`
// writable entries.
enum PsStatus ps_hypergraph_blowup(size_t k,
                                   size_t r,
                                   size_t t,
                                   struct PsHypergraph **out,
                                   size_t *part_of);

// The 2-chromatic 4-graph on `2n` vertices.
//
// # Safety
// `out` must be a valid pointer.
enum PsStatus ps_hypergraph_counterexample(size_t n, struct PsHypergraph **out);

// # Safety
// `h` must be null or a handle from this library not yet freed.
void ps_hypergraph_free(struct PsHypergraph *h);

// Vertex count, or 0 for a null handle.
//
// # Safety
// `h` must be null or a live handle.
size_t ps_hypergraph_vertex_count(const struct PsHypergraph *h);

// Uniformity r, or 0 for a null handle.
//
// # Safety
// `h` must be null or a live handle.
size_t ps_hypergraph_uniformity(const struct PsHypergraph *h);

// Edge count, or 0 for a null handle.
//
// # Safety
// `h` must be null or a live handle.
size_t ps_hypergraph_edge_count(const struct PsHypergraph *h);

// Value of the polynomial form at `x` (length `len`).
//
// # Safety
// `h` must be a live handle, `x` must hold `len` values and `out` must be
// valid.
enum PsStatus ps_evaluate(const struct PsHypergraph *h, const double *x, size_t len, double *out);

// Gradient of the polynomial form at `x`, written to `grad` (length `len`).
//
// # Safety
// `x` and `grad` must each hold `len` values.
enum PsStatus ps_gradient(const struct PsHypergraph *h, const double *x, size_t len, double *grad);

// l^p norm of `x`.
//
// # Safety
// `x` must hold `len` values and `out` must be valid.
enum PsStatus ps_lp_norm(const double *x, size_t len, double p, double *out);

// Default solver settings for exponent `p`.
struct PsSolverConfig ps_solver_config_default(double p);

// Estimates the maximum or minimum of the form on the unit l^p sphere.
//
// # Safety
// `h` must be a live handle, `cfg` a valid pointer and `out` valid.
enum PsStatus ps_solve(const struct PsHypergraph *h,
                       const struct PsSolverConfig *cfg,
                       enum PsKind kind,
                       struct PsEstimate **out);

// Extreme adjacency eigenvalues of a 2-graph.
//
// # Safety
// `h` must be a live handle; `max` and `min` must be valid.
enum PsStatus ps_graph_eigen(const struct PsHypergraph *h, double *max, double *min);

// Closed-form maximum of the complete r-graph on `k` vertices.
//
// # Safety
// `out` must be valid.
enum PsStatus ps_kkr_lambda_max(size_t k, size_t r, double p, double *out);

// Estimated value, or NaN for a null handle.
//
// # Safety
// `e` must be null or a live handle.
double ps_estimate_value(const struct PsEstimate *e);

// Length of the witness vector, or 0 for a null handle.
//
// # Safety
// `e` must be null or a live handle.
size_t ps_estimate_dimension(const struct PsEstimate *e);

// Number of restarts that met the convergence tolerance.
//
// # Safety
// `e` must be null or a live handle.
size_t ps_estimate_restarts_converged(const struct PsEstimate *e);

// Copies the witness into `buf`, which must hold exactly the estimate's
// dimension.
//
// # Safety
// `e` must be a live handle and `buf` must hold `len` writable values.
enum PsStatus ps_estimate_witness(const struct PsEstimate *e, double *buf, size_t len);

// # Safety
// `e` must be null or a handle from this library not yet freed.
void ps_estimate_free(struct PsEstimate *e);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PSPECTRAL_H */

#ifndef JORDAN_GFT_H
#define JORDAN_GFT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum JgftStatus {
  JGFT_STATUS_OK = 0,
  JGFT_STATUS_NULL_POINTER = 1,
  JGFT_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Malformed input file or text.
   */
  JGFT_STATUS_PARSE = 3,
  JGFT_STATUS_IO = 4,
  /**
   * Eigenvalue or normalization problems.
   */
  JGFT_STATUS_SPECTRUM = 5,
  /**
   * Chain construction or any other numerical failure.
   */
  JGFT_STATUS_NUMERICAL = 6,
  JGFT_STATUS_PANIC = 7,
} JgftStatus;

/**
 * Decomposition, GFT and TV of one graph and optional signal.
 */
typedef struct JgftAnalysis JgftAnalysis;

/**
 * A graph on `n` nodes.
 */
typedef struct JgftGraph JgftGraph;

/**
 * One Jordan subspace of an analysis. Energy fields are NaN without a
 * signal.
 */
typedef struct JgftSubspace {
  size_t eigen;
  size_t chain;
  size_t dim;
  double lambda_re;
  double lambda_im;
  double energy_re;
  double energy_im;
  double tv;
  double tv_bound;
} JgftSubspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *jgft_last_error_message(void);

/**
 * Builds a graph from a dense row-major `n × n` adjacency. `im` may be null
 * for a real matrix.
 *
 * # Safety
 * `re` (and `im` unless null) must point to `n * n` doubles; `out` must be
 * writable.
 */
enum JgftStatus jgft_graph_from_dense(const double *re,
                                      const double *im,
                                      size_t n,
                                      struct JgftGraph **out);

/**
 * Loads a graph from a Matrix Market (`.mtx`) or edge-list CSV file.
 * `node_count` of 0 means the largest node id.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum JgftStatus jgft_graph_load(const char *path, size_t node_count, struct JgftGraph **out);

/**
 * # Safety
 * `graph` must be null or a handle from this library not yet freed.
 */
void jgft_graph_free(struct JgftGraph *graph);

/**
 * Number of nodes, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t jgft_graph_node_count(const struct JgftGraph *graph);

/**
 * Decomposes the graph and, when `signal_len > 0`, computes the GFT of the
 * signal. Tolerances of 0 select the defaults.
 *
 * # Safety
 * `graph` must be a live handle; `signal_re` (and `signal_im` unless null)
 * must point to `signal_len` doubles when `signal_len > 0`; `out` must be
 * writable.
 */
enum JgftStatus jgft_analyze(const struct JgftGraph *graph,
                             const double *signal_re,
                             const double *signal_im,
                             size_t signal_len,
                             double eps_zero,
                             double eps_cluster,
                             struct JgftAnalysis **out);

/**
 * # Safety
 * `analysis` must be null or a handle from this library not yet freed.
 */
void jgft_analysis_free(struct JgftAnalysis *analysis);

/**
 * Number of Jordan subspaces, or 0 for a null handle.
 *
 * # Safety
 * `analysis` must be null or a live handle.
 */
size_t jgft_analysis_subspace_count(const struct JgftAnalysis *analysis);

/**
 * Describes subspace `k` in basis order.
 *
 * # Safety
 * `analysis` must be a live handle and `out` writable.
 */
enum JgftStatus jgft_analysis_subspace(const struct JgftAnalysis *analysis,
                                       size_t k,
                                       struct JgftSubspace *out);

/**
 * Copies the spectral component of the signal on subspace `k` into
 * `re[0..len]` and, unless null, `im[0..len]`. `len` must equal the node
 * count.
 *
 * # Safety
 * `analysis` must be a live handle; `re` (and `im` unless null) must have
 * room for `len` doubles.
 */
enum JgftStatus jgft_analysis_component(const struct JgftAnalysis *analysis,
                                        size_t k,
                                        double *re,
                                        double *im,
                                        size_t len);

/**
 * Full JSON report. Release the string with [`jgft_string_free`].
 *
 * # Safety
 * `analysis` must be a live handle and `out` writable.
 */
enum JgftStatus jgft_analysis_report_json(const struct JgftAnalysis *analysis,
                                          double check_tolerance,
                                          char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void jgft_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JORDAN_GFT_H */

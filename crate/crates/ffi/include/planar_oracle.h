#ifndef PLANAR_ORACLE_H
#define PLANAR_ORACLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum PoStatus {
  PO_STATUS_OK = 0,
  PO_STATUS_NULL_ARGUMENT = 1,
  PO_STATUS_INVALID_ARGUMENT = 2,
  PO_STATUS_IO = 3,
  PO_STATUS_PARSE = 4,
  PO_STATUS_FORMAT = 5,
  PO_STATUS_BUILD_FAILED = 6,
  PO_STATUS_OUT_OF_RANGE = 7,
  PO_STATUS_PANIC = 8,
} PoStatus;

/**
 * Opaque graph handle.
 */
typedef struct PoGraph PoGraph;

/**
 * Opaque oracle handle.
 */
typedef struct PoOracle PoOracle;

/**
 * A path weight: primary length, then tiebreak. Unreachable is both
 * fields set to `UINT64_MAX`.
 */
typedef struct PoWeight {
  uint64_t len;
  uint64_t tie;
} PoWeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next `po_*` call on the same thread.
 */
const char *po_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *po_version(void);

/**
 * Reads a graph file (text or JSON format).
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PoStatus po_graph_read(const char *path, struct PoGraph **out);

/**
 * Parses a graph from text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PoStatus po_graph_parse(const char *text, struct PoGraph **out);

/**
 * Generates a normalized, perturbed grid instance.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PoStatus po_graph_generate_grid(size_t rows, size_t cols, uint64_t seed, struct PoGraph **out);

/**
 * Generates a normalized, perturbed random triangulation.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PoStatus po_graph_generate_triangulation(size_t points,
                                              size_t hull,
                                              uint64_t seed,
                                              struct PoGraph **out);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t po_graph_vertex_count(const struct PoGraph *g);

/**
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void po_graph_free(struct PoGraph *g);

/**
 * Builds an oracle with regions of about `r` faces. The graph handle stays
 * owned by the caller.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
enum PoStatus po_oracle_build(const struct PoGraph *g, size_t r, struct PoOracle **out);

/**
 * Writes the oracle to directory `dir`.
 *
 * # Safety
 * `o` must be a live oracle handle and `dir` a NUL-terminated string.
 */
enum PoStatus po_oracle_save(const struct PoOracle *o, const char *dir);

/**
 * Loads an oracle written by [`po_oracle_save`] or the CLI.
 *
 * # Safety
 * `dir` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PoStatus po_oracle_load(const char *dir, struct PoOracle **out);

/**
 * Number of vertices of the oracle's graph, or 0 for a null handle.
 *
 * # Safety
 * `o` must be null or a live oracle handle.
 */
size_t po_oracle_vertex_count(const struct PoOracle *o);

/**
 * Exact distance from `u` to `v`.
 *
 * # Safety
 * `o` must be a live oracle handle and `out` a valid pointer.
 */
enum PoStatus po_oracle_query(const struct PoOracle *o,
                              uint32_t u,
                              uint32_t v,
                              struct PoWeight *out);

/**
 * # Safety
 * `o` must be null or a handle not yet freed.
 */
void po_oracle_free(struct PoOracle *o);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLANAR_ORACLE_H */

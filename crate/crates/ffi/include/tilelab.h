#ifndef TILELAB_H
#define TILELAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TlStatus {
  TL_STATUS_OK = 0,
  TL_STATUS_NULL_POINTER = 1,
  TL_STATUS_INVALID_ARGUMENT = 2,
  TL_STATUS_PARSE = 3,
  TL_STATUS_IO = 4,
  /**
   * A panic was caught at the boundary.
   */
  TL_STATUS_INTERNAL = 5,
} TlStatus;

/**
 * Opaque simple graph.
 */
typedef struct TlGraph TlGraph;

/**
 * Opaque template graph with its density profile.
 */
typedef struct TlPattern TlPattern;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *tl_last_error(void);

/**
 * Graph on `n` vertices from `edge_count` pairs stored flat in `edges`
 * (`2 * edge_count` entries). `edges` may be null when `edge_count` is 0.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable `u32`s; `out` must be writable.
 */
enum TlStatus tl_graph_from_edges(size_t n,
                                  const uint32_t *edges,
                                  size_t edge_count,
                                  struct TlGraph **out);

/**
 * Parses an edge list (vertex count, then one `u v` pair per line) or a
 * graph6 string.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum TlStatus tl_graph_parse(const char *text, struct TlGraph **out);

/**
 * # Safety
 * `graph` must come from this library and not be freed twice. Null is a no-op.
 */
void tl_graph_free(struct TlGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum TlStatus tl_graph_vertex_count(const struct TlGraph *graph, size_t *out);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum TlStatus tl_graph_edge_count(const struct TlGraph *graph, size_t *out);

/**
 * Zero for the empty graph on no vertices.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum TlStatus tl_graph_min_degree(const struct TlGraph *graph, size_t *out);

/**
 * graph6 encoding, released with [`tl_string_free`].
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum TlStatus tl_graph_to_graph6(const struct TlGraph *graph, char **out);

/**
 * Samples `G(n, p)`; equal seeds give equal graphs.
 *
 * # Safety
 * `out` must be writable.
 */
enum TlStatus tl_sample_gnp(size_t n, double p, uint64_t seed, struct TlGraph **out);

/**
 * Template from a spec such as `k3`, `c4`, `p3`, `k13` or `file:PATH`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum TlStatus tl_pattern_from_spec(const char *spec, struct TlPattern **out);

/**
 * # Safety
 * `pattern` must come from this library and not be freed twice. Null is a no-op.
 */
void tl_pattern_free(struct TlPattern *pattern);

/**
 * Density profile as JSON, released with [`tl_string_free`].
 *
 * # Safety
 * `pattern` must be a live handle; `out` must be writable.
 */
enum TlStatus tl_classify_json(const struct TlPattern *pattern, char **out);

/**
 * Perfect tiling search with a node budget. The JSON object has `status`
 * (`found`, `none_exists` or `unknown`), `nodes_explored` and, when found,
 * `copies` as vertex lists. Released with [`tl_string_free`].
 *
 * # Safety
 * `graph` and `pattern` must be live handles; `out` must be writable.
 */
enum TlStatus tl_tile_json(const struct TlGraph *graph,
                           const struct TlPattern *pattern,
                           uint64_t budget,
                           uint64_t seed,
                           char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is a no-op.
 */
void tl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TILELAB_H */

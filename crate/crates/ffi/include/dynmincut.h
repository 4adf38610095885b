#ifndef DYNMINCUT_H
#define DYNMINCUT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DmcStatus {
  DMC_STATUS_OK = 0,
  DMC_STATUS_NULL_POINTER = 1,
  /**
   * Self-loop, zero weight or vertex out of range.
   */
  DMC_STATUS_INVALID_ARGUMENT = 2,
  DMC_STATUS_MISSING_EDGE = 3,
  /**
   * The output buffer is too short; the required length was written.
   */
  DMC_STATUS_BUFFER_TOO_SMALL = 4,
  /**
   * A bug inside the library; the handle should be discarded.
   */
  DMC_STATUS_INTERNAL = 5,
} DmcStatus;

/**
 * Opaque dynamic minimum cut instance.
 */
typedef struct DmcHandle DmcHandle;

typedef struct DmcConfig {
  size_t gamma;
  double delta;
  uint64_t seed;
} DmcConfig;

typedef struct DmcStats {
  uint64_t insertions;
  uint64_t deletions;
  uint64_t separated_insertions;
  uint64_t flow_calls;
  uint64_t early_terminations;
  uint64_t exact_results;
  uint64_t full_recomputes;
  uint64_t uv_rebuilds;
  uint64_t cache_restores;
} DmcStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Default tuning: gamma 1, delta 2.
 */
struct DmcConfig dmc_default_config(void);

/**
 * Creates an instance over `n` isolated vertices. `config` may be null.
 */
enum DmcStatus dmc_new(size_t n, const struct DmcConfig *config, struct DmcHandle **out);

/**
 * Creates an instance from `m` weighted edges given as three parallel
 * arrays. Repeated pairs accumulate weight. `config` may be null.
 */
enum DmcStatus dmc_from_edges(size_t n,
                              const size_t *us,
                              const size_t *vs,
                              const uint64_t *ws,
                              size_t m,
                              const struct DmcConfig *config,
                              struct DmcHandle **out);

/**
 * Releases a handle. Null is ignored.
 */
void dmc_free(struct DmcHandle *handle);

/**
 * Inserts edge (u, v) with weight `w`, adding to an existing edge.
 */
enum DmcStatus dmc_insert(struct DmcHandle *handle, size_t u, size_t v, uint64_t w);

/**
 * Deletes edge (u, v) entirely.
 */
enum DmcStatus dmc_delete(struct DmcHandle *handle, size_t u, size_t v);

/**
 * Writes the current minimum cut weight.
 */
enum DmcStatus dmc_lambda(const struct DmcHandle *handle, uint64_t *out);

/**
 * Writes one side of a minimum cut into `buf` (capacity `cap`) and its
 * length into `len`. Call with `cap = 0` to query the length. An empty side
 * means the graph has fewer than two vertices.
 */
enum DmcStatus dmc_current_cut(const struct DmcHandle *handle,
                               size_t *buf,
                               size_t cap,
                               size_t *len);

/**
 * Like `dmc_current_cut` for the most balanced represented minimum cut.
 */
enum DmcStatus dmc_most_balanced(const struct DmcHandle *handle,
                                 size_t *buf,
                                 size_t cap,
                                 size_t *len);

enum DmcStatus dmc_stats(const struct DmcHandle *handle, struct DmcStats *out);

/**
 * Static, NUL-terminated description of a status code.
 */
const char *dmc_status_message(enum DmcStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DYNMINCUT_H */

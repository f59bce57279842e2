#ifndef SECUREWSN_H
#define SECUREWSN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define SWSN_REGION_TORUS 0

#define SWSN_REGION_SQUARE 1

#define SWSN_BRANCH_NONE -1

#define SWSN_BRANCH_DENSE 0

#define SWSN_BRANCH_SPARSE 1

/*
 Result of every fallible call.
 */
enum SwsnStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  SWSN_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  SWSN_STATUS_NULL_ARGUMENT = 1,
  /*
   An input lies outside the domain of the requested quantity.
   */
  SWSN_STATUS_DOMAIN = 2,
  /*
   Numerical integration missed its tolerance.
   */
  SWSN_STATUS_QUADRATURE = 3,
  /*
   Reading or writing a file failed.
   */
  SWSN_STATUS_IO = 4,
  /*
   A string argument was not valid UTF-8.
   */
  SWSN_STATUS_INVALID_UTF8 = 5,
  /*
   An output buffer was too small; the required size was still reported.
   */
  SWSN_STATUS_BUFFER_TOO_SMALL = 6,
  /*
   A Rust panic was caught at the boundary.
   */
  SWSN_STATUS_INTERNAL = 7,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum SwsnStatus SwsnStatus;
#else
typedef int32_t SwsnStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/*
 One sampled realisation of the secure network.
 */
typedef struct SwsnNetwork SwsnNetwork;

/*
 Validated network parameters.
 */
typedef struct SwsnParams SwsnParams;

/*
 Aggregated sweep over a grid of radii.
 */
typedef struct SwsnSweep SwsnSweep;

typedef struct SwsnGraphStats {
  size_t node_count;
  size_t edge_count;
  size_t component_count;
  size_t isolated_count;
  size_t min_degree;
  bool is_connected;
} SwsnGraphStats;

typedef struct SwsnSweepConfig {
  uint32_t n;
  uint32_t ring_size;
  uint32_t pool_size;
  /*
   `SWSN_REGION_*`.
   */
  uint32_t region;
  double r_min;
  double r_max;
  uint32_t r_steps;
  uint32_t trials;
  uint64_t seed;
  /*
   Reuse one realisation per trial across all radii.
   */
  bool coupled;
  /*
   Negative for key-ring links; otherwise each geometric pair is kept
   with this probability instead.
   */
  double edge_probability;
} SwsnSweepConfig;

typedef struct SwsnSweepRow {
  double r;
  uint32_t trials;
  uint32_t connected_count;
  double connected_frac;
  double mean_isolated;
  double mean_edges;
  double mean_components;
} SwsnSweepRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or null if none.
 The pointer stays valid until the next failing call on the same thread.
 */
const char *swsn_last_error(void);

/*
 Release a string returned by this library. Null is ignored.

 # Safety
 `s` must be null or a string from this library not yet freed.
 */
void swsn_string_free(char *s);

/*
 Probability that two key rings of size `ring_size` drawn from `pool_size`
 keys share at least one key.

 # Safety
 `out` must be valid for a write.
 */
SwsnStatus swsn_key_share_probability(uint32_t ring_size, uint32_t pool_size, double *out);

/*
 Critical transmission range. `out_branch` may be null; it receives a
 `SWSN_BRANCH_*` code (`SWSN_BRANCH_NONE` on the torus).

 # Safety
 `out_radius` must be valid for a write; `out_branch` must be null or valid.
 */
SwsnStatus swsn_critical_range(uint64_t n,
                               uint32_t ring_size,
                               uint32_t pool_size,
                               uint32_t region_code,
                               double *out_radius,
                               int32_t *out_branch);

/*
 Limit of the connectivity phase boundary for exponent `a` in `[0, 1]`.

 # Safety
 `out` must be valid for a write.
 */
SwsnStatus swsn_phase_transition_limit(double a, double *out);

/*
 Erdős–Rényi coupling parameters. `out_all_hold` reports whether every
 validity check passes at this `n`; it may be null.

 # Safety
 `out_p_n` and `out_s_n` must be valid for writes; `out_all_hold` must be
 null or valid.
 */
SwsnStatus swsn_coupling(uint64_t n,
                         uint32_t ring_size,
                         uint32_t pool_size,
                         double *out_p_n,
                         double *out_s_n,
                         bool *out_all_hold);

/*
 Text report for one parameter set with default condition constants.
 Pass NaN as `radius` to evaluate at the critical range. The string must
 be released with [`swsn_string_free`].

 # Safety
 `out` must be valid for a write.
 */
SwsnStatus swsn_report(uint64_t n,
                       uint32_t ring_size,
                       uint32_t pool_size,
                       uint32_t region_code,
                       double radius,
                       char **out);

/*
 # Safety
 `out` must be valid for a write.
 */
SwsnStatus swsn_params_new(uint32_t n,
                           uint32_t ring_size,
                           uint32_t pool_size,
                           double radius,
                           uint32_t region_code,
                           struct SwsnParams **out);

/*
 # Safety
 `params` must be null or a handle from [`swsn_params_new`] not yet freed.
 */
void swsn_params_free(struct SwsnParams *params);

/*
 Deviation `alpha` of the radius from the critical scaling.

 # Safety
 `params` must be a live handle; `out_alpha` must be valid for a write;
 `out_branch` must be null or valid.
 */
SwsnStatus swsn_alpha_from_radius(const struct SwsnParams *params,
                                  double *out_alpha,
                                  int32_t *out_branch);

/*
 Probability that a node is isolated when the other nodes form a Poisson
 process of intensity `n`.

 # Safety
 `params` must be a live handle; `out` must be valid for a write.
 */
SwsnStatus swsn_isolated_probability(const struct SwsnParams *params, double *out);

/*
 Joint isolation of two nodes on the torus and its ratio to independence.
 Any of the out-pointers may be null except `out_epsilon`.

 # Safety
 `params` must be a live handle; out-pointers must be null or valid.
 */
SwsnStatus swsn_pair_isolation(const struct SwsnParams *params,
                               double *out_joint,
                               double *out_independent,
                               double *out_epsilon);

/*
 # Safety
 `params` must be a live handle; `out` must be valid for a write.
 */
SwsnStatus swsn_network_sample(const struct SwsnParams *params,
                               uint64_t seed,
                               struct SwsnNetwork **out);

/*
 # Safety
 `network` must be null or a handle from [`swsn_network_sample`] not yet
 freed.
 */
void swsn_network_free(struct SwsnNetwork *network);

/*
 # Safety
 `network` must be a live handle; `out` must be valid for a write.
 */
SwsnStatus swsn_network_stats(const struct SwsnNetwork *network, struct SwsnGraphStats *out);

/*
 Copy the edges as consecutive `(a, b)` pairs into `buffer`, which holds
 `capacity` integers. `out_len` always receives the number of integers
 needed; if it exceeds `capacity` nothing is copied and
 `BufferTooSmall` is returned. `buffer` may be null when `capacity` is 0.

 # Safety
 `network` must be a live handle; `buffer` must be valid for `capacity`
 writes; `out_len` must be valid for a write.
 */
SwsnStatus swsn_network_edges(const struct SwsnNetwork *network,
                              uint32_t *buffer,
                              size_t capacity,
                              size_t *out_len);

/*
 # Safety
 `config` must point to a valid configuration; `out` must be valid for a
 write.
 */
SwsnStatus swsn_sweep_run(const struct SwsnSweepConfig *config, struct SwsnSweep **out);

/*
 # Safety
 `sweep` must be null or a handle from [`swsn_sweep_run`] not yet freed.
 */
void swsn_sweep_free(struct SwsnSweep *sweep);

/*
 Number of rows, or 0 for a null handle.

 # Safety
 `sweep` must be null or a live handle.
 */
size_t swsn_sweep_len(const struct SwsnSweep *sweep);

/*
 # Safety
 `sweep` must be a live handle; `out` must be valid for a write.
 */
SwsnStatus swsn_sweep_row(const struct SwsnSweep *sweep, size_t index, struct SwsnSweepRow *out);

/*
 Write the sweep as CSV to the UTF-8 path `path`.

 # Safety
 `sweep` must be a live handle; `path` must be a nul-terminated string.
 */
SwsnStatus swsn_sweep_write_csv(const struct SwsnSweep *sweep, const char *path);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SECUREWSN_H */

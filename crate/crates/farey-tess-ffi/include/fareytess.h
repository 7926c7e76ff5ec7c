/* C interface to the farey-tess exact Farey-valence engine. */

#ifndef FAREYTESS_H
#define FAREYTESS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Emptiness classification of a tile region.
 */
typedef enum FtRegionStatus {
  FtRegionStatus_NonemptyWithInterior = 0,
  FtRegionStatus_DegenerateNonempty = 1,
  FtRegionStatus_DegenerateEmpty = 2,
  FtRegionStatus_Empty = 3,
} FtRegionStatus;

/**
 * Result code of a fallible call.
 */
typedef enum FtStatus {
  /**
   * The call succeeded.
   */
  FtStatus_Ok = 0,
  /**
   * A required pointer argument was NULL.
   */
  FtStatus_NullPointer = 1,
  /**
   * An argument was out of range (zero valence, zero length, ...).
   */
  FtStatus_InvalidArgument = 2,
  /**
   * The search finished without finding the requested object.
   */
  FtStatus_NotFound = 3,
  /**
   * An internal computation exceeded its resource budget.
   */
  FtStatus_BudgetExceeded = 4,
} FtStatus;

/**
 * Opaque tile handle.
 */
typedef struct FtTile FtTile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Free a string allocated by this library. NULL is ignored.
 *
 * # Safety
 * `s` must have been returned by a `ft_*` function of this library and
 * not freed before.
 */
void ft_string_free(char *s);

/**
 * Evaluate the recurrence polynomial on an integer tuple and return its
 * value as a decimal string (arbitrary precision). The empty tuple is
 * allowed and yields "1". Returns NULL only if `values` is NULL with a
 * nonzero `len`.
 *
 * # Safety
 * When `len > 0`, `values` must point to `len` readable `int64_t`s.
 */
char *ft_eval_p(const int64_t *values, uintptr_t len);

/**
 * Decide admissibility of a chain geometrically (exact arithmetic).
 *
 * # Safety
 * `values` must point to `len` readable `uint64_t`s; `out_admissible`
 * must be writable.
 */
enum FtStatus ft_chain_is_admissible(const uint64_t *values, uintptr_t len, bool *out_admissible);

/**
 * Count admissible chains of length `r` with norm at most `cap`;
 * `out_delta` receives `count - r*cap`.
 *
 * # Safety
 * `out_count` and `out_delta` must be writable.
 */
enum FtStatus ft_count_chains(uintptr_t r, uint64_t cap, uint64_t *out_count, int64_t *out_delta);

/**
 * Compute the stabilization constant C(r) and the least cap it holds from.
 *
 * # Safety
 * `out_c` and `out_stabilized_at` must be writable.
 */
enum FtStatus ft_compute_c(uintptr_t r,
                           uint64_t confirm_window,
                           int64_t *out_c,
                           uint64_t *out_stabilized_at);

/**
 * Search Farey sequences of order 1..=q_max for a window generating the
 * chain. On success writes the witness order and its germ pair; returns
 * `NotFound` when no window exists below the bound (which is not a
 * proof of inadmissibility).
 *
 * # Safety
 * `values` must point to `len` readable `uint64_t`s; the out-pointers
 * must be writable.
 */
enum FtStatus ft_oracle_witness(const uint64_t *values,
                                uintptr_t len,
                                uint64_t q_max,
                                uint64_t *out_q,
                                uint64_t *out_q0,
                                uint64_t *out_q1);

/**
 * Run the floor iteration at the exact rational point
 * `(x_num/x_den, y_num/y_den)` and write the first `r` valences.
 *
 * # Safety
 * `out_values` must point to `r` writable `uint64_t`s.
 */
enum FtStatus ft_point_to_chain(int64_t x_num,
                                int64_t x_den,
                                int64_t y_num,
                                int64_t y_den,
                                uintptr_t r,
                                uint64_t *out_values);

/**
 * Build the tile of a chain. On success writes a heap handle that must
 * be released with `ft_tile_free`.
 *
 * # Safety
 * `values` must point to `len` readable `uint64_t`s; `out_tile` must be
 * writable.
 */
enum FtStatus ft_tile_new(const uint64_t *values, uintptr_t len, struct FtTile **out_tile);

/**
 * Release a tile handle. NULL is ignored.
 *
 * # Safety
 * `tile` must come from `ft_tile_new` and not be freed twice.
 */
void ft_tile_free(struct FtTile *tile);

/**
 * Emptiness status of a tile. A NULL handle reads as `Empty`.
 *
 * # Safety
 * `tile` must be NULL or a live handle from `ft_tile_new`.
 */
enum FtRegionStatus ft_tile_status(const struct FtTile *tile);

/**
 * Number of closure vertices of a tile (0 for NULL or empty tiles).
 *
 * # Safety
 * `tile` must be NULL or a live handle from `ft_tile_new`.
 */
uintptr_t ft_tile_vertex_count(const struct FtTile *tile);

/**
 * Fetch one closure vertex as a pair of reduced `num/den` strings
 * (release both with `ft_string_free`).
 *
 * # Safety
 * `tile` must be a live handle; `out_x` and `out_y` must be writable.
 */
enum FtStatus ft_tile_vertex(const struct FtTile *tile,
                             uintptr_t index,
                             char **out_x,
                             char **out_y);

/**
 * Render the order-`r` tessellation up to the norm cap as an SVG
 * document (release with `ft_string_free`). Returns NULL on invalid
 * arguments.
 */
char *ft_render_tessellation_svg(uintptr_t r, uint64_t cap, uint32_t viewport);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FAREYTESS_H */

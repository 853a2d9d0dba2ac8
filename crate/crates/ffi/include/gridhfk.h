#ifndef GRIDHFK_H
#define GRIDHFK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which Alexander gradings to compute directly.
 */
typedef enum GridHfkRange {
  /**
   * Gradings >= 0, the rest by symmetry. Faster.
   */
  GRID_HFK_RANGE_NON_NEGATIVE = 0,
  /**
   * Every grading.
   */
  GRID_HFK_RANGE_FULL = 1,
} GridHfkRange;

/**
 * Result codes. Zero means success.
 */
typedef enum GridHfkStatus {
  GRID_HFK_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  GRID_HFK_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  GRID_HFK_STATUS_INVALID_UTF8 = 2,
  /**
   * The grid text or arrays do not describe a valid grid diagram.
   */
  GRID_HFK_STATUS_INVALID_GRID = 3,
  /**
   * An internal consistency check failed during the computation.
   */
  GRID_HFK_STATUS_COMPUTE_FAILED = 4,
  /**
   * The requested value was not computed or is not determined.
   */
  GRID_HFK_STATUS_UNAVAILABLE = 5,
  /**
   * The library panicked. This is a bug.
   */
  GRID_HFK_STATUS_PANIC = 6,
} GridHfkStatus;

/**
 * An opaque grid diagram.
 */
typedef struct GridHfkGrid GridHfkGrid;

/**
 * The outcome of [`gridhfk_compute`].
 */
typedef struct GridHfkResult GridHfkResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or an empty
 * string.
 */
const char *gridhfk_last_error(void);

/**
 * Library version as a static string.
 */
const char *gridhfk_version(void);

/**
 * Parses a grid in the text format read by the command line tool.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GridHfkStatus gridhfk_grid_parse(const char *text, struct GridHfkGrid **out);

/**
 * Builds a grid from mark rows: `x_rows[c]` and `o_rows[c]` are the rows of
 * the X and O in column `c`, each an array of length `n`.
 *
 * # Safety
 * `x_rows` and `o_rows` must point to `n` readable values and `out` must be valid.
 */
enum GridHfkStatus gridhfk_grid_from_rows(size_t n,
                                          const uint32_t *x_rows,
                                          const uint32_t *o_rows,
                                          struct GridHfkGrid **out);

/**
 * Number of columns, or 0 for a null handle.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
size_t gridhfk_grid_size(const struct GridHfkGrid *grid);

/**
 * A new grid for the mirror knot.
 *
 * # Safety
 * `grid` must be a live handle and `out` a valid pointer.
 */
enum GridHfkStatus gridhfk_grid_mirror(const struct GridHfkGrid *grid, struct GridHfkGrid **out);

/**
 * # Safety
 * `grid` must be null or a handle not yet freed.
 */
void gridhfk_grid_free(struct GridHfkGrid *grid);

/**
 * Computes HFK and, when `spectral` is true, tau and the E2 page.
 *
 * # Safety
 * `grid` must be a live handle and `out` a valid pointer.
 */
enum GridHfkStatus gridhfk_compute(const struct GridHfkGrid *grid,
                                   enum GridHfkRange range,
                                   bool spectral,
                                   struct GridHfkResult **out);

/**
 * Dimension of HFK in Alexander grading `a` and Maslov grading `m`.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
uint64_t gridhfk_result_hfk_dim(const struct GridHfkResult *result, int32_t a, int32_t m);

/**
 * Dimension of the E2 page at `(a, m)`; 0 when it was not computed.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
uint64_t gridhfk_result_e2_dim(const struct GridHfkResult *result, int32_t a, int32_t m);

/**
 * Writes tau to `out`. Returns [`GridHfkStatus::Unavailable`] when tau was
 * not requested or is not determined by the E2 page.
 *
 * # Safety
 * `result` must be a live handle and `out` a valid pointer.
 */
enum GridHfkStatus gridhfk_result_tau(const struct GridHfkResult *result, int32_t *out);

/**
 * HFK as a polynomial string such as `t^{-1}+q+q^2t`.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
const char *gridhfk_result_hfk_string(const struct GridHfkResult *result);

/**
 * The E2 page as a polynomial string, or null when it was not computed.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
const char *gridhfk_result_e2_string(const struct GridHfkResult *result);

/**
 * The whole result as a JSON record in the fixture format.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
const char *gridhfk_result_json(const struct GridHfkResult *result);

/**
 * # Safety
 * `result` must be null or a handle not yet freed.
 */
void gridhfk_result_free(struct GridHfkResult *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRIDHFK_H */

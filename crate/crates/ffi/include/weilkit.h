#ifndef WEILKIT_H
#define WEILKIT_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point.
 */
typedef enum WkStatus {
  WK_STATUS_OK = 0,
  /**
   * A mathematical check failed or a requested object does not exist.
   */
  WK_STATUS_CHECK_FAILED = 1,
  /**
   * Malformed input: bad JSON, bad presentation, dimension mismatch.
   */
  WK_STATUS_INVALID_INPUT = 2,
  WK_STATUS_NULL_POINTER = 3,
  /**
   * Input was not valid UTF-8.
   */
  WK_STATUS_INVALID_UTF8 = 4,
  /**
   * The output buffer is too small; the required length was written.
   */
  WK_STATUS_BUFFER_TOO_SMALL = 5,
  WK_STATUS_INTERNAL = 6,
} WkStatus;

typedef struct WkBundle WkBundle;

typedef struct WkGroupoid WkGroupoid;

typedef struct WkLieAlgebra WkLieAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the message of the last failed call on this thread, or null.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *wk_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be freed twice.
 */
void wk_string_free(char *s);

/**
 * Runs the command-line interface in-process. `argv` excludes the program
 * name. The report is written to `*out` (release with `wk_string_free`) and
 * the process exit code the CLI would use to `*exit_code`.
 *
 * # Safety
 * `argv` must point to `argc` valid C strings; `out` and `exit_code` must be
 * valid for writes.
 */
enum WkStatus wk_run(size_t argc, const char *const *argv, char **out, int32_t *exit_code);

/**
 * Parses and validates a Lie algebra document (antisymmetry and Jacobi).
 *
 * # Safety
 * `json` must be a valid C string and `out` valid for writes.
 */
enum WkStatus wk_lie_algebra_from_json(const char *json, struct WkLieAlgebra **out);

/**
 * Dimension of the Lie algebra, or 0 for a null handle.
 *
 * # Safety
 * `lie` must be null or a live handle.
 */
size_t wk_lie_algebra_dim(const struct WkLieAlgebra *lie);

/**
 * Returns 1 if the bracket vanishes identically, 0 otherwise or for null.
 *
 * # Safety
 * `lie` must be null or a live handle.
 */
int32_t wk_lie_algebra_is_abelian(const struct WkLieAlgebra *lie);

/**
 * # Safety
 * `lie` must be null or a handle not yet freed.
 */
void wk_lie_algebra_free(struct WkLieAlgebra *lie);

/**
 * Parses and validates a finite groupoid document.
 *
 * # Safety
 * `json` must be a valid C string and `out` valid for writes.
 */
enum WkStatus wk_groupoid_from_json(const char *json, struct WkGroupoid **out);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t wk_groupoid_object_count(const struct WkGroupoid *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t wk_groupoid_arrow_count(const struct WkGroupoid *g);

/**
 * Writes dim H^k over the rationals for k = 0..len into `dims`.
 *
 * # Safety
 * `g` must be a live handle and `dims` valid for `len` writes.
 */
enum WkStatus wk_groupoid_cohomology(const struct WkGroupoid *g, size_t *dims, size_t len);

/**
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void wk_groupoid_free(struct WkGroupoid *g);

/**
 * Parses a bundle document and checks that the cocycle is a functor.
 *
 * # Safety
 * `json` must be a valid C string and `out` valid for writes.
 */
enum WkStatus wk_bundle_from_json(const char *json, struct WkBundle **out);

/**
 * Holonomy of the bundle at `object`: for each loop at the object, writes
 * the index of its holonomy in the structure group into `out`. `*count`
 * holds the buffer length on entry and the number of loops on return; if the
 * buffer is too short nothing is written and `BufferTooSmall` is returned.
 *
 * # Safety
 * `b` must be a live handle, `object` a valid C string, `count` valid for
 * reads and writes, and `out` valid for `*count` writes.
 */
enum WkStatus wk_bundle_holonomy(const struct WkBundle *b,
                                 const char *object,
                                 size_t *out,
                                 size_t *count);

/**
 * Name of the structure-group element with the given index, or null if out
 * of range. Release with `wk_string_free`.
 *
 * # Safety
 * `b` must be null or a live handle.
 */
char *wk_bundle_group_element(const struct WkBundle *b, size_t index);

/**
 * # Safety
 * `b` must be null or a handle not yet freed.
 */
void wk_bundle_free(struct WkBundle *b);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEILKIT_H */

#ifndef CIRCFIB_H
#define CIRCFIB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CfStatus {
  CF_STATUS_OK = 0,
  /*
   Malformed word, bad length, zero word, index out of range.
   */
  CF_STATUS_INVALID_INPUT = 1,
  /*
   A size bound was exceeded.
   */
  CF_STATUS_RESOURCE = 2,
  /*
   An internal consistency check failed.
   */
  CF_STATUS_CHECK_FAILED = 3,
  CF_STATUS_NULL_POINTER = 4,
  CF_STATUS_BUFFER_TOO_SMALL = 5,
  /*
   A Rust panic was caught.
   */
  CF_STATUS_PANIC = 6,
} CfStatus;

/*
 Opaque handle to an enumerated group.
 */
typedef struct CfGroup CfGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *cf_version(void);

/*
 Copies the calling thread's last error message into `buf` (truncated,
 always NUL-terminated when `cap > 0`). Returns the full message length
 plus one, or 0 when the last call succeeded.

 # Safety
 `buf` must be null or valid for `cap` bytes.
 */
size_t cf_last_error(char *buf, size_t cap);

/*
 Normal form of `word`.

 # Safety
 `word` must be a NUL-terminated string; `out` must be valid for `cap` bytes.
 */
enum CfStatus cf_reduce(const char *word, char *out, size_t cap);

/*
 Sum of two words of the same even length, in normal form.

 # Safety
 `u` and `v` must be NUL-terminated strings; `out` must be valid for `cap` bytes.
 */
enum CfStatus cf_add(const char *u, const char *v, char *out, size_t cap);

/*
 Inverse of `u`.

 # Safety
 `u` must be a NUL-terminated string; `out` must be valid for `cap` bytes.
 */
enum CfStatus cf_neg(const char *u, char *out, size_t cap);

/*
 `k` times `u`; negative `k` multiplies the inverse.

 # Safety
 `u` must be a NUL-terminated string; `out` must be valid for `cap` bytes.
 */
enum CfStatus cf_mul(int64_t k, const char *u, char *out, size_t cap);

/*
 Order of `u` in its group.

 # Safety
 `u` must be a NUL-terminated string; `out` must be valid.
 */
enum CfStatus cf_element_order(const char *u, uint64_t *out);

/*
 Number of spanning trees of the wheel with `ell` rim vertices.

 # Safety
 `out` must be valid.
 */
enum CfStatus cf_wheel_tree_count(size_t ell, uint64_t *out);

/*
 Enumerates the group of length `2 * ell`, refusing `ell > max_ell`.
 On success `*out` holds a handle to release with [`cf_group_free`].

 # Safety
 `out` must be valid.
 */
enum CfStatus cf_group_new(size_t ell, size_t max_ell, struct CfGroup **out);

/*
 Releases a handle from [`cf_group_new`]. Null is ignored.

 # Safety
 `g` must be null or a live handle not freed before.
 */
void cf_group_free(struct CfGroup *g);

/*
 # Safety
 `g` must be a live handle; `out` must be valid.
 */
enum CfStatus cf_group_order(const struct CfGroup *g, size_t *out);

/*
 Index of the identity element.

 # Safety
 `g` must be a live handle; `out` must be valid.
 */
enum CfStatus cf_group_identity(const struct CfGroup *g, size_t *out);

/*
 Word of element `i`; `out` needs `2 * ell + 1` bytes.

 # Safety
 `g` must be a live handle; `out` must be valid for `cap` bytes.
 */
enum CfStatus cf_group_element(const struct CfGroup *g, size_t i, char *out, size_t cap);

/*
 Index of an admissible word; either identity representative is accepted.

 # Safety
 `g` must be a live handle; `word` a NUL-terminated string; `out` valid.
 */
enum CfStatus cf_group_index_of(const struct CfGroup *g, const char *word, size_t *out);

/*
 Index of `elements[a] + elements[b]`.

 # Safety
 `g` must be a live handle; `out` must be valid.
 */
enum CfStatus cf_group_add(const struct CfGroup *g, size_t a, size_t b, size_t *out);

/*
 Index of `-elements[a]`.

 # Safety
 `g` must be a live handle; `out` must be valid.
 */
enum CfStatus cf_group_neg(const struct CfGroup *g, size_t a, size_t *out);

/*
 Invariant factors `(e1, e2)` with `e2 | e1`.

 # Safety
 `g` must be a live handle; `e1` and `e2` must be valid.
 */
enum CfStatus cf_group_invariant_factors(const struct CfGroup *g, uint64_t *e1, uint64_t *e2);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CIRCFIB_H */

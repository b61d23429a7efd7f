#ifndef MOTZKIN_FFI_H
#define MOTZKIN_FFI_H

/* Generated by cbindgen from the motzkin-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of a C-ABI call.
typedef enum MotzkinStatus {
  // The call succeeded.
  MOTZKIN_STATUS_OK = 0,
  // A required pointer argument was null.
  MOTZKIN_STATUS_NULL_ARGUMENT = 1,
  // The arguments do not describe a valid object; see
  // `motzkin_last_error`.
  MOTZKIN_STATUS_INVALID_ARGUMENT = 2,
  // The output buffer cannot hold the result; `written` holds the
  // required size in bytes, terminator included.
  MOTZKIN_STATUS_BUFFER_TOO_SMALL = 3,
} MotzkinStatus;

// Opaque pair of color tuples.
typedef struct MotzkinScheme MotzkinScheme;

// Opaque triangle of path counts.
typedef struct MotzkinTriangle MotzkinTriangle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a scheme from two color tuples of length `order`.
//
// On success stores a handle in `out`; release it with
// [`motzkin_scheme_free`].
//
// # Safety
//
// `alpha` and `beta` must point to `order` readable `uint64_t` values and
// `out` must be a valid pointer to a handle slot.
enum MotzkinStatus motzkin_scheme_new(const uint64_t *alpha,
                                      const uint64_t *beta,
                                      size_t order,
                                      struct MotzkinScheme **out);

// Builds the scheme whose triangle counts k-step paths allowed `depth`
// units below the axis.
//
// # Safety
//
// `out` must be a valid pointer to a handle slot.
enum MotzkinStatus motzkin_scheme_dyck(size_t k, size_t depth, struct MotzkinScheme **out);

// Builds the scheme whose triangle counts k-step paths of depth `depth`
// avoiding width-`r` return hills.
//
// # Safety
//
// `out` must be a valid pointer to a handle slot.
enum MotzkinStatus motzkin_scheme_fine(size_t k,
                                       size_t depth,
                                       size_t r,
                                       struct MotzkinScheme **out);

// The order of the scheme's color tuples, or 0 for a null handle.
//
// # Safety
//
// `scheme` must be null or a live handle from a `motzkin_scheme_*`
// constructor.
size_t motzkin_scheme_order(const struct MotzkinScheme *scheme);

// Releases a scheme handle. A null handle is ignored.
//
// # Safety
//
// `scheme` must be null or a live handle from a `motzkin_scheme_*`
// constructor, and must not be used afterwards.
void motzkin_scheme_free(struct MotzkinScheme *scheme);

// Builds the first `rows` rows of the scheme's triangle of path counts.
//
// On success stores a handle in `out`; release it with
// [`motzkin_triangle_free`].
//
// # Safety
//
// `scheme` must be a live scheme handle and `out` a valid pointer to a
// handle slot.
enum MotzkinStatus motzkin_triangle_new(const struct MotzkinScheme *scheme,
                                        size_t rows,
                                        struct MotzkinTriangle **out);

// The number of rows a triangle holds, or 0 for a null handle.
//
// # Safety
//
// `triangle` must be null or a live handle from
// [`motzkin_triangle_new`].
size_t motzkin_triangle_rows(const struct MotzkinTriangle *triangle);

// Writes entry (n, m) of the triangle as a NUL-terminated decimal string.
//
// Entries with `m > n` are 0. `written` (when non-null) receives the
// required buffer size in bytes, terminator included; the call returns
// `BufferTooSmall` without writing when `buf` is null or too short.
//
// # Safety
//
// `triangle` must be a live handle; `buf` must be null or point to
// `buf_len` writable bytes; `written` must be null or a valid pointer.
enum MotzkinStatus motzkin_triangle_entry(const struct MotzkinTriangle *triangle,
                                          size_t n,
                                          size_t m,
                                          char *buf,
                                          size_t buf_len,
                                          size_t *written);

// Writes the sum of row n as a NUL-terminated decimal string, with the
// same buffer convention as [`motzkin_triangle_entry`].
//
// # Safety
//
// Same contract as [`motzkin_triangle_entry`].
enum MotzkinStatus motzkin_triangle_row_sum(const struct MotzkinTriangle *triangle,
                                            size_t n,
                                            char *buf,
                                            size_t buf_len,
                                            size_t *written);

// Releases a triangle handle. A null handle is ignored.
//
// # Safety
//
// `triangle` must be null or a live handle from
// [`motzkin_triangle_new`], and must not be used afterwards.
void motzkin_triangle_free(struct MotzkinTriangle *triangle);

// Writes the number of k-step paths of depth `a`, semilength `n`, and end
// semiheight `m` as a decimal string, with the buffer convention of
// [`motzkin_triangle_entry`].
//
// # Safety
//
// `buf` must be null or point to `buf_len` writable bytes; `written`
// must be null or a valid pointer.
enum MotzkinStatus motzkin_count_dyck(size_t k,
                                      size_t a,
                                      size_t n,
                                      size_t m,
                                      char *buf,
                                      size_t buf_len,
                                      size_t *written);

// Writes the number of such paths that also avoid width-`r` return hills,
// with the buffer convention of [`motzkin_triangle_entry`].
//
// # Safety
//
// Same contract as [`motzkin_count_dyck`].
enum MotzkinStatus motzkin_count_fine(size_t k,
                                      size_t a,
                                      size_t r,
                                      size_t n,
                                      size_t m,
                                      char *buf,
                                      size_t buf_len,
                                      size_t *written);

// Copies the calling thread's last error message into `buf` and returns
// the required buffer size in bytes, terminator included.
//
// The message is only meaningful after a call on the same thread returned
// a status other than `Ok`. Passing a null or short buffer just measures.
//
// # Safety
//
// `buf` must be null or point to `buf_len` writable bytes.
size_t motzkin_last_error(char *buf, size_t buf_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOTZKIN_FFI_H */

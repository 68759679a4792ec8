#ifndef MARKOV_EHRHART_H
#define MARKOV_EHRHART_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every exported function.
 */
typedef enum MeStatus {
  ME_STATUS_OK = 0,
  ME_STATUS_NULL_POINTER = 1,
  ME_STATUS_INVALID_INPUT = 2,
  ME_STATUS_BUDGET_EXCEEDED = 3,
  ME_STATUS_OVERFLOW = 4,
  ME_STATUS_NOT_RATIONAL = 5,
  ME_STATUS_INTERNAL = 6,
} MeStatus;

/**
 * An owned triangle, rational or over a real quadratic field.
 */
typedef struct MeTriangle MeTriangle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the standard-position triangle of the Markov triple
 * `(p1, p2, p3)` with entry `apex` (0, 1 or 2) at the origin and the
 * default companion lift.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum MeStatus me_triangle_standard(uint64_t p1,
                                   uint64_t p2,
                                   uint64_t p3,
                                   uint32_t apex,
                                   struct MeTriangle **out);

/**
 * Parses a triangle description such as `"standard triple=2,5,29 p=5"`
 * or `"vertices (0,0) (1,0) (0,1/2)"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` valid for a pointer
 * write.
 */
enum MeStatus me_triangle_parse(const char *spec, struct MeTriangle **out);

/**
 * Releases a triangle. Passing null is a no-op.
 *
 * # Safety
 * `tri` must be null or a pointer obtained from this library that has not
 * been freed yet.
 */
void me_triangle_free(struct MeTriangle *tri);

/**
 * Writes `true` when every vertex of the triangle is rational.
 *
 * # Safety
 * `tri` must be a live triangle and `out` valid for a write.
 */
enum MeStatus me_triangle_is_rational(const struct MeTriangle *tri, bool *out);

/**
 * Number of lattice points in the closed dilate `t·Δ`. Reports
 * `ME_STATUS_OVERFLOW` when the count needs more than 64 bits; use
 * [`me_count_string`] in that case.
 *
 * # Safety
 * `tri` must be a live triangle and `out` valid for a write.
 */
enum MeStatus me_count(const struct MeTriangle *tri, uint64_t t, uint64_t *out);

/**
 * Same as [`me_count`], with the count written as a decimal string.
 *
 * # Safety
 * `tri` must be a live triangle and `out` valid for a pointer write.
 */
enum MeStatus me_count_string(const struct MeTriangle *tri, uint64_t t, char **out);

/**
 * Least common multiple of the vertex-coordinate denominators, as a
 * decimal string. Irrational triangles report `ME_STATUS_NOT_RATIONAL`.
 *
 * # Safety
 * `tri` must be a live triangle and `out` valid for a pointer write.
 */
enum MeStatus me_denominator(const struct MeTriangle *tri, char **out);

/**
 * Certified minimal Ehrhart period of a rational triangle. Triangles whose
 * denominator exceeds `cap` give `ME_STATUS_BUDGET_EXCEEDED`.
 *
 * # Safety
 * `tri` must be a live triangle and `out` valid for a write.
 */
enum MeStatus me_certify_period(const struct MeTriangle *tri, uint64_t cap, uint64_t *out);

/**
 * JSON description of the triangle: vertices, area and, where defined,
 * denominator and integral barycentre.
 *
 * # Safety
 * `tri` must be a live triangle and `out` valid for a pointer write.
 */
enum MeStatus me_triangle_to_json(const struct MeTriangle *tri, char **out);

/**
 * The first `generations` levels of the Markov tree as a JSON array.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum MeStatus me_tree_json(uint32_t generations, char **out);

/**
 * Releases a string returned by this library. Passing null is a no-op.
 *
 * # Safety
 * `s` must be null or a string obtained from this library that has not
 * been freed yet.
 */
void me_string_free(char *s);

/**
 * Message for the most recent failure on the calling thread, or null if
 * the last call succeeded. The pointer stays valid until the next call
 * into the library from the same thread.
 */
const char *me_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MARKOV_EHRHART_H */

#ifndef HYPVIS_H
#define HYPVIS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define HV_OK 0

#define HV_NULL_POINTER 1

#define HV_INVALID_POINT 2

#define HV_DEGENERATE 3

#define HV_OUT_OF_RANGE 4

#define HV_NOT_ON_UNIT_CIRCLE 5

#define HV_GEOMETRY 6

#define HV_ABSENT 7

#define HV_PANIC 99

#define HV_BRANCH_ACUTE 0

#define HV_BRANCH_OBTUSE 1

#define HV_BRANCH_VERTICAL 2

#define HV_BRANCH_HORIZONTAL 3

#define HV_FIELD_A_STAR 0

#define HV_FIELD_B_STAR 1

#define HV_FIELD_C 2

#define HV_FIELD_D 3

#define HV_FIELD_F 4

#define HV_FIELD_G 5

#define HV_FIELD_M 6

#define HV_FIELD_P 7

#define HV_FIELD_Q 8

#define HV_FIELD_U 9

#define HV_FIELD_U1 10

#define HV_FIELD_S 11

#define HV_FIELD_V 12

/**
 * Construction points of a pair.
 */
typedef struct HvCatalog HvCatalog;

/**
 * Distortion functions at a fixed `K ≥ 1`.
 */
typedef struct HvDistortion HvDistortion;

/**
 * A complex number `re + im·i`.
 */
typedef struct {
  double re;
  double im;
} HvComplex;

/**
 * Visual angle with the real-axis point attaining it.
 */
typedef struct {
  double angle;
  double attaining_point;
  int32_t branch;
  double sin_angle;
  double tanh_half_rho;
} HvVisualAngle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread. Valid until the next call
 * that fails on the same thread.
 */
const char *hv_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *hv_version(void);

/**
 * Hyperbolic distance of two points of the upper half-plane.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
int32_t hv_rho(HvComplex a, HvComplex b, double *out);

/**
 * Visual angle of a distinct pair.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
int32_t hv_visual_angle(HvComplex a, HvComplex b, HvVisualAngle *out);

/**
 * Brute-force visual angle on `grid` real-axis samples followed by refinement.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
int32_t hv_visual_angle_oracle(HvComplex a, HvComplex b, size_t grid, double *out);

/**
 * Lower and upper bounds of the visual angle in terms of the hyperbolic distance.
 *
 * # Safety
 * `lower` and `upper` must be null or valid for writes.
 */
int32_t hv_visual_angle_bounds(HvComplex a, HvComplex b, double *lower, double *upper);

/**
 * Builds the construction catalog of a pair. Unit-circle pairs use the
 * unit-circle closed forms.
 *
 * # Safety
 * `out` must be null or valid for writes. The handle must be released with
 * `hv_catalog_free`.
 */
int32_t hv_catalog_new(HvComplex a, HvComplex b, HvCatalog **out);

/**
 * Reads one field (`HV_FIELD_*`). Returns `HV_ABSENT` when the point does not exist
 * for the pair.
 *
 * # Safety
 * `catalog` must come from `hv_catalog_new`; `out` must be null or valid for writes.
 */
int32_t hv_catalog_get(const HvCatalog *catalog, int32_t field_index, HvComplex *out);

/**
 * Releases a catalog. Null is ignored.
 *
 * # Safety
 * `catalog` must be null or come from `hv_catalog_new` and not be used afterwards.
 */
void hv_catalog_free(HvCatalog *catalog);

/**
 * `μ(r)` for `r ∈ (0, 1)`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
int32_t hv_mu(double r, double *out);

/**
 * Inverse of `μ`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
int32_t hv_mu_inv(double y, double *out);

/**
 * Creates distortion functions for `K ≥ 1`.
 *
 * # Safety
 * `out` must be null or valid for writes. The handle must be released with
 * `hv_distortion_free`.
 */
int32_t hv_distortion_new(double k, HvDistortion **out);

/**
 * `λ(K)`.
 *
 * # Safety
 * `d` must come from `hv_distortion_new`; `out` must be null or valid for writes.
 */
int32_t hv_distortion_lambda(const HvDistortion *d, double *out);

/**
 * `φ_K(r)` for `r ∈ [0, 1]`.
 *
 * # Safety
 * `d` must come from `hv_distortion_new`; `out` must be null or valid for writes.
 */
int32_t hv_distortion_phi(const HvDistortion *d, double r, double *out);

/**
 * `η_K(t)` for `t ≥ 0`.
 *
 * # Safety
 * `d` must come from `hv_distortion_new`; `out` must be null or valid for writes.
 */
int32_t hv_distortion_eta(const HvDistortion *d, double t, double *out);

/**
 * Upper bound for `tan(v(f(a), f(b))/2)` given `v(a, b) = v ∈ (0, π/2)`.
 *
 * # Safety
 * `d` must come from `hv_distortion_new`; `out` must be null or valid for writes.
 */
int32_t hv_distortion_holder_bound(const HvDistortion *d, double v, double *out);

/**
 * Releases a distortion handle. Null is ignored.
 *
 * # Safety
 * `d` must be null or come from `hv_distortion_new` and not be used afterwards.
 */
void hv_distortion_free(HvDistortion *d);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPVIS_H */

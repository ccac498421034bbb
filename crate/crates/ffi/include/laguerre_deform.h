#ifndef LAGUERRE_DEFORM_H
#define LAGUERRE_DEFORM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LdStatus {
  LD_STATUS_OK = 0,
  LD_STATUS_NULL_POINTER = 1,
  // Malformed rational or non-UTF-8 string.
  LD_STATUS_PARSE = 2,
  // Measure parameters with beta - s <= -1.
  LD_STATUS_INADMISSIBLE = 3,
  LD_STATUS_DEGENERATE_GRAM = 4,
  LD_STATUS_INVALID_ARGUMENT = 5,
  // A Rust panic was caught at the boundary.
  LD_STATUS_INTERNAL = 6,
} LdStatus;

// Opaque exact polynomial.
typedef struct LdPoly LdPoly;

// Opaque vector of exact weights.
typedef struct LdWeights LdWeights;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Laguerre polynomial L(n, beta).
//
// # Safety
// `beta` must be a NUL-terminated string and `out` a valid pointer.
enum LdStatus ld_laguerre(uint32_t n, const char *beta, struct LdPoly **out);

// Deformed Laguerre polynomial; `alpha` is 1 or -1 (-1 gives the M family).
//
// # Safety
// `beta` must be a NUL-terminated string and `out` a valid pointer.
enum LdStatus ld_deformed(uint32_t n,
                          const char *beta,
                          uint32_t s,
                          int32_t alpha,
                          struct LdPoly **out);

// Orthogonalized polynomial C_n for the measure with parameters (s, beta).
//
// # Safety
// `beta` must be a NUL-terminated string and `out` a valid pointer.
enum LdStatus ld_c_poly(uint32_t n, uint32_t s, const char *beta, struct LdPoly **out);

// Undeformed pre-image W_n of C_n.
//
// # Safety
// `beta` must be a NUL-terminated string and `out` a valid pointer.
enum LdStatus ld_w_poly(uint32_t n, uint32_t s, const char *beta, struct LdPoly **out);

// Degree of `p`, or -1 for the zero polynomial.
//
// # Safety
// `p` must be a handle from this library and `out` a valid pointer.
enum LdStatus ld_poly_degree(const struct LdPoly *p, int64_t *out);

// Coefficient of z^k as a newly allocated string; free with `ld_string_free`.
//
// # Safety
// `p` must be a handle from this library and `out` a valid pointer.
enum LdStatus ld_poly_coeff(const struct LdPoly *p, uint32_t k, char **out);

// Exact value at the rational `z`. Either output pointer may be null.
//
// # Safety
// `p` must be a handle from this library and `z` a NUL-terminated string.
enum LdStatus ld_poly_eval(const struct LdPoly *p, const char *z, char **exact, double *value);

// Floating-point value at `x`.
//
// # Safety
// `p` must be a handle from this library and `out` a valid pointer.
enum LdStatus ld_poly_eval_f64(const struct LdPoly *p, double x, double *out);

// # Safety
// `p` must be null or a handle from this library not yet freed.
void ld_poly_free(struct LdPoly *p);

// n-th moment as `coeff` times Gamma(beta + 1). `coeff` receives the
// rational as a string and `value` the full floating-point moment; either
// may be null.
//
// # Safety
// `beta` must be a NUL-terminated string.
enum LdStatus ld_moment(uint32_t n, uint32_t s, const char *beta, char **coeff, double *value);

// Weights expressing C_n through M_n, ..., M_1.
//
// # Safety
// `beta` must be a NUL-terminated string and `out` a valid pointer.
enum LdStatus ld_weights(uint32_t n, uint32_t s, const char *beta, struct LdWeights **out);

// # Safety
// `w` must be a handle from this library and `out` a valid pointer.
enum LdStatus ld_weights_len(const struct LdWeights *w, size_t *out);

// Weight `i` as a newly allocated string; free with `ld_string_free`.
//
// # Safety
// `w` must be a handle from this library and `out` a valid pointer.
enum LdStatus ld_weights_get(const struct LdWeights *w, size_t i, char **out);

// # Safety
// `w` must be null or a handle from this library not yet freed.
void ld_weights_free(struct LdWeights *w);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void ld_string_free(char *s);

// Message for the most recent failure on this thread, empty after success.
// The pointer stays valid until the next call on the same thread.
const char *ld_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAGUERRE_DEFORM_H */

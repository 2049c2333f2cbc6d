#ifndef WARINGLAB_H
#define WARINGLAB_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes for every FFI entry point. Values other than `Ok` and
 * `NoCoverage` indicate that no result was written.
 */
typedef enum WlStatus {
  WL_STATUS_OK = 0,
  /**
   * The Waring iteration stabilized short of full coverage: g is infinite.
   */
  WL_STATUS_NO_COVERAGE = 1,
  WL_STATUS_NOT_PRIME = 2,
  WL_STATUS_INVALID_PARAMETER = 3,
  WL_STATUS_INVALID_ORDER = 4,
  /**
   * The computation was refused at the requested scale.
   */
  WL_STATUS_REFUSED = 5,
  WL_STATUS_NULL_POINTER = 6,
  WL_STATUS_OVERFLOW = 7,
} WlStatus;

/**
 * Energy kinds accepted by `wl_energy`.
 */
typedef enum WlEnergyKind {
  /**
   * Quadruple count for u + u^{-1} sums over a subgroup of F_p^*.
   */
  WL_ENERGY_KIND_KLOOSTERMAN = 0,
  /**
   * Additive energy of the order-tau norm-one subgroup in F_{p^2}.
   */
  WL_ENERGY_KIND_ADDITIVE_NORM_ONE = 1,
  /**
   * Additive energy of the traces of the norm-one subgroup.
   */
  WL_ENERGY_KIND_TRACE_NORM_ONE = 2,
} WlEnergyKind;

/**
 * Opaque handle to a prime-field context (the prime, a generator, and the
 * quadratic extension data).
 */
typedef struct WlFieldCtx WlFieldCtx;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Human-readable message for a status code, as a static NUL-terminated
 * string; never null.
 */
const char *wl_status_message(enum WlStatus status);

/**
 * Library version as a static NUL-terminated string.
 */
const char *wl_version(void);

/**
 * Allocates a field context for the odd prime `p` (p < 2^31) and stores the
 * handle in `out_ctx`. Free with `wl_field_ctx_free`.
 */
enum WlStatus wl_field_ctx_new(uint64_t p, struct WlFieldCtx **out_ctx);

/**
 * Releases a context handle; a null handle is a no-op.
 */
void wl_field_ctx_free(struct WlFieldCtx *ctx);

/**
 * The prime behind a context handle.
 */
enum WlStatus wl_field_ctx_prime(const struct WlFieldCtx *ctx, uint64_t *out_p);

/**
 * Evaluates the degree-e Dickson polynomial at x with parameter a, mod p.
 */
enum WlStatus wl_dickson_eval(uint64_t p, uint64_t e, uint64_t a, uint64_t x, uint64_t *out_value);

/**
 * The Waring number g_a(e, p) of the Dickson value set over the prime
 * field. Returns `NoCoverage` (writing nothing) when g is infinite.
 */
enum WlStatus wl_waring_dickson(uint64_t p, uint64_t e, uint64_t a, uint64_t *out_g);

/**
 * The Waring number G(k, p) for k-th powers of norm-one elements over the
 * quadratic extension. Returns `NoCoverage` when g is infinite.
 */
enum WlStatus wl_waring_norm_one(const struct WlFieldCtx *ctx, uint64_t k, uint64_t *out_g);

/**
 * Exhaustive maximum modulus of incomplete Kloosterman sums over the
 * order-tau subgroup of the multiplicative group, with the attaining
 * character pair. Refused for large p; sample instead via the CLI.
 */
enum WlStatus wl_kloosterman_max(const struct WlFieldCtx *ctx,
                                 uint64_t tau,
                                 double *out_max,
                                 uint64_t *out_alpha,
                                 uint64_t *out_beta);

/**
 * Exhaustive maximum modulus of Gauss sums over the order-tau norm-one
 * subgroup, with the canonical index of the attaining character.
 */
enum WlStatus wl_gauss_max(const struct WlFieldCtx *ctx,
                           uint64_t tau,
                           double *out_max,
                           uint64_t *out_alpha_index);

/**
 * Exact ordered-quadruple energy count for the order-tau subgroup.
 */
enum WlStatus wl_energy(const struct WlFieldCtx *ctx,
                        uint64_t tau,
                        enum WlEnergyKind kind,
                        uint64_t *out_count);

/**
 * Affine point count of the Dickson-derived plane curve with exponent e and
 * parameter A over F_p.
 */
enum WlStatus wl_curve_dickson_count(uint64_t p, uint64_t e, uint64_t a_param, uint64_t *out_count);

/**
 * Affine point count of x^t + y^t + a = 0 over F_{p^2} with t = k(p-1);
 * `a_index` is the canonical index a0 + a1*p of a nonzero element.
 */
enum WlStatus wl_curve_fermat_norm_count(const struct WlFieldCtx *ctx,
                                         uint64_t k,
                                         uint64_t a_index,
                                         uint64_t *out_count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WARINGLAB_H */

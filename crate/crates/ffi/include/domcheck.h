#ifndef DOMCHECK_H
#define DOMCHECK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum DcStatus {
  DcStatus_Ok = 0,
  DcStatus_NullPointer = 1,
  DcStatus_InvalidArgument = 2,
  DcStatus_DimensionMismatch = 3,
  DcStatus_NotHermitian = 4,
  DcStatus_NotPsd = 5,
  DcStatus_NoConvergence = 6,
  DcStatus_NotSubmajorized = 7,
  DcStatus_NotMember = 8,
  DcStatus_BufferTooSmall = 9,
  DcStatus_InternalError = 10,
} DcStatus;

/**
 * Three-way verdict for positivity-style checks.
 */
typedef enum DcVerdict {
  DcVerdict_CertifiedPass = 0,
  DcVerdict_HeuristicPass = 1,
  DcVerdict_Violated = 2,
  DcVerdict_Inconclusive = 3,
} DcVerdict;

/**
 * Opaque linear-map handle.
 */
typedef struct DcMap DcMap;

/**
 * Opaque dense complex matrix handle.
 */
typedef struct DcMatrix DcMatrix;

/**
 * Plain-old-data tolerance configuration; obtain defaults from
 * dc_config_default and adjust fields as needed.
 */
typedef struct DcConfig {
  double tol_psd;
  double tol_eig;
  double tol_herm;
  double tol_cert;
  uint64_t max_iters;
  uint64_t restarts;
  uint64_t seed;
} DcConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Default tolerances and budgets.
 */
struct DcConfig dc_config_default(void);

/**
 * Copies the most recent error message on this thread into `buffer`
 * (NUL-terminated, truncated to `len` bytes). Returns the full length.
 *
 * # Safety
 * `buffer` must point to `len` writable bytes, or be NULL (query mode).
 */
uintptr_t dc_last_error_message(char *buffer, uintptr_t len);

/**
 * Creates a matrix from row-major interleaved (re, im) doubles of length
 * 2 * rows * cols.
 *
 * # Safety
 * `entries` must point to 2*rows*cols doubles; `out` must be a valid
 * destination for one pointer.
 */
enum DcStatus dc_matrix_new(uintptr_t rows,
                            uintptr_t cols,
                            const double *entries,
                            struct DcMatrix **out);

/**
 * # Safety
 * `out` must be a valid destination for one pointer.
 */
enum DcStatus dc_matrix_identity(uintptr_t n, struct DcMatrix **out);

/**
 * # Safety
 * `m` must be a pointer previously returned by a dc_matrix constructor and
 * not yet freed.
 */
void dc_matrix_free(struct DcMatrix *m);

/**
 * # Safety
 * `m` must be a live matrix handle.
 */
uintptr_t dc_matrix_rows(const struct DcMatrix *m);

/**
 * # Safety
 * `m` must be a live matrix handle.
 */
uintptr_t dc_matrix_cols(const struct DcMatrix *m);

/**
 * Copies row-major interleaved entries into `buffer` (2*rows*cols doubles).
 *
 * # Safety
 * `m` must be a live matrix handle; `buffer` must hold `len` doubles.
 */
enum DcStatus dc_matrix_entries(const struct DcMatrix *m, double *buffer, uintptr_t len);

/**
 * Singular values, non-increasing; writes min(len, count) values and stores
 * the true count in `written`.
 *
 * # Safety
 * `m` must be a live matrix handle; `buffer` must hold `len` doubles;
 * `written` must be a valid destination.
 */
enum DcStatus dc_singular_values(const struct DcMatrix *m,
                                 double *buffer,
                                 uintptr_t len,
                                 uintptr_t *written);

/**
 * # Safety
 * `m` must be a live matrix handle; `out` a valid destination.
 */
enum DcStatus dc_operator_norm(const struct DcMatrix *m, double *out);

/**
 * PSD test with relative threshold; stores the verdict and the minimal
 * eigenvalue.
 *
 * # Safety
 * `m` must be a live matrix handle; `cfg` NULL or valid; outputs valid.
 */
enum DcStatus dc_is_psd(const struct DcMatrix *m,
                        const struct DcConfig *cfg,
                        bool *out_psd,
                        double *out_min_eigenvalue);

/**
 * Does the spectrum of `a` submajorize the spectrum of `b`?
 *
 * # Safety
 * `a` and `b` must be live matrix handles; `out` a valid destination.
 */
enum DcStatus dc_submajorizes(const struct DcMatrix *a,
                              const struct DcMatrix *b,
                              const struct DcConfig *cfg,
                              bool *out);

/**
 * Doubly substochastic transfer matrix with D mu_a = mu_b, returned as a
 * real matrix handle.
 *
 * # Safety
 * `a` and `b` must be live matrix handles; `out` a valid destination.
 */
enum DcStatus dc_transfer_certificate(const struct DcMatrix *a,
                                      const struct DcMatrix *b,
                                      const struct DcConfig *cfg,
                                      struct DcMatrix **out);

/**
 * Builds a named map: "identity", "transpose", "trace_times_identity",
 * "symmetrization" (all need `dim`), or "stormer_U" / "stormer_V" /
 * "stormer_W" (3x3, `dim` ignored).
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` a valid destination.
 */
enum DcStatus dc_map_new_builtin(const char *name, uintptr_t dim, struct DcMap **out);

/**
 * Builds a map from `count` Kraus elements.
 *
 * # Safety
 * `elements` must point to `count` live matrix handles; `out` valid.
 */
enum DcStatus dc_map_new_kraus(const struct DcMatrix *const *elements,
                               uintptr_t count,
                               struct DcMap **out);

/**
 * Builds a map from its Choi matrix (size dim_in*dim_out square).
 *
 * # Safety
 * `choi` must be a live matrix handle; `out` a valid destination.
 */
enum DcStatus dc_map_new_choi(const struct DcMatrix *choi,
                              uintptr_t dim_in,
                              uintptr_t dim_out,
                              struct DcMap **out);

/**
 * # Safety
 * `m` must be a pointer previously returned by a dc_map constructor and not
 * yet freed.
 */
void dc_map_free(struct DcMap *m);

/**
 * Applies the map to a matrix, producing a fresh matrix handle.
 *
 * # Safety
 * `map` and `a` must be live handles; `out` a valid destination.
 */
enum DcStatus dc_map_apply(const struct DcMap *map,
                           const struct DcMatrix *a,
                           struct DcMatrix **out);

/**
 * Complete positivity via the Choi criterion.
 *
 * # Safety
 * `map` must be a live handle; outputs valid destinations.
 */
enum DcStatus dc_check_cp(const struct DcMap *map,
                          const struct DcConfig *cfg,
                          bool *out_cp,
                          double *out_min_choi_eigenvalue);

/**
 * Positivity of the map (see-saw over product vectors when no structural
 * rule applies). `out_value` carries the best or violating value.
 *
 * # Safety
 * `map` must be a live handle; outputs valid destinations.
 */
enum DcStatus dc_check_positive(const struct DcMap *map,
                                const struct DcConfig *cfg,
                                enum DcVerdict *out_verdict,
                                double *out_value);

/**
 * k-positivity; k = min(dim_in, dim_out) is complete positivity.
 *
 * # Safety
 * `map` must be a live handle; outputs valid destinations.
 */
enum DcStatus dc_check_k_positive(const struct DcMap *map,
                                  uintptr_t k,
                                  const struct DcConfig *cfg,
                                  enum DcVerdict *out_verdict,
                                  double *out_value);

/**
 * Decomposability: CertifiedPass with the pair residual, Violated with the
 * PPT-witness pairing, or Inconclusive with the best residual.
 *
 * # Safety
 * `map` must be a live handle; outputs valid destinations.
 */
enum DcStatus dc_check_decomposable(const struct DcMap *map,
                                    const struct DcConfig *cfg,
                                    enum DcVerdict *out_verdict,
                                    double *out_value);

/**
 * Domination 0 <= T <= S; `order` 0 = positive, 1 = complete.
 *
 * # Safety
 * `s` and `t` must be live handles; `out_dominated` a valid destination.
 */
enum DcStatus dc_dominates(const struct DcMap *s,
                           const struct DcMap *t,
                           uint32_t order,
                           const struct DcConfig *cfg,
                           bool *out_dominated);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DOMCHECK_H */

#ifndef GOLDBACH_LAB_H
#define GOLDBACH_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum GlStatus {
  GL_STATUS_OK = 0,
  GL_STATUS_NULL_POINTER = 1,
  GL_STATUS_CAPACITY = 2,
  GL_STATUS_OUT_OF_RANGE = 3,
  GL_STATUS_DOMAIN = 4,
  GL_STATUS_ARGUMENT = 5,
  GL_STATUS_PRECISION = 6,
  GL_STATUS_INGESTION = 7,
  GL_STATUS_IO = 8,
  GL_STATUS_PANIC = 9,
} GlStatus;

typedef enum GlMethod {
  GL_METHOD_DIRECT = 0,
  GL_METHOD_CONVOLUTION = 1,
} GlMethod;

typedef enum GlRelation {
  GL_RELATION_EQUALS = 0,
  GL_RELATION_LEQ = 1,
} GlRelation;

typedef enum GlT1Variant {
  GL_T1_VARIANT_CENTERED = 0,
  GL_T1_VARIANT_PLAIN = 1,
} GlT1Variant;

/**
 * Goldbach functions up to a limit.
 */
typedef struct GlGoldbachTable GlGoldbachTable;

/**
 * Λ and ψ up to a limit.
 */
typedef struct GlMangoldtTable GlMangoldtTable;

/**
 * Zeta zero ordinates.
 */
typedef struct GlZetaZeros GlZetaZeros;

/**
 * g(n), G(n), J(n) and F(n) for one n.
 */
typedef struct GlGoldbachRow {
  uint64_t g;
  double big_g;
  double j;
  double f;
} GlGoldbachRow;

typedef struct GlIdentityCheck {
  double lhs;
  double rhs;
  double tolerance;
  enum GlRelation relation;
  bool pass;
} GlIdentityCheck;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf` (always NUL
 * terminated when `len > 0`) and returns the full message length without
 * the terminator. Returns 0 when there is no message.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t gl_last_error_message(char *buf, size_t len);

/**
 * # Safety
 * `out` must be valid for one write.
 */
enum GlStatus gl_mangoldt_table_new(uint64_t limit, struct GlMangoldtTable **out);

/**
 * # Safety
 * `table` must come from [`gl_mangoldt_table_new`] and not be used again.
 */
void gl_mangoldt_table_free(struct GlMangoldtTable *table);

/**
 * Table limit, or 0 for a null handle.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
uint64_t gl_mangoldt_table_limit(const struct GlMangoldtTable *table);

/**
 * Λ(n).
 *
 * # Safety
 * `table` must be a live handle and `out` valid for one write.
 */
enum GlStatus gl_mangoldt_lambda(const struct GlMangoldtTable *table, uint64_t n, double *out);

/**
 * ψ(x).
 *
 * # Safety
 * `table` must be a live handle and `out` valid for one write.
 */
enum GlStatus gl_chebyshev_psi(const struct GlMangoldtTable *table, double x, double *out);

/**
 * ψ(x; q, a).
 *
 * # Safety
 * `table` must be a live handle and `out` valid for one write.
 */
enum GlStatus gl_psi_progression(const struct GlMangoldtTable *table,
                                 double x,
                                 uint64_t q,
                                 uint64_t a,
                                 double *out);

/**
 * φ(q).
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum GlStatus gl_euler_totient(uint64_t q, uint64_t *out);

/**
 * C₂ truncated at `prime_limit`, and the lower bound for the omitted tail
 * factor.
 *
 * # Safety
 * Both out-pointers must be valid for one write; `tail_bound` may be null.
 */
enum GlStatus gl_twin_prime_constant(uint64_t prime_limit, double *value, double *tail_bound);

/**
 * # Safety
 * `mangoldt` must be a live handle with limit at least `limit`; `out` valid
 * for one write.
 */
enum GlStatus gl_goldbach_table_new(const struct GlMangoldtTable *mangoldt,
                                    uint64_t limit,
                                    enum GlMethod method,
                                    struct GlGoldbachTable **out);

/**
 * # Safety
 * `table` must come from [`gl_goldbach_table_new`] and not be used again.
 */
void gl_goldbach_table_free(struct GlGoldbachTable *table);

/**
 * # Safety
 * `table` must be a live handle and `out` valid for one write.
 */
enum GlStatus gl_goldbach_row(const struct GlGoldbachTable *table,
                              uint64_t n,
                              struct GlGoldbachRow *out);

/**
 * The 100 zeros shipped with the library.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum GlStatus gl_zeta_zeros_bundled(struct GlZetaZeros **out);

/**
 * Loads a zeros file (one ordinate per line, `#` comments).
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` valid for one write.
 */
enum GlStatus gl_zeta_zeros_load(const char *path, struct GlZetaZeros **out);

/**
 * # Safety
 * `zeros` must come from a `gl_zeta_zeros_*` constructor and not be used again.
 */
void gl_zeta_zeros_free(struct GlZetaZeros *zeros);

/**
 * Number of zeros, or 0 for a null handle.
 *
 * # Safety
 * `zeros` must be null or a live handle.
 */
size_t gl_zeta_zeros_len(const struct GlZetaZeros *zeros);

/**
 * H_K(x) with the first `k` zeros.
 *
 * # Safety
 * `zeros` must be a live handle and `out` valid for one write.
 */
enum GlStatus gl_oscillating_term(const struct GlZetaZeros *zeros, double x, size_t k, double *out);

/**
 * Circle-mean recovery of `Σ_{2≤n≤N+1} Λ(n)`.
 *
 * # Safety
 * `table` must be a live handle and `out` valid for one write.
 */
enum GlStatus gl_psi_via_contour(const struct GlMangoldtTable *table,
                                 uint64_t n,
                                 size_t samples,
                                 double *out);

/**
 * Montgomery's formula for `a_1..a_n`; `im` may be null for real windows.
 *
 * # Safety
 * `re` (and `im` unless null) must hold `n` values; `out` valid for one write.
 */
enum GlStatus gl_montgomery_identity(uint64_t q,
                                     const double *re,
                                     const double *im,
                                     size_t n,
                                     struct GlIdentityCheck *out);

/**
 * Large-sieve estimate over the moduli set `moduli[0..moduli_len]`.
 *
 * # Safety
 * `moduli` must hold `moduli_len` values, `re` (and `im` unless null) `n`
 * values; `out` valid for one write.
 */
enum GlStatus gl_t1_check(const uint64_t *moduli,
                          size_t moduli_len,
                          const double *re,
                          const double *im,
                          size_t n,
                          enum GlT1Variant variant,
                          struct GlIdentityCheck *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GOLDBACH_LAB_H */

#ifndef RAABE_H
#define RAABE_H

/* Generated by cbindgen from raabe-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes shared by every binding.
 */
typedef enum RaabeStatus {
  RAABE_STATUS_OK = 0,
  /*
   The checked residual is not zero.
   */
  RAABE_STATUS_NONZERO_RESIDUAL = 1,
  RAABE_STATUS_INVALID_ARGUMENT = 2,
  RAABE_STATUS_NULL_POINTER = 3,
  /*
   The requested tolerance needs more terms than the cap allows.
   */
  RAABE_STATUS_TOLERANCE_UNREACHABLE = 4,
  RAABE_STATUS_INTERNAL_ERROR = 5,
} RaabeStatus;

/*
 Opaque table of exact Bernoulli polynomials.
 */
typedef struct RaabeBernoulliTable RaabeBernoulliTable;

/*
 One evaluated series value with its truncation certificate.
 */
typedef struct RaabeEvalResult {
  double value;
  uint64_t truncation_n;
  double tail_bound;
} RaabeEvalResult;

/*
 Floor-sequence approximant r/(a^s - 1) of a real number.
 */
typedef struct RaabeDenseApprox {
  /*
   Numerator, clamped into i64 (status reports overflow).
   */
  int64_t r;
  double value;
  double error;
  /*
   1 when the scaled input was within 1e-12 of an integer.
   */
  uint8_t boundary;
} RaabeDenseApprox;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Builds a table of B_0 .. B_max_index. Returns null when the table
 would be unreasonably large (max_index > 4096) or on internal error.
 */
struct RaabeBernoulliTable *raabe_bernoulli_table_new(uint32_t max_index);

/*
 Releases a table created by [`raabe_bernoulli_table_new`].

 # Safety
 `table` must be a pointer previously returned by
 [`raabe_bernoulli_table_new`] and not yet freed; null is ignored.
 */
void raabe_bernoulli_table_free(struct RaabeBernoulliTable *table);

/*
 Returns the coefficient of X^i in B_n as a string "p/q" (or "p" for
 integers), or null when the indices are out of range. The caller
 frees the string with [`raabe_string_free`].

 # Safety
 `table` must be a live pointer from [`raabe_bernoulli_table_new`].
 */
char *raabe_bernoulli_coeff_string(const struct RaabeBernoulliTable *table, uint32_t n, uint32_t i);

/*
 Releases a string returned by this library.

 # Safety
 `s` must originate from this library and not have been freed; null
 is ignored.
 */
void raabe_string_free(char *s);

/*
 Checks that B_n solves the multiplication equation at multiplier `a`.
 */
enum RaabeStatus raabe_verify_raabe(uint32_t n, uint32_t a);

/*
 Checks the symmetric two-modulus identity for B_n.
 */
enum RaabeStatus raabe_verify_carlitz(uint32_t n, uint32_t a, uint32_t b);

/*
 Dimension of the exact solution kernel on polynomials of degree at
 most `max_degree`.

 # Safety
 `out_dim` must be a valid pointer to writable memory.
 */
enum RaabeStatus raabe_kernel_dimension(uint32_t n,
                                        uint32_t a,
                                        uint32_t max_degree,
                                        uint64_t *out_dim);

/*
 Exact coefficient relation check for a named builtin spec. `Ok`
 means the relation holds up to `k_max`; a nonzero-residual status
 writes the first failing base index through `out_witness_k` (when
 non-null).

 # Safety
 `spec` must be a NUL-terminated string; `out_witness_k` may be null.
 */
enum RaabeStatus raabe_coeff_residual_check(const char *spec,
                                            uint32_t n,
                                            uint64_t a,
                                            uint64_t k_max,
                                            uint64_t *out_witness_k);

/*
 Evaluates a named builtin spec's series at `x` to within `tol`.

 # Safety
 `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum RaabeStatus raabe_fourier_eval(const char *spec,
                                    uint32_t n,
                                    double x,
                                    double tol,
                                    uint64_t truncation_cap,
                                    struct RaabeEvalResult *out);

/*
 Evaluates the periodized Bernoulli series to within `tol`.

 # Safety
 `out` must be a valid pointer to writable memory.
 */
enum RaabeStatus raabe_periodized_bernoulli_eval(uint32_t n,
                                                 double x,
                                                 double tol,
                                                 uint64_t truncation_cap,
                                                 struct RaabeEvalResult *out);

/*
 Approximates `u` by `floor((a^s - 1) u) / (a^s - 1)`.

 # Safety
 `out` must be a valid pointer to writable memory.
 */
enum RaabeStatus raabe_dense_approximate(double u,
                                         uint32_t a,
                                         uint32_t s,
                                         struct RaabeDenseApprox *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RAABE_H */

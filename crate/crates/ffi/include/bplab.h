#ifndef BPLAB_H
#define BPLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

// Status code returned by every entry point.
typedef enum BplStatus {
  BPL_STATUS_OK = 0,
  // A required pointer argument was null or a string was not UTF-8.
  BPL_STATUS_NULL = 1,
  BPL_STATUS_DOMAIN = 2,
  BPL_STATUS_NON_CONVERGENCE = 3,
  BPL_STATUS_QUADRATURE = 4,
  // Mellin argument outside the strip of existence.
  BPL_STATUS_STRIP = 5,
  BPL_STATUS_PRECONDITION = 6,
  // A Rust panic was caught at the boundary.
  BPL_STATUS_PANIC = 7,
} BplStatus;

// Outcome of a shape probe.
typedef enum BplVerdict {
  BPL_VERDICT_HOLDS = 0,
  BPL_VERDICT_VIOLATED = 1,
  BPL_VERDICT_INCONCLUSIVE = 2,
} BplVerdict;

// Evaluation tolerances. Opaque; create with `bpl_options_new`.
typedef struct BplOptions BplOptions;

// Seeded random stream. Opaque; create with `bpl_rng_new`.
typedef struct BplRng BplRng;

typedef struct BplVerifyReport {
  // 1 when every channel passed.
  int32_t passed;
  double ks_statistic;
  double ks_threshold;
  // NaN when the identity has no Mellin channel.
  double mellin_max_relerr;
  // NaN when the identity has no density channel.
  double density_max_relerr;
  uint64_t n_samples;
} BplVerifyReport;

typedef struct BplProbeSummary {
  enum BplVerdict verdict;
  uint32_t orders_checked;
  // Order of the first confirmed violation, or -1.
  int32_t first_violation_order;
  // Grid point of the first confirmed violation, or NaN.
  double first_violation_z;
  double noise_floor;
} BplProbeSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static name of a status code; "unknown" for values outside the enum.
const char *bpl_status_name(int32_t status);

// Library version as a static NUL-terminated string.
const char *bpl_version(void);

// Copies the last error message of this thread into `buf` (truncated,
// always NUL-terminated when `len > 0`). Returns the full message length
// excluding the terminator.
//
// # Safety
// `buf` must be null or point to at least `len` writable bytes.
uintptr_t bpl_last_error_message(char *buf, uintptr_t len);

// Creates an options handle. Pass NULL as options anywhere to use defaults.
//
// # Safety
// `out` must be a valid pointer.
enum BplStatus bpl_options_new(double rel_tol,
                               double abs_tol,
                               uintptr_t max_terms,
                               uintptr_t max_quad_refinements,
                               struct BplOptions **out_handle);

// # Safety
// `out` must be a valid pointer.
enum BplStatus bpl_options_default(struct BplOptions **out_handle);

// # Safety
// `handle` must be null or come from `bpl_options_new`/`bpl_options_default`
// and not have been freed.
void bpl_options_free(struct BplOptions *handle);

// # Safety
// `out_handle` must be a valid pointer.
enum BplStatus bpl_rng_new(uint64_t seed, uint64_t stream, struct BplRng **out_handle);

// # Safety
// `handle` must be null or come from `bpl_rng_new` and not have been freed.
void bpl_rng_free(struct BplRng *handle);

// # Safety
// `out_value` must be a valid pointer.
enum BplStatus bpl_gamma_ln(double x, double *out_value);

// Gauss ₂F₁(a, b; c; z).
//
// # Safety
// `opts` may be null; `out_value` must be a valid pointer.
enum BplStatus bpl_hyp2f1(const struct BplOptions *opts,
                          double a,
                          double b,
                          double c,
                          double z,
                          double *out_value);

// ₃F₂(a1, a2, a3; b1, b2; z).
//
// # Safety
// `opts` may be null; `a` must point to 3 values, `b` to 2.
enum BplStatus bpl_hyp3f2(const struct BplOptions *opts,
                          const double *a,
                          const double *b,
                          double z,
                          double *out_value);

// Kummer Φ(a, c; z).
//
// # Safety
// `opts` may be null; `out_value` must be a valid pointer.
enum BplStatus bpl_kummer_phi(const struct BplOptions *opts,
                              double a,
                              double c,
                              double z,
                              double *out_value);

// Tricomi Ψ(a, c; z).
//
// # Safety
// `opts` may be null; `out_value` must be a valid pointer.
enum BplStatus bpl_tricomi_psi(const struct BplOptions *opts,
                               double a,
                               double c,
                               double z,
                               double *out_value);

// Hermite function H₋ν(z), ν > 0.
//
// # Safety
// `opts` may be null; `out_value` must be a valid pointer.
enum BplStatus bpl_hermite_neg(const struct BplOptions *opts,
                               double nu,
                               double z,
                               double *out_value);

// Gaussian Mills ratio.
//
// # Safety
// `out_value` must be a valid pointer.
enum BplStatus bpl_mills_ratio(double x, double *out_value);

// # Safety
// `out_value` must be a valid pointer.
enum BplStatus bpl_betaprime_pdf(double a, double b, double x, double *out_value);

// # Safety
// `opts` may be null; `out_value` must be a valid pointer.
enum BplStatus bpl_betaprime_cdf(const struct BplOptions *opts,
                                 double a,
                                 double b,
                                 double x,
                                 double *out_value);

// E[X^s] for the beta prime law; fails with `Strip` outside (−a, b).
//
// # Safety
// `out_value` must be a valid pointer.
enum BplStatus bpl_betaprime_mellin(double a, double b, double s, double *out_value);

// Fills `out_values[0..n]` with independent beta prime draws.
//
// # Safety
// `rng` must be a live handle; `out_values` must hold `n` doubles.
enum BplStatus bpl_betaprime_sample(struct BplRng *rng,
                                    double a,
                                    double b,
                                    uintptr_t n,
                                    double *out_values);

// Density of λX + μY with X ~ β′(a1, b1), Y ~ β′(a2, b2) independent.
//
// # Safety
// `opts` may be null; `out_value` must be a valid pointer.
enum BplStatus bpl_sum_density(const struct BplOptions *opts,
                               double lambda,
                               double a1,
                               double b1,
                               double mu,
                               double a2,
                               double b2,
                               double x,
                               double *out_value);

// Density of X + Y for two i.i.d. β′(a, b) variables.
//
// # Safety
// `opts` may be null; `out_value` must be a valid pointer.
enum BplStatus bpl_sum_density_iid(const struct BplOptions *opts,
                                   double a,
                                   double b,
                                   double x,
                                   double *out_value);

// # Safety
// `out_value` must be a valid pointer.
enum BplStatus bpl_thorin_cdf(double a, double x, double t, double *out_value);

// # Safety
// `out_value` must be a valid pointer.
enum BplStatus bpl_thorin_density(double a, double x, double t, double *out_value);

// Runs the identity check `name` (e.g. "theorem-a") with named parameters
// `keys[i] = values[i]` on `n_samples` draws per side.
//
// # Safety
// `keys` and `values` must hold `n_params` entries; `rng` must be a live
// handle; `out_report` must be a valid pointer.
enum BplStatus bpl_verify(const char *name,
                          const char *const *keys,
                          const double *values,
                          uintptr_t n_params,
                          uintptr_t n_samples,
                          const struct BplRng *rng,
                          struct BplVerifyReport *out_report);

// Complete-monotonicity probe of a named ratio on a geometric grid.
//
// Ratios and their parameters: "psi-cc" (a, c, c′), "psi-doubling" (a, c),
// "psi-kumma" (a, c, c′), "hermite-doubling" (ν), "k0e1" (), "turan-hermite"
// (ν, c), "turan-psi" (a, c, λ).
//
// # Safety
// `name` must be a NUL-terminated string; `params` must hold `n_params`
// values; `out_summary` must be a valid pointer.
enum BplStatus bpl_probe_cm(const char *name,
                            const double *params,
                            uintptr_t n_params,
                            double z_lo,
                            double z_hi,
                            uintptr_t n_z,
                            uint32_t max_order,
                            struct BplProbeSummary *out_summary);

// Logarithmic complete-monotonicity probe; same arguments as `bpl_probe_cm`.
//
// # Safety
// See `bpl_probe_cm`.
enum BplStatus bpl_probe_lcm(const char *name,
                             const double *params,
                             uintptr_t n_params,
                             double z_lo,
                             double z_hi,
                             uintptr_t n_z,
                             uint32_t max_order,
                             struct BplProbeSummary *out_summary);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BPLAB_H */

/*
 * rcsp - certified bounds on the error probabilities, latency, and throughput
 * of rate-compatible sphere-packing incremental-redundancy schemes over the
 * AWGN channel with ACK/NACK feedback.
 *
 * C API of the shared library. All entry points return an rcsp_status; results
 * are written through out-pointers. Schemes are opaque handles created by the
 * rcsp_scheme_* constructors and released with rcsp_scheme_destroy(). A more
 * detailed per-thread error message for the last failing call is available via
 * rcsp_last_error_message().
 *
 * Every function here is safe to call from multiple threads concurrently as
 * long as no two threads touch the same rcsp_scheme handle at the same time.
 */
#ifndef RCSP_H
#define RCSP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rcsp_status {
  RCSP_OK = 0,
  /* Malformed input: bad pointer, non-positive increment, k_bits < 1, ... */
  RCSP_ERROR_INVALID_ARGUMENT = 1,
  /* A method was called outside its validity region (e.g. the Inglot
   * sandwich needs r > k-2). The caller is expected to fall back to
   * another method; nothing is computed. */
  RCSP_ERROR_PRECONDITION = 2,
  /* The scheme never decodes (joint error probability 1 at the last
   * transmission); expected latency is infinite. */
  RCSP_ERROR_DEGENERATE_SCHEME = 3,
  /* Requested computation is outside supported limits (e.g. exact joint
   * integration beyond three transmissions). */
  RCSP_ERROR_UNSUPPORTED = 4,
  /* Adaptive quadrature failed to reach its tolerance. */
  RCSP_ERROR_NO_CONVERGENCE = 5,
  RCSP_ERROR_INTERNAL = 6
} rcsp_status;

/* Provenance tag for each end of a certified bound interval. */
typedef enum rcsp_method {
  RCSP_METHOD_EXACT = 0,
  RCSP_METHOD_TRIVIAL_SINGLE = 1,
  RCSP_METHOD_CHERNOFF_PAIR = 2,
  RCSP_METHOD_GENERAL_CHERNOFF = 3,
  RCSP_METHOD_UNION_LOWER = 4,
  RCSP_METHOD_INGLOT_PAIR = 5,
  RCSP_METHOD_DECOMPOSITION = 6,
  RCSP_METHOD_MONTE_CARLO = 7
} rcsp_method;

typedef enum rcsp_packing {
  RCSP_PACKING_OPTIMISTIC = 0, /* perfect sphere packing (volume argument) */
  RCSP_PACKING_MINKOWSKI = 1   /* density c*2^-n packing: squared radii scaled
                                  by c/2 (halved at c = 1) */
} rcsp_packing;

typedef enum rcsp_objective {
  RCSP_OBJECTIVE_BOUND_LOWER = 0, /* maximize certified throughput lower bound */
  RCSP_OBJECTIVE_MC_ESTIMATE = 1  /* maximize seeded Monte Carlo throughput */
} rcsp_objective;

/* Bitmask selecting which bounding methods the series aggregator may use. */
#define RCSP_METHODS_TRIVIAL 0x01u
#define RCSP_METHODS_CHERNOFF_PAIR 0x02u
#define RCSP_METHODS_GENERAL_CHERNOFF 0x04u
#define RCSP_METHODS_UNION_LOWER 0x08u
#define RCSP_METHODS_INGLOT 0x10u
#define RCSP_METHODS_DECOMPOSITION 0x20u
#define RCSP_METHODS_ALL 0x3fu

typedef struct rcsp_scheme rcsp_scheme; /* opaque */

/* Certified interval for one joint error probability. method_lower and
 * method_upper hold rcsp_method values. */
typedef struct rcsp_bound {
  double lower;
  double upper;
  int32_t method_lower;
  int32_t method_upper;
} rcsp_bound;

typedef struct rcsp_mc_stat {
  double mean;
  double std_error; /* binomial standard error sqrt(mean(1-mean)/samples) */
} rcsp_mc_stat;

typedef struct rcsp_performance {
  double latency_lower; /* symbols */
  double latency_upper;
  double throughput_lower; /* bits per symbol */
  double throughput_upper;
  /* Nonzero when throughput_upper exceeds channel capacity: the underlying
   * probability lower bounds degenerated and the upper end is vacuous. The
   * value is reported anyway; the flag marks it. */
  int32_t vacuous_upper;
} rcsp_performance;

typedef struct rcsp_sim_summary {
  double mean_latency; /* symbols per decoded message, restarts included */
  double latency_std_error;
  double latency_p50;
  double latency_p90;
  double latency_p99;
  double mean_tau; /* transmission index of first success, in 1..m */
  uint64_t restarts; /* full m-transmission rounds that all failed */
  uint64_t cycles;
} rcsp_sim_summary;

typedef struct rcsp_opt_report {
  double objective_value; /* throughput of the returned schedule */
  uint64_t evaluations;
  int32_t budget_exhausted;
} rcsp_opt_report;

const char* rcsp_version(void);
const char* rcsp_status_name(rcsp_status status);
const char* rcsp_method_name(int32_t method); /* rcsp_method value */

/* Human-readable detail for the most recent failing call on this thread.
 * Valid until the next failing call on the same thread. */
const char* rcsp_last_error_message(void);

/* Caps the number of worker threads used by Monte Carlo estimation and
 * simulation. n = 0 restores the default (RCSP_THREADS environment variable,
 * falling back to the hardware concurrency). Results never depend on the
 * thread count. */
void rcsp_set_max_threads(int32_t n);

/* ---- channel and special functions ---- */

/* Real AWGN capacity (1/2)log2(1+eta) in bits per symbol; eta is linear SNR. */
rcsp_status rcsp_capacity(double eta, double* bits_per_symbol);

/* Pr(chi^2_dof > x). Total over x (negative x gives probability 1).
 * log_value receives the natural log (may be -inf); either out-pointer
 * may be NULL. */
rcsp_status rcsp_chi2_tail(int32_t dof, double x, double* value,
                           double* log_value);
rcsp_status rcsp_chi2_cdf(int32_t dof, double x, double* value);
rcsp_status rcsp_chi2_pdf(int32_t dof, double x, double* value);

/* Chi-square tail envelope E_k(r) = exp(-[r - k - (k-2)log(r/k) + log k]/2),
 * k >= 2, r > 0. */
rcsp_status rcsp_inglot_envelope(int32_t k, double r, double* value);

/* Two-sided sandwich E_k(r)/2 <= Pr(chi^2_k > r) <= r/((r-k+2)sqrt(pi)) E_k(r).
 * Requires r > k-2; outside that region returns RCSP_ERROR_PRECONDITION so
 * the caller can fall back to the exact tail. */
rcsp_status rcsp_inglot_tail_bounds(int32_t k, double r, double* lower,
                                    double* upper);

/* ---- two-transmission primitives ----
 *
 * The pair is a first decoding attempt on n_prev accumulated symbols with
 * squared radius r_prev_sq, followed by i_next incremental symbols and a
 * second attempt at squared radius r_next_sq. Bounds are on the probability
 * that both attempts fail. */

rcsp_status rcsp_chernoff_pair_upper(int32_t n_prev, int32_t i_next,
                                     double r_prev_sq, double r_next_sq,
                                     double* out);
rcsp_status rcsp_chernoff_pair_lower(int32_t n_prev, int32_t i_next,
                                     double r_prev_sq, double r_next_sq,
                                     double* out);
/* Closed-form upper bound at the fixed parameter u* = (1 - N/r^2)/2. */
rcsp_status rcsp_closed_form_pair_upper(int32_t n_prev, int32_t i_next,
                                        double r_prev_sq, double r_next_sq,
                                        double* out);
/* Inglot-based two-transmission bounds. Requires i_next >= 2 and
 * r_prev_sq < r_next_sq - i_next + 2 (RCSP_ERROR_PRECONDITION otherwise). */
rcsp_status rcsp_inglot_pair_bounds(int32_t n1, int32_t i2, double r1_sq,
                                    double r2_sq, double* lower, double* upper);
/* Ground truth for the pair by adaptive quadrature (absolute tol 1e-11). */
rcsp_status rcsp_exact_pair_integral(int32_t n1, int32_t i2, double r1_sq,
                                     double r2_sq, double* out);

/* ---- schemes ---- */

/* A scheme is a channel (snr_db), a message set of 2^k_bits messages, and a
 * schedule of per-transmission symbol counts increments[0..count-1]. Packing
 * defaults to optimistic; see rcsp_scheme_set_packing. */
rcsp_status rcsp_scheme_create(double snr_db, int32_t k_bits,
                               const int32_t* increments, size_t count,
                               rcsp_scheme** out);

/* Builds a scheme from a JSON config document:
 *   { "snr_db": 2.0, "k_bits": 16, "increments": [32, 8, 8, 8, 8],
 *     "radius_assumption": { "kind": "optimistic", "c": 1.0 } }
 * radius_assumption is optional (kind "optimistic" or "minkowski"). */
rcsp_status rcsp_scheme_create_from_json(const char* json_text,
                                         rcsp_scheme** out);

/* The finest-increment scheme: k_bits symbols first, then one symbol per
 * transmission until the terminal blocklength 3*k_bits (final rate 1/3). */
rcsp_status rcsp_scheme_one_bit(double snr_db, int32_t k_bits,
                                rcsp_scheme** out);

void rcsp_scheme_destroy(rcsp_scheme* scheme);

rcsp_status rcsp_scheme_set_packing(rcsp_scheme* scheme, rcsp_packing kind,
                                    double c);

/* Serializes the scheme's config as JSON (round-trips through
 * rcsp_scheme_create_from_json). Writes at most buffer_size bytes including
 * the terminator; *needed receives the full length excluding the terminator.
 * buffer may be NULL when buffer_size is 0. */
rcsp_status rcsp_scheme_to_json(const rcsp_scheme* scheme, char* buffer,
                                size_t buffer_size, size_t* needed);

int32_t rcsp_scheme_transmissions(const rcsp_scheme* scheme);
int32_t rcsp_scheme_k_bits(const rcsp_scheme* scheme);
double rcsp_scheme_snr_db(const rcsp_scheme* scheme);
double rcsp_scheme_capacity(const rcsp_scheme* scheme);
rcsp_status rcsp_scheme_increments(const rcsp_scheme* scheme, int32_t* out,
                                   size_t count);
rcsp_status rcsp_scheme_blocklengths(const rcsp_scheme* scheme, int32_t* out,
                                     size_t count);
/* Squared decoding radii under the scheme's packing assumption; count = m. */
rcsp_status rcsp_scheme_radii(const rcsp_scheme* scheme, double* r_squared,
                              size_t count);

/* Certified intervals for the joint error probabilities P_i =
 * Pr(first i attempts all fail), i = 0..m; out must hold count = m+1 entries
 * (P_0 = [1,1]). method_mask selects bounding methods (RCSP_METHODS_*).
 * clamp_events (optional) counts bound values that had to be clamped into
 * [0,1] or reconciled with the opposite end. */
rcsp_status rcsp_scheme_bound_series(const rcsp_scheme* scheme,
                                     uint32_t method_mask, rcsp_bound* out,
                                     size_t count, int32_t* clamp_events);

/* Seeded Monte Carlo estimates of P_1..P_m with common random numbers;
 * out must hold count = m entries. Deterministic for a given seed regardless
 * of thread count. round_symbols_* (optional) receive the mean and standard
 * error of the symbols consumed by one m-transmission round. */
rcsp_status rcsp_scheme_mc_series(const rcsp_scheme* scheme, uint64_t samples,
                                  uint64_t seed, rcsp_mc_stat* out,
                                  size_t count, double* round_symbols_mean,
                                  double* round_symbols_std_error);

/* Exact P_prefix by nested quadrature; supported for prefix <= 3. */
rcsp_status rcsp_scheme_exact_prefix(const rcsp_scheme* scheme, int32_t prefix,
                                     double* out);

/* Propagates a bound series (count = m+1 entries, as produced by
 * rcsp_scheme_bound_series) to expected-latency and throughput intervals. */
rcsp_status rcsp_scheme_performance(const rcsp_scheme* scheme,
                                    const rcsp_bound* series, size_t count,
                                    rcsp_performance* out);

/* Point expected latency from a probability series P_0..P_m
 * (count = m+1 doubles, P_0 = 1, nonincreasing, P_m < 1). */
rcsp_status rcsp_scheme_expected_latency(const rcsp_scheme* scheme,
                                         const double* series, size_t count,
                                         double* out);

/* Simulates the restart scheme: each cycle delivers one message, retrying
 * with fresh noise after m failed transmissions. tau_histogram (optional,
 * length m) receives counts of the first-success transmission index within
 * the successful round. Deterministic for a given seed. */
rcsp_status rcsp_scheme_simulate(const rcsp_scheme* scheme, uint64_t cycles,
                                 uint64_t seed, uint64_t* tau_histogram,
                                 rcsp_sim_summary* out);

/* Coordinate-descent search over integer increments maximizing throughput
 * for the given message size, transmission count, and channel. mc_samples
 * and mc_seed drive the RCSP_OBJECTIVE_MC_ESTIMATE objective and the
 * reported objective value. The search is deterministic. */
rcsp_status rcsp_optimize(double snr_db, int32_t k_bits, int32_t m,
                          rcsp_packing kind, double c,
                          rcsp_objective objective, uint64_t budget,
                          uint64_t mc_samples, uint64_t mc_seed,
                          rcsp_scheme** out, rcsp_opt_report* report);

#ifdef __cplusplus
}
#endif

#endif /* RCSP_H */

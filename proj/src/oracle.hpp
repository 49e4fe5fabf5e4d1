#pragma once

#include <cstdint>
#include <vector>

#include "schedule_model.hpp"

namespace rcsp {

// Ground-truth references the bound machinery is certified against. These are
// deliberately independent of the bound code paths: quadrature works from the
// chi-square density alone, Monte Carlo from raw normal draws.

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // binomial: sqrt(mean(1-mean)/samples)
};

struct McSeries {
  std::vector<McEstimate> joint;  // joint[i-1] estimates P_i, i = 1..m
  // Symbols consumed by one decoding round (first-success blocklength, or the
  // full blocklength when every attempt fails); feeds latency cross-checks.
  double round_symbols_mean = 0.0;
  double round_symbols_std_error = 0.0;
  uint64_t samples = 0;
  uint64_t seed = 0;
};

// Pr(chi^2_n1 > r1_sq and chi^2_n1 + chi^2_i2 > r2_sq) by adaptive
// quadrature at absolute tolerance abs_tol. Exact-tail shortcuts cover the
// degenerate orderings (r1_sq <= 0, r2_sq <= r1_sq).
double exact_pair_integral(int n1, int i2, double r1_sq, double r2_sq,
                           double abs_tol = 1e-11);

// Exact joint error probability P_prefix = Pr(first `prefix` attempts all
// fail) by nested quadrature. Supports prefix <= 3 (the outer integral is
// one-dimensional only up to three attempts); beyond that throws
// UnsupportedError. prefix = 0 returns 1.
double exact_prefix_integral(const TransmissionSchedule& schedule,
                             const DecodingRadii& radii, int prefix);

// Convenience: exact_prefix_integral over the full schedule (m <= 3).
double exact_joint_integral(const TransmissionSchedule& schedule,
                            const DecodingRadii& radii);

// Common-random-numbers Monte Carlo for the whole series P_1..P_m. Each
// sample is addressed by (seed, sample index); per-sample draws stop at the
// first successful attempt since later joint indicators are then known.
// Chunk tallies are integers, so the result is bit-identical for a given
// seed no matter how many threads run.
McSeries mc_joint_series(const TransmissionSchedule& schedule,
                         const DecodingRadii& radii, uint64_t samples,
                         uint64_t seed);

}  // namespace rcsp

#pragma once

#include <cstdint>

#include "schedule_model.hpp"

namespace rcsp {

enum class ObjectiveKind {
  BoundLower,   // certified throughput lower bound (cheap pair uppers)
  McEstimate,   // seeded Monte Carlo throughput estimate
};

struct OptimizerOptions {
  uint64_t budget = 2000;       // objective evaluations
  uint64_t mc_samples = 100000; // per evaluation, McEstimate only
  uint64_t mc_seed = 20260822;  // shared across candidates (common random numbers)
};

struct OptimizationResult {
  TransmissionSchedule schedule;
  double objective;  // throughput of the returned schedule under the objective
  ObjectiveKind objective_kind;
  uint64_t evaluations;
  bool budget_exhausted;
};

// Coordinate descent over integer increments for fixed (k_bits, m, channel,
// packing): starting from a feasible rate-ladder seed, each coordinate is
// pushed in both directions with doubling steps while the objective strictly
// improves. Fully deterministic; re-evaluating the returned schedule under
// the same objective reproduces `objective` exactly. The Monte Carlo
// objective reuses one seed for every candidate so schedules are compared on
// common random numbers.
OptimizationResult optimize_increments(int k_bits, int m,
                                       const ChannelConfig& channel,
                                       const RadiusAssumption& assumption,
                                       ObjectiveKind kind,
                                       const OptimizerOptions& opts = {});

// The finest-grained reference ladder: k_bits symbols first, then one symbol
// per attempt down to terminal rate 1/3 (blocklength 3 k_bits).
TransmissionSchedule one_bit_scheme(int k_bits);

}  // namespace rcsp

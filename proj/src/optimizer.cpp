#include "optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "joint_bounds.hpp"
#include "log_domain.hpp"
#include "oracle.hpp"
#include "performance.hpp"
#include "special_functions.hpp"

namespace rcsp {

namespace {

// Certified latency upper bound built from the cheap ingredients only:
// single tails and closed-form pair uppers over a few split points. Keeps
// one objective evaluation at O(m) special-function calls so the search can
// afford thousands of them; the returned schedule is re-scored with the full
// machinery by callers that want tight numbers.
double cheap_latency_upper(const TransmissionSchedule& schedule,
                           const DecodingRadii& radii) {
  const int m = schedule.transmissions();
  std::vector<double> upper(m + 1, 1.0);
  for (int i = 1; i <= m; ++i) {
    const int d_i = schedule.blocklength(i);
    const double th_i = radii.r_squared[i - 1];
    double best = std::min(upper[i - 1], chi2_tail(d_i, th_i).value);
    if (i >= 2) {
      for (int j : {i - 1, (i + 1) / 2, 1}) {
        if (j < 1 || j >= i) continue;
        const int d_j = schedule.blocklength(j);
        best = std::min(best,
                        closed_form_pair_upper(d_j, d_i - d_j,
                                               radii.r_squared[j - 1], th_i));
        if (j == 1) break;
      }
    }
    upper[i] = best;
  }
  if (!(upper[m] < 1.0)) return std::numeric_limits<double>::infinity();
  double per_round = 0.0;
  for (int i = 1; i <= m; ++i) {
    per_round += schedule.increment(i) * upper[i - 1];
  }
  return per_round / (1.0 - upper[m]);
}

}  // namespace

OptimizationResult optimize_increments(int k_bits, int m,
                                       const ChannelConfig& channel,
                                       const RadiusAssumption& assumption,
                                       ObjectiveKind kind,
                                       const OptimizerOptions& opts) {
  if (m < 1) throw std::invalid_argument("transmission count must be >= 1");
  if (opts.budget < 1) throw std::invalid_argument("budget must be >= 1");
  const MessageSet messages(k_bits);
  const double cap = capacity(channel.eta);

  uint64_t evaluations = 0;
  bool exhausted = false;
  auto objective = [&](const std::vector<int>& increments) -> double {
    // Higher is better; -inf marks an infeasible (never-decoding) schedule.
    ++evaluations;
    const TransmissionSchedule schedule(increments);
    const DecodingRadii radii =
        radii_for(channel, messages, schedule, assumption);
    if (kind == ObjectiveKind::BoundLower) {
      const double latency = cheap_latency_upper(schedule, radii);
      return std::isfinite(latency) ? k_bits / latency : kNegInf;
    }
    const McSeries mc =
        mc_joint_series(schedule, radii, opts.mc_samples, opts.mc_seed);
    const double p_final = mc.joint[m - 1].mean;
    if (!(p_final < 1.0)) return kNegInf;
    // E[symbols per round] / Pr(round decodes) is the renewal latency.
    return k_bits * (1.0 - p_final) / mc.round_symbols_mean;
  };

  // Seed: first attempt just above capacity (rate 0.9 C), the rest splitting
  // a ramp toward roughly two thirds of capacity at the final attempt.
  std::vector<int> current(m);
  current[0] = std::max(1, static_cast<int>(std::lround(0.9 * k_bits / cap)));
  if (m > 1) {
    const int tail_each = std::max(
        1, static_cast<int>(std::lround(0.6 * k_bits / cap / (m - 1))));
    for (int i = 1; i < m; ++i) current[i] = tail_each;
  }
  double best = objective(current);

  bool improved = true;
  while (improved && !exhausted) {
    improved = false;
    for (int coord = 0; coord < m && !exhausted; ++coord) {
      for (int dir : {+1, -1}) {
        int step = 1;
        for (;;) {
          if (evaluations >= opts.budget) {
            exhausted = true;
            break;
          }
          std::vector<int> candidate = current;
          candidate[coord] += dir * step;
          if (candidate[coord] < 1) break;
          const double value = objective(candidate);
          if (value > best) {
            best = value;
            current = std::move(candidate);
            improved = true;
            step *= 2;
          } else {
            break;
          }
        }
        if (exhausted) break;
      }
    }
  }

  return OptimizationResult{TransmissionSchedule(current), best, kind,
                            evaluations, exhausted};
}

TransmissionSchedule one_bit_scheme(int k_bits) {
  const MessageSet messages(k_bits);  // validates k_bits
  std::vector<int> increments;
  increments.reserve(2 * k_bits + 1);
  increments.push_back(k_bits);
  for (int n = k_bits; n < 3 * k_bits; ++n) increments.push_back(1);
  return TransmissionSchedule(std::move(increments));
}

}  // namespace rcsp

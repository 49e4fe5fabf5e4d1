#include "performance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "parallel.hpp"
#include "random_streams.hpp"

namespace rcsp {

namespace {

void check_series_size(size_t series_size, size_t increment_count) {
  if (series_size != increment_count + 1) {
    throw std::invalid_argument(
        "series must have one entry per transmission plus P_0");
  }
  if (increment_count == 0) {
    throw std::invalid_argument("schedule needs at least one transmission");
  }
}

double latency_from_points(std::span<const double> series,
                           std::span<const int> increments) {
  const size_t m = increments.size();
  const double p_final = series[m];
  if (!(p_final < 1.0)) {
    throw DegenerateSchemeError(
        "joint error probability reaches 1 at the last transmission; "
        "expected latency is unbounded");
  }
  double per_round = 0.0;
  for (size_t i = 0; i < m; ++i) {
    per_round += static_cast<double>(increments[i]) * series[i];
  }
  return per_round / (1.0 - p_final);
}

}  // namespace

double expected_latency(std::span<const double> series,
                        std::span<const int> increments) {
  check_series_size(series.size(), increments.size());
  if (series[0] != 1.0) {
    throw std::invalid_argument("series must start at P_0 = 1");
  }
  for (size_t i = 0; i + 1 < series.size(); ++i) {
    if (series[i + 1] > series[i] || series[i + 1] < 0.0) {
      throw std::invalid_argument(
          "series must be nonincreasing probabilities");
    }
  }
  return latency_from_points(series, increments);
}

double expected_throughput(int k_bits, double latency) {
  if (k_bits < 1) throw std::invalid_argument("k_bits must be >= 1");
  if (!(latency > 0.0)) {
    throw std::invalid_argument("latency must be positive");
  }
  return static_cast<double>(k_bits) / latency;
}

PerformanceEstimate performance_interval(std::span<const BoundInterval> series,
                                         std::span<const int> increments,
                                         int k_bits) {
  check_series_size(series.size(), increments.size());
  if (k_bits < 1) throw std::invalid_argument("k_bits must be >= 1");
  if (series[0].lower != 1.0 || series[0].upper != 1.0) {
    throw std::invalid_argument("series must start at P_0 = [1, 1]");
  }
  const size_t m = increments.size();

  PerformanceEstimate out;
  out.series_used.assign(series.begin(), series.end());
  // Nonincreasing uppers (the aggregator already guarantees this; enforce for
  // hand-built series) and suffix-max lowers.
  for (size_t i = 1; i <= m; ++i) {
    out.series_used[i].upper =
        std::min(out.series_used[i].upper, out.series_used[i - 1].upper);
  }
  for (size_t i = m; i-- > 0;) {
    if (out.series_used[i].lower < out.series_used[i + 1].lower) {
      out.series_used[i].lower = out.series_used[i + 1].lower;
      out.series_used[i].method_lower = out.series_used[i + 1].method_lower;
    }
  }

  std::vector<double> uppers(m + 1), lowers(m + 1);
  for (size_t i = 0; i <= m; ++i) {
    uppers[i] = out.series_used[i].upper;
    lowers[i] = out.series_used[i].lower;
  }
  // Latency is coordinatewise increasing in the series, so the interval ends
  // come from plugging in the matching series ends.
  out.latency.upper = latency_from_points(uppers, increments);
  out.latency.lower = latency_from_points(lowers, increments);
  out.throughput.lower = expected_throughput(k_bits, out.latency.upper);
  out.throughput.upper = expected_throughput(k_bits, out.latency.lower);
  return out;
}

bool vacuous_throughput_upper(const PerformanceEstimate& estimate,
                              double capacity_bits) {
  return estimate.throughput.upper > capacity_bits;
}

SimulationResult simulate_decoding_time(const TransmissionSchedule& schedule,
                                        const DecodingRadii& radii,
                                        uint64_t cycles, uint64_t seed) {
  if (radii.r_squared.size() !=
      static_cast<size_t>(schedule.transmissions())) {
    throw std::invalid_argument("radii/schedule length mismatch");
  }
  if (cycles == 0) throw std::invalid_argument("cycles must be positive");

  const int m = schedule.transmissions();
  const auto& increments = schedule.increments();
  const auto& blocklengths = schedule.blocklengths();
  const auto& r2 = radii.r_squared;
  constexpr uint64_t kRoundCap = 10'000'000;

  SimulationResult out;
  out.samples.resize(cycles);
  std::vector<uint64_t> restarts_per_cycle(cycles, 0);

  constexpr uint64_t kChunk = 256;
  const uint64_t chunk_count = (cycles + kChunk - 1) / kChunk;
  parallel_chunks(chunk_count, [&](uint64_t c) {
    const uint64_t begin = c * kChunk;
    const uint64_t end = std::min(cycles, begin + kChunk);
    for (uint64_t cycle = begin; cycle < end; ++cycle) {
      const CounterStream stream = substream(seed, cycle);
      uint64_t draw = 0;
      int64_t latency = 0;
      uint64_t rounds = 0;
      for (;;) {
        if (++rounds > kRoundCap) {
          throw DegenerateSchemeError(
              "simulation exceeded the retry cap; the scheme essentially "
              "never decodes at these radii");
        }
        double t = 0.0;
        int success = 0;
        for (int i = 1; i <= m && success == 0; ++i) {
          for (int d = 0; d < increments[i - 1]; ++d) {
            const double z = stream.normal(draw++);
            t += z * z;
          }
          if (t <= r2[i - 1]) success = i;
        }
        if (success != 0) {
          latency += blocklengths[success - 1];
          out.samples[cycle] = {success, latency};
          break;
        }
        latency += blocklengths[m - 1];
        restarts_per_cycle[cycle] += 1;
      }
    }
  });

  // Deterministic single-threaded reduction in cycle order.
  double sum = 0.0;
  double sum_sq = 0.0;
  double tau_sum = 0.0;
  uint64_t restarts = 0;
  for (uint64_t cycle = 0; cycle < cycles; ++cycle) {
    const double latency = static_cast<double>(out.samples[cycle].latency);
    sum += latency;
    sum_sq += latency * latency;
    tau_sum += out.samples[cycle].tau;
    restarts += restarts_per_cycle[cycle];
  }
  const double n = static_cast<double>(cycles);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);

  std::vector<int64_t> sorted(cycles);
  for (uint64_t cycle = 0; cycle < cycles; ++cycle) {
    sorted[cycle] = out.samples[cycle].latency;
  }
  std::sort(sorted.begin(), sorted.end());
  auto percentile = [&](double q) {
    const uint64_t rank = static_cast<uint64_t>(std::ceil(q * n));
    return static_cast<double>(sorted[std::min(cycles - 1, rank > 0 ? rank - 1 : 0)]);
  };

  out.summary.mean_latency = mean;
  out.summary.latency_std_error = cycles > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  out.summary.latency_p50 = percentile(0.50);
  out.summary.latency_p90 = percentile(0.90);
  out.summary.latency_p99 = percentile(0.99);
  out.summary.mean_tau = tau_sum / n;
  out.summary.restarts = restarts;
  out.summary.cycles = cycles;
  out.summary.seed = seed;
  return out;
}

}  // namespace rcsp

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bound_interval.hpp"
#include "schedule_model.hpp"

namespace rcsp {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

// Point expected latency in symbols from a joint-error series P_0..P_m
// (P_0 = 1): sum_i I_i P_{i-1} / (1 - P_m). The scheme retransmits from
// scratch after m failures, hence the renewal denominator. Throws
// DegenerateSchemeError when P_m >= 1.
double expected_latency(std::span<const double> series,
                        std::span<const int> increments);

// k_bits / latency, bits per symbol.
double expected_throughput(int k_bits, double latency);

struct PerformanceEstimate {
  Interval latency;     // symbols
  Interval throughput;  // bits per symbol
  // The series the interval was computed from, after monotonization.
  std::vector<BoundInterval> series_used;
};

// Propagates a certified series to latency and throughput intervals.
// Expected latency is coordinatewise increasing in every P_i, so the upper
// end uses the series uppers and the lower end the lowers. Lower ends are
// first tightened by a suffix maximum (P_i >= P_j for j >= i, so any later
// lower bound also bounds P_i); uppers arrive nonincreasing from the
// aggregator. Throws DegenerateSchemeError when the certified upper end of
// P_m reaches 1 (latency unbounded).
PerformanceEstimate performance_interval(std::span<const BoundInterval> series,
                                         std::span<const int> increments,
                                         int k_bits);

// True when the reported throughput upper end exceeds channel capacity: the
// probability lower bounds were too weak to say anything (the value is still
// reported; the flag marks it vacuous).
bool vacuous_throughput_upper(const PerformanceEstimate& estimate,
                              double capacity_bits);

struct DecodingTimeSample {
  int32_t tau;      // transmission index of first success within its round
  int64_t latency;  // total symbols spent on this message, restarts included
};

struct SimulationSummary {
  double mean_latency = 0.0;
  double latency_std_error = 0.0;
  double latency_p50 = 0.0;
  double latency_p90 = 0.0;
  double latency_p99 = 0.0;
  double mean_tau = 0.0;
  uint64_t restarts = 0;  // failed full rounds across all cycles
  uint64_t cycles = 0;
  uint64_t seed = 0;
};

struct SimulationResult {
  std::vector<DecodingTimeSample> samples;  // one per cycle, in cycle order
  SimulationSummary summary;
};

// Simulates the restart decoder: each cycle carries one message through
// transmissions 1..m, starting over with fresh noise after a full round of
// failures, until some attempt lands inside its radius. Deterministic for a
// given seed regardless of thread count. Throws DegenerateSchemeError if any
// cycle exceeds an enormous round cap (the scheme effectively never decodes).
SimulationResult simulate_decoding_time(const TransmissionSchedule& schedule,
                                        const DecodingRadii& radii,
                                        uint64_t cycles, uint64_t seed);

}  // namespace rcsp

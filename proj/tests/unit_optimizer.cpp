#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracle.hpp"
#include "optimizer.hpp"
#include "schedule_model.hpp"
#include "test_support.hpp"

using namespace rcsp;

TEST_CASE("one-bit scheme shape") {
  const TransmissionSchedule s = one_bit_scheme(16);
  CHECK(s.transmissions() == 33);  // k first, then 2k single symbols
  CHECK(s.increment(1) == 16);
  for (int i = 2; i <= s.transmissions(); ++i) CHECK(s.increment(i) == 1);
  CHECK(s.blocklength(s.transmissions()) == 48);  // terminal rate 1/3
  CHECK(one_bit_scheme(1).transmissions() == 3);
  CHECK_THROWS_AS(one_bit_scheme(0), std::invalid_argument);
}

TEST_CASE("optimizer is deterministic") {
  const ChannelConfig channel = ChannelConfig::from_snr_db(2.0);
  const RadiusAssumption assumption;
  const OptimizerOptions opts{500, 0, 0};
  const OptimizationResult a = optimize_increments(
      16, 4, channel, assumption, ObjectiveKind::BoundLower, opts);
  const OptimizationResult b = optimize_increments(
      16, 4, channel, assumption, ObjectiveKind::BoundLower, opts);
  CHECK(a.schedule.increments() == b.schedule.increments());
  CHECK(a.objective == b.objective);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.budget_exhausted == b.budget_exhausted);
  CHECK(a.objective_kind == ObjectiveKind::BoundLower);
  CHECK(a.schedule.transmissions() == 4);
}

TEST_CASE("certified objective stays below capacity and near truth") {
  // The bound objective is k over a certified latency upper bound, hence a
  // genuine lower bound on the schedule's true throughput.
  const ChannelConfig channel = ChannelConfig::from_snr_db(2.0);
  const OptimizationResult result =
      optimize_increments(16, 4, channel, {}, ObjectiveKind::BoundLower,
                          OptimizerOptions{2000, 0, 0});
  CHECK(result.objective > 0.0);
  CHECK(result.objective < capacity(channel.eta));

  // Simulation-side truth: the certified value cannot exceed the Monte Carlo
  // throughput estimate by more than sampling noise.
  const DecodingRadii radii = radii_for(channel, MessageSet(16),
                                        result.schedule, {});
  const McSeries mc = mc_joint_series(result.schedule, radii, 200000, 5);
  const int m = result.schedule.transmissions();
  const double mc_throughput =
      16.0 * (1.0 - mc.joint[m - 1].mean) / mc.round_symbols_mean;
  CHECK(result.objective <= mc_throughput + 3.0 * mc.round_symbols_std_error);
}

TEST_CASE("optimization improves on the seed") {
  const ChannelConfig channel = ChannelConfig::from_snr_db(2.0);
  // budget 1 stops after scoring the seed ladder itself
  const OptimizationResult seed = optimize_increments(
      24, 5, channel, {}, ObjectiveKind::BoundLower, OptimizerOptions{1, 0, 0});
  const OptimizationResult tuned = optimize_increments(
      24, 5, channel, {}, ObjectiveKind::BoundLower,
      OptimizerOptions{3000, 0, 0});
  CHECK(seed.evaluations == 1);
  CHECK(seed.budget_exhausted);
  CHECK(tuned.objective >= seed.objective);
  CHECK(tuned.objective > 0.0);
}

TEST_CASE("budget accounting") {
  const ChannelConfig channel = ChannelConfig::from_snr_db(2.0);
  for (uint64_t budget : {1ull, 5ull, 40ull}) {
    const OptimizationResult r =
        optimize_increments(16, 3, channel, {}, ObjectiveKind::BoundLower,
                            OptimizerOptions{budget, 0, 0});
    CHECK(r.evaluations <= budget);
    if (r.budget_exhausted) CHECK(r.evaluations == budget);
  }
  const OptimizationResult done =
      optimize_increments(16, 3, channel, {}, ObjectiveKind::BoundLower,
                          OptimizerOptions{100000, 0, 0});
  CHECK_FALSE(done.budget_exhausted);
  CHECK(done.evaluations < 100000);
}

TEST_CASE("monte carlo objective is reproducible from the result") {
  const ChannelConfig channel = ChannelConfig::from_snr_db(2.0);
  const OptimizerOptions opts{60, 20000, 99};
  const OptimizationResult result = optimize_increments(
      12, 3, channel, {}, ObjectiveKind::McEstimate, opts);
  CHECK(result.objective_kind == ObjectiveKind::McEstimate);
  // Rescoring the returned schedule with the shared seed reproduces the
  // reported objective bit for bit.
  const DecodingRadii radii =
      radii_for(channel, MessageSet(12), result.schedule, {});
  const McSeries mc = mc_joint_series(result.schedule, radii, opts.mc_samples,
                                      opts.mc_seed);
  const double rescored =
      12.0 * (1.0 - mc.joint[2].mean) / mc.round_symbols_mean;
  CHECK(result.objective == rescored);
}

TEST_CASE("optimizer argument policing") {
  const ChannelConfig channel = ChannelConfig::from_snr_db(2.0);
  CHECK_THROWS_AS(optimize_increments(16, 0, channel, {},
                                      ObjectiveKind::BoundLower, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(optimize_increments(0, 3, channel, {},
                                      ObjectiveKind::BoundLower, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(optimize_increments(16, 3, channel, {},
                                      ObjectiveKind::BoundLower,
                                      OptimizerOptions{0, 0, 0}),
                  std::invalid_argument);
}

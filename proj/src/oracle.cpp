#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "errors.hpp"
#include "log_domain.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "random_streams.hpp"
#include "special_functions.hpp"

namespace rcsp {

namespace {

void check_pair_args(int n1, int i2) {
  if (n1 < 1 || i2 < 1) {
    throw std::invalid_argument("pair integral needs positive block sizes");
  }
}

void check_series_args(const TransmissionSchedule& schedule,
                       const DecodingRadii& radii) {
  if (radii.r_squared.size() !=
      static_cast<size_t>(schedule.transmissions())) {
    throw std::invalid_argument("radii/schedule length mismatch");
  }
}

// int_lo^hi f_n(t) exp(log_weight(t)) dt against the chi-square density f_n.
// For n == 1 the density's t^(-1/2) endpoint singularity defeats bisection,
// so integrate in s = sqrt(t): the transformed weight sqrt(2/pi) e^(-s^2/2)
// is smooth and bounded. t_knots are in t space either way.
double density_weighted_body(int n, double lo, double hi,
                             const QuadratureOptions& opts,
                             std::span<const double> t_knots,
                             const std::function<double(double)>& log_weight) {
  if (n == 1) {
    auto integrand = [&](double s) {
      const double lw = log_weight(s * s);
      return lw == kNegInf ? 0.0
                           : std::numbers::sqrt2 * std::numbers::inv_sqrtpi *
                                 std::exp(-0.5 * s * s + lw);
    };
    std::vector<double> s_knots;
    for (double k : t_knots) {
      if (k > 0.0) s_knots.push_back(std::sqrt(k));
    }
    return integrate_adaptive(integrand, std::sqrt(std::max(0.0, lo)),
                              std::sqrt(hi), opts, s_knots);
  }
  auto integrand = [&](double t) {
    const double lw = log_weight(t);
    return lw == kNegInf ? 0.0 : std::exp(chi2_log_pdf(n, t) + lw);
  };
  return integrate_adaptive(integrand, lo, hi, opts, t_knots);
}

}  // namespace

double exact_pair_integral(int n1, int i2, double r1_sq, double r2_sq,
                           double abs_tol) {
  check_pair_args(n1, i2);
  if (r1_sq <= 0.0) {
    // First attempt surely fails; the pair collapses to one tail.
    return chi2_tail(n1 + i2, r2_sq).value;
  }
  const double lo = r1_sq;
  const double hi = std::max(r2_sq, lo);
  // Pr = int_lo^hi f_n1(t) Pr(chi^2_i2 > r2_sq - t) dt + Pr(chi^2_n1 > hi);
  // past hi the second constraint is already slack.
  const double knots[] = {static_cast<double>(n1 - 2),  // density mode
                          r2_sq - (i2 - 2)};            // inner-tail shoulder
  QuadratureOptions opts;
  opts.abs_tol = abs_tol;
  const double body = density_weighted_body(
      n1, lo, hi, opts, knots,
      [&](double t) { return chi2_log_tail(i2, r2_sq - t); });
  return body + chi2_tail(n1, hi).value;
}

double exact_prefix_integral(const TransmissionSchedule& schedule,
                             const DecodingRadii& radii, int prefix) {
  check_series_args(schedule, radii);
  if (prefix < 0 || prefix > schedule.transmissions()) {
    throw std::invalid_argument("prefix out of range");
  }
  if (prefix == 0) return 1.0;

  const auto& r2 = radii.r_squared;
  if (prefix == 1) return chi2_tail(schedule.blocklength(1), r2[0]).value;
  if (prefix == 2) {
    return exact_pair_integral(schedule.blocklength(1), schedule.increment(2),
                               r2[0], r2[1]);
  }
  if (prefix > 3) {
    throw UnsupportedError(
        "exact joint integration supports at most three transmissions, got " +
        std::to_string(prefix));
  }

  const int n1 = schedule.blocklength(1);
  const int i2 = schedule.increment(2);
  const int i3 = schedule.increment(3);
  if (r2[0] <= 0.0) {
    // First attempt surely fails: the remaining two attempts see the
    // accumulated chi-square directly.
    return exact_pair_integral(schedule.blocklength(2), i3, r2[1], r2[2]);
  }
  const double lo = r2[0];
  const double hi = std::max({lo, r2[1], r2[2]});
  const double knots[] = {static_cast<double>(n1 - 2), r2[1], r2[2]};
  QuadratureOptions opts;
  opts.abs_tol = 1e-9;  // outer tolerance; the inner integral runs at 1e-12
  const double body = density_weighted_body(
      n1, lo, hi, opts, knots, [&](double t) {
        const double inner =
            exact_pair_integral(i2, i3, r2[1] - t, r2[2] - t, 1e-12);
        return inner <= 0.0 ? kNegInf : std::log(inner);
      });
  return body + chi2_tail(n1, hi).value;
}

double exact_joint_integral(const TransmissionSchedule& schedule,
                            const DecodingRadii& radii) {
  return exact_prefix_integral(schedule, radii, schedule.transmissions());
}

McSeries mc_joint_series(const TransmissionSchedule& schedule,
                         const DecodingRadii& radii, uint64_t samples,
                         uint64_t seed) {
  check_series_args(schedule, radii);
  if (samples == 0) throw std::invalid_argument("samples must be positive");

  const int m = schedule.transmissions();
  const auto& increments = schedule.increments();
  const auto& blocklengths = schedule.blocklengths();
  const auto& r2 = radii.r_squared;

  constexpr uint64_t kChunk = 1u << 16;
  const uint64_t chunk_count = (samples + kChunk - 1) / kChunk;

  struct ChunkTally {
    std::vector<int64_t> joint_fail;  // per prefix 1..m
    int64_t round_symbols = 0;
    int64_t round_symbols_sq = 0;
  };
  std::vector<ChunkTally> tallies(chunk_count);

  parallel_chunks(chunk_count, [&](uint64_t c) {
    ChunkTally tally;
    tally.joint_fail.assign(m, 0);
    const uint64_t begin = c * kChunk;
    const uint64_t end = std::min(samples, begin + kChunk);
    for (uint64_t s = begin; s < end; ++s) {
      const CounterStream stream = substream(seed, s);
      uint64_t draw = 0;
      double t = 0.0;
      int first_success = m + 1;
      for (int i = 1; i <= m; ++i) {
        for (int d = 0; d < increments[i - 1]; ++d) {
          const double z = stream.normal(draw++);
          t += z * z;
        }
        if (t <= r2[i - 1]) {
          first_success = i;
          break;  // later joint indicators are all 0; stop drawing
        }
        tally.joint_fail[i - 1] += 1;
      }
      const int64_t consumed =
          first_success <= m ? blocklengths[first_success - 1]
                             : blocklengths[m - 1];
      tally.round_symbols += consumed;
      tally.round_symbols_sq += consumed * consumed;
    }
    tallies[c] = std::move(tally);
  });

  std::vector<int64_t> joint_fail(m, 0);
  int64_t round_symbols = 0;
  double round_symbols_sq = 0.0;  // chunk totals are exact ints; the grand
                                  // total may exceed int64 at huge N*samples
  for (const ChunkTally& tally : tallies) {
    for (int i = 0; i < m; ++i) joint_fail[i] += tally.joint_fail[i];
    round_symbols += tally.round_symbols;
    round_symbols_sq += static_cast<double>(tally.round_symbols_sq);
  }

  McSeries out;
  out.samples = samples;
  out.seed = seed;
  out.joint.resize(m);
  const double n = static_cast<double>(samples);
  for (int i = 0; i < m; ++i) {
    const double p = static_cast<double>(joint_fail[i]) / n;
    out.joint[i].mean = p;
    out.joint[i].std_error = std::sqrt(std::max(0.0, p * (1.0 - p) / n));
  }
  const double mean_sym = static_cast<double>(round_symbols) / n;
  const double var_sym =
      std::max(0.0, round_symbols_sq / n - mean_sym * mean_sym);
  out.round_symbols_mean = mean_sym;
  out.round_symbols_std_error = std::sqrt(var_sym / n);
  return out;
}

}  // namespace rcsp

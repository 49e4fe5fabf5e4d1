#include "rcsp.h"

#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "joint_bounds.hpp"
#include "oracle.hpp"
#include "optimizer.hpp"
#include "parallel.hpp"
#include "performance.hpp"
#include "schedule_model.hpp"
#include "special_functions.hpp"

// The C surface: every entry point catches, records the message in a
// thread-local slot, and maps the exception type to a status code. The only
// state behind an rcsp_scheme handle is the validated config plus its derived
// radii; all computations are pure functions of it.

struct rcsp_scheme {
  rcsp::AnalysisConfig config;
  rcsp::DecodingRadii radii;

  explicit rcsp_scheme(rcsp::AnalysisConfig cfg)
      : config(std::move(cfg)),
        radii(rcsp::radii_for(config.channel, config.messages, config.schedule,
                              config.assumption)) {}

  void refresh_radii() {
    radii = rcsp::radii_for(config.channel, config.messages, config.schedule,
                            config.assumption);
  }
  int m() const { return config.schedule.transmissions(); }
};

namespace {

thread_local std::string g_last_error;

rcsp_status record(rcsp_status status, const char* what) {
  g_last_error = what != nullptr ? what : "";
  return status;
}

// Runs fn inside the exception-to-status firewall.
template <typename Fn>
rcsp_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const rcsp::PreconditionError& e) {
    return record(RCSP_ERROR_PRECONDITION, e.what());
  } catch (const rcsp::DegenerateSchemeError& e) {
    return record(RCSP_ERROR_DEGENERATE_SCHEME, e.what());
  } catch (const rcsp::UnsupportedError& e) {
    return record(RCSP_ERROR_UNSUPPORTED, e.what());
  } catch (const rcsp::QuadratureError& e) {
    return record(RCSP_ERROR_NO_CONVERGENCE, e.what());
  } catch (const std::invalid_argument& e) {
    return record(RCSP_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return record(RCSP_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return record(RCSP_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return record(RCSP_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(RCSP_ERROR_INTERNAL, e.what());
  } catch (...) {
    return record(RCSP_ERROR_INTERNAL, "unknown error");
  }
}

rcsp_status require(bool ok, const char* what) {
  if (ok) return RCSP_OK;
  throw std::invalid_argument(what);
}

rcsp::SeriesPolicy policy_from_mask(uint32_t mask) {
  rcsp::SeriesPolicy policy;
  policy.trivial = (mask & RCSP_METHODS_TRIVIAL) != 0;
  policy.chernoff_pair = (mask & RCSP_METHODS_CHERNOFF_PAIR) != 0;
  policy.general_chernoff = (mask & RCSP_METHODS_GENERAL_CHERNOFF) != 0;
  policy.union_lower = (mask & RCSP_METHODS_UNION_LOWER) != 0;
  policy.inglot = (mask & RCSP_METHODS_INGLOT) != 0;
  policy.decomposition = (mask & RCSP_METHODS_DECOMPOSITION) != 0;
  return policy;
}

rcsp::RadiusAssumption assumption_from(rcsp_packing kind, double c) {
  rcsp::RadiusAssumption assumption;
  switch (kind) {
    case RCSP_PACKING_OPTIMISTIC:
      assumption.kind = rcsp::PackingKind::Optimistic;
      break;
    case RCSP_PACKING_MINKOWSKI:
      assumption.kind = rcsp::PackingKind::Minkowski;
      break;
    default:
      throw std::invalid_argument("unknown packing kind");
  }
  assumption.c = c;
  return assumption;
}

}  // namespace

extern "C" {

const char* rcsp_version(void) { return "0.1.0"; }

const char* rcsp_status_name(rcsp_status status) {
  switch (status) {
    case RCSP_OK:
      return "ok";
    case RCSP_ERROR_INVALID_ARGUMENT:
      return "invalid-argument";
    case RCSP_ERROR_PRECONDITION:
      return "precondition-not-met";
    case RCSP_ERROR_DEGENERATE_SCHEME:
      return "degenerate-scheme";
    case RCSP_ERROR_UNSUPPORTED:
      return "unsupported";
    case RCSP_ERROR_NO_CONVERGENCE:
      return "no-convergence";
    case RCSP_ERROR_INTERNAL:
      return "internal-error";
  }
  return "unknown";
}

const char* rcsp_method_name(int32_t method) {
  if (method < 0 || method > static_cast<int32_t>(rcsp::Method::MonteCarlo)) {
    return "unknown";
  }
  return rcsp::method_name(static_cast<rcsp::Method>(method));
}

const char* rcsp_last_error_message(void) { return g_last_error.c_str(); }

void rcsp_set_max_threads(int32_t n) { rcsp::set_max_worker_threads(n); }

rcsp_status rcsp_capacity(double eta, double* bits_per_symbol) {
  return guarded([&] {
    require(bits_per_symbol != nullptr, "null output pointer");
    *bits_per_symbol = rcsp::capacity(eta);
    return RCSP_OK;
  });
}

rcsp_status rcsp_chi2_tail(int32_t dof, double x, double* value,
                           double* log_value) {
  return guarded([&] {
    require(value != nullptr || log_value != nullptr, "null output pointer");
    const rcsp::TailProbability t = rcsp::chi2_tail(dof, x);
    if (value != nullptr) *value = t.value;
    if (log_value != nullptr) *log_value = t.log_value;
    return RCSP_OK;
  });
}

rcsp_status rcsp_chi2_cdf(int32_t dof, double x, double* value) {
  return guarded([&] {
    require(value != nullptr, "null output pointer");
    *value = rcsp::chi2_cdf(dof, x);
    return RCSP_OK;
  });
}

rcsp_status rcsp_chi2_pdf(int32_t dof, double x, double* value) {
  return guarded([&] {
    require(value != nullptr, "null output pointer");
    *value = rcsp::chi2_pdf(dof, x);
    return RCSP_OK;
  });
}

rcsp_status rcsp_inglot_envelope(int32_t k, double r, double* value) {
  return guarded([&] {
    require(value != nullptr, "null output pointer");
    *value = rcsp::inglot_envelope(k, r);
    return RCSP_OK;
  });
}

rcsp_status rcsp_inglot_tail_bounds(int32_t k, double r, double* lower,
                                    double* upper) {
  return guarded([&] {
    require(lower != nullptr && upper != nullptr, "null output pointer");
    const rcsp::BoundInterval b = rcsp::inglot_tail_bounds(k, r);
    *lower = b.lower;
    *upper = b.upper;
    return RCSP_OK;
  });
}

rcsp_status rcsp_chernoff_pair_upper(int32_t n_prev, int32_t i_next,
                                     double r_prev_sq, double r_next_sq,
                                     double* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = rcsp::chernoff_pair_upper(n_prev, i_next, r_prev_sq, r_next_sq);
    return RCSP_OK;
  });
}

rcsp_status rcsp_chernoff_pair_lower(int32_t n_prev, int32_t i_next,
                                     double r_prev_sq, double r_next_sq,
                                     double* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = rcsp::chernoff_pair_lower(n_prev, i_next, r_prev_sq, r_next_sq);
    return RCSP_OK;
  });
}

rcsp_status rcsp_closed_form_pair_upper(int32_t n_prev, int32_t i_next,
                                        double r_prev_sq, double r_next_sq,
                                        double* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = rcsp::closed_form_pair_upper(n_prev, i_next, r_prev_sq, r_next_sq);
    return RCSP_OK;
  });
}

rcsp_status rcsp_inglot_pair_bounds(int32_t n1, int32_t i2, double r1_sq,
                                    double r2_sq, double* lower,
                                    double* upper) {
  return guarded([&] {
    require(lower != nullptr && upper != nullptr, "null output pointer");
    const rcsp::BoundInterval b = rcsp::inglot_pair_bounds(n1, i2, r1_sq, r2_sq);
    *lower = b.lower;
    *upper = b.upper;
    return RCSP_OK;
  });
}

rcsp_status rcsp_exact_pair_integral(int32_t n1, int32_t i2, double r1_sq,
                                     double r2_sq, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = rcsp::exact_pair_integral(n1, i2, r1_sq, r2_sq);
    return RCSP_OK;
  });
}

rcsp_status rcsp_scheme_create(double snr_db, int32_t k_bits,
                               const int32_t* increments, size_t count,
                               rcsp_scheme** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    require(increments != nullptr && count > 0, "null or empty increments");
    std::vector<int> inc(increments, increments + count);
    rcsp::AnalysisConfig config{rcsp::ChannelConfig::from_snr_db(snr_db),
                                rcsp::MessageSet(k_bits),
                                rcsp::TransmissionSchedule(std::move(inc)),
                                rcsp::RadiusAssumption{}};
    *out = new rcsp_scheme(std::move(config));
    return RCSP_OK;
  });
}

rcsp_status rcsp_scheme_create_from_json(const char* json_text,
                                         rcsp_scheme** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    require(json_text != nullptr, "null config text");
    *out = new rcsp_scheme(rcsp::parse_config(json_text));
    return RCSP_OK;
  });
}

rcsp_status rcsp_scheme_one_bit(double snr_db, int32_t k_bits,
                                rcsp_scheme** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    rcsp::AnalysisConfig config{rcsp::ChannelConfig::from_snr_db(snr_db),
                                rcsp::MessageSet(k_bits),
                                rcsp::one_bit_scheme(k_bits),
                                rcsp::RadiusAssumption{}};
    *out = new rcsp_scheme(std::move(config));
    return RCSP_OK;
  });
}

void rcsp_scheme_destroy(rcsp_scheme* scheme) { delete scheme; }

rcsp_status rcsp_scheme_set_packing(rcsp_scheme* scheme, rcsp_packing kind,
                                    double c) {
  return guarded([&] {
    require(scheme != nullptr, "null scheme");
    const rcsp::RadiusAssumption previous = scheme->config.assumption;
    scheme->config.assumption = assumption_from(kind, c);
    try {
      scheme->refresh_radii();
    } catch (...) {
      scheme->config.assumption = previous;  // leave the handle usable
      throw;
    }
    return RCSP_OK;
  });
}

rcsp_status rcsp_scheme_to_json(const rcsp_scheme* scheme, char* buffer,
                                size_t buffer_size, size_t* needed) {
  return guarded([&] {
    require(scheme != nullptr, "null scheme");
    require(needed != nullptr, "null output pointer");
    const std::string text = rcsp::config_to_json_text(scheme->config);
    *needed = text.size();
    if (buffer != nullptr && buffer_size > 0) {
      const size_t n = std::min(buffer_size - 1, text.size());
      std::memcpy(buffer, text.data(), n);
      buffer[n] = '\0';
    }
    return RCSP_OK;
  });
}

int32_t rcsp_scheme_transmissions(const rcsp_scheme* scheme) {
  return scheme != nullptr ? scheme->m() : 0;
}

int32_t rcsp_scheme_k_bits(const rcsp_scheme* scheme) {
  return scheme != nullptr ? scheme->config.messages.k_bits : 0;
}

double rcsp_scheme_snr_db(const rcsp_scheme* scheme) {
  return scheme != nullptr ? scheme->config.channel.snr_db : 0.0;
}

double rcsp_scheme_capacity(const rcsp_scheme* scheme) {
  return scheme != nullptr ? rcsp::capacity(scheme->config.channel.eta) : 0.0;
}

rcsp_status rcsp_scheme_increments(const rcsp_scheme* scheme, int32_t* out,
                                   size_t count) {
  return guarded([&] {
    require(scheme != nullptr, "null scheme");
    require(out != nullptr, "null output pointer");
    require(count == static_cast<size_t>(scheme->m()),
            "output length must equal the transmission count");
    const auto& inc = scheme->config.schedule.increments();
    std::copy(inc.begin(), inc.end(), out);
    return RCSP_OK;
  });
}

rcsp_status rcsp_scheme_blocklengths(const rcsp_scheme* scheme, int32_t* out,
                                     size_t count) {
  return guarded([&] {
    require(scheme != nullptr, "null scheme");
    require(out != nullptr, "null output pointer");
    require(count == static_cast<size_t>(scheme->m()),
            "output length must equal the transmission count");
    const auto& cum = scheme->config.schedule.blocklengths();
    std::copy(cum.begin(), cum.end(), out);
    return RCSP_OK;
  });
}

rcsp_status rcsp_scheme_radii(const rcsp_scheme* scheme, double* r_squared,
                              size_t count) {
  return guarded([&] {
    require(scheme != nullptr, "null scheme");
    require(r_squared != nullptr, "null output pointer");
    require(count == scheme->radii.r_squared.size(),
            "output length must equal the transmission count");
    std::copy(scheme->radii.r_squared.begin(), scheme->radii.r_squared.end(),
              r_squared);
    return RCSP_OK;
  });
}

rcsp_status rcsp_scheme_bound_series(const rcsp_scheme* scheme,
                                     uint32_t method_mask, rcsp_bound* out,
                                     size_t count, int32_t* clamp_events) {
  return guarded([&] {
    require(scheme != nullptr, "null scheme");
    require(out != nullptr, "null output pointer");
    require(count == static_cast<size_t>(scheme->m() + 1),
            "output length must be transmissions + 1 (P_0 included)");
    const rcsp::SeriesResult series = rcsp::joint_series_bounds(
        scheme->config.schedule, scheme->radii, policy_from_mask(method_mask));
    for (size_t i = 0; i < count; ++i) {
      out[i].lower = series.bounds[i].lower;
      out[i].upper = series.bounds[i].upper;
      out[i].method_lower = static_cast<int32_t>(series.bounds[i].method_lower);
      out[i].method_upper = static_cast<int32_t>(series.bounds[i].method_upper);
    }
    if (clamp_events != nullptr) *clamp_events = series.clamp_events;
    return RCSP_OK;
  });
}

rcsp_status rcsp_scheme_mc_series(const rcsp_scheme* scheme, uint64_t samples,
                                  uint64_t seed, rcsp_mc_stat* out,
                                  size_t count, double* round_symbols_mean,
                                  double* round_symbols_std_error) {
  return guarded([&] {
    require(scheme != nullptr, "null scheme");
    require(out != nullptr, "null output pointer");
    require(count == static_cast<size_t>(scheme->m()),
            "output length must equal the transmission count");
    const rcsp::McSeries mc = rcsp::mc_joint_series(scheme->config.schedule,
                                                    scheme->radii, samples, seed);
    for (size_t i = 0; i < count; ++i) {
      out[i].mean = mc.joint[i].mean;
      out[i].std_error = mc.joint[i].std_error;
    }
    if (round_symbols_mean != nullptr) {
      *round_symbols_mean = mc.round_symbols_mean;
    }
    if (round_symbols_std_error != nullptr) {
      *round_symbols_std_error = mc.round_symbols_std_error;
    }
    return RCSP_OK;
  });
}

rcsp_status rcsp_scheme_exact_prefix(const rcsp_scheme* scheme, int32_t prefix,
                                     double* out) {
  return guarded([&] {
    require(scheme != nullptr, "null scheme");
    require(out != nullptr, "null output pointer");
    *out = rcsp::exact_prefix_integral(scheme->config.schedule, scheme->radii,
                                       prefix);
    return RCSP_OK;
  });
}

rcsp_status rcsp_scheme_performance(const rcsp_scheme* scheme,
                                    const rcsp_bound* series, size_t count,
                                    rcsp_performance* out) {
  return guarded([&] {
    require(scheme != nullptr, "null scheme");
    require(series != nullptr, "null series");
    require(out != nullptr, "null output pointer");
    require(count == static_cast<size_t>(scheme->m() + 1),
            "series length must be transmissions + 1 (P_0 included)");
    std::vector<rcsp::BoundInterval> bounds(count);
    for (size_t i = 0; i < count; ++i) {
      bounds[i].lower = series[i].lower;
      bounds[i].upper = series[i].upper;
      bounds[i].method_lower = static_cast<rcsp::Method>(series[i].method_lower);
      bounds[i].method_upper = static_cast<rcsp::Method>(series[i].method_upper);
    }
    const rcsp::PerformanceEstimate estimate = rcsp::performance_interval(
        bounds, scheme->config.schedule.increments(),
        scheme->config.messages.k_bits);
    out->latency_lower = estimate.latency.lower;
    out->latency_upper = estimate.latency.upper;
    out->throughput_lower = estimate.throughput.lower;
    out->throughput_upper = estimate.throughput.upper;
    out->vacuous_upper = rcsp::vacuous_throughput_upper(
                             estimate, rcsp::capacity(scheme->config.channel.eta))
                             ? 1
                             : 0;
    return RCSP_OK;
  });
}

rcsp_status rcsp_scheme_expected_latency(const rcsp_scheme* scheme,
                                         const double* series, size_t count,
                                         double* out) {
  return guarded([&] {
    require(scheme != nullptr, "null scheme");
    require(series != nullptr, "null series");
    require(out != nullptr, "null output pointer");
    require(count == static_cast<size_t>(scheme->m() + 1),
            "series length must be transmissions + 1 (P_0 included)");
    *out = rcsp::expected_latency(std::span<const double>(series, count),
                                  scheme->config.schedule.increments());
    return RCSP_OK;
  });
}

rcsp_status rcsp_scheme_simulate(const rcsp_scheme* scheme, uint64_t cycles,
                                 uint64_t seed, uint64_t* tau_histogram,
                                 rcsp_sim_summary* out) {
  return guarded([&] {
    require(scheme != nullptr, "null scheme");
    require(out != nullptr, "null output pointer");
    const rcsp::SimulationResult result = rcsp::simulate_decoding_time(
        scheme->config.schedule, scheme->radii, cycles, seed);
    if (tau_histogram != nullptr) {
      std::fill(tau_histogram, tau_histogram + scheme->m(), 0u);
      for (const rcsp::DecodingTimeSample& s : result.samples) {
        tau_histogram[s.tau - 1] += 1;
      }
    }
    out->mean_latency = result.summary.mean_latency;
    out->latency_std_error = result.summary.latency_std_error;
    out->latency_p50 = result.summary.latency_p50;
    out->latency_p90 = result.summary.latency_p90;
    out->latency_p99 = result.summary.latency_p99;
    out->mean_tau = result.summary.mean_tau;
    out->restarts = result.summary.restarts;
    out->cycles = result.summary.cycles;
    return RCSP_OK;
  });
}

rcsp_status rcsp_optimize(double snr_db, int32_t k_bits, int32_t m,
                          rcsp_packing kind, double c,
                          rcsp_objective objective, uint64_t budget,
                          uint64_t mc_samples, uint64_t mc_seed,
                          rcsp_scheme** out, rcsp_opt_report* report) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    rcsp::ObjectiveKind kind_cpp;
    switch (objective) {
      case RCSP_OBJECTIVE_BOUND_LOWER:
        kind_cpp = rcsp::ObjectiveKind::BoundLower;
        break;
      case RCSP_OBJECTIVE_MC_ESTIMATE:
        kind_cpp = rcsp::ObjectiveKind::McEstimate;
        break;
      default:
        throw std::invalid_argument("unknown objective");
    }
    const rcsp::ChannelConfig channel = rcsp::ChannelConfig::from_snr_db(snr_db);
    const rcsp::RadiusAssumption assumption = assumption_from(kind, c);
    rcsp::OptimizerOptions opts;
    if (budget > 0) opts.budget = budget;
    if (mc_samples > 0) opts.mc_samples = mc_samples;
    opts.mc_seed = mc_seed;
    const rcsp::OptimizationResult result = rcsp::optimize_increments(
        k_bits, m, channel, assumption, kind_cpp, opts);
    rcsp::AnalysisConfig config{channel, rcsp::MessageSet(k_bits),
                                result.schedule, assumption};
    *out = new rcsp_scheme(std::move(config));
    if (report != nullptr) {
      report->objective_value = result.objective;
      report->evaluations = result.evaluations;
      report->budget_exhausted = result.budget_exhausted ? 1 : 0;
    }
    return RCSP_OK;
  });
}

}  // extern "C"

// Command-line front end for the rcsp library: certified error/latency/
// throughput bounds, curve sweeps, and decoder simulation for incremental-
// redundancy sphere-packing schemes. All numerical work goes through the C
// API in rcsp.h; this file only parses arguments, merges configs, and formats
// output.

#include <rcsp.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using nlohmann::json;

// Thrown to unwind to main with a process exit code:
// 2 = invalid arguments/config, 3 = degenerate scheme, 1 = everything else.
struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw CliError{code, message};
}

void check(rcsp_status status) {
  if (status == RCSP_OK) return;
  int code = 1;
  if (status == RCSP_ERROR_INVALID_ARGUMENT) code = 2;
  if (status == RCSP_ERROR_DEGENERATE_SCHEME) code = 3;
  fail(code, std::string(rcsp_status_name(status)) + ": " +
                 rcsp_last_error_message());
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      const int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(2, std::string(what) + ": \"" + item + "\" is not an integer");
    }
  }
  if (out.empty()) fail(2, std::string(what) + ": empty list");
  return out;
}

struct RadiusSpec {
  std::string kind = "optimistic";
  double c = 1.0;
};

RadiusSpec parse_radius(const std::string& text) {
  RadiusSpec spec;
  const size_t colon = text.find(':');
  spec.kind = text.substr(0, colon == std::string::npos ? text.size() : colon);
  if (spec.kind != "optimistic" && spec.kind != "minkowski") {
    fail(2, "--radius must be optimistic or minkowski[:c], got \"" + text + "\"");
  }
  if (colon != std::string::npos) {
    try {
      spec.c = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      fail(2, "--radius: bad density constant in \"" + text + "\"");
    }
  }
  return spec;
}

uint32_t parse_methods(const std::string& text) {
  uint32_t mask = 0;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token == "trivial") {
      mask |= RCSP_METHODS_TRIVIAL;
    } else if (token == "chernoff-pair") {
      mask |= RCSP_METHODS_CHERNOFF_PAIR;
    } else if (token == "general-chernoff") {
      mask |= RCSP_METHODS_GENERAL_CHERNOFF;
    } else if (token == "union") {
      mask |= RCSP_METHODS_UNION_LOWER;
    } else if (token == "inglot") {
      mask |= RCSP_METHODS_INGLOT;
    } else if (token == "decomposition") {
      mask |= RCSP_METHODS_DECOMPOSITION;
    } else {
      fail(2, "--methods: unknown method \"" + token + "\"");
    }
  }
  if (mask == 0) fail(2, "--methods: empty selection");
  return mask;
}

// Owns an rcsp_scheme handle.
struct Scheme {
  rcsp_scheme* p = nullptr;
  Scheme() = default;
  explicit Scheme(rcsp_scheme* handle) : p(handle) {}
  Scheme(const Scheme&) = delete;
  Scheme& operator=(const Scheme&) = delete;
  Scheme(Scheme&& other) noexcept : p(other.p) { other.p = nullptr; }
  Scheme& operator=(Scheme&& other) noexcept {
    if (this != &other) {
      rcsp_scheme_destroy(p);
      p = other.p;
      other.p = nullptr;
    }
    return *this;
  }
  ~Scheme() { rcsp_scheme_destroy(p); }
};

// Flags shared by the subcommands that describe a single scheme. Flags
// override the corresponding config-file fields.
struct SchemeFlags {
  std::string config_path;
  std::optional<double> snr_db;
  std::optional<int> bits;
  std::optional<std::string> increments;
  std::optional<std::string> radius;

  void attach(CLI::App* app, bool per_scheme = true) {
    app->add_option("--config", config_path,
                    "JSON config file; explicit flags override its fields");
    app->add_option("--snr-db", snr_db, "channel SNR in dB");
    if (per_scheme) {
      app->add_option("--bits", bits, "message size log2(M)");
      app->add_option("--increments", increments,
                      "comma-separated per-transmission symbol counts");
    }
    app->add_option("--radius", radius,
                    "packing assumption: optimistic | minkowski[:c]");
  }

  // Merge config file and flag overrides into one config document, then let
  // the library validate it.
  Scheme build() const {
    json doc = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) fail(2, "cannot open config file \"" + config_path + "\"");
      try {
        in >> doc;
      } catch (const std::exception& e) {
        fail(2, "config: not valid JSON (" + std::string(e.what()) + ")");
      }
      if (!doc.is_object()) fail(2, "config: top level must be an object");
    }
    if (snr_db) doc["snr_db"] = *snr_db;
    if (bits) doc["k_bits"] = *bits;
    if (increments) {
      doc["increments"] = parse_int_list(*increments, "--increments");
    }
    if (radius) {
      const RadiusSpec spec = parse_radius(*radius);
      doc["radius_assumption"] = {{"kind", spec.kind}, {"c", spec.c}};
    }
    if (!doc.contains("snr_db")) fail(2, "missing --snr-db (or config snr_db)");
    if (!doc.contains("k_bits")) fail(2, "missing --bits (or config k_bits)");
    if (!doc.contains("increments")) {
      fail(2, "missing --increments (or config increments)");
    }
    rcsp_scheme* handle = nullptr;
    check(rcsp_scheme_create_from_json(doc.dump().c_str(), &handle));
    return Scheme(handle);
  }
};

struct SeriesData {
  std::vector<rcsp_bound> bounds;  // P_0..P_m
  int32_t clamp_events = 0;
  rcsp_performance perf{};
};

SeriesData compute_series(const Scheme& scheme, uint32_t mask) {
  SeriesData data;
  const int m = rcsp_scheme_transmissions(scheme.p);
  data.bounds.resize(m + 1);
  check(rcsp_scheme_bound_series(scheme.p, mask, data.bounds.data(),
                                 data.bounds.size(), &data.clamp_events));
  check(rcsp_scheme_performance(scheme.p, data.bounds.data(),
                                data.bounds.size(), &data.perf));
  return data;
}

// ---- bounds ----

int run_bounds(const SchemeFlags& flags, const std::string& methods,
               uint64_t samples, uint64_t seed, const std::string& format) {
  if (format != "json" && format != "csv") {
    fail(2, "--format must be json or csv, got \"" + format + "\"");
  }
  const uint32_t mask = methods.empty() ? RCSP_METHODS_ALL
                                        : parse_methods(methods);
  const Scheme scheme = flags.build();
  const int m = rcsp_scheme_transmissions(scheme.p);
  const double cap = rcsp_scheme_capacity(scheme.p);

  std::vector<int32_t> cum(m);
  std::vector<double> radii(m);
  check(rcsp_scheme_blocklengths(scheme.p, cum.data(), cum.size()));
  check(rcsp_scheme_radii(scheme.p, radii.data(), radii.size()));

  const SeriesData data = compute_series(scheme, mask);

  // Oracle columns: nested quadrature up to three transmissions, Monte Carlo
  // whenever samples were requested.
  const int exact_limit = std::min(m, 3);
  std::vector<double> exact(exact_limit + 1, 1.0);
  for (int i = 1; i <= exact_limit; ++i) {
    check(rcsp_scheme_exact_prefix(scheme.p, i, &exact[i]));
  }
  std::vector<rcsp_mc_stat> mc(m);
  double round_mean = NAN, round_se = NAN;
  if (samples > 0) {
    check(rcsp_scheme_mc_series(scheme.p, samples, seed, mc.data(), mc.size(),
                                &round_mean, &round_se));
  }

  if (format == "csv") {
    std::cout << "i,blocklength,r_squared,lower,upper,method_lower,"
                 "method_upper,exact,mc_mean,mc_std_error\n";
    for (int i = 1; i <= m; ++i) {
      std::cout << i << "," << cum[i - 1] << "," << fmt(radii[i - 1]) << ","
                << fmt(data.bounds[i].lower) << "," << fmt(data.bounds[i].upper)
                << "," << rcsp_method_name(data.bounds[i].method_lower) << ","
                << rcsp_method_name(data.bounds[i].method_upper) << ","
                << (i <= exact_limit ? fmt(exact[i]) : std::string()) << ","
                << (samples > 0 ? fmt(mc[i - 1].mean) : std::string()) << ","
                << (samples > 0 ? fmt(mc[i - 1].std_error) : std::string())
                << "\n";
    }
    std::cout << "# capacity " << fmt(cap) << "\n";
    std::cout << "# latency " << fmt(data.perf.latency_lower) << " "
              << fmt(data.perf.latency_upper) << "\n";
    std::cout << "# throughput " << fmt(data.perf.throughput_lower) << " "
              << fmt(data.perf.throughput_upper)
              << (data.perf.vacuous_upper ? " vacuous_upper" : "") << "\n";
    return 0;
  }

  json out;
  size_t needed = 0;
  check(rcsp_scheme_to_json(scheme.p, nullptr, 0, &needed));
  std::string cfg(needed + 1, '\0');
  check(rcsp_scheme_to_json(scheme.p, cfg.data(), cfg.size(), &needed));
  cfg.resize(needed);
  out["config"] = json::parse(cfg);
  out["capacity"] = cap;
  out["clamp_events"] = data.clamp_events;
  json series = json::array();
  for (int i = 0; i <= m; ++i) {
    json row;
    row["i"] = i;
    if (i > 0) {
      row["blocklength"] = cum[i - 1];
      row["r_squared"] = radii[i - 1];
    }
    row["lower"] = data.bounds[i].lower;
    row["upper"] = data.bounds[i].upper;
    row["method_lower"] = rcsp_method_name(data.bounds[i].method_lower);
    row["method_upper"] = rcsp_method_name(data.bounds[i].method_upper);
    if (i <= exact_limit) row["exact"] = exact[i];
    if (samples > 0 && i > 0) {
      row["mc_mean"] = mc[i - 1].mean;
      row["mc_std_error"] = mc[i - 1].std_error;
    }
    series.push_back(std::move(row));
  }
  out["series"] = std::move(series);
  out["performance"] = {{"latency_lower", data.perf.latency_lower},
                        {"latency_upper", data.perf.latency_upper},
                        {"throughput_lower", data.perf.throughput_lower},
                        {"throughput_upper", data.perf.throughput_upper},
                        {"vacuous_upper", data.perf.vacuous_upper != 0}};
  if (samples > 0) {
    out["mc"] = {{"samples", samples},
                 {"seed", seed},
                 {"round_symbols_mean", round_mean},
                 {"round_symbols_std_error", round_se}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

// ---- curve ----

int run_curve(const std::string& bits_list, const SchemeFlags& flags,
              bool optimize, bool one_bit, int step, int max_transmissions,
              const std::string& objective, uint64_t budget, uint64_t samples,
              uint64_t seed, const std::string& methods,
              const std::string& out_path) {
  const uint32_t mask = methods.empty() ? RCSP_METHODS_ALL
                                        : parse_methods(methods);
  const int modes = (optimize ? 1 : 0) + (one_bit ? 1 : 0) + (step > 0 ? 1 : 0);
  if (modes != 1) {
    fail(2, "curve needs exactly one of --optimize, --one-bit, --step");
  }
  if (!flags.snr_db) fail(2, "missing --snr-db");
  if (max_transmissions < 1) fail(2, "--max-transmissions must be positive");
  rcsp_objective obj = RCSP_OBJECTIVE_BOUND_LOWER;
  if (objective == "mc") {
    obj = RCSP_OBJECTIVE_MC_ESTIMATE;
  } else if (objective != "bound") {
    fail(2, "--objective must be bound or mc, got \"" + objective + "\"");
  }
  const RadiusSpec radius =
      flags.radius ? parse_radius(*flags.radius) : RadiusSpec{};
  const rcsp_packing packing = radius.kind == "minkowski"
                                   ? RCSP_PACKING_MINKOWSKI
                                   : RCSP_PACKING_OPTIMISTIC;

  std::ofstream file;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) fail(2, "cannot open output file \"" + out_path + "\"");
  }
  std::ostream& os = file.is_open() ? file : std::cout;

  const std::vector<int> ks = parse_int_list(bits_list, "--bits-list");
  os << "k_bits,m,increments,latency_lower,latency_upper,"
        "latency_exact_or_mc,throughput_lower,throughput_upper,"
        "capacity,flags\n";
  for (const int k : ks) {
    std::vector<std::string> row_flags;
    Scheme scheme;
    if (one_bit) {
      rcsp_scheme* handle = nullptr;
      check(rcsp_scheme_one_bit(*flags.snr_db, k, &handle));
      scheme = Scheme(handle);
    } else if (optimize) {
      rcsp_scheme* handle = nullptr;
      rcsp_opt_report report{};
      check(rcsp_optimize(*flags.snr_db, k, max_transmissions, packing,
                          radius.c, obj, budget, samples, seed, &handle,
                          &report));
      scheme = Scheme(handle);
      if (report.budget_exhausted) row_flags.push_back("budget_exhausted");
    } else {
      // Fixed-step ladder: open slightly above capacity, then add `step`
      // symbols per attempt until the rate falls to half of capacity.
      double cap = 0.0;
      check(rcsp_capacity(std::pow(10.0, *flags.snr_db / 10.0), &cap));
      const int first = std::max(1, static_cast<int>(std::lround(0.9 * k / cap)));
      const int target = static_cast<int>(std::ceil(2.0 * k / cap));
      std::vector<int32_t> inc{first};
      int total = first;
      while (total < target &&
             static_cast<int>(inc.size()) < max_transmissions) {
        inc.push_back(step);
        total += step;
      }
      rcsp_scheme* handle = nullptr;
      check(rcsp_scheme_create(*flags.snr_db, k, inc.data(), inc.size(),
                               &handle));
      scheme = Scheme(handle);
    }
    // rcsp_optimize already applies the packing; the other modes default to
    // optimistic and need it set afterwards.
    if (!optimize &&
        (packing != RCSP_PACKING_OPTIMISTIC || radius.c != 1.0)) {
      check(rcsp_scheme_set_packing(scheme.p, packing, radius.c));
    }

    const int m = rcsp_scheme_transmissions(scheme.p);
    std::vector<int32_t> inc(m);
    check(rcsp_scheme_increments(scheme.p, inc.data(), inc.size()));
    const SeriesData data = compute_series(scheme, mask);

    // Reference latency: exact nested quadrature when it is supported,
    // otherwise the seeded Monte Carlo estimate.
    std::string reference;
    if (m <= 3) {
      std::vector<double> series(m + 1);
      series[0] = 1.0;
      for (int i = 1; i <= m; ++i) {
        check(rcsp_scheme_exact_prefix(scheme.p, i, &series[i]));
      }
      double latency = 0.0;
      check(rcsp_scheme_expected_latency(scheme.p, series.data(),
                                         series.size(), &latency));
      reference = fmt(latency);
    } else if (samples > 0) {
      std::vector<rcsp_mc_stat> mc(m);
      check(rcsp_scheme_mc_series(scheme.p, samples, seed, mc.data(), mc.size(),
                                  nullptr, nullptr));
      std::vector<double> series(m + 1);
      series[0] = 1.0;
      for (int i = 1; i <= m; ++i) series[i] = mc[i - 1].mean;
      double latency = 0.0;
      check(rcsp_scheme_expected_latency(scheme.p, series.data(),
                                         series.size(), &latency));
      reference = fmt(latency);
    }
    if (data.perf.vacuous_upper) row_flags.push_back("vacuous_upper");

    std::string inc_text;
    for (int i = 0; i < m; ++i) {
      if (i > 0) inc_text += "|";
      inc_text += std::to_string(inc[i]);
    }
    std::string flag_text;
    for (size_t i = 0; i < row_flags.size(); ++i) {
      if (i > 0) flag_text += "|";
      flag_text += row_flags[i];
    }
    os << k << "," << m << "," << inc_text << ","
       << fmt(data.perf.latency_lower) << "," << fmt(data.perf.latency_upper)
       << "," << reference << "," << fmt(data.perf.throughput_lower) << ","
       << fmt(data.perf.throughput_upper) << ","
       << fmt(rcsp_scheme_capacity(scheme.p)) << "," << flag_text << "\n";
  }
  return 0;
}

// ---- simulate ----

int run_simulate(const SchemeFlags& flags, uint64_t cycles, uint64_t seed,
                 bool histogram) {
  const Scheme scheme = flags.build();
  const int m = rcsp_scheme_transmissions(scheme.p);
  std::vector<uint64_t> tau_hist(m, 0);
  rcsp_sim_summary summary{};
  check(rcsp_scheme_simulate(scheme.p, cycles, seed,
                             histogram ? tau_hist.data() : nullptr, &summary));
  std::cout << "cycles " << summary.cycles << "  seed " << seed << "\n";
  std::cout << "mean_latency " << fmt(summary.mean_latency) << "  std_error "
            << fmt(summary.latency_std_error) << "\n";
  std::cout << "p50 " << fmt(summary.latency_p50) << "  p90 "
            << fmt(summary.latency_p90) << "  p99 " << fmt(summary.latency_p99)
            << "\n";
  std::cout << "mean_tau " << fmt(summary.mean_tau) << "  restarts "
            << summary.restarts << "\n";
  if (histogram) {
    for (int i = 0; i < m; ++i) {
      std::cout << "tau " << (i + 1) << " count " << tau_hist[i] << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified bounds for incremental-redundancy sphere-packing "
               "schemes over AWGN with feedback"};
  app.require_subcommand(1);

  // bounds
  auto* bounds = app.add_subcommand(
      "bounds", "certified joint error bounds with oracle cross-checks");
  SchemeFlags bounds_flags;
  bounds_flags.attach(bounds);
  std::string bounds_methods;
  uint64_t bounds_samples = 100000;
  uint64_t bounds_seed = 20260822;
  std::string bounds_format = "json";
  bounds->add_option("--methods", bounds_methods,
                     "comma list: trivial,chernoff-pair,general-chernoff,"
                     "union,inglot,decomposition");
  bounds->add_option("--samples", bounds_samples,
                     "Monte Carlo cross-check samples (0 = off)");
  bounds->add_option("--seed", bounds_seed, "Monte Carlo seed");
  bounds->add_option("--format", bounds_format, "output format: json | csv");

  // curve
  auto* curve = app.add_subcommand(
      "curve", "CSV latency/throughput curve over message sizes");
  SchemeFlags curve_flags;
  curve_flags.attach(curve, /*per_scheme=*/false);
  std::string curve_bits = "16,32,64,128,256";
  bool curve_optimize = false;
  bool curve_one_bit = false;
  int curve_step = 0;
  int curve_max_transmissions = 5;
  std::string curve_objective = "bound";
  uint64_t curve_budget = 2000;
  uint64_t curve_samples = 100000;
  uint64_t curve_seed = 20260822;
  std::string curve_methods;
  std::string curve_out;
  curve->add_option("--bits-list", curve_bits, "comma list of message sizes");
  curve->add_flag("--optimize", curve_optimize,
                  "optimize the schedule at --max-transmissions attempts");
  curve->add_flag("--one-bit", curve_one_bit,
                  "finest-increment ladder (k symbols, then 1 per attempt)");
  curve->add_option("--step", curve_step,
                    "fixed ladder: start slightly above capacity, this many "
                    "symbols per later attempt");
  curve->add_option("--max-transmissions", curve_max_transmissions,
                    "attempt count for --optimize; ladder cap for --step");
  curve->add_option("--objective", curve_objective,
                    "optimizer objective: bound | mc");
  curve->add_option("--budget", curve_budget, "optimizer evaluation budget");
  curve->add_option("--samples", curve_samples,
                    "samples for the latency reference column (0 = off)");
  curve->add_option("--seed", curve_seed, "Monte Carlo seed");
  curve->add_option("--methods", curve_methods, "bounding methods (see bounds)");
  curve->add_option("--out", curve_out, "output CSV path (default stdout)");

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "simulate the restart decoder and report latency statistics");
  SchemeFlags sim_flags;
  sim_flags.attach(simulate);
  uint64_t sim_cycles = 100000;
  uint64_t sim_seed = 20260822;
  bool sim_histogram = false;
  simulate->add_option("--cycles", sim_cycles, "decoded messages to simulate");
  simulate->add_option("--seed", sim_seed, "simulation seed");
  simulate->add_flag("--histogram", sim_histogram,
                     "per-transmission first-success counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return 2;
  }

  try {
    if (app.got_subcommand(bounds)) {
      return run_bounds(bounds_flags, bounds_methods, bounds_samples,
                        bounds_seed, bounds_format);
    }
    if (app.got_subcommand(curve)) {
      return run_curve(curve_bits, curve_flags, curve_optimize, curve_one_bit,
                       curve_step, curve_max_transmissions, curve_objective,
                       curve_budget, curve_samples, curve_seed, curve_methods,
                       curve_out);
    }
    if (app.got_subcommand(simulate)) {
      return run_simulate(sim_flags, sim_cycles, sim_seed, sim_histogram);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

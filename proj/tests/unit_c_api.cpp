// Exercises the shared library strictly through include/rcsp.h, the way an
// FFI consumer would. The numerical substance is certified by the other unit
// suites; here the subject is the plumbing: status mapping, handle lifecycle,
// the buffer protocols, and out-parameters landing where they should. No C++
// internals are included on purpose.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "rcsp.h"

namespace {

bool close_rel(double a, double b, double rel) {
  return std::fabs(a - b) <=
         rel * std::max({1e-300, std::fabs(a), std::fabs(b)});
}

std::string last_error() { return rcsp_last_error_message(); }

// RAII so a failing CHECK mid-case cannot leak a handle.
struct SchemeHandle {
  rcsp_scheme* ptr = nullptr;
  SchemeHandle() = default;
  SchemeHandle(SchemeHandle&& other) noexcept : ptr(other.ptr) {
    other.ptr = nullptr;
  }
  SchemeHandle(const SchemeHandle&) = delete;
  SchemeHandle& operator=(const SchemeHandle&) = delete;
  SchemeHandle& operator=(SchemeHandle&&) = delete;
  ~SchemeHandle() { rcsp_scheme_destroy(ptr); }
  rcsp_scheme** out() { return &ptr; }
  operator rcsp_scheme*() const { return ptr; }
};

// 2 dB, k = 16, increments [32, 8, 8]: the same worked instance the oracle
// suite froze its references for.
SchemeHandle make_worked() {
  SchemeHandle s;
  const int32_t inc[] = {32, 8, 8};
  REQUIRE(rcsp_scheme_create(2.0, 16, inc, 3, s.out()) == RCSP_OK);
  return s;
}

}  // namespace

TEST_CASE("version and name tables") {
  CHECK(rcsp_version() != nullptr);
  CHECK(std::strlen(rcsp_version()) > 0);

  CHECK(std::string(rcsp_status_name(RCSP_OK)) == "ok");
  CHECK(std::string(rcsp_status_name(RCSP_ERROR_INVALID_ARGUMENT)) ==
        "invalid-argument");
  CHECK(std::string(rcsp_status_name(RCSP_ERROR_PRECONDITION)) ==
        "precondition-not-met");
  CHECK(std::string(rcsp_status_name(RCSP_ERROR_DEGENERATE_SCHEME)) ==
        "degenerate-scheme");
  CHECK(std::string(rcsp_status_name(RCSP_ERROR_UNSUPPORTED)) == "unsupported");
  CHECK(std::string(rcsp_status_name(RCSP_ERROR_NO_CONVERGENCE)) ==
        "no-convergence");
  CHECK(std::string(rcsp_status_name(RCSP_ERROR_INTERNAL)) == "internal-error");
  CHECK(std::string(rcsp_status_name(static_cast<rcsp_status>(99))) ==
        "unknown");

  const char* expected[] = {"exact",       "trivial-single", "chernoff-pair",
                            "general-chernoff", "union-lower", "inglot-pair",
                            "decomposition",    "monte-carlo"};
  for (int32_t m = 0; m < 8; ++m) {
    CHECK(std::string(rcsp_method_name(m)) == expected[m]);
  }
  CHECK(std::string(rcsp_method_name(-1)) == "unknown");
  CHECK(std::string(rcsp_method_name(8)) == "unknown");
}

TEST_CASE("last error message tracks the most recent failure") {
  CHECK(rcsp_capacity(1.0, nullptr) == RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(last_error() == "null output pointer");

  double lo = 0.0;
  double hi = 0.0;
  CHECK(rcsp_inglot_tail_bounds(8, 5.0, &lo, &hi) == RCSP_ERROR_PRECONDITION);
  const std::string precond = last_error();
  CHECK(!precond.empty());
  CHECK(precond != "null output pointer");

  // A successful call does not clear the slot; the message stays valid until
  // the next failing call on this thread.
  double cap = 0.0;
  CHECK(rcsp_capacity(1.0, &cap) == RCSP_OK);
  CHECK(last_error() == precond);
}

TEST_CASE("special function entry points honor their contracts") {
  double cap = 0.0;
  REQUIRE(rcsp_capacity(std::pow(10.0, 0.2), &cap) == RCSP_OK);
  CHECK(close_rel(cap, 0.6850523348754931, 1e-14));
  REQUIRE(rcsp_capacity(1.0, &cap) == RCSP_OK);
  CHECK(cap == 0.5);

  double value = 0.0;
  double log_value = 0.0;
  REQUIRE(rcsp_chi2_tail(4, -1.0, &value, &log_value) == RCSP_OK);
  CHECK(value == 1.0);
  CHECK(log_value == 0.0);
  // Either out-pointer may be omitted, but not both.
  REQUIRE(rcsp_chi2_tail(4, 7.5, &value, nullptr) == RCSP_OK);
  REQUIRE(rcsp_chi2_tail(4, 7.5, nullptr, &log_value) == RCSP_OK);
  CHECK(close_rel(std::log(value), log_value, 1e-12));
  CHECK(rcsp_chi2_tail(4, 7.5, nullptr, nullptr) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_chi2_tail(0, 7.5, &value, nullptr) ==
        RCSP_ERROR_INVALID_ARGUMENT);

  double cdf = 0.0;
  REQUIRE(rcsp_chi2_cdf(5, 7.5, &cdf) == RCSP_OK);
  REQUIRE(rcsp_chi2_tail(5, 7.5, &value, nullptr) == RCSP_OK);
  CHECK(close_rel(cdf + value, 1.0, 1e-12));
  double pdf = 0.0;
  REQUIRE(rcsp_chi2_pdf(2, 1.0, &pdf) == RCSP_OK);
  CHECK(close_rel(pdf, 0.5 * std::exp(-0.5), 1e-14));

  // E_2(4) = exp(-(2 + log 2)/2) = e^-1 / sqrt 2, and the sandwich ends are
  // E/2 and E/sqrt(pi) (the r/(r-k+2) factor is 1 here).
  double env = 0.0;
  REQUIRE(rcsp_inglot_envelope(2, 4.0, &env) == RCSP_OK);
  CHECK(close_rel(env, std::exp(-1.0) / std::sqrt(2.0), 1e-14));
  double lo = 0.0;
  double hi = 0.0;
  REQUIRE(rcsp_inglot_tail_bounds(2, 4.0, &lo, &hi) == RCSP_OK);
  CHECK(close_rel(lo, 0.5 * env, 1e-14));
  CHECK(close_rel(hi, env / std::sqrt(std::acos(-1.0)), 1e-13));
  REQUIRE(rcsp_chi2_tail(2, 4.0, &value, nullptr) == RCSP_OK);
  CHECK(lo <= value);
  CHECK(value <= hi);

  CHECK(rcsp_inglot_envelope(1, 4.0, &env) == RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_inglot_envelope(2, 0.0, &env) == RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_inglot_tail_bounds(8, 5.0, &lo, &hi) == RCSP_ERROR_PRECONDITION);
  CHECK(rcsp_inglot_tail_bounds(2, 4.0, nullptr, &hi) ==
        RCSP_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("pair primitives bracket the exact integral through the C layer") {
  const double r1 = 41.35829107937782;
  const double r2 = 59.38525116046231;
  double exact = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double closed = 0.0;
  REQUIRE(rcsp_exact_pair_integral(32, 8, r1, r2, &exact) == RCSP_OK);
  REQUIRE(rcsp_chernoff_pair_lower(32, 8, r1, r2, &lower) == RCSP_OK);
  REQUIRE(rcsp_chernoff_pair_upper(32, 8, r1, r2, &upper) == RCSP_OK);
  REQUIRE(rcsp_closed_form_pair_upper(32, 8, r1, r2, &closed) == RCSP_OK);
  CHECK(close_rel(exact, 0.023082719953910532, 1e-8));
  CHECK(lower <= exact);
  CHECK(exact <= upper);
  CHECK(upper <= closed * (1.0 + 1e-12));
  CHECK(lower > 0.0);

  double ing_lo = 0.0;
  double ing_hi = 0.0;
  REQUIRE(rcsp_inglot_pair_bounds(12, 20, 14.0, 40.0, &ing_lo, &ing_hi) ==
          RCSP_OK);
  REQUIRE(rcsp_exact_pair_integral(12, 20, 14.0, 40.0, &exact) == RCSP_OK);
  CHECK(close_rel(exact, 0.10631143785076172, 1e-8));
  CHECK(ing_lo <= exact);
  CHECK(exact <= ing_hi);

  // 10 >= 11 - 4 + 2: outside the envelope window.
  CHECK(rcsp_inglot_pair_bounds(4, 4, 10.0, 11.0, &ing_lo, &ing_hi) ==
        RCSP_ERROR_PRECONDITION);
  CHECK(rcsp_inglot_pair_bounds(4, 1, 1.0, 5.0, &ing_lo, &ing_hi) ==
        RCSP_ERROR_PRECONDITION);
  CHECK(rcsp_inglot_pair_bounds(0, 4, 1.0, 5.0, &ing_lo, &ing_hi) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_exact_pair_integral(32, 8, r1, r2, nullptr) ==
        RCSP_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("scheme lifecycle and accessors") {
  SchemeHandle s = make_worked();
  CHECK(rcsp_scheme_transmissions(s) == 3);
  CHECK(rcsp_scheme_k_bits(s) == 16);
  CHECK(rcsp_scheme_snr_db(s) == 2.0);
  double cap = 0.0;
  REQUIRE(rcsp_capacity(std::pow(10.0, 0.2), &cap) == RCSP_OK);
  CHECK(rcsp_scheme_capacity(s) == cap);

  int32_t inc[3] = {0, 0, 0};
  REQUIRE(rcsp_scheme_increments(s, inc, 3) == RCSP_OK);
  CHECK(inc[0] == 32);
  CHECK(inc[1] == 8);
  CHECK(inc[2] == 8);
  int32_t cum[3] = {0, 0, 0};
  REQUIRE(rcsp_scheme_blocklengths(s, cum, 3) == RCSP_OK);
  CHECK(cum[0] == 32);
  CHECK(cum[1] == 40);
  CHECK(cum[2] == 48);
  CHECK(rcsp_scheme_increments(s, inc, 2) == RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(last_error().find("transmission count") != std::string::npos);

  double r[3] = {0.0, 0.0, 0.0};
  REQUIRE(rcsp_scheme_radii(s, r, 3) == RCSP_OK);
  CHECK(close_rel(r[0], 41.35829107937782, 1e-12));
  CHECK(close_rel(r[1], 59.38525116046231, 1e-12));
  CHECK(close_rel(r[2], 78.16227227788121, 1e-12));
  CHECK(rcsp_scheme_radii(s, r, 4) == RCSP_ERROR_INVALID_ARGUMENT);

  // Null handles are inert for the accessors and for destroy.
  CHECK(rcsp_scheme_transmissions(nullptr) == 0);
  CHECK(rcsp_scheme_k_bits(nullptr) == 0);
  CHECK(rcsp_scheme_snr_db(nullptr) == 0.0);
  CHECK(rcsp_scheme_capacity(nullptr) == 0.0);
  rcsp_scheme_destroy(nullptr);
}

TEST_CASE("scheme creation rejects malformed input") {
  SchemeHandle s;
  const int32_t inc[] = {32, 8, 8};
  CHECK(rcsp_scheme_create(2.0, 16, inc, 0, s.out()) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_scheme_create(2.0, 16, nullptr, 3, s.out()) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_scheme_create(2.0, 16, inc, 3, nullptr) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_scheme_create(2.0, 0, inc, 3, s.out()) ==
        RCSP_ERROR_INVALID_ARGUMENT);

  const int32_t with_zero[] = {8, 0, 4};
  CHECK(rcsp_scheme_create(2.0, 16, with_zero, 3, s.out()) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(last_error().find("increment 2") != std::string::npos);

  const int32_t too_long[] = {1 << 30, 1};
  CHECK(rcsp_scheme_create(2.0, 16, too_long, 2, s.out()) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(s.ptr == nullptr);
}

TEST_CASE("json config round-trips and the buffer protocol truncates cleanly") {
  SchemeHandle s = make_worked();
  size_t needed = 0;
  REQUIRE(rcsp_scheme_to_json(s, nullptr, 0, &needed) == RCSP_OK);
  REQUIRE(needed > 0);

  std::vector<char> buffer(needed + 1, 'x');
  REQUIRE(rcsp_scheme_to_json(s, buffer.data(), buffer.size(), &needed) ==
          RCSP_OK);
  const std::string text(buffer.data());
  CHECK(text.size() == needed);
  CHECK(text.find("\"snr_db\"") != std::string::npos);
  CHECK(text.find("\"increments\"") != std::string::npos);
  CHECK(text.find("optimistic") != std::string::npos);

  // Truncation writes buffer_size - 1 bytes plus the terminator and still
  // reports the full length.
  std::vector<char> small(10, 'x');
  size_t needed_again = 0;
  REQUIRE(rcsp_scheme_to_json(s, small.data(), small.size(), &needed_again) ==
          RCSP_OK);
  CHECK(needed_again == needed);
  CHECK(small[9] == '\0');
  CHECK(std::string(small.data()) == text.substr(0, 9));
  char one = 'x';
  REQUIRE(rcsp_scheme_to_json(s, &one, 1, &needed_again) == RCSP_OK);
  CHECK(one == '\0');
  CHECK(rcsp_scheme_to_json(s, nullptr, 0, nullptr) ==
        RCSP_ERROR_INVALID_ARGUMENT);

  // The document reconstructs an identical scheme, radii included.
  SchemeHandle back;
  REQUIRE(rcsp_scheme_create_from_json(text.c_str(), back.out()) == RCSP_OK);
  CHECK(rcsp_scheme_transmissions(back) == 3);
  CHECK(rcsp_scheme_k_bits(back) == 16);
  CHECK(rcsp_scheme_snr_db(back) == rcsp_scheme_snr_db(s));
  double r_orig[3];
  double r_back[3];
  REQUIRE(rcsp_scheme_radii(s, r_orig, 3) == RCSP_OK);
  REQUIRE(rcsp_scheme_radii(back, r_back, 3) == RCSP_OK);
  for (int i = 0; i < 3; ++i) CHECK(r_back[i] == r_orig[i]);

  CHECK(rcsp_scheme_create_from_json("{ not json", back.out()) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(last_error().rfind("config: ", 0) == 0);
  CHECK(rcsp_scheme_create_from_json(
            R"({"snr_db": 2.0, "k_bits": 4, "increments": [8], "zot": 1})",
            back.out()) == RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(last_error().find("zot") != std::string::npos);
  CHECK(rcsp_scheme_create_from_json(nullptr, back.out()) ==
        RCSP_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("set_packing swaps radii and survives rejected input") {
  SchemeHandle s = make_worked();
  double before[3];
  REQUIRE(rcsp_scheme_radii(s, before, 3) == RCSP_OK);

  // Minkowski at c = 1 scales every squared radius by exactly one half.
  REQUIRE(rcsp_scheme_set_packing(s, RCSP_PACKING_MINKOWSKI, 1.0) == RCSP_OK);
  double after[3];
  REQUIRE(rcsp_scheme_radii(s, after, 3) == RCSP_OK);
  for (int i = 0; i < 3; ++i) CHECK(after[i] == 0.5 * before[i]);

  size_t needed = 0;
  REQUIRE(rcsp_scheme_to_json(s, nullptr, 0, &needed) == RCSP_OK);
  std::vector<char> buffer(needed + 1);
  REQUIRE(rcsp_scheme_to_json(s, buffer.data(), buffer.size(), &needed) ==
          RCSP_OK);
  CHECK(std::string(buffer.data()).find("minkowski") != std::string::npos);

  // Rejected updates must leave the handle in its previous state.
  CHECK(rcsp_scheme_set_packing(s, static_cast<rcsp_packing>(99), 1.0) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_scheme_set_packing(s, RCSP_PACKING_MINKOWSKI, -1.0) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  double still[3];
  REQUIRE(rcsp_scheme_radii(s, still, 3) == RCSP_OK);
  for (int i = 0; i < 3; ++i) CHECK(still[i] == after[i]);
  CHECK(rcsp_scheme_set_packing(nullptr, RCSP_PACKING_OPTIMISTIC, 1.0) ==
        RCSP_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("bound series validates the count and reports certified intervals") {
  SchemeHandle s = make_worked();
  std::vector<rcsp_bound> series(4);
  int32_t clamps = -1;
  REQUIRE(rcsp_scheme_bound_series(s, RCSP_METHODS_ALL, series.data(), 4,
                                   &clamps) == RCSP_OK);
  CHECK(clamps >= 0);
  CHECK(series[0].lower == 1.0);
  CHECK(series[0].upper == 1.0);
  CHECK(series[0].method_lower == RCSP_METHOD_EXACT);
  CHECK(series[0].method_upper == RCSP_METHOD_EXACT);

  // The first joint probability is a plain chi-square tail, reported exactly.
  double tail = 0.0;
  double radii[3];
  REQUIRE(rcsp_scheme_radii(s, radii, 3) == RCSP_OK);
  REQUIRE(rcsp_chi2_tail(32, radii[0], &tail, nullptr) == RCSP_OK);
  CHECK(series[1].lower == tail);
  CHECK(series[1].upper == tail);
  CHECK(series[1].method_lower == RCSP_METHOD_EXACT);

  for (int i = 0; i <= 3; ++i) {
    CHECK(series[i].lower >= 0.0);
    CHECK(series[i].lower <= series[i].upper);
    CHECK(series[i].upper <= 1.0);
    CHECK(series[i].method_lower >= 0);
    CHECK(series[i].method_lower <= 7);
    CHECK(series[i].method_upper >= 0);
    CHECK(series[i].method_upper <= 7);
    if (i > 0) CHECK(series[i].upper <= series[i - 1].upper);
  }

  // A wider method mask can only tighten the interval.
  std::vector<rcsp_bound> narrow(4);
  REQUIRE(rcsp_scheme_bound_series(s, RCSP_METHODS_TRIVIAL, narrow.data(), 4,
                                   nullptr) == RCSP_OK);
  for (int i = 0; i <= 3; ++i) {
    CHECK(series[i].lower >= narrow[i].lower);
    CHECK(series[i].upper <= narrow[i].upper);
  }

  // An empty mask leaves only the vacuous [0, 1] interval past the exact head.
  std::vector<rcsp_bound> vacuous(4);
  REQUIRE(rcsp_scheme_bound_series(s, 0, vacuous.data(), 4, nullptr) ==
          RCSP_OK);
  CHECK(vacuous[1].lower == tail);
  CHECK(vacuous[2].lower == 0.0);
  CHECK(vacuous[2].upper == tail);  // running-min carries the exact head down
  CHECK(vacuous[3].lower == 0.0);

  CHECK(rcsp_scheme_bound_series(s, RCSP_METHODS_ALL, series.data(), 3,
                                 nullptr) == RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(last_error().find("transmissions + 1") != std::string::npos);
  CHECK(rcsp_scheme_bound_series(s, RCSP_METHODS_ALL, nullptr, 4, nullptr) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_scheme_bound_series(nullptr, RCSP_METHODS_ALL, series.data(), 4,
                                 nullptr) == RCSP_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("mc series is seed-addressed and accounts for round symbols") {
  SchemeHandle s = make_worked();
  std::vector<rcsp_mc_stat> mc(3);
  double round_mean = 0.0;
  double round_se = 0.0;
  REQUIRE(rcsp_scheme_mc_series(s, 40000, 20260822, mc.data(), 3, &round_mean,
                                &round_se) == RCSP_OK);
  for (int i = 0; i < 3; ++i) {
    CHECK(mc[i].mean >= 0.0);
    CHECK(mc[i].mean <= 1.0);
    CHECK(mc[i].std_error >= 0.0);
    if (i > 0) CHECK(mc[i].mean <= mc[i - 1].mean);
  }
  // Symbols per round: the first block always goes out, later increments only
  // when every prior attempt failed.
  const double expected_round = 32.0 + 8.0 * mc[0].mean + 8.0 * mc[1].mean;
  CHECK(close_rel(round_mean, expected_round, 1e-12));
  CHECK(round_se >= 0.0);

  // Same seed, same bits; the round-symbol out-pointers are optional.
  std::vector<rcsp_mc_stat> again(3);
  REQUIRE(rcsp_scheme_mc_series(s, 40000, 20260822, again.data(), 3, nullptr,
                                nullptr) == RCSP_OK);
  for (int i = 0; i < 3; ++i) {
    CHECK(again[i].mean == mc[i].mean);
    CHECK(again[i].std_error == mc[i].std_error);
  }

  // The cap on worker threads must not change the estimates.
  rcsp_set_max_threads(1);
  std::vector<rcsp_mc_stat> one_thread(3);
  REQUIRE(rcsp_scheme_mc_series(s, 40000, 20260822, one_thread.data(), 3,
                                nullptr, nullptr) == RCSP_OK);
  rcsp_set_max_threads(4);
  std::vector<rcsp_mc_stat> four_threads(3);
  REQUIRE(rcsp_scheme_mc_series(s, 40000, 20260822, four_threads.data(), 3,
                                nullptr, nullptr) == RCSP_OK);
  rcsp_set_max_threads(0);
  for (int i = 0; i < 3; ++i) {
    CHECK(one_thread[i].mean == mc[i].mean);
    CHECK(four_threads[i].mean == mc[i].mean);
  }

  CHECK(rcsp_scheme_mc_series(s, 40000, 1, mc.data(), 4, nullptr, nullptr) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_scheme_mc_series(s, 0, 1, mc.data(), 3, nullptr, nullptr) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_scheme_mc_series(s, 40000, 1, nullptr, 3, nullptr, nullptr) ==
        RCSP_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("exact prefixes and their supported range") {
  SchemeHandle s = make_worked();
  double p = -1.0;
  REQUIRE(rcsp_scheme_exact_prefix(s, 0, &p) == RCSP_OK);
  CHECK(p == 1.0);

  double radii[3];
  REQUIRE(rcsp_scheme_radii(s, radii, 3) == RCSP_OK);
  double tail = 0.0;
  REQUIRE(rcsp_chi2_tail(32, radii[0], &tail, nullptr) == RCSP_OK);
  REQUIRE(rcsp_scheme_exact_prefix(s, 1, &p) == RCSP_OK);
  CHECK(p == tail);

  double pair = 0.0;
  REQUIRE(rcsp_exact_pair_integral(32, 8, radii[0], radii[1], &pair) ==
          RCSP_OK);
  REQUIRE(rcsp_scheme_exact_prefix(s, 2, &p) == RCSP_OK);
  CHECK(p == pair);

  REQUIRE(rcsp_scheme_exact_prefix(s, 3, &p) == RCSP_OK);
  CHECK(close_rel(p, 0.003387674966352229, 1e-6));

  // Past the transmission count the prefix is malformed; within it but past
  // three it is a recognized-but-unsupported request.
  CHECK(rcsp_scheme_exact_prefix(s, 4, &p) == RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_scheme_exact_prefix(s, -1, &p) == RCSP_ERROR_INVALID_ARGUMENT);
  SchemeHandle deep;
  const int32_t inc[] = {32, 8, 8, 8, 8};
  REQUIRE(rcsp_scheme_create(2.0, 16, inc, 5, deep.out()) == RCSP_OK);
  CHECK(rcsp_scheme_exact_prefix(deep, 4, &p) == RCSP_ERROR_UNSUPPORTED);
}

TEST_CASE("performance propagation and the latency entry points") {
  SchemeHandle s = make_worked();
  std::vector<rcsp_bound> series(4);
  REQUIRE(rcsp_scheme_bound_series(s, RCSP_METHODS_ALL, series.data(), 4,
                                   nullptr) == RCSP_OK);
  rcsp_performance perf;
  REQUIRE(rcsp_scheme_performance(s, series.data(), 4, &perf) == RCSP_OK);
  CHECK(perf.latency_lower >= 32.0);  // the first block is always sent
  CHECK(perf.latency_lower <= perf.latency_upper);
  CHECK(close_rel(perf.throughput_lower, 16.0 / perf.latency_upper, 1e-12));
  CHECK(close_rel(perf.throughput_upper, 16.0 / perf.latency_lower, 1e-12));
  // 2 dB with a rate-1/2 first block: comfortably below capacity.
  CHECK(perf.vacuous_upper == 0);

  CHECK(rcsp_scheme_performance(s, series.data(), 3, &perf) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_scheme_performance(s, nullptr, 4, &perf) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  series[0].lower = 0.5;  // P_0 must be the exact [1, 1]
  CHECK(rcsp_scheme_performance(s, series.data(), 4, &perf) ==
        RCSP_ERROR_INVALID_ARGUMENT);

  // A scheme pushed past capacity gets its throughput upper end flagged.
  SchemeHandle fast;
  const int32_t one_shot[] = {8};
  REQUIRE(rcsp_scheme_create(2.0, 16, one_shot, 1, fast.out()) == RCSP_OK);
  rcsp_bound certain[2] = {{1.0, 1.0, RCSP_METHOD_EXACT, RCSP_METHOD_EXACT},
                           {0.0, 0.0, RCSP_METHOD_EXACT, RCSP_METHOD_EXACT}};
  REQUIRE(rcsp_scheme_performance(fast, certain, 2, &perf) == RCSP_OK);
  CHECK(perf.latency_lower == 8.0);
  CHECK(perf.latency_upper == 8.0);
  CHECK(perf.throughput_upper == 2.0);
  CHECK(perf.vacuous_upper == 1);

  // Point latency: (8 + 4/2) / (1 - 1/5) on a two-step schedule.
  SchemeHandle pair;
  const int32_t two_step[] = {8, 4};
  REQUIRE(rcsp_scheme_create(2.0, 4, two_step, 2, pair.out()) == RCSP_OK);
  const double probs[] = {1.0, 0.5, 0.2};
  double latency = 0.0;
  REQUIRE(rcsp_scheme_expected_latency(pair, probs, 3, &latency) == RCSP_OK);
  CHECK(close_rel(latency, 12.5, 1e-12));

  const double stuck[] = {1.0, 1.0, 1.0};
  CHECK(rcsp_scheme_expected_latency(pair, stuck, 3, &latency) ==
        RCSP_ERROR_DEGENERATE_SCHEME);
  const double rising[] = {1.0, 0.3, 0.4};
  CHECK(rcsp_scheme_expected_latency(pair, rising, 3, &latency) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  const double headless[] = {0.9, 0.3, 0.2};
  CHECK(rcsp_scheme_expected_latency(pair, headless, 3, &latency) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_scheme_expected_latency(pair, probs, 2, &latency) ==
        RCSP_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("simulation summary, histogram, and determinism") {
  SchemeHandle s = make_worked();
  uint64_t hist[3] = {0, 0, 0};
  rcsp_sim_summary sum;
  REQUIRE(rcsp_scheme_simulate(s, 3000, 7, hist, &sum) == RCSP_OK);
  CHECK(sum.cycles == 3000);
  CHECK(hist[0] + hist[1] + hist[2] == 3000);
  // mean_tau is exactly the histogram's average success index.
  const double tau_from_hist =
      (1.0 * hist[0] + 2.0 * hist[1] + 3.0 * hist[2]) / 3000.0;
  CHECK(close_rel(sum.mean_tau, tau_from_hist, 1e-12));
  CHECK(sum.mean_latency >= 32.0);
  CHECK(sum.latency_p50 <= sum.latency_p90);
  CHECK(sum.latency_p90 <= sum.latency_p99);
  CHECK(sum.latency_std_error > 0.0);

  // Same seed reproduces the bits; the histogram is optional.
  rcsp_sim_summary again;
  REQUIRE(rcsp_scheme_simulate(s, 3000, 7, nullptr, &again) == RCSP_OK);
  CHECK(again.mean_latency == sum.mean_latency);
  CHECK(again.latency_std_error == sum.latency_std_error);
  CHECK(again.mean_tau == sum.mean_tau);
  CHECK(again.restarts == sum.restarts);

  rcsp_set_max_threads(3);
  rcsp_sim_summary threaded;
  REQUIRE(rcsp_scheme_simulate(s, 3000, 7, nullptr, &threaded) == RCSP_OK);
  rcsp_set_max_threads(0);
  CHECK(threaded.mean_latency == sum.mean_latency);

  CHECK(rcsp_scheme_simulate(s, 0, 7, nullptr, &sum) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_scheme_simulate(s, 3000, 7, hist, nullptr) ==
        RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_scheme_simulate(nullptr, 3000, 7, hist, &sum) ==
        RCSP_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("optimizer facade returns a scheme and a consistent report") {
  SchemeHandle best;
  rcsp_opt_report report;
  REQUIRE(rcsp_optimize(2.0, 12, 3, RCSP_PACKING_OPTIMISTIC, 1.0,
                        RCSP_OBJECTIVE_BOUND_LOWER, 60, 0, 0, best.out(),
                        &report) == RCSP_OK);
  CHECK(rcsp_scheme_transmissions(best) == 3);
  CHECK(rcsp_scheme_k_bits(best) == 12);
  CHECK(report.evaluations >= 1);
  CHECK(report.evaluations <= 60);
  if (report.budget_exhausted) CHECK(report.evaluations == 60);
  CHECK(report.objective_value > 0.0);
  CHECK(report.objective_value < rcsp_scheme_capacity(best));

  // The reported objective is the certified throughput lower bound of the
  // returned schedule; rescoring it must reproduce the number.
  std::vector<rcsp_bound> series(4);
  REQUIRE(rcsp_scheme_bound_series(best, RCSP_METHODS_ALL, series.data(), 4,
                                   nullptr) == RCSP_OK);
  rcsp_performance perf;
  REQUIRE(rcsp_scheme_performance(best, series.data(), 4, &perf) == RCSP_OK);
  CHECK(close_rel(perf.throughput_lower, report.objective_value, 1e-12));

  // Monte Carlo objective: the report must match a rescore with the same
  // sample budget and seed, bit for bit.
  SchemeHandle mc_best;
  REQUIRE(rcsp_optimize(2.0, 12, 3, RCSP_PACKING_OPTIMISTIC, 1.0,
                        RCSP_OBJECTIVE_MC_ESTIMATE, 40, 20000, 99,
                        mc_best.out(), &report) == RCSP_OK);
  std::vector<rcsp_mc_stat> mc(3);
  double round_mean = 0.0;
  REQUIRE(rcsp_scheme_mc_series(mc_best, 20000, 99, mc.data(), 3, &round_mean,
                                nullptr) == RCSP_OK);
  CHECK(report.objective_value == 12.0 * (1.0 - mc[2].mean) / round_mean);

  // The report pointer is optional.
  SchemeHandle quiet;
  REQUIRE(rcsp_optimize(2.0, 8, 2, RCSP_PACKING_OPTIMISTIC, 1.0,
                        RCSP_OBJECTIVE_BOUND_LOWER, 30, 0, 0, quiet.out(),
                        nullptr) == RCSP_OK);
  CHECK(rcsp_scheme_transmissions(quiet) == 2);

  SchemeHandle bad;
  CHECK(rcsp_optimize(2.0, 0, 3, RCSP_PACKING_OPTIMISTIC, 1.0,
                      RCSP_OBJECTIVE_BOUND_LOWER, 30, 0, 0, bad.out(),
                      nullptr) == RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_optimize(2.0, 12, 0, RCSP_PACKING_OPTIMISTIC, 1.0,
                      RCSP_OBJECTIVE_BOUND_LOWER, 30, 0, 0, bad.out(),
                      nullptr) == RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_optimize(2.0, 12, 3, RCSP_PACKING_OPTIMISTIC, 1.0,
                      static_cast<rcsp_objective>(7), 30, 0, 0, bad.out(),
                      nullptr) == RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_optimize(2.0, 12, 3, static_cast<rcsp_packing>(9), 1.0,
                      RCSP_OBJECTIVE_BOUND_LOWER, 30, 0, 0, bad.out(),
                      nullptr) == RCSP_ERROR_INVALID_ARGUMENT);
  CHECK(rcsp_optimize(2.0, 12, 3, RCSP_PACKING_OPTIMISTIC, 1.0,
                      RCSP_OBJECTIVE_BOUND_LOWER, 30, 0, 0, nullptr,
                      nullptr) == RCSP_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("one-bit constructor produces the finest schedule") {
  SchemeHandle s;
  REQUIRE(rcsp_scheme_one_bit(2.0, 16, s.out()) == RCSP_OK);
  CHECK(rcsp_scheme_transmissions(s) == 33);
  std::vector<int32_t> inc(33);
  REQUIRE(rcsp_scheme_increments(s, inc.data(), 33) == RCSP_OK);
  CHECK(inc[0] == 16);
  for (int i = 1; i < 33; ++i) CHECK(inc[i] == 1);
  std::vector<int32_t> cum(33);
  REQUIRE(rcsp_scheme_blocklengths(s, cum.data(), 33) == RCSP_OK);
  CHECK(cum[32] == 48);

  SchemeHandle bad;
  CHECK(rcsp_scheme_one_bit(2.0, 0, bad.out()) == RCSP_ERROR_INVALID_ARGUMENT);
}

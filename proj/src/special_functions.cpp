#include "special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "log_domain.hpp"

namespace rcsp {

namespace {

// Exact-recurrence table for log Gamma at half-integer arguments, indexed by
// twice the argument. Covers every blocklength the bound machinery meets in
// practice; larger arguments fall through to Stirling.
constexpr int kLgammaTableMax = 8192;

const std::vector<double>& lgamma_half_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLgammaTableMax + 1, 0.0);
    t[1] = kLnSqrtPi;  // Gamma(1/2) = sqrt(pi)
    t[2] = 0.0;        // Gamma(1) = 1
    for (int i = 3; i <= kLgammaTableMax; ++i) {
      // Gamma(z + 1) = z Gamma(z) with z = (i - 2) / 2
      t[i] = t[i - 2] + std::log(0.5 * (i - 2));
    }
    return t;
  }();
  return table;
}

double lgamma_stirling(double a) {
  // Stirling series; at a >= 4096 the truncation error is far below 1 ulp.
  constexpr double kHalfLn2Pi = 0.9189385332046727418;
  const double inv = 1.0 / a;
  const double inv2 = inv * inv;
  double corr = inv / 12.0 * (1.0 - inv2 / 30.0 * (1.0 - 2.0 * inv2 / 7.0));
  return (a - 0.5) * std::log(a) - a + kHalfLn2Pi + corr;
}

struct LogPQ {
  double log_p;  // log Pr(Gamma(a,1) <= x)
  double log_q;  // log Pr(Gamma(a,1) > x)
};

// Regularized incomplete gamma in log scale: lower series for x < a + 1,
// Lentz continued fraction for the upper tail otherwise. Only one side is
// computed directly; the other comes from log1mexp, so the side that is
// small always has full relative precision.
LogPQ log_reg_gamma(double a, double x, double lgamma_a) {
  const double log_prefix = a * std::log(x) - x - lgamma_a;
  if (x < a + 1.0) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (long it = 0; it < 1000000; ++it) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
    }
    double log_p = log_prefix + std::log(sum);
    if (log_p > 0.0) log_p = 0.0;  // rounding guard at p ~ 1
    return {log_p, log1mexp(log_p)};
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;  // b >= 2 - a + a = 2 > 0 on this branch
  double h = d;
  for (long i = 1; i < 1000000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  double log_q = log_prefix + std::log(h);
  if (log_q > 0.0) log_q = 0.0;
  return {log1mexp(log_q), log_q};
}

void check_dof(int dof) {
  if (dof < 1) {
    throw std::invalid_argument("chi-square degrees of freedom must be >= 1, got " +
                                std::to_string(dof));
  }
}

LogPQ chi2_log_pq(int dof, double x) {
  // x > 0 assumed; chi^2_dof is Gamma(dof/2, scale 2)
  return log_reg_gamma(0.5 * dof, 0.5 * x, lgamma_half(dof));
}

}  // namespace

double lgamma_half(int twice_a) {
  if (twice_a < 1) {
    throw std::invalid_argument("lgamma_half requires a positive argument, got " +
                                std::to_string(twice_a));
  }
  if (twice_a <= kLgammaTableMax) return lgamma_half_table()[twice_a];
  return lgamma_stirling(0.5 * twice_a);
}

TailProbability chi2_tail(int dof, double x) {
  check_dof(dof);
  if (!(x > 0.0)) return {1.0, 0.0};
  const double log_q = chi2_log_pq(dof, x).log_q;
  return {std::exp(log_q), log_q};
}

double chi2_log_tail(int dof, double x) { return chi2_tail(dof, x).log_value; }

double chi2_cdf(int dof, double x) {
  check_dof(dof);
  if (!(x > 0.0)) return 0.0;
  return std::exp(chi2_log_pq(dof, x).log_p);
}

double chi2_log_cdf(int dof, double x) {
  check_dof(dof);
  if (!(x > 0.0)) return kNegInf;
  return chi2_log_pq(dof, x).log_p;
}

double chi2_log_pdf(int dof, double x) {
  check_dof(dof);
  if (x < 0.0) return kNegInf;
  if (x == 0.0) {
    if (dof == 1) return std::numeric_limits<double>::infinity();
    if (dof == 2) return -kLn2;
    return kNegInf;
  }
  const double half_dof = 0.5 * dof;
  return (half_dof - 1.0) * std::log(x) - 0.5 * x - half_dof * kLn2 -
         lgamma_half(dof);
}

double chi2_pdf(int dof, double x) { return std::exp(chi2_log_pdf(dof, x)); }

double inglot_log_envelope(int k, double r) {
  if (k < 2) {
    throw std::invalid_argument("tail envelope requires k >= 2, got " +
                                std::to_string(k));
  }
  if (!(r > 0.0)) {
    throw std::domain_error("tail envelope requires r > 0, got " +
                            std::to_string(r));
  }
  const double kd = static_cast<double>(k);
  return -0.5 * (r - kd - (kd - 2.0) * std::log(r / kd) + std::log(kd));
}

double inglot_envelope(int k, double r) {
  return std::exp(inglot_log_envelope(k, r));
}

BoundInterval inglot_tail_bounds(int k, double r) {
  const double log_env = inglot_log_envelope(k, r);  // validates k, r
  const double excess = r - (static_cast<double>(k) - 2.0);
  if (!(excess > 0.0)) {
    throw PreconditionError(
        "tail sandwich upper factor requires r > k - 2 (k = " +
        std::to_string(k) + ", r = " + std::to_string(r) + ")");
  }
  BoundInterval b;
  b.method_lower = Method::InglotPair;
  b.method_upper = Method::InglotPair;
  b.lower = std::exp(log_env - kLn2);
  // r/(r-k+2) blows up toward the threshold; the tail is a probability, so
  // capping at 1 keeps the bound valid and tight where it matters.
  b.upper = std::exp(log_env - kLnSqrtPi + std::log(r) - std::log(excess));
  if (b.upper > 1.0) b.upper = 1.0;
  if (b.lower > b.upper) b.lower = b.upper;  // only rounding can cause this
  return b;
}

const char* method_name(Method m) {
  switch (m) {
    case Method::Exact:
      return "exact";
    case Method::TrivialSingle:
      return "trivial-single";
    case Method::ChernoffPair:
      return "chernoff-pair";
    case Method::GeneralChernoff:
      return "general-chernoff";
    case Method::UnionLower:
      return "union-lower";
    case Method::InglotPair:
      return "inglot-pair";
    case Method::Decomposition:
      return "decomposition";
    case Method::MonteCarlo:
      return "monte-carlo";
  }
  return "unknown";
}

}  // namespace rcsp

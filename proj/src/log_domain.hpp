#pragma once

#include <cmath>
#include <limits>

// Small helpers for arithmetic on natural-log-scale probabilities. The tail
// and bound computations stay in the log domain until the final exp so that
// deep-tail values (~1e-300 and below) keep full relative precision.

namespace rcsp {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kLn2 = 0.6931471805599453094;
inline constexpr double kLnPi = 1.1447298858494001741;
inline constexpr double kLnSqrtPi = 0.5723649429247000870;

// log(1 - exp(l)) for l <= 0. Splits at -ln2 to avoid cancellation on both
// sides; returns -inf at l = 0.
inline double log1mexp(double l) {
  if (l >= 0.0) return kNegInf;  // exp(l) >= 1: complement is 0 (l==0) exactly
  if (l > -kLn2) return std::log(-std::expm1(l));
  return std::log1p(-std::exp(l));
}

// log(exp(a) + exp(b)), tolerant of -inf on either side.
inline double logaddexp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = a > b ? a : b;
  double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

// log(exp(a) - exp(b)) for a >= b; -inf when they are equal or b dominates.
inline double logsubexp(double a, double b) {
  if (b == kNegInf) return a;
  if (b >= a) return kNegInf;
  return a + log1mexp(b - a);
}

}  // namespace rcsp

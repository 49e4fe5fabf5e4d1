#include "minimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rcsp {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1/phi

// Golden-section on [a, b]; assumes any minimum bracketed inside.
ScalarMinimum golden_section(const std::function<double(double)>& f, double a,
                             double b, double x_tol) {
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > x_tol * (1.0 + std::fabs(a) + std::fabs(b))) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? ScalarMinimum{x1, f1} : ScalarMinimum{x2, f2};
}

}  // namespace

ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo,
                              double hi, std::span<const double> extra_candidates,
                              int scan_points, double x_tol) {
  if (!(hi >= lo)) throw std::invalid_argument("minimize_scalar: hi < lo");
  ScalarMinimum best{lo, f(lo)};
  auto consider = [&](double x, double v) {
    if (v < best.value || (v == best.value && x < best.x)) best = {x, v};
  };
  if (hi > lo && scan_points >= 3) {
    const double step = (hi - lo) / (scan_points - 1);
    int best_idx = 0;
    for (int i = 1; i < scan_points; ++i) {
      const double x = (i == scan_points - 1) ? hi : lo + step * i;
      const double v = f(x);
      if (v < best.value) best_idx = i;
      consider(x, v);
    }
    // Refine inside the cells adjacent to the best scan point.
    const double a = lo + step * std::max(0, best_idx - 1);
    const double b = std::min(hi, lo + step * (best_idx + 1));
    if (b > a) {
      const ScalarMinimum g = golden_section(f, a, b, x_tol);
      consider(g.x, g.value);
    }
  }
  for (double c : extra_candidates) {
    const double x = std::clamp(c, lo, hi);
    consider(x, f(x));
  }
  return best;
}

}  // namespace rcsp

#pragma once

#include <functional>
#include <span>

namespace rcsp {

struct QuadratureOptions {
  double abs_tol = 1e-11;
  int max_depth = 60;  // per-segment bisection depth before giving up
  // Total integrand evaluations before refinement stops. Depth alone does not
  // bound the work: an integrand that never passes the acceptance test grows
  // the bisection tree exponentially.
  long max_evals = 2000000;
};

// Adaptive Simpson integration of f over [a, b] with Richardson correction.
// interior_knots (any order, points outside (a, b) ignored) seed the initial
// segmentation so known kinks or peaks are never straddled. Throws
// QuadratureError carrying the partial estimate if any segment still misses
// its share of the tolerance at max_depth. Returns 0 when b <= a.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, const QuadratureOptions& opts = {},
                          std::span<const double> interior_knots = {});

}  // namespace rcsp

#pragma once

#include <functional>
#include <span>

namespace rcsp {

struct ScalarMinimum {
  double x;
  double value;
};

// Minimizes f over [lo, hi]: coarse uniform scan, golden-section refinement
// around the best scan cell, then a final min over everything evaluated plus
// extra_candidates (clamped into the interval). Because every bound objective
// passed here is valid at *any* parameter value, returning the best evaluated
// point is always sound even if the refinement missed the true infimum.
ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo,
                              double hi,
                              std::span<const double> extra_candidates = {},
                              int scan_points = 33, double x_tol = 1e-10);

}  // namespace rcsp

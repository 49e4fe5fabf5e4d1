#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "errors.hpp"

namespace rcsp {

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  int max_depth;
  long evals_left;
  bool converged = true;

  // One level of bisection on [a, b] whose whole-interval Simpson value is s
  // (endpoint/midpoint evaluations fa, fm, fb already known). The classic
  // |S_left + S_right - S| <= 15 eps acceptance test, returning the
  // Richardson-extrapolated value.
  double recurse(double a, double b, double fa, double fm, double fb, double s,
                 double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    evals_left -= 2;
    const double h6 = (b - a) / 12.0;
    const double s_left = h6 * (fa + 4.0 * flm + fm);
    const double s_right = h6 * (fm + 4.0 * frm + fb);
    const double s2 = s_left + s_right;
    const double err = s2 - s;
    if (std::fabs(err) <= 15.0 * eps || m <= a || m >= b) {
      return s2 + err / 15.0;
    }
    if (depth >= max_depth || evals_left <= 0) {
      converged = false;
      return s2 + err / 15.0;
    }
    const double half_eps = 0.5 * eps;
    return recurse(a, m, fa, flm, fm, s_left, half_eps, depth + 1) +
           recurse(m, b, fm, frm, fb, s_right, half_eps, depth + 1);
  }
};

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, const QuadratureOptions& opts,
                          std::span<const double> interior_knots) {
  if (!(b > a)) return 0.0;

  std::vector<double> pts;
  pts.reserve(interior_knots.size() + 2);
  pts.push_back(a);
  for (double k : interior_knots) {
    if (k > a && k < b) pts.push_back(k);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  SimpsonState state{f, opts.max_depth, opts.max_evals};
  // Split the tolerance across segments by length so the total honors abs_tol.
  const double span = b - a;
  double total = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i];
    const double hi = pts[i + 1];
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo);
    const double fmid = f(mid);
    const double fhi = f(hi);
    const double s = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    const double eps = opts.abs_tol * ((hi - lo) / span);
    total += state.recurse(lo, hi, flo, fmid, fhi, s, eps, 0);
  }
  if (!state.converged) {
    throw QuadratureError("adaptive quadrature hit depth limit before tolerance",
                          total);
  }
  return total;
}

}  // namespace rcsp

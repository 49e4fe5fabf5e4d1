#include "joint_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "log_domain.hpp"
#include "minimize.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"

namespace rcsp {

namespace {

// Usable Chernoff parameter range [0, 1/2); the moment factor blows up at the
// right endpoint, so the search stops a hair short of it.
constexpr double kUMax = 0.5 - 1e-9;

void check_chain_radii(const TransmissionSchedule& schedule,
                       const DecodingRadii& radii) {
  if (radii.r_squared.size() !=
      static_cast<size_t>(schedule.transmissions())) {
    throw std::invalid_argument("radii/schedule length mismatch");
  }
}

void check_prefix(const TransmissionSchedule& schedule, int prefix) {
  if (prefix < 1 || prefix > schedule.transmissions()) {
    throw std::invalid_argument("prefix out of range");
  }
}

std::vector<int> cumulative_dofs(const EventChain& chain) {
  std::vector<int> cum(chain.dofs.size());
  int total = 0;
  for (size_t b = 0; b < chain.dofs.size(); ++b) {
    total += chain.dofs[b];
    cum[b] = total;
  }
  return cum;
}

// log upper bound on Pr(S_a <= theta_a, S_b > theta_b), a < b, with
// d_rest = D_b - D_a degrees of freedom between the two constraints:
//   inf_{0<=v<1/2} -v theta_b - (D_b/2) ln(1-2v) + ln Pr(chi2_{D_a} <= (1-2v) theta_a)
// The early-success indicator makes every v in range valid.
double pass_then_fail_log_upper(int d_a, int d_rest, double theta_a,
                                double theta_b,
                                std::optional<double> fixed_v) {
  if (theta_a <= 0.0) return kNegInf;  // early success is impossible
  const double d_b = d_a + d_rest;
  auto objective = [&](double v) {
    return -v * theta_b - 0.5 * d_b * std::log1p(-2.0 * v) +
           chi2_log_cdf(d_a, (1.0 - 2.0 * v) * theta_a);
  };
  if (fixed_v) return objective(std::clamp(*fixed_v, 0.0, kUMax));
  const double candidates[] = {0.0, suboptimal_u(static_cast<int>(d_b), theta_b),
                               theta_a > d_a ? 0.5 * (1.0 - d_a / theta_a) : 0.0};
  return minimize_scalar(objective, 0.0, kUMax, candidates).value;
}

// log upper bound on Pr(S_a > theta_a, S_b <= theta_b), a < b:
//   inf_{v>=0} v theta_b - (D_b/2) ln(1+2v) + ln Pr(chi2_{D_a} > (1+2v) theta_a)
// Searched through v = t/(1-t) so the unbounded range maps to t in [0, 1).
double fail_then_pass_log_upper(int d_a, int d_rest, double theta_a,
                                double theta_b) {
  if (theta_b <= 0.0) return kNegInf;  // the later attempt cannot succeed
  const double d_b = d_a + d_rest;
  auto objective_v = [&](double v) {
    return v * theta_b - 0.5 * d_b * std::log1p(2.0 * v) +
           chi2_log_tail(d_a, (1.0 + 2.0 * v) * theta_a);
  };
  auto objective = [&](double t) { return objective_v(t / (1.0 - t)); };
  // Stationary point of the non-tail factors, mapped into t space.
  double t_star = 0.0;
  if (theta_b < d_b) {
    const double v_star = 0.5 * (d_b / theta_b - 1.0);
    t_star = v_star / (1.0 + v_star);
  }
  const double candidates[] = {0.0, t_star};
  return minimize_scalar(objective, 0.0, 1.0 - 1e-6, candidates).value;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

EventChain prefix_chain(const TransmissionSchedule& schedule,
                        const DecodingRadii& radii, int prefix) {
  check_chain_radii(schedule, radii);
  check_prefix(schedule, prefix);
  EventChain chain;
  chain.dofs.assign(schedule.increments().begin(),
                    schedule.increments().begin() + prefix);
  chain.thresholds.assign(radii.r_squared.begin(),
                          radii.r_squared.begin() + prefix);
  return chain;
}

EventChain canonicalize_chain(const EventChain& chain) {
  if (chain.dofs.size() != chain.thresholds.size()) {
    throw std::invalid_argument("chain dofs/thresholds length mismatch");
  }
  EventChain out;
  int carry = 0;          // dof freed by dropped constraints, owed to the next block
  double eff_prev = 0.0;  // strongest earlier threshold (0 = the a.s. floor)
  int cum_dof = 0;
  for (size_t b = 0; b < chain.dofs.size(); ++b) {
    if (chain.dofs[b] < 0) {
      throw std::invalid_argument("chain dof must be nonnegative");
    }
    cum_dof += chain.dofs[b];
    if (chain.thresholds[b] <= eff_prev) {
      // Implied by an earlier constraint (or by S >= 0); drop it.
      carry += chain.dofs[b];
      continue;
    }
    if (cum_dof == 0) {
      // A positive threshold before any dof: the event is empty. No real
      // schedule produces this; refuse rather than invent a probability-zero
      // encoding.
      throw std::invalid_argument(
          "chain constraint precedes any degrees of freedom");
    }
    out.dofs.push_back(carry + chain.dofs[b]);
    out.thresholds.push_back(chain.thresholds[b]);
    carry = 0;
    eff_prev = chain.thresholds[b];
  }
  // Dof behind the last surviving constraint never matters; drop the carry.
  return out;
}

double chain_chernoff_log_upper(const EventChain& chain,
                                std::span<const double> u,
                                bool stale_power_base) {
  const size_t B = chain.dofs.size();
  if (chain.thresholds.size() != B) {
    throw std::invalid_argument("chain dofs/thresholds length mismatch");
  }
  if (B < 2) throw std::invalid_argument("chain upper needs >= 2 blocks");
  if (u.size() != B - 1) {
    throw std::invalid_argument("need one Chernoff parameter per peeled constraint");
  }
  if (chain.dofs.front() < 1) {
    throw std::invalid_argument("first chain block needs positive dof");
  }
  double log_bound = 0.0;
  double h = 0.0;  // accumulated exponent rate
  for (size_t j = 1; j < B; ++j) {
    const double uj = u[j - 1];
    if (!(uj >= 0.0) || uj >= 0.5) {
      throw std::invalid_argument("Chernoff parameters must lie in [0, 1/2)");
    }
    const size_t b = B - j;  // peel the last un-peeled constraint
    const double h_prev = h;
    h = h_prev + uj * (1.0 - 2.0 * h_prev);
    // The moment factor for block b's chi-square is taken at the updated
    // rate h: the new Chernoff factor is already in the integrand when that
    // expectation is evaluated. (stale_power_base keeps the pre-update rate
    // past the first peel, which understates the factor; demonstration only.)
    const double rate = (stale_power_base && j > 1) ? h_prev : h;
    log_bound += -uj * (1.0 - 2.0 * h_prev) * chain.thresholds[b] -
                 0.5 * chain.dofs[b] * std::log1p(-2.0 * rate);
  }
  log_bound += -0.5 * chain.dofs[0] * std::log1p(-2.0 * h) +
               chi2_log_tail(chain.dofs[0], (1.0 - 2.0 * h) * chain.thresholds[0]);
  return log_bound;
}

ChainUpper chain_chernoff_upper(const EventChain& raw) {
  const EventChain chain = canonicalize_chain(raw);
  const size_t B = chain.dofs.size();
  ChainUpper out;
  if (B == 0) {
    out.value = 1.0;
    return out;
  }
  if (B == 1) {
    out.value = chi2_tail(chain.dofs[0], chain.thresholds[0]).value;
    return out;
  }
  const auto cum = cumulative_dofs(chain);
  std::vector<double> u(B - 1, 0.0);
  auto objective_at = [&](std::vector<double>& params) {
    return chain_chernoff_log_upper(chain, params);
  };
  double best = objective_at(u);
  for (int sweep = 0; sweep < 3; ++sweep) {
    const double before = best;
    for (size_t j = 0; j < u.size(); ++j) {
      const double saved = u[j];
      auto line = [&](double x) {
        u[j] = x;
        return chain_chernoff_log_upper(chain, u);
      };
      // The single-pair stationary point for the constraint being peeled is
      // a strong start; 0 (drop the constraint) is always available.
      const size_t b = B - 1 - j;
      const double candidates[] = {0.0, saved,
                                   suboptimal_u(cum[b], chain.thresholds[b])};
      const ScalarMinimum found =
          minimize_scalar(line, 0.0, kUMax, candidates, 17);
      if (found.value < best - 1e-14) {
        best = found.value;
        u[j] = found.x;
      } else {
        u[j] = saved;
      }
    }
    if (before - best < 1e-12 * (1.0 + std::fabs(best))) break;
  }
  out.value = clamp01(std::exp(best));
  out.u = std::move(u);
  return out;
}

double chain_chernoff_lower(const EventChain& raw) {
  const EventChain chain = canonicalize_chain(raw);
  const size_t B = chain.dofs.size();
  if (B == 0) return 1.0;
  const auto cum = cumulative_dofs(chain);
  if (B == 1) return chi2_tail(cum[0], chain.thresholds[0]).value;

  // Suffix recursion: Pr(all of zeta_b..zeta_B) >= Pr(zeta_{b+1}..zeta_B)
  // - Pr(zeta_b^c ∩ zeta_j) for any j > b; both the next and the last
  // constraint are tried as the witness j.
  double lower = chi2_tail(cum[B - 1], chain.thresholds[B - 1]).value;
  for (size_t b = B - 1; b-- > 0;) {
    double cost_log = pass_then_fail_log_upper(
        cum[b], cum[B - 1] - cum[b], chain.thresholds[b],
        chain.thresholds[B - 1], std::nullopt);
    if (b + 1 < B - 1) {
      cost_log = std::min(
          cost_log, pass_then_fail_log_upper(cum[b], cum[b + 1] - cum[b],
                                             chain.thresholds[b],
                                             chain.thresholds[b + 1],
                                             std::nullopt));
    }
    lower = std::max(0.0, lower - std::exp(cost_log));
    if (lower == 0.0) break;
  }

  // Alternative anchor at the first constraint: Pr(joint) >= Pr(zeta_1)
  // - sum_{j>1} Pr(zeta_1 ∩ zeta_j^c). Wins when the later attempts almost
  // surely fail, e.g. far above capacity.
  double anchor = chi2_tail(cum[0], chain.thresholds[0]).value;
  for (size_t j = 1; j < B && anchor > 0.0; ++j) {
    anchor -= std::exp(fail_then_pass_log_upper(
        cum[0], cum[j] - cum[0], chain.thresholds[0], chain.thresholds[j]));
  }
  return clamp01(std::max(lower, anchor));
}

double suboptimal_u(int n_total, double r_sq) {
  if (r_sq <= 0.0) return 0.0;
  return std::clamp(0.5 * (1.0 - n_total / r_sq), 0.0, kUMax);
}

double chernoff_pair_upper(int n_prev, int i_next, double r_prev_sq,
                           double r_next_sq) {
  if (n_prev < 1 || i_next < 1) {
    throw std::invalid_argument("pair bound needs positive block sizes");
  }
  return chain_chernoff_upper(
             EventChain{{n_prev, i_next}, {r_prev_sq, r_next_sq}})
      .value;
}

double chernoff_pair_lower(int n_prev, int i_next, double r_prev_sq,
                           double r_next_sq) {
  if (n_prev < 1 || i_next < 1) {
    throw std::invalid_argument("pair bound needs positive block sizes");
  }
  return chain_chernoff_lower(
      EventChain{{n_prev, i_next}, {r_prev_sq, r_next_sq}});
}

double closed_form_pair_upper(int n_prev, int i_next, double r_prev_sq,
                              double r_next_sq) {
  if (n_prev < 1 || i_next < 1) {
    throw std::invalid_argument("pair bound needs positive block sizes");
  }
  // Degenerate orderings collapse to exact tails.
  if (r_next_sq <= std::max(r_prev_sq, 0.0)) {
    return chi2_tail(n_prev, r_prev_sq).value;
  }
  if (r_prev_sq <= 0.0) return chi2_tail(n_prev + i_next, r_next_sq).value;
  const double n = n_prev + i_next;
  const double c = r_next_sq / n;
  if (c <= 1.0) return chi2_tail(n_prev, r_prev_sq).value;  // u* clamps to 0
  const double log_bound = -0.5 * n * (c - 1.0 - std::log(c)) +
                           chi2_log_tail(n_prev, r_prev_sq / c);
  return std::exp(log_bound);
}

BoundInterval inglot_pair_bounds(int n1, int i2, double r1_sq, double r2_sq) {
  if (n1 < 1) throw std::invalid_argument("pair bound needs positive block sizes");
  if (i2 < 2) {
    throw PreconditionError(
        "envelope pair bound needs at least 2 incremental dimensions, got " +
        std::to_string(i2));
  }
  if (!(r1_sq > 0.0)) {
    throw PreconditionError("envelope pair bound needs r1^2 > 0");
  }
  if (!(r1_sq < r2_sq - i2 + 2.0)) {
    throw PreconditionError(
        "envelope pair bound needs r1^2 < r2^2 - i2 + 2 (delta window empty)");
  }

  const double p_base = chi2_tail(n1, r2_sq).value;
  // Shared constant of both envelope integrands:
  //   K = e^{-(r2^2 - i2)/2} / (2^{n1/2} sqrt(pi) i2^{(i2-1)/2} Gamma(n1/2))
  const double log_k = -0.5 * (r2_sq - i2) - 0.5 * n1 * kLn2 - kLnSqrtPi -
                       0.5 * (i2 - 1) * std::log(static_cast<double>(i2)) -
                       lgamma_half(n1);

  const double half_n1 = 0.5 * n1;
  const double half_i2 = 0.5 * i2;

  // Lower end: p + (sqrt(pi)/2) K  int_{r1^2}^{r2^2} (r2^2-t)^{i2/2-1} t^{n1/2-1} dt.
  // The envelope lower inequality holds for every positive argument, so the
  // integral may run all the way to r2^2.
  auto log_core = [&](double t) {
    const double left = (half_n1 - 1.0) * std::log(t);
    if (i2 == 2) return left;  // (r2^2 - t)^0
    const double gap = r2_sq - t;
    return gap <= 0.0 ? kNegInf : left + (half_i2 - 1.0) * std::log(gap);
  };
  const double log_coeff = log_k + kLnSqrtPi - kLn2;
  double shift = kNegInf;
  for (int s = 0; s <= 8; ++s) {
    const double t = r1_sq + (r2_sq - r1_sq) * (s + 0.5) / 9.0;
    shift = std::max(shift, log_coeff + log_core(t));
  }
  double lower = p_base;
  if (shift > kNegInf) {
    auto integrand = [&](double t) {
      const double l = log_core(t);
      return l == kNegInf ? 0.0 : std::exp(log_coeff + l - shift);
    };
    QuadratureOptions opts;
    // The shift normalizes the peak to ~1, so the integral scales with the
    // span; an absolute tolerance must scale the same way or giant radii
    // would demand sub-ulp relative accuracy.
    opts.abs_tol = 1e-12 * std::max(1.0, r2_sq - r1_sq);
    const double knots[] = {static_cast<double>(n1 - 2)};
    lower += std::exp(shift) *
             integrate_adaptive(integrand, r1_sq, r2_sq, opts, knots);
  }

  // Upper end: p + inf over delta in (delta_lo, delta_hi) of
  //   K int_{r1^2}^{(1-delta)r2^2} t^{n1/2-1}(r2^2-t)^{i2/2}/(r2^2-i2+2-t) dt
  //   + [Pr(chi2_n1 > (1-delta) r2^2) - p].
  // delta_lo keeps the envelope's upper factor valid on the whole range;
  // delta_hi collapses the integral and leaves the single-tail fallback.
  const double delta_lo = (i2 - 2.0) / r2_sq;
  const double delta_hi = (r2_sq - r1_sq) / r2_sq;
  const double sing = r2_sq - i2 + 2.0;  // upper-factor pole location
  // The 1/(sing - t) factor blows up as delta approaches delta_lo, so
  // integrate in u = -log(sing - t): then dt/(sing - t) = du and only the
  // smooth, bounded part of the integrand remains.
  auto log_f = [&](double t) {
    const double gap = r2_sq - t;
    if (gap <= 0.0 || t <= 0.0) return kNegInf;
    return (half_n1 - 1.0) * std::log(t) + half_i2 * std::log(gap);
  };
  double g_shift = kNegInf;
  for (int s = 0; s <= 8; ++s) {
    const double t = r1_sq + (sing - r1_sq) * (s + 0.5) / 9.0;
    g_shift = std::max(g_shift, log_k + log_f(t));
  }
  const double u_lo = -std::log(sing - r1_sq);
  auto upper_objective = [&](double delta) {
    const double t_hi = (1.0 - delta) * r2_sq;
    double total = chi2_tail(n1, t_hi).value - p_base;
    if (t_hi > r1_sq && g_shift > kNegInf) {
      const double u_hi = -std::log(sing - t_hi);
      auto integrand = [&](double u) {
        const double t = sing - std::exp(-u);
        const double l = log_f(t);
        return l == kNegInf ? 0.0 : std::exp(log_k + l - g_shift);
      };
      QuadratureOptions opts;
      // Peak-normalized integrand of magnitude ~(u_hi - u_lo); 1e-10 relative
      // is far below the envelope's own slack, and stricter demands can
      // exhaust the evaluation budget when the radii are enormous.
      opts.abs_tol = 1e-10 * std::max(1.0, u_hi - u_lo);
      total += std::exp(g_shift) *
               integrate_adaptive(integrand, u_lo, u_hi, opts);
    }
    return total;
  };
  const double width = delta_hi - delta_lo;
  const ScalarMinimum best = minimize_scalar(
      upper_objective, delta_lo + 1e-6 * width, delta_hi, {}, 25);

  BoundInterval out;
  out.method_lower = Method::InglotPair;
  out.method_upper = Method::InglotPair;
  out.lower = clamp01(lower);
  out.upper = clamp01(p_base + best.value);
  if (out.lower > out.upper) out.lower = out.upper;  // rounding only
  return out;
}

double trivial_upper(const TransmissionSchedule& schedule,
                     const DecodingRadii& radii, int prefix) {
  check_chain_radii(schedule, radii);
  check_prefix(schedule, prefix);
  return chi2_tail(schedule.blocklength(prefix), radii.r_squared[prefix - 1])
      .value;
}

double general_chernoff_upper(const TransmissionSchedule& schedule,
                              const DecodingRadii& radii, int prefix) {
  return chain_chernoff_upper(prefix_chain(schedule, radii, prefix)).value;
}

double general_chernoff_lower(const TransmissionSchedule& schedule,
                              const DecodingRadii& radii, int prefix) {
  return chain_chernoff_lower(prefix_chain(schedule, radii, prefix));
}

double suboptimal_union_v(int dof_total, double r_sq, int k_bits) {
  const double denom = 2.0 * r_sq + 2.0 * k_bits;
  if (denom <= 0.0) return 0.0;
  return std::clamp(0.5 - dof_total / denom, 0.0, kUMax);
}

double union_lower(const TransmissionSchedule& schedule,
                   const DecodingRadii& radii, int prefix,
                   std::optional<double> fixed_v) {
  const EventChain chain =
      canonicalize_chain(prefix_chain(schedule, radii, prefix));
  const size_t B = chain.dofs.size();
  if (B == 0) return 1.0;
  const auto cum = cumulative_dofs(chain);
  double lower = chi2_tail(cum[B - 1], chain.thresholds[B - 1]).value;
  for (size_t b = 0; b + 1 < B && lower > 0.0; ++b) {
    lower -= std::exp(pass_then_fail_log_upper(cum[b], cum[B - 1] - cum[b],
                                               chain.thresholds[b],
                                               chain.thresholds[B - 1], fixed_v));
  }
  return clamp01(lower);
}

double decomposition_upper(const TransmissionSchedule& schedule,
                           const DecodingRadii& radii, int prefix, int pivot) {
  check_chain_radii(schedule, radii);
  check_prefix(schedule, prefix);
  if (pivot < 2 || pivot > prefix) {
    throw std::invalid_argument("decomposition pivot must lie in [2, prefix]");
  }
  const auto& r2 = radii.r_squared;
  const int d_before = schedule.blocklength(pivot - 1);
  const int d_pivot = schedule.increment(pivot);
  const int d_after = schedule.blocklength(prefix) - schedule.blocklength(pivot);
  const double th_before = r2[pivot - 2];
  const double th_pivot = r2[pivot - 1];
  const double th_last = r2[prefix - 1];

  const double u_ab =
      chain_chernoff_upper(EventChain{{d_before, d_pivot}, {th_before, th_pivot}})
          .value;
  const double u_bc =
      pivot == prefix
          ? chi2_tail(d_before + d_pivot, th_pivot).value
          : chain_chernoff_upper(
                EventChain{{d_before + d_pivot, d_after}, {th_pivot, th_last}})
                .value;
  const double l_abc = chain_chernoff_lower(EventChain{
      {d_before, d_pivot, d_after}, {th_before, th_pivot, th_last}});
  return clamp01(u_ab + u_bc - l_abc);
}

SeriesResult joint_series_bounds(const TransmissionSchedule& schedule,
                                 const DecodingRadii& radii,
                                 const SeriesPolicy& policy) {
  check_chain_radii(schedule, radii);
  const int m = schedule.transmissions();
  SeriesResult result;
  result.bounds.resize(m + 1);
  result.bounds[0] = BoundInterval{1.0, 1.0, Method::Exact, Method::Exact};

  struct Candidate {
    double value;
    Method method;
  };
  auto pick = [&](std::vector<Candidate>& cands, bool want_min) {
    Candidate best = cands.front();
    for (const Candidate& c : cands) {
      if (std::isnan(c.value)) continue;
      const bool better = want_min ? c.value < best.value : c.value > best.value;
      const bool tie_cheaper = c.value == best.value &&
                               static_cast<int>(c.method) < static_cast<int>(best.method);
      if (better || tie_cheaper) best = c;
    }
    return best;
  };

  for (int i = 1; i <= m; ++i) {
    BoundInterval& slot = result.bounds[i];
    if (i == 1) {
      const double p = chi2_tail(schedule.blocklength(1), radii.r_squared[0]).value;
      slot = BoundInterval{p, p, Method::Exact, Method::Exact};
    } else {
      const EventChain chain =
          canonicalize_chain(prefix_chain(schedule, radii, i));
      const bool heavy_ok = i <= policy.optimized_chain_limit;
      const bool chernoff_on = heavy_ok && ((i == 2 && policy.chernoff_pair) ||
                                            (i > 2 && policy.general_chernoff));
      const Method chern_tag =
          i == 2 ? Method::ChernoffPair : Method::GeneralChernoff;

      std::optional<BoundInterval> inglot;
      if (i == 2 && heavy_ok && policy.inglot) {
        try {
          inglot =
              inglot_pair_bounds(schedule.blocklength(1), schedule.increment(2),
                                 radii.r_squared[0], radii.r_squared[1]);
        } catch (const PreconditionError&) {
          // outside the envelope's window; other methods cover it
        }
      }

      std::vector<Candidate> uppers;
      uppers.push_back({1.0, Method::TrivialSingle});
      if (policy.trivial) {
        uppers.push_back({trivial_upper(schedule, radii, i), Method::TrivialSingle});
      }
      if (chernoff_on) {
        uppers.push_back({chain_chernoff_upper(chain).value, chern_tag});
      }
      if (inglot) uppers.push_back({inglot->upper, Method::InglotPair});
      if (i >= 3 && heavy_ok && policy.decomposition) {
        for (int pivot = 2; pivot <= i; ++pivot) {
          uppers.push_back(
              {decomposition_upper(schedule, radii, i, pivot), Method::Decomposition});
        }
      }

      std::vector<Candidate> lowers;
      lowers.push_back({0.0, Method::TrivialSingle});
      if (chernoff_on) {
        lowers.push_back({chain_chernoff_lower(chain), chern_tag});
      }
      if (policy.union_lower) {
        // Long chains pin the parameter: the per-term line searches are the
        // quadratic-cost part, and in the fine-increment regime the terms
        // are dominated by the anchor tail anyway.
        std::optional<double> v = policy.union_fixed_v;
        if (!heavy_ok && !v) {
          v = suboptimal_u(schedule.blocklength(i), radii.r_squared[i - 1]);
        }
        lowers.push_back({union_lower(schedule, radii, i, v), Method::UnionLower});
      }
      if (inglot) lowers.push_back({inglot->lower, Method::InglotPair});

      for (Candidate& c : uppers) c.value = clamp01(c.value);
      for (Candidate& c : lowers) c.value = clamp01(c.value);
      const Candidate up = pick(uppers, true);
      const Candidate lo = pick(lowers, false);
      slot = BoundInterval{lo.value, up.value, lo.method, up.method};
    }

    // A longer prefix is a subset event: its upper bound never exceeds the
    // previous one. Carry the tighter bound (and its provenance) forward.
    if (i >= 1 && slot.upper > result.bounds[i - 1].upper) {
      slot.upper = result.bounds[i - 1].upper;
      slot.method_upper = result.bounds[i - 1].method_upper;
    }
    if (slot.lower > slot.upper) {
      // Certified ends cannot cross except by rounding; reconcile and count.
      slot.lower = slot.upper;
      ++result.clamp_events;
    }
  }
  return result;
}

}  // namespace rcsp

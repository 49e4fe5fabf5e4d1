#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bound_interval.hpp"
#include "schedule_model.hpp"

namespace rcsp {

// A chain event: intersection over blocks b of {S_b > thresholds[b]}, where
// S_b is the cumulative chi-square over blocks 1..b and block b contributes
// dofs[b] degrees of freedom. Prefixes of a decoding schedule, pair events,
// and decomposition triples are all chains; the Chernoff machinery operates
// on chains only.
struct EventChain {
  std::vector<int> dofs;          // per-block dof, >= 0 after merging
  std::vector<double> thresholds;
};

// The first `prefix` attempts of a schedule as a chain.
EventChain prefix_chain(const TransmissionSchedule& schedule,
                        const DecodingRadii& radii, int prefix);

// Removes constraints that hold almost surely (threshold <= 0) or are implied
// by an earlier one (threshold not above its predecessor), merging the freed
// dof into the following block. Dof behind the last surviving constraint
// never influences the event and is dropped. An empty result means the chain
// event has probability 1.
EventChain canonicalize_chain(const EventChain& chain);

// log of the Chernoff chain upper bound at parameters u[0..B-2] (one per
// constraint except the first, peeled last-to-first), each in [0, 1/2).
// Requires a canonical chain with B >= 2 blocks.
//
// Peeling constraint number j (so block B-j+1) multiplies the accumulated
// exponent rate h by the update h_j = h_{j-1} + u_j (1 - 2 h_{j-1}) and
// contributes exp(-u_j (1 - 2 h_{j-1}) theta) * (1 - 2 h_j)^(-dof/2): the
// moment factor is taken at the *updated* rate, since the expectation over
// that block's chi-square is evaluated after the new Chernoff factor joins.
// stale_power_base instead takes the moment factor at the pre-update rate
// h_{j-1}; that variant undercounts the moment growth and is kept only so
// tests can demonstrate it dips below the exact probability. Never use it
// for a certified bound.
double chain_chernoff_log_upper(const EventChain& chain,
                                std::span<const double> u,
                                bool stale_power_base = false);

struct ChainUpper {
  double value = 1.0;
  std::vector<double> u;  // optimized parameters, aligned with constraints
};

// Coordinate-descent optimized chain upper bound. Any parameter vector gives
// a valid bound, so the optimizer can stop anywhere; the result is the best
// evaluated point, clamped to [0, 1].
ChainUpper chain_chernoff_upper(const EventChain& chain);

// Chain lower bound by suffix recursion: starting from the exact tail of the
// last constraint alone, each earlier constraint costs at most the
// complement-intersection upper bound Pr(S_b <= theta_b, S_later > theta_later).
double chain_chernoff_lower(const EventChain& chain);

// Two-transmission bounds; n_prev symbols then i_next more. Degenerate
// orderings (thresholds non-increasing or non-positive) reduce to exact
// tails via canonicalization.
double chernoff_pair_upper(int n_prev, int i_next, double r_prev_sq,
                           double r_next_sq);
double chernoff_pair_lower(int n_prev, int i_next, double r_prev_sq,
                           double r_next_sq);

// The single-parameter stationary point u* = (1 - n_total/r_sq)/2 of the
// final-tail Chernoff factor, clamped into [0, 1/2).
double suboptimal_u(int n_total, double r_sq);

// Closed-form pair upper at u*: exp(-n (c-1-ln c)/2) Pr(chi^2_prev > r_prev/c)
// with c = r_next_sq / n_total. Matches chernoff_pair_upper when the
// stationary point is the argmin; never below it otherwise.
double closed_form_pair_upper(int n_prev, int i_next, double r_prev_sq,
                              double r_next_sq);

// Envelope-based pair bounds. Preconditions (PreconditionError otherwise):
// i2 >= 2, 0 < r1_sq, and r1_sq < r2_sq - i2 + 2 so the envelope's upper
// factor stays valid across the integration range.
BoundInterval inglot_pair_bounds(int n1, int i2, double r1_sq, double r2_sq);

// Exact single tail of the prefix-th attempt: Pr(chi^2_N > r^2). An upper
// bound for the joint since the joint event is contained in it.
double trivial_upper(const TransmissionSchedule& schedule,
                     const DecodingRadii& radii, int prefix);

double general_chernoff_upper(const TransmissionSchedule& schedule,
                              const DecodingRadii& radii, int prefix);
double general_chernoff_lower(const TransmissionSchedule& schedule,
                              const DecodingRadii& radii, int prefix);

// The heuristic complement parameter v = 1/2 - dof/(2 r_sq + 2 k_bits):
// cheap, reasonable when the event is moderately rare. Clamped into [0, 1/2).
double suboptimal_union_v(int dof_total, double r_sq, int k_bits);

// Lower bound Pr(zeta_prefix) - sum_{j<prefix} U(zeta_prefix ∩ zeta_j^c).
// Each union term is a complement-intersection Chernoff bound, optimized per
// term unless fixed_v pins the parameter (used for long chains and for
// reproducing the closed-form variant).
double union_lower(const TransmissionSchedule& schedule,
                   const DecodingRadii& radii, int prefix,
                   std::optional<double> fixed_v = std::nullopt);

// Upper bound via the pivot identity
//   Pr(joint) <= U(zeta_{pivot-1} ∩ zeta_pivot) + U(zeta_pivot ∩ zeta_prefix)
//                - L(zeta_{pivot-1} ∩ zeta_pivot ∩ zeta_prefix),
// valid because the triple intersection is contained in the event the lower
// bound subtracts. pivot in [2, prefix].
double decomposition_upper(const TransmissionSchedule& schedule,
                           const DecodingRadii& radii, int prefix, int pivot);

struct SeriesPolicy {
  bool trivial = true;
  bool chernoff_pair = true;
  bool general_chernoff = true;
  bool union_lower = true;
  bool inglot = true;
  bool decomposition = true;
  // Prefixes longer than this keep only the cheap methods (trivial upper,
  // fixed-parameter union lower): the optimized-chain cost grows
  // quadratically and the fine-increment regime is where the single-tail
  // bound is already tight.
  int optimized_chain_limit = 16;
  std::optional<double> union_fixed_v;  // pin the union parameter everywhere
};

struct SeriesResult {
  // bounds[i] encloses P_i = Pr(first i attempts all fail), i = 0..m;
  // bounds[0] = [1, 1]. Upper ends are nonincreasing in i (a superset event
  // cannot be less probable, so the running minimum is applied).
  std::vector<BoundInterval> bounds;
  // Number of raw bound values that fell outside [0, 1] or crossed the
  // opposite end and had to be clamped. Zero in healthy runs.
  int clamp_events = 0;
};

SeriesResult joint_series_bounds(const TransmissionSchedule& schedule,
                                 const DecodingRadii& radii,
                                 const SeriesPolicy& policy = {});

}  // namespace rcsp

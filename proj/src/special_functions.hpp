#pragma once

#include "bound_interval.hpp"

namespace rcsp {

// A probability carried in both linear and log scale. value == exp(log_value)
// by construction; log_value stays meaningful (finite or -inf) when value
// underflows to 0.
struct TailProbability {
  double value;
  double log_value;
};

// log Gamma(twice_a / 2) for twice_a >= 1. Half-integer arguments are the
// only ones the chi-square family needs; small ones come from an exact
// recurrence table, large ones from a Stirling series.
double lgamma_half(int twice_a);

// Pr(chi^2_dof > x), dof >= 1. Total over x: any x <= 0 gives probability 1.
TailProbability chi2_tail(int dof, double x);
double chi2_log_tail(int dof, double x);

// Pr(chi^2_dof <= x); 0 for x <= 0.
double chi2_cdf(int dof, double x);
double chi2_log_cdf(int dof, double x);

// Density of chi^2_dof; 0 for x < 0. At x = 0 the dof = 1 density diverges
// (+inf) and the dof = 2 density is 1/2.
double chi2_pdf(int dof, double x);
double chi2_log_pdf(int dof, double x);

// Tail envelope E_k(r) = exp(-[r - k - (k-2)log(r/k) + log k]/2) for k >= 2,
// r > 0.
double inglot_log_envelope(int k, double r);
double inglot_envelope(int k, double r);

// Two-sided sandwich E_k(r)/2 <= Pr(chi^2_k > r) <= r/((r-k+2)sqrt(pi)) E_k(r).
// The upper inequality needs r > k-2; below that threshold the call throws
// PreconditionError. (The lower inequality holds for every r > 0: the
// envelope peaks at r = k-2 where it is still <= 1 while the tail is already
// above 1/2, and the k = 2 case is a direct exponential comparison.)
BoundInterval inglot_tail_bounds(int k, double r);

}  // namespace rcsp

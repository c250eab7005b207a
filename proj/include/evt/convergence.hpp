#pragma once

#include <functional>
#include <vector>

#include "evt/distributions.hpp"
#include "evt/norming.hpp"

namespace evt {

// Evaluation grid for distances between the law of the normalized maximum
// and the Gumbel law.  The default covers the Gumbel bulk: Lambda(-3) ~ 2e-9
// and Lambda(6) ~ 0.9975.
struct GridSpec {
  double lo = -3.0;
  double hi = 6.0;
  int points = 201;
};

// max over the grid of |F^n(a x + b) - Lambda(x)|, with F^n computed as
// exp(n log F) so it stays accurate for n up to 1e9.
double sup_distance(const Distribution& dist, const NormingConstants& nc,
                    const GridSpec& grid = {});

// One row of the convergence-rate diagnostic.
struct RatePoint {
  long long n = 0;
  double sup_err = 0.0;
  double sup_err_log_n = 0.0;   // sup_err * log n
  double sup_err_b_tau = 0.0;   // sup_err * b^tau (same scale when tau = 1)
};

std::vector<RatePoint> rate_check(const Distribution& dist, Method method,
                                  const std::vector<long long>& n_grid,
                                  const GridSpec& grid = {});

// Effect of replacing the exact constants (b, a) by an approximating pair
// (b~, a~): the three deviation terms of the error decomposition next to the
// realized sup-distance.
struct PerturbationPoint {
  long long n = 0;
  double b = 0.0, a = 0.0;          // exact
  double b_tilde = 0.0, a_tilde = 0.0;
  double gap_over_a = 0.0;          // (b - b~)/a
  double gap_b_tau = 0.0;           // b^tau - b~^tau
  double ratio_alpha_gap = 0.0;     // (b~/b)^alpha - 1
  double sup_err = 0.0;             // realized distance with (b~, a~)
};

std::vector<PerturbationPoint> perturbation_check(const Distribution& dist,
                                                  Method approx_method,
                                                  const std::vector<long long>& n_grid,
                                                  const GridSpec& grid = {});

// Scale-sequence optimality scan at tau = 1: for each delta, use
// a^ = 1/C + delta/b_n with the exact b_n and report the sup-distance.
// The minimizer should sit near delta = alpha/C^2.  Throws
// std::invalid_argument unless the distribution has tau = 1.
struct OptimalityPoint {
  double delta = 0.0;
  double sup_err = 0.0;
};

std::vector<OptimalityPoint> a_optimality_scan(const Distribution& dist,
                                               const std::vector<double>& deltas,
                                               long long n, const GridSpec& grid = {});

// Classical one-sample Kolmogorov-Smirnov statistic against the given CDF.
// The sample must be sorted ascending and nonempty.
double ks_statistic(const std::vector<double>& sorted_sample,
                    const std::function<double(double)>& cdf);

}  // namespace evt

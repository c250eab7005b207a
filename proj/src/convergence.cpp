#include "evt/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "evt/parallel.hpp"

namespace evt {

namespace {

void check_grid(const GridSpec& grid) {
  if (grid.points < 2 || !(grid.hi > grid.lo))
    throw std::invalid_argument("grid spec: needs hi > lo and at least 2 points");
}

double grid_point(const GridSpec& grid, int i) {
  return grid.lo + (grid.hi - grid.lo) * static_cast<double>(i) /
                       static_cast<double>(grid.points - 1);
}

}  // namespace

double sup_distance(const Distribution& dist, const NormingConstants& nc,
                    const GridSpec& grid) {
  check_grid(grid);
  if (!(nc.a > 0.0) || nc.n < 1)
    throw std::invalid_argument("sup_distance: constants need a > 0 and n >= 1");
  double worst = 0.0;
  for (int i = 0; i < grid.points; ++i) {
    double x = grid_point(grid, i);
    // F^n as exp(n log F): log F = log1p(-tail) keeps the deep tail exact,
    // so this stays accurate out to n ~ 1e9.
    double log_f = dist.log_cdf(nc.a * x + nc.b);
    double fn = std::exp(static_cast<double>(nc.n) * log_f);
    worst = std::max(worst, std::abs(fn - gumbel_cdf(x)));
  }
  return worst;
}

std::vector<RatePoint> rate_check(const Distribution& dist, Method method,
                                  const std::vector<long long>& n_grid,
                                  const GridSpec& grid) {
  check_grid(grid);
  std::vector<RatePoint> out(n_grid.size());
  parallel_for(0, n_grid.size(), [&](std::size_t i) {
    long long n = n_grid[i];
    NormingConstants nc = compute_constants(dist, method, n);
    double sup = sup_distance(dist, nc, grid);
    out[i] = {n, sup, sup * std::log(static_cast<double>(n)),
              sup * std::pow(nc.b, dist.tau())};
  });
  return out;
}

std::vector<PerturbationPoint> perturbation_check(const Distribution& dist,
                                                  Method approx_method,
                                                  const std::vector<long long>& n_grid,
                                                  const GridSpec& grid) {
  check_grid(grid);
  std::vector<PerturbationPoint> out(n_grid.size());
  parallel_for(0, n_grid.size(), [&](std::size_t i) {
    long long n = n_grid[i];
    NormingConstants exact = exact_constants(dist, n);
    NormingConstants approx = compute_constants(dist, approx_method, n);
    PerturbationPoint p;
    p.n = n;
    p.b = exact.b;
    p.a = exact.a;
    p.b_tilde = approx.b;
    p.a_tilde = approx.a;
    p.gap_over_a = (exact.b - approx.b) / exact.a;
    p.gap_b_tau = std::pow(exact.b, dist.tau()) - std::pow(approx.b, dist.tau());
    p.ratio_alpha_gap = std::pow(approx.b / exact.b, dist.alpha()) - 1.0;
    p.sup_err = sup_distance(dist, approx, grid);
    out[i] = p;
  });
  return out;
}

std::vector<OptimalityPoint> a_optimality_scan(const Distribution& dist,
                                               const std::vector<double>& deltas,
                                               long long n, const GridSpec& grid) {
  check_grid(grid);
  if (dist.tau() != 1.0)
    throw std::invalid_argument("a_optimality_scan: requires tau = 1");
  // Exponential rate C of the tail; for the Gamma family this is 1/theta.
  double c = dist.gen_weibull() ? dist.gen_weibull()->c : 1.0 / dist.gamma()->theta;
  NormingConstants exact = exact_constants(dist, n);
  std::vector<OptimalityPoint> out(deltas.size());
  parallel_for(0, deltas.size(), [&](std::size_t i) {
    NormingConstants nc = exact;
    nc.a = 1.0 / c + deltas[i] / exact.b;
    out[i] = {deltas[i], sup_distance(dist, nc, grid)};
  });
  return out;
}

double ks_statistic(const std::vector<double>& sorted_sample,
                    const std::function<double(double)>& cdf) {
  if (sorted_sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  const double size = static_cast<double>(sorted_sample.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted_sample.size(); ++i) {
    if (i > 0 && sorted_sample[i] < sorted_sample[i - 1])
      throw std::invalid_argument("ks_statistic: sample must be sorted ascending");
    double f = cdf(sorted_sample[i]);
    worst = std::max(worst, f - static_cast<double>(i) / size);
    worst = std::max(worst, static_cast<double>(i + 1) / size - f);
  }
  return worst;
}

}  // namespace evt

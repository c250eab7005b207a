#include "evt/expansions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "evt/errors.hpp"
#include "evt/roots.hpp"

namespace evt {

std::int64_t stirling_cycle(int n, int k) {
  if (n < 0 || n > 20) throw std::domain_error("stirling_cycle: n must be in [0, 20]");
  if (k < 0 || k > n) return 0;
  static const auto table = [] {
    std::array<std::array<std::int64_t, 21>, 21> t{};
    t[0][0] = 1;
    for (int m = 1; m <= 20; ++m)
      for (int j = 1; j <= m; ++j)
        t[m][j] = t[m - 1][j - 1] + static_cast<std::int64_t>(m - 1) * t[m - 1][j];
    return t;
  }();
  return table[n][k];
}

Polynomial w_log_polynomial(int n) {
  if (n < 1 || n > kMaxExpansionOrder)
    throw std::domain_error("w_log_polynomial: order must be in [1, 8]");
  std::vector<double> coef(static_cast<std::size_t>(n) + 1, 0.0);
  double mfact = 1.0;
  for (int m = 1; m <= n; ++m) {
    mfact *= m;
    double sign = ((n - m) % 2 == 0) ? 1.0 : -1.0;
    coef[static_cast<std::size_t>(m)] =
        sign * static_cast<double>(stirling_cycle(n, n - m + 1)) / mfact;
  }
  return Polynomial(std::move(coef));
}

namespace {

// Solve a generating-function fixed point X(s) = rhs(X) order-by-order.
// Coefficient m of the right-hand side only involves coefficients < m of X
// (X always enters multiplied by s), so order+2 passes reach the exact
// truncated fixed point.
template <class Rhs>
PowerSeries solve_fixed_point(std::size_t order, Rhs&& rhs) {
  PowerSeries x(order);
  for (std::size_t pass = 0; pass < order + 2; ++pass) x = rhs(x);
  return x;
}

void check_poly_count(int count) {
  if (count < 0 || count > kMaxExpansionOrder + 1)
    throw std::domain_error("log-polynomial family: order out of range");
}

}  // namespace

std::vector<Polynomial> u_log_polynomials(double gamma, const PowerSeries& d, int count) {
  check_poly_count(count);
  if (count == 0) return {};
  if (!(d[0] > 0.0))
    throw std::domain_error("u_log_polynomials: series constant term must be positive");
  const std::size_t ord = static_cast<std::size_t>(count - 1);
  const PowerSeries dd = d.with_order(ord);
  const PowerSeries one = PowerSeries::one(ord);
  // G(s) = -gamma log(1 + s G) - log D(s / (1 + s G))
  PowerSeries g = solve_fixed_point(ord, [&](const PowerSeries& cur) {
    PowerSeries one_plus = one + cur.shift_up();
    PowerSeries u = one_plus.reciprocal().shift_up();
    return (-gamma) * one_plus.log() - dd.compose(u).log();
  });

  std::vector<Polynomial> q;
  q.reserve(static_cast<std::size_t>(count));
  q.push_back(Polynomial({g[0], -gamma}));
  for (int n = 0; n + 1 < count; ++n) {
    Polynomial dq = (-gamma) * (q.back().derivative() - static_cast<double>(n) * q.back());
    q.push_back(dq.antiderivative(g[static_cast<std::size_t>(n) + 1]));
  }
  return q;
}

std::vector<Polynomial> w_log_polynomials_d(const PowerSeries& d, int count) {
  check_poly_count(count);
  if (count == 0) return {};
  if (!(d[0] > 0.0))
    throw std::domain_error("w_log_polynomials_d: series constant term must be positive");
  const std::size_t ord = static_cast<std::size_t>(count - 1);
  const PowerSeries dd = d.with_order(ord);
  const PowerSeries one = PowerSeries::one(ord);
  // H(s) = log(1 + s H) + log D(-s / (1 + s H))
  PowerSeries h = solve_fixed_point(ord, [&](const PowerSeries& cur) {
    PowerSeries one_plus = one + cur.shift_up();
    PowerSeries u = -1.0 * one_plus.reciprocal().shift_up();
    return one_plus.log() + dd.compose(u).log();
  });

  std::vector<Polynomial> r;
  r.reserve(static_cast<std::size_t>(count));
  r.push_back(Polynomial({h[0], 1.0}));
  for (int n = 0; n + 1 < count; ++n) {
    Polynomial dr = r.back().derivative() - static_cast<double>(n) * r.back();
    r.push_back(dr.antiderivative(h[static_cast<std::size_t>(n) + 1]));
  }
  return r;
}

namespace {

void check_order(int order) {
  if (order < 0 || order > kMaxExpansionOrder)
    throw std::domain_error("expansion order must be in [0, 8]");
}

void fill_diag(ExpansionDiagnostics* diag, double l1, double l2) {
  if (!diag) return;
  diag->log_ratio = std::abs(l2 / l1);
  // |L2/L1| tops out at 1/e ~ 0.368 on the valid domain; 0.25 marks the
  // region where the order-1 truncation error (~ratio^2) reaches percent
  // scale of the leading term.
  diag->ill_conditioned = diag->log_ratio >= 0.25;
}

}  // namespace

double w_secondary_expansion(double x, int order, ExpansionDiagnostics* diag) {
  check_order(order);
  if (!(x < 0.0)) throw std::domain_error("w_secondary_expansion: x must be negative");
  double l1 = std::log(-x);
  if (!(l1 <= -1.0))
    throw std::domain_error("w_secondary_expansion: requires -1/e <= x < 0");
  double l2 = std::log(-l1);
  fill_diag(diag, l1, l2);
  double acc = l1 - l2;
  double l1n = l1;
  for (int n = 1; n <= order; ++n, l1n *= l1) acc += w_log_polynomial(n).eval(l2) / l1n;
  return acc;
}

double w_secondary_d_expansion(const PowerSeries& d, double x, int order,
                               ExpansionDiagnostics* diag) {
  check_order(order);
  if (!(x < 0.0)) throw std::domain_error("w_secondary_d_expansion: x must be negative");
  double l1 = std::log(-x);
  if (!(l1 < 0.0)) throw std::domain_error("w_secondary_d_expansion: requires -1 < x < 0");
  double l2 = std::log(-l1);
  fill_diag(diag, l1, l2);
  auto polys = w_log_polynomials_d(d, order + 1);
  double acc = l1;
  double sign = -1.0, l1n = 1.0;
  for (int n = 0; n <= order; ++n, sign = -sign, l1n *= l1)
    acc += sign * polys[static_cast<std::size_t>(n)].eval(l2) / l1n;
  return acc;
}

double u_gamma_expansion(double gamma, double x, int order, ExpansionDiagnostics* diag) {
  check_order(order);
  double l1 = (x > 0.0) ? std::log(x) : -1.0;
  if (!(l1 > 1.0)) throw std::domain_error("u_gamma_expansion: requires x > e");
  double l2 = std::log(l1);
  fill_diag(diag, l1, l2);
  double acc = l1 - gamma * l2;
  double l1n = l1, gn = gamma * gamma;
  for (int n = 1; n <= order; ++n, l1n *= l1, gn *= gamma)
    acc += gn * w_log_polynomial(n).eval(l2) / l1n;
  return acc;
}

double u_gamma_d_expansion(double gamma, const PowerSeries& d, double x, int order,
                           ExpansionDiagnostics* diag) {
  check_order(order);
  double l1 = (x > 0.0) ? std::log(x) : -1.0;
  if (!(l1 > 1.0)) throw std::domain_error("u_gamma_d_expansion: requires x > e");
  double l2 = std::log(l1);
  fill_diag(diag, l1, l2);
  auto polys = u_log_polynomials(gamma, d, order + 1);
  double acc = l1;
  double l1n = 1.0;
  for (int n = 0; n <= order; ++n, l1n *= l1)
    acc += polys[static_cast<std::size_t>(n)].eval(l2) / l1n;
  return acc;
}

double u_gamma_d_numeric(double gamma, const std::function<double(double)>& d_of_u, double x) {
  if (!(x > 1.0)) throw std::domain_error("u_gamma_d_numeric: requires x > 1");
  const double l1 = std::log(x);
  auto g = [&](double t) {
    double dv = d_of_u(1.0 / t);
    // A non-positive series value means t is far below the root region where
    // the truncated factor stops making sense; steer the bracket upward.
    if (!(dv > 0.0)) return -1e300;
    return gamma * std::log(t) + t + std::log(dv) - l1;
  };
  // The unbounded branch lives right of the turning point of gamma log t + t.
  const double floor = std::max(-gamma, 0.0) + 1e-9;
  double lo = std::max(0.5 * l1, floor);
  double hi = 2.0 * l1 + 20.0;
  for (int i = 0; g(lo) > 0.0; ++i) {
    if (lo <= floor * (1.0 + 1e-12) || i > 200)
      throw validity_error("u_gamma_d_numeric: no root on the unbounded branch (x too small)");
    lo = std::max(0.5 * lo, floor);
  }
  for (int i = 0; g(hi) < 0.0; ++i) {
    if (i > 200) throw convergence_error("u_gamma_d_numeric: bracket expansion failed");
    hi *= 2.0;
  }
  return solve_bisection(g, lo, hi);
}

double u_gamma_d_numeric(double gamma, const PowerSeries& d, double x) {
  return u_gamma_d_numeric(gamma, [&d](double u) { return d.eval(u); }, x);
}

double w_secondary_d_numeric(const std::function<double(double)>& d_of_u, double x) {
  if (!(x < 0.0)) throw std::domain_error("w_secondary_d_numeric: x must be negative");
  const double l1 = std::log(-x);
  auto g = [&](double w) {
    double dv = d_of_u(1.0 / w);
    if (!(dv > 0.0))
      throw validity_error("w_secondary_d_numeric: series factor not positive on the branch");
    return w + std::log(-w) + std::log(dv) - l1;
  };
  double hi = -2.0;
  if (!(g(hi) >= 0.0))
    throw validity_error("w_secondary_d_numeric: root lies above -2 (|x| too large)");
  double lo = std::min(4.0 * l1, -8.0);
  for (int i = 0; g(lo) > 0.0; ++i) {
    if (i > 200) throw convergence_error("w_secondary_d_numeric: bracket expansion failed");
    lo *= 2.0;
  }
  return solve_bisection(g, lo, hi);
}

double w_secondary_d_numeric(const PowerSeries& d, double x) {
  return w_secondary_d_numeric([&d](double u) { return d.eval(u); }, x);
}

}  // namespace evt

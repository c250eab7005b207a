#include "evt/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "evt/errors.hpp"
#include "evt/roots.hpp"

namespace evt {
namespace {

constexpr double kE = 2.718281828459045235;
constexpr double kInvE = 0.36787944117144233;  // nearest double to 1/e
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Series around the branch point x = -1/e in p = ±sqrt(2(1 + e x)):
//   W = -1 + p - p^2/3 + 11p^3/72 - 43p^4/540 + 769p^5/17280 - 221p^6/8505
// (p >= 0 on the principal branch, p <= 0 on the secondary one).
double branch_point_series(double p) {
  const double c2 = -1.0 / 3.0, c3 = 11.0 / 72.0, c4 = -43.0 / 540.0,
               c5 = 769.0 / 17280.0, c6 = -221.0 / 8505.0;
  return -1.0 + p * (1.0 + p * (c2 + p * (c3 + p * (c4 + p * (c5 + p * c6)))));
}

// Halley iteration on f(w) = w e^w - x over a piece of the branch where f is
// monotone; [lo, hi] brackets the root and absorbs any wayward step.
double refine_direct(double w, double x, double lo, double hi, bool increasing) {
  for (int it = 0; it < 50; ++it) {
    double ew = std::exp(w);
    double f = w * ew - x;
    if (f == 0.0) return w;
    if ((f > 0.0) == increasing) hi = w; else lo = w;
    double w1 = w + 1.0;
    double denom = ew * w1 - f * (w + 2.0) / (2.0 * w1);
    double wn = (std::isfinite(denom) && denom != 0.0) ? w - f / denom : 0.5 * (lo + hi);
    if (!(wn > lo && wn < hi)) wn = 0.5 * (lo + hi);
    if (std::abs(wn - w) <= 2.0 * kEps * (std::abs(wn) + 1e-300)) return wn;
    w = wn;
  }
  throw convergence_error("lambert_w: iteration near the branch point did not converge");
}

// Halley iteration on g(w) = w + log|w| - log|x|, the overflow-safe form of
// the defining equation; valid where w keeps one sign (w > 0 principal with
// x > 0, w < -1 secondary). g is increasing on both pieces.
double refine_log_form(double w, double log_ax, double lo, double hi) {
  for (int it = 0; it < 50; ++it) {
    double g = w + std::log(std::abs(w)) - log_ax;
    if (g == 0.0) return w;
    if (g > 0.0) hi = w; else lo = w;
    double gp = 1.0 + 1.0 / w;
    double denom = gp + g / (2.0 * w * w * gp);
    double wn = (std::isfinite(denom) && denom != 0.0) ? w - g / denom : 0.5 * (lo + hi);
    if (!(wn > lo && wn < hi)) wn = 0.5 * (lo + hi);
    if (std::abs(wn - w) <= 2.0 * kEps * std::abs(wn)) return wn;
    w = wn;
  }
  throw convergence_error("lambert_w: log-form iteration did not converge");
}

double lambert_w_principal(double x) {
  if (x == 0.0) return 0.0;
  double q = x + kInvE;  // distance to the branch point
  if (q <= 0.0) return -1.0;
  if (q < 1e-2) {
    double p = std::sqrt(2.0 * kE * q);
    double w = branch_point_series(p);
    // with p < ~2e-3 the series is already at rounding level and f'( -1+p )
    // is too degenerate to help
    if (q <= 1e-6) return w;
    return refine_direct(w, x, -1.0, 0.0, /*increasing=*/true);
  }
  if (x < 3.0) {
    double w = std::log1p(x);  // upper bound on W0 for x >= 0, decent seed below
    if (x < 0.0) return refine_direct(w, x, -1.0, 0.0, true);
    return refine_direct(w, x, 0.0, std::log1p(x) + 1e-12, true);
  }
  double l1 = std::log(x);
  double l2 = std::log(l1);
  double w = l1 - l2 + l2 / l1;
  // g(l1/2) = log(l1/2) - l1/2 <= 0 and g(l1+1) > 0, so this always brackets
  return refine_log_form(w, l1, 0.5 * l1, l1 + 1.0);
}

double lambert_w_secondary(double x) {
  double q = x + kInvE;
  if (q <= 0.0) return -1.0;
  if (q < 1e-2) {
    double p = -std::sqrt(2.0 * kE * q);
    double w = branch_point_series(p);
    if (q <= 1e-6) return w;
    return refine_direct(w, x, -2.5, -1.0, /*increasing=*/false);
  }
  double l1 = std::log(-x);        // <= -1
  double l2 = std::log(-l1);
  double w = l1 - l2 + l2 / l1;
  // g(2 l1) = l1 + log(2|l1|) < 0 and g(-1) = -1 - l1 >= 0
  return refine_log_form(w, l1, 2.0 * l1, -1.0);
}

}  // namespace

double lambert_w(WBranch branch, double x) {
  if (std::isnan(x)) throw std::domain_error("lambert_w: x is NaN");
  if (x < -kInvE) {
    if (x > -kInvE * (1.0 + 1e-14)) x = -kInvE;  // absorb rounding at the branch point
    else throw std::domain_error("lambert_w: x below -1/e");
  }
  if (branch == WBranch::principal) return lambert_w_principal(x);
  if (x >= 0.0) throw std::domain_error("lambert_w: secondary branch needs -1/e <= x < 0");
  return lambert_w_secondary(x);
}

double log_gamma(double a) {
  if (!(a > 0.0)) throw std::domain_error("log_gamma: argument must be > 0");
  return std::lgamma(a);
}

namespace {

// P(a,y) by the lower power series; accurate for y < a + 1.
double gamma_p_series(double a, double y) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int k = 0; k < 10000; ++k) {
    ap += 1.0;
    term *= y / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17)
      return sum * std::exp(a * std::log(y) - y - log_gamma(a));
  }
  throw convergence_error("reg_gamma_q: power series did not converge");
}

// Q(a,y) by the continued fraction with the modified Lentz algorithm;
// accurate for y >= a + 1.
double gamma_q_contfrac(double a, double y) {
  // The fraction's value is at most 1/(y + 1 - a) here, so once the leading
  // factor e^(-y) y^a / Gamma(a) underflows the result is an exact 0.0; the
  // Lentz recurrence itself would hit denormals for such y and stall.
  double log_prefix = a * std::log(y) - y - log_gamma(a);
  if (log_prefix < -746.0) return 0.0;
  const double tiny = 1e-300;
  double cb = y + 1.0 - a;
  double cc = 1.0 / tiny;
  double cd = 1.0 / cb;
  double h = cd;
  for (int i = 1; i <= 10000; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    cb += 2.0;
    cd = an * cd + cb;
    if (std::abs(cd) < tiny) cd = tiny;
    cc = cb + an / cc;
    if (std::abs(cc) < tiny) cc = tiny;
    cd = 1.0 / cd;
    double del = cd * cc;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h * std::exp(log_prefix);
  }
  throw convergence_error("reg_gamma_q: continued fraction did not converge");
}

}  // namespace

double reg_gamma_q(double a, double y) {
  if (!(a > 0.0)) throw std::domain_error("reg_gamma_q: a must be > 0");
  if (!(y >= 0.0)) throw std::domain_error("reg_gamma_q: y must be >= 0");
  if (y == 0.0) return 1.0;
  if (y < a + 1.0) return 1.0 - gamma_p_series(a, y);
  return gamma_q_contfrac(a, y);
}

double reg_gamma_q_inv(double a, double q) {
  if (!(a > 0.0)) throw std::domain_error("reg_gamma_q_inv: a must be > 0");
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("reg_gamma_q_inv: q must be in (0, 1)");

  // initial bracket around the bulk of the distribution, grown geometrically
  // until it straddles the target level (Q is decreasing in y)
  double lo = std::max(a - 1.0, 1e-8);
  double hi = a + 2.0 * std::sqrt(a) * std::log(1.0 / q) + 5.0;
  while (reg_gamma_q(a, lo) < q && lo > 1e-290) lo *= 0.25;
  while (reg_gamma_q(a, hi) > q) hi *= 2.0;

  const double lg = log_gamma(a);
  auto f = [&](double y) { return reg_gamma_q(a, y) - q; };
  auto df = [&](double y) { return -std::exp((a - 1.0) * std::log(y) - y - lg); };
  // f is decreasing: f(lo) >= 0 >= f(hi)
  return solve_newton_bracketed(f, df, lo, hi, 0.5 * (lo + hi));
}

}  // namespace evt

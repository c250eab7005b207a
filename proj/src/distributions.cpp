#include "evt/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "evt/errors.hpp"
#include "evt/roots.hpp"
#include "evt/special.hpp"

namespace evt {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Generalized Weibull
// ---------------------------------------------------------------------------

void GenWeibull::validate() const {
  if (!(k > 0.0)) throw std::invalid_argument("gen-weibull: K must be positive");
  if (!(c > 0.0)) throw std::invalid_argument("gen-weibull: C must be positive");
  if (!(tau >= 1.0)) throw std::invalid_argument("gen-weibull: tau must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("gen-weibull: alpha must be positive");
  if (!(x0 > 0.0)) throw std::invalid_argument("gen-weibull: x0 must be positive");
  if (!(tail(x0) <= 1.0 + 1e-12))
    throw std::invalid_argument("gen-weibull: tail expression exceeds 1 at x0");
  if (!(c * tau * std::pow(x0, tau) >= alpha * (1.0 - 1e-12)))
    throw std::invalid_argument(
        "gen-weibull: tail not decreasing at x0 (requires C tau x0^tau >= alpha)");
}

double GenWeibull::tail(double x) const {
  // Right-continuous P(X > x): the tail expression applies from x0 on; the
  // jump from 1 down to tail(x0) is the point mass sitting at x0.
  if (x < x0) return 1.0;
  return std::exp(std::log(k) + alpha * std::log(x) - c * std::pow(x, tau));
}

double GenWeibull::cdf(double x) const { return x < x0 ? 0.0 : 1.0 - tail(x); }

double GenWeibull::log_cdf(double x) const {
  if (x < x0) return kNegInf;
  double t = tail(x);
  return t < 1.0 ? std::log1p(-t) : kNegInf;
}

double GenWeibull::pdf(double x) const {
  if (x <= x0) return 0.0;
  return (c * tau * std::pow(x, tau - 1.0) - alpha / x) * tail(x);
}

double GenWeibull::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("gen-weibull quantile: u must be in (0, 1)");
  return quantile_from_tail(1.0 - u);
}

double GenWeibull::quantile_from_tail(double q) const {
  if (!(q > 0.0 && q < 1.0))
    throw std::domain_error("gen-weibull quantile: tail level must be in (0, 1)");
  // Generalized inverse: tail levels at or above tail(x0) land on the point
  // mass at x0.
  if (q >= tail(x0)) return x0;
  // Solve K x^alpha e^(-C x^tau) = q through s = x^tau:
  //   (-C tau s / alpha) e^(-C tau s / alpha) = -(C tau / alpha) (q/K)^(tau/alpha)
  // and the x >= x0 root is the secondary Lambert branch.
  double arg = -(c * tau / alpha) * std::pow(q / k, tau / alpha);
  double s = -(alpha / (c * tau)) * lambert_w(WBranch::secondary, arg);
  return std::pow(s, 1.0 / tau);
}

double GenWeibull::auxiliary(double x) const {
  double denom = c * tau * std::pow(x, tau - 1.0) - alpha / x;
  if (!(denom > 0.0))
    throw validity_error("gen-weibull auxiliary: at or below the pole C tau x^tau = alpha");
  return 1.0 / denom;
}

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

void Gamma::validate() const {
  if (!(nu > 1.0)) throw std::invalid_argument("gamma: shape nu must exceed 1");
  if (!(theta > 0.0)) throw std::invalid_argument("gamma: scale theta must be positive");
}

double Gamma::tail(double x) const { return x <= 0.0 ? 1.0 : reg_gamma_q(nu, x / theta); }

double Gamma::cdf(double x) const { return x <= 0.0 ? 0.0 : 1.0 - tail(x); }

double Gamma::log_cdf(double x) const {
  if (x <= 0.0) return kNegInf;
  double t = tail(x);
  return t < 1.0 ? std::log1p(-t) : kNegInf;
}

double Gamma::pdf(double x) const {
  if (x <= 0.0) return 0.0;
  double y = x / theta;
  return std::exp((nu - 1.0) * std::log(y) - y - log_gamma(nu)) / theta;
}

double Gamma::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("gamma quantile: u must be in (0, 1)");
  return theta * reg_gamma_q_inv(nu, 1.0 - u);
}

double Gamma::quantile_from_tail(double q) const {
  if (!(q > 0.0 && q < 1.0))
    throw std::domain_error("gamma quantile: tail level must be in (0, 1)");
  return theta * reg_gamma_q_inv(nu, q);
}

double Gamma::auxiliary(double x) const {
  double denom = x / theta - nu + 1.0;
  if (!(denom > 0.0))
    throw validity_error("gamma auxiliary: at or below the pole x = theta(nu-1)");
  return x / denom;
}

GenWeibull Gamma::tail_equivalent() const {
  GenWeibull p;
  p.k = std::exp(-(nu - 1.0) * std::log(theta) - log_gamma(nu));
  p.c = 1.0 / theta;
  p.tau = 1.0;
  p.alpha = nu - 1.0;
  p.x0 = theta * (nu - 1.0);
  return p;
}

Gamma chi_squared(int m) {
  if (m < 3)
    throw std::invalid_argument("chi-squared: needs at least 3 degrees of freedom (shape > 1)");
  Gamma g{0.5 * m, 2.0};
  g.validate();
  return g;
}

// ---------------------------------------------------------------------------
// Tail-equivalent forms of the Gamma CDF
// ---------------------------------------------------------------------------

namespace {

// log of the tail expression of the chosen form.
double log_tail_form(const Gamma& g, TailForm form, double x) {
  double lk = -(g.nu - 1.0) * std::log(g.theta) - log_gamma(g.nu);
  double lt = lk + (g.nu - 1.0) * std::log(x) - x / g.theta;
  if (form == TailForm::f2) lt += std::log1p(g.theta * (g.nu - 1.0) / x);
  return lt;
}

}  // namespace

double gamma_tail_form_threshold(const Gamma& g, TailForm form) {
  g.validate();
  // Point where the expression starts decreasing...
  double t_dec;
  if (form == TailForm::f1) {
    t_dec = g.theta * (g.nu - 1.0);
  } else {
    double prod = (g.nu - 1.0) * (g.nu - 2.0);
    t_dec = prod > 0.0 ? g.theta * std::sqrt(prod) : 0.0;
  }
  // ...then push right until it is also <= 1.
  double probe = t_dec > 0.0 ? t_dec : g.theta * 1e-6;
  if (log_tail_form(g, form, probe) <= 0.0) return t_dec;
  double hi = std::max(2.0 * probe, 2.0 * g.theta);
  while (log_tail_form(g, form, hi) > 0.0) hi *= 2.0;
  return solve_bisection([&](double x) { return log_tail_form(g, form, x); }, probe, hi);
}

double gamma_tail_equivalent_cdf(const Gamma& g, TailForm form, double x) {
  double threshold = gamma_tail_form_threshold(g, form);
  if (!(x > 0.0) || x < threshold * (1.0 - 1e-12))
    throw validity_error("gamma tail form: x below the validity threshold");
  return 1.0 - std::exp(log_tail_form(g, form, x));
}

// ---------------------------------------------------------------------------
// Gumbel law
// ---------------------------------------------------------------------------

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

double gumbel_pdf(double x) { return std::exp(-x - std::exp(-x)); }

double gumbel_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("gumbel quantile: u must be in (0, 1)");
  return -std::log(-std::log(u));
}

// ---------------------------------------------------------------------------
// Polymorphic wrapper
// ---------------------------------------------------------------------------

Distribution::Distribution(GenWeibull p) : v_(p) { p.validate(); }
Distribution::Distribution(Gamma g) : v_(g) { g.validate(); }

double Distribution::tail(double x) const {
  return std::visit([x](const auto& d) { return d.tail(x); }, v_);
}
double Distribution::cdf(double x) const {
  return std::visit([x](const auto& d) { return d.cdf(x); }, v_);
}
double Distribution::log_cdf(double x) const {
  return std::visit([x](const auto& d) { return d.log_cdf(x); }, v_);
}
double Distribution::pdf(double x) const {
  return std::visit([x](const auto& d) { return d.pdf(x); }, v_);
}
double Distribution::quantile(double u) const {
  return std::visit([u](const auto& d) { return d.quantile(u); }, v_);
}
double Distribution::quantile_from_tail(double q) const {
  return std::visit([q](const auto& d) { return d.quantile_from_tail(q); }, v_);
}
double Distribution::auxiliary(double x) const {
  return std::visit([x](const auto& d) { return d.auxiliary(x); }, v_);
}

double Distribution::tau() const {
  if (const auto* p = gen_weibull()) return p->tau;
  return 1.0;
}

double Distribution::alpha() const {
  if (const auto* p = gen_weibull()) return p->alpha;
  return gamma()->nu - 1.0;
}

}  // namespace evt

#include "evt/norming.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "evt/errors.hpp"
#include "evt/expansions.hpp"
#include "evt/special.hpp"

namespace evt {

std::string method_name(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::standard: return "standard";
    case Method::improved: return "improved";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "exact") return Method::exact;
  if (name == "standard") return Method::standard;
  if (name == "improved") return Method::improved;
  throw std::invalid_argument("unknown constants method '" + name +
                              "' (expected exact, standard, or improved)");
}

namespace {

double log_n(long long n) { return std::log(static_cast<double>(n)); }

}  // namespace

NormingConstants exact_constants(const Distribution& dist, long long n) {
  if (n < 2) throw std::invalid_argument("exact constants: n must be at least 2");
  if (const auto* p = dist.gen_weibull()) {
    if (1.0 / static_cast<double>(n) > p->tail(p->x0))
      throw validity_error(
          "exact constants: level 1-1/n falls inside the point mass at x0 (n too small)");
  }
  double b = dist.quantile_from_tail(1.0 / static_cast<double>(n));
  return {dist.auxiliary(b), b, Method::exact, n};
}

NormingConstants standard_constants(const Distribution& dist, long long n) {
  if (n < 3) throw std::invalid_argument("standard constants: n must be at least 3");
  double ln = log_n(n);
  if (const auto* p = dist.gen_weibull()) {
    double t = ln / p->c;  // C^-1 log n
    double r = 1.0 / p->tau;
    double b = std::pow(t, r) +
               r * std::pow(t, r - 1.0) *
                   ((p->alpha / (p->c * p->tau)) * std::log(t) + std::log(p->k) / p->c);
    double a = std::pow(t, r - 1.0) / (p->c * p->tau);
    return {a, b, Method::standard, n};
  }
  const Gamma& g = *dist.gamma();
  double b = g.theta * (ln + (g.nu - 1.0) * std::log(ln) - log_gamma(g.nu));
  return {g.theta, b, Method::standard, n};
}

NormingConstants improved_constants(const Distribution& dist, long long n) {
  if (n < 3) throw std::invalid_argument("improved constants: n must be at least 3");
  double ln = log_n(n);
  double b;
  if (const auto* p = dist.gen_weibull()) {
    if (p->alpha > p->tau) {
      double m1 = std::log(p->c * p->tau / p->alpha) - (p->tau / p->alpha) * (std::log(p->k) + ln);
      if (!(m1 < -1.0))
        throw validity_error(
            "improved constants: validity guard failed, inner logarithm argument "
            "-M1 must exceed 1 (n too small for this alpha > tau tail)");
      double m2 = std::log(-m1);
      b = std::pow(p->alpha / (p->c * p->tau), 1.0 / p->tau) *
          std::pow(-m1 + m2 - m2 / m1, 1.0 / p->tau);
    } else {
      double n1 = std::log(p->k) + ln - (p->alpha / p->tau) * std::log(p->c);
      if (!(n1 > 1.0))
        throw validity_error(
            "improved constants: validity guard failed, leading logarithm N1 must "
            "exceed 1 (n too small for this alpha <= tau tail)");
      double n2 = std::log(n1);
      double r = p->alpha / p->tau;
      b = std::pow(p->c, -1.0 / p->tau) * std::pow(n1 + r * n2 + r * r * n2 / n1, 1.0 / p->tau);
    }
  } else {
    const Gamma& g = *dist.gamma();
    double nm1 = g.nu - 1.0;
    if (g.nu <= 2.0) {
      double l1 = ln - log_gamma(g.nu);
      if (!(l1 > 1.0))
        throw validity_error(
            "improved constants: validity guard failed, leading logarithm "
            "log(n/Gamma(nu)) must exceed 1 (n too small)");
      double l2 = std::log(l1);
      b = g.theta * (l1 + nm1 * l2 + (nm1 * nm1 * l2 + nm1) / l1);
    } else {
      double big_b = ln + nm1 * std::log(nm1) - log_gamma(g.nu);
      if (!(big_b > 1.0))
        throw validity_error(
            "improved constants: validity guard failed, leading logarithm B must "
            "exceed 1 (n too small)");
      double lb = std::log(big_b);
      b = g.theta * (ln + nm1 * lb - log_gamma(g.nu) +
                     (nm1 * nm1 * lb - nm1 * nm1 * std::log(nm1) + nm1) / big_b);
    }
  }
  return {dist.auxiliary(b), b, Method::improved, n};
}

NormingConstants constants_via_expansion(const Distribution& dist, long long n, int order) {
  if (n < 3) throw std::invalid_argument("expansion constants: n must be at least 3");
  if (order < 0 || order > 6)
    throw std::invalid_argument("expansion constants: order must be in [0, 6]");
  double ln = log_n(n);
  double b;
  try {
    if (const auto* p = dist.gen_weibull()) {
      if (p->alpha > p->tau) {
        // x0^tau scaled root of the secondary Lambert branch
        double y = -(p->c * p->tau / p->alpha) *
                   std::exp(-(p->tau / p->alpha) * (std::log(p->k) + ln));
        double w = w_secondary_expansion(y, order);
        b = std::pow(-(p->alpha / (p->c * p->tau)) * w, 1.0 / p->tau);
      } else {
        double x = std::exp(std::log(p->k) + ln - (p->alpha / p->tau) * std::log(p->c));
        double u = u_gamma_expansion(-p->alpha / p->tau, x, order);
        b = std::pow(u / p->c, 1.0 / p->tau);
      }
    } else {
      const Gamma& g = *dist.gamma();
      double nm1 = g.nu - 1.0;
      std::size_t sord = static_cast<std::size_t>(std::max(order, 1));
      if (g.nu <= 2.0) {
        PowerSeries base(sord);
        base[0] = 1.0;
        base[1] = nm1;
        PowerSeries d = base.reciprocal();  // (1 + (nu-1) t)^-1
        double x = std::exp(ln - log_gamma(g.nu));
        b = g.theta * u_gamma_d_expansion(1.0 - g.nu, d, x, order);
      } else {
        PowerSeries base(sord);
        base[0] = 1.0;
        base[1] = -1.0;
        PowerSeries e = base.pow(1.0 / nm1);  // (1 - t)^(1/(nu-1))
        double y = -std::exp((log_gamma(g.nu) - ln) / nm1) / nm1;
        b = -nm1 * g.theta * w_secondary_d_expansion(e, y, order);
      }
    }
  } catch (const std::domain_error& err) {
    throw validity_error(std::string("expansion constants: ") + err.what());
  }
  return {dist.auxiliary(b), b, Method::improved, n};
}

NormingConstants compute_constants(const Distribution& dist, Method method, long long n) {
  switch (method) {
    case Method::exact: return exact_constants(dist, n);
    case Method::standard: return standard_constants(dist, n);
    case Method::improved: return improved_constants(dist, n);
  }
  throw std::invalid_argument("compute_constants: unknown method");
}

}  // namespace evt

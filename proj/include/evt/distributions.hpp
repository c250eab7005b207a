#pragma once

#include <variant>

namespace evt {

// Distribution with right tail  1 - F(x) = K x^alpha exp(-C x^tau)  on
// [x0, inf).  Any probability not covered by the tail sits as a point mass
// at x0 (F jumps from 0 to F(x0) there).
struct GenWeibull {
  double k;      // tail scale K > 0
  double c;      // exponential rate C > 0
  double tau;    // exponential power tau >= 1
  double alpha;  // polynomial power alpha > 0
  double x0;     // left support edge

  // Throws std::invalid_argument unless K, C > 0, tau >= 1, alpha > 0,
  // x0 > 0, the tail expression is <= 1 at x0, and the tail is decreasing
  // there (C tau x0^tau >= alpha), so F is a genuine CDF.
  void validate() const;

  double tail(double x) const;  // 1 - F(x), exact formula for x >= x0
  double cdf(double x) const;
  double log_cdf(double x) const;  // log F, stable deep in the tail
  double pdf(double x) const;      // density on (x0, inf); 0 outside
  // Generalized inverse CDF on (0, 1): levels inside the point mass map to
  // x0, the rest is closed form via the secondary Lambert branch.
  double quantile(double u) const;
  // x with tail(x) = q (generalized inverse: q >= tail(x0) gives x0);
  // preserves accuracy for tiny q where 1 - u would round.
  double quantile_from_tail(double q) const;
  // (1 - F(x)) / f(x) = 1 / (C tau x^(tau-1) - alpha/x).
  double auxiliary(double x) const;
};

// Gamma distribution with shape nu > 1 and scale theta > 0.
struct Gamma {
  double nu;
  double theta;

  void validate() const;  // throws std::invalid_argument

  double tail(double x) const;  // regularized upper incomplete gamma
  double cdf(double x) const;
  double log_cdf(double x) const;
  double pdf(double x) const;
  double quantile(double u) const;
  double quantile_from_tail(double q) const;
  // Auxiliary function of the first tail-equivalent form:
  // A1(x) = x / (x/theta - nu + 1).
  double auxiliary(double x) const;

  // Tail-equivalent generalized Weibull: K = 1/(theta^(nu-1) Gamma(nu)),
  // C = 1/theta, tau = 1, alpha = nu - 1, supported from x0 = theta(nu-1).
  GenWeibull tail_equivalent() const;
};

// chi-squared with m degrees of freedom as Gamma(m/2, 2); requires m >= 3
// so that the shape exceeds 1.
Gamma chi_squared(int m);

// The two tail-equivalent approximations of the Gamma CDF:
//   f1: 1 - K x^(nu-1) e^(-x/theta)
//   f2: 1 - K x^(nu-1) e^(-x/theta) (1 + theta(nu-1)/x)
enum class TailForm { f1, f2 };

// Smallest x at which the chosen tail expression is both <= 1 and
// decreasing, i.e. where it behaves as a genuine tail.
double gamma_tail_form_threshold(const Gamma& g, TailForm form);

// CDF of the tail-equivalent form; throws evt::validity_error below the
// threshold above.
double gamma_tail_equivalent_cdf(const Gamma& g, TailForm form, double x);

// Gumbel law, the limit of normalized maxima for this whole family.
double gumbel_cdf(double x);       // exp(-e^(-x))
double gumbel_pdf(double x);       // e^(-x) exp(-e^(-x))
double gumbel_quantile(double u);  // -log(-log u), u in (0,1)

// Value-type wrapper so norming/convergence/simulation code can treat both
// families uniformly.
class Distribution {
 public:
  Distribution(GenWeibull p);  // NOLINT(google-explicit-constructor)
  Distribution(Gamma g);       // NOLINT(google-explicit-constructor)

  double tail(double x) const;
  double cdf(double x) const;
  double log_cdf(double x) const;
  double pdf(double x) const;
  double quantile(double u) const;
  double quantile_from_tail(double q) const;
  double auxiliary(double x) const;

  // Tail exponents in the generalized Weibull sense (the Gamma family maps
  // to tau = 1, alpha = nu - 1).
  double tau() const;
  double alpha() const;

  const GenWeibull* gen_weibull() const { return std::get_if<GenWeibull>(&v_); }
  const Gamma* gamma() const { return std::get_if<Gamma>(&v_); }

 private:
  std::variant<GenWeibull, Gamma> v_;
};

}  // namespace evt

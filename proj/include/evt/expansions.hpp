#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "evt/polynomial.hpp"
#include "evt/series.hpp"

namespace evt {

// Largest supported truncation order of the logarithmic expansions.
inline constexpr int kMaxExpansionOrder = 8;

// Unsigned Stirling cycle number [n, k] (permutations of n elements with k
// cycles), exact in 64-bit integers for n <= 20.
std::int64_t stirling_cycle(int n, int k);

// Classical correction polynomial of the secondary-branch expansion
//   p_n(z) = sum_{m=1}^{n} (-1)^(n-m)/m! * [n, n-m+1] z^m,   1 <= n.
// p_1 = z, p_2 = z^2/2 - z, p_3 = z^3/3 - (3/2)z^2 + z, ...
Polynomial w_log_polynomial(int n);

// Correction polynomials Q_0..Q_{count-1} for the unbounded root of
// t^gamma e^t D(1/t) = x.  They satisfy Q_0 = -gamma z - log d0 and the
// derivative recurrence Q'_{n+1} = -gamma (Q'_n - n Q_n); the integration
// constants Q_n(0) are the coefficients of the generating function
//   G(s) = -gamma log(1 + s G(s)) - log D(s / (1 + s G(s))).
// With D == 1 they reduce to gamma^(n+1) * w_log_polynomial(n).
std::vector<Polynomial> u_log_polynomials(double gamma, const PowerSeries& d, int count);

// Correction polynomials R_0..R_{count-1} for the secondary-branch root of
// w e^w D(1/w) = x.  R_0 = z + log d0, R'_{n+1} = R'_n - n R_n, and R_n(0)
// come from H(s) = log(1 + s H(s)) + log D(-s / (1 + s H(s))).
std::vector<Polynomial> w_log_polynomials_d(const PowerSeries& d, int count);

// Conditioning report for the truncated expansions: the natural expansion
// variable is L2/L1, and the series loses practical accuracy once that ratio
// is no longer small.
struct ExpansionDiagnostics {
  double log_ratio = 0.0;        // |L2 / L1|
  bool ill_conditioned = false;  // |L2 / L1| >= 0.25 (ceiling is 1/e)
};

// Truncated expansion of the secondary Lambert branch,
//   W(x) ~ L1(-x) + sum_{n=0}^{order} (-1)^(n+1) p*_n(L2(-x)) / L1(-x)^n,
// where the n = 0 term is -L2 and p*_n = w_log_polynomial(n) for n >= 1.
// Requires -1/e < x < 0 with log(-x) < -1.
double w_secondary_expansion(double x, int order, ExpansionDiagnostics* diag = nullptr);

// Same with a multiplicative series D (w e^w D(1/w) = x), using the R_n.
double w_secondary_d_expansion(const PowerSeries& d, double x, int order,
                               ExpansionDiagnostics* diag = nullptr);

// Truncated expansion of the unbounded root of t^gamma e^t = x,
//   U(x) ~ L1(x) + sum_{n=0}^{order} Q_n(L2(x)) / L1(x)^n.  Requires x > e.
double u_gamma_expansion(double gamma, double x, int order,
                         ExpansionDiagnostics* diag = nullptr);

// Same with a multiplicative series D (t^gamma e^t D(1/t) = x).
double u_gamma_d_expansion(double gamma, const PowerSeries& d, double x, int order,
                           ExpansionDiagnostics* diag = nullptr);

// Fully numeric root of t^gamma e^t D(1/t) = x on the unbounded branch,
// solved in log form; the expansions above are judged against this.
// d_of_u maps u = 1/t to D(u).
double u_gamma_d_numeric(double gamma, const std::function<double(double)>& d_of_u, double x);
double u_gamma_d_numeric(double gamma, const PowerSeries& d, double x);

// Numeric secondary-branch root of w e^w D(1/w) = x (x < 0 small), w <= -2.
double w_secondary_d_numeric(const std::function<double(double)>& d_of_u, double x);
double w_secondary_d_numeric(const PowerSeries& d, double x);

}  // namespace evt

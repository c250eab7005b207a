#pragma once

namespace evt {

enum class WBranch { principal, secondary };

// Real branches of the Lambert W function (w e^w = x).
//   principal: x >= -1/e, W >= -1
//   secondary: -1/e <= x < 0, W <= -1
// Seeded from a branch-point series or the log-log asymptotic form, then
// refined by a safeguarded third-order (Halley) iteration; the result solves
// the defining equation to within a few ulp.
double lambert_w(WBranch branch, double x);

// log Gamma(a) for a > 0.
double log_gamma(double a);

// Regularized upper incomplete gamma Q(a, y) = Gamma(a, y)/Gamma(a), a > 0,
// y >= 0. Power series for y < a+1, continued fraction (modified Lentz)
// otherwise, both carried against log_gamma to avoid overflow.
double reg_gamma_q(double a, double y);

// Inverse of y -> reg_gamma_q(a, y): the y with Q(a, y) = q, q in (0, 1).
// Bracketed Newton; the result satisfies Q(a, y) = q to ~1e-12 absolute.
double reg_gamma_q_inv(double a, double q);

}  // namespace evt

#pragma once

#include <cmath>
#include <limits>

#include "evt/errors.hpp"

namespace evt {

struct RootOpts {
  double xtol = 1e-15;   // relative step tolerance
  double ftol = 0.0;     // absolute residual tolerance (0 = step-based only)
  int max_iter = 200;
};

// Newton iteration constrained to a sign-changing bracket [lo, hi]; any step
// that leaves the bracket is replaced by a bisection step, so convergence is
// guaranteed for continuous f.
template <class F, class DF>
double solve_newton_bracketed(F&& f, DF&& df, double lo, double hi, double x0,
                              RootOpts opts = {}) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw convergence_error("root bracket does not straddle a sign change");

  double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
  double fx = f(x);
  for (int it = 0; it < opts.max_iter; ++it) {
    if (fx == 0.0 || std::abs(fx) <= opts.ftol) return x;
    if ((fx > 0.0) == (fhi > 0.0)) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    double d = df(x);
    double step = (d != 0.0 && std::isfinite(d)) ? fx / d : std::numeric_limits<double>::infinity();
    double xn = x - step;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);  // bisection fallback
    if (std::abs(xn - x) <= opts.xtol * (std::abs(xn) + opts.xtol)) return xn;
    x = xn;
    fx = f(x);
    if (hi - lo <= opts.xtol * (std::abs(x) + opts.xtol)) return x;
  }
  throw convergence_error("bracketed Newton iteration did not converge");
}

// Derivative-free variant: bisection with a secant probe on alternate steps.
template <class F>
double solve_bisection(F&& f, double lo, double hi, RootOpts opts = {}) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw convergence_error("root bracket does not straddle a sign change");
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < opts.max_iter; ++it) {
    double xs = (lo * fhi - hi * flo) / (fhi - flo);
    double mid = 0.5 * (lo + hi);
    x = (it % 2 == 0 && xs > lo + 0.01 * (hi - lo) && xs < hi - 0.01 * (hi - lo)) ? xs : mid;
    double fx = f(x);
    if (fx == 0.0 || std::abs(fx) <= opts.ftol ||
        hi - lo <= opts.xtol * (std::abs(x) + opts.xtol))
      return x;
    if ((fx > 0.0) == (fhi > 0.0)) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
  }
  return x;
}

}  // namespace evt

#pragma once

#include <string>

#include "evt/distributions.hpp"

namespace evt {

enum class Method { exact, standard, improved };

std::string method_name(Method m);
Method method_from_name(const std::string& name);  // throws std::invalid_argument

// Centering/scaling pair for the maximum of n draws: (M_n - b)/a.
struct NormingConstants {
  double a = 0.0;
  double b = 0.0;
  Method method = Method::exact;
  long long n = 0;
};

// b solves F(b) = 1 - 1/n (true CDF for both families); a is the auxiliary
// function at b.  Requires n >= 2.
NormingConstants exact_constants(const Distribution& dist, long long n);

// The closed-form two-term constants.  Requires n >= 3 (log log n > 0).
NormingConstants standard_constants(const Distribution& dist, long long n);

// Closed-form constants with one extra term of the logarithmic expansion.
// Throws evt::validity_error when n is below the expansion's validity
// region (the inner logarithm's argument must exceed 1).
NormingConstants improved_constants(const Distribution& dist, long long n);

// General-order expansion of b (order = number of correction terms beyond
// the two leading logarithms; order <= 6).  At order 1 this reproduces
// improved_constants exactly.  a is the auxiliary function's closed form
// evaluated at the expanded b.
NormingConstants constants_via_expansion(const Distribution& dist, long long n, int order);

NormingConstants compute_constants(const Distribution& dist, Method method, long long n);

}  // namespace evt

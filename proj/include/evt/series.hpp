#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace evt {

// Truncated formal power series c0 + c1 t + ... + cN t^N.  All arithmetic is
// performed modulo t^(N+1); binary operations require equal truncation orders.
// Orders are tiny here (<= ~10), so plain O(N^2) convolutions are used.
class PowerSeries {
 public:
  explicit PowerSeries(std::size_t order) : coef_(order + 1, 0.0) {}
  PowerSeries(std::initializer_list<double> coeffs);
  explicit PowerSeries(std::vector<double> coeffs);

  static PowerSeries constant(double c0, std::size_t order);
  static PowerSeries identity(std::size_t order);  // the series t
  static PowerSeries one(std::size_t order) { return constant(1.0, order); }

  std::size_t order() const { return coef_.size() - 1; }
  double operator[](std::size_t k) const { return coef_[k]; }
  double& operator[](std::size_t k) { return coef_[k]; }
  const std::vector<double>& coefficients() const { return coef_; }

  // Returns a copy truncated (or zero-extended) to the given order.
  PowerSeries with_order(std::size_t order) const;

  PowerSeries& operator+=(const PowerSeries& rhs);
  PowerSeries& operator-=(const PowerSeries& rhs);
  PowerSeries& operator*=(double s);
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(PowerSeries a, double s) { return a *= s; }
  friend PowerSeries operator*(double s, PowerSeries a) { return a *= s; }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);

  PowerSeries reciprocal() const;   // requires c0 != 0
  PowerSeries log() const;          // requires c0 > 0
  PowerSeries exp() const;
  PowerSeries pow(double r) const;  // requires c0 > 0

  // Substitute: (*this)(inner(t)); requires inner constant term == 0.
  PowerSeries compose(const PowerSeries& inner) const;
  // c_k -> c_k s^k, i.e. the series of f(s t).
  PowerSeries scale_argument(double s) const;
  // Multiply by t (shift coefficients up, dropping the top one).
  PowerSeries shift_up() const;

  double eval(double t) const;  // Horner evaluation of the truncated series

 private:
  std::vector<double> coef_;
};

}  // namespace evt

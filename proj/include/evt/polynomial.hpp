#pragma once

#include <cstddef>
#include <vector>

namespace evt {

// Dense real polynomial, coefficients in ascending degree order.
class Polynomial {
 public:
  Polynomial() : coef_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs);

  std::size_t degree() const { return coef_.size() - 1; }
  // Coefficient of z^k; zero beyond the stored degree.
  double operator[](std::size_t k) const { return k < coef_.size() ? coef_[k] : 0.0; }
  const std::vector<double>& coefficients() const { return coef_; }

  double eval(double z) const;
  Polynomial derivative() const;
  // Antiderivative whose constant term is the given value.
  Polynomial antiderivative(double constant_term) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }

 private:
  void trim();
  std::vector<double> coef_;
};

}  // namespace evt

#include "evt/polynomial.hpp"

#include <algorithm>

namespace evt {

Polynomial::Polynomial(std::vector<double> coeffs) : coef_(std::move(coeffs)) {
  if (coef_.empty()) coef_.push_back(0.0);
  trim();
}

void Polynomial::trim() {
  while (coef_.size() > 1 && coef_.back() == 0.0) coef_.pop_back();
}

double Polynomial::eval(double z) const {
  double acc = 0.0;
  for (std::size_t k = coef_.size(); k-- > 0;) acc = acc * z + coef_[k];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coef_.size() == 1) return Polynomial{};
  std::vector<double> d(coef_.size() - 1);
  for (std::size_t k = 1; k < coef_.size(); ++k) d[k - 1] = static_cast<double>(k) * coef_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative(double constant_term) const {
  std::vector<double> a(coef_.size() + 1);
  a[0] = constant_term;
  for (std::size_t k = 0; k < coef_.size(); ++k) a[k + 1] = coef_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(a));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  coef_.resize(std::max(coef_.size(), rhs.coef_.size()), 0.0);
  for (std::size_t k = 0; k < rhs.coef_.size(); ++k) coef_[k] += rhs.coef_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  coef_.resize(std::max(coef_.size(), rhs.coef_.size()), 0.0);
  for (std::size_t k = 0; k < rhs.coef_.size(); ++k) coef_[k] -= rhs.coef_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& c : coef_) c *= s;
  trim();
  return *this;
}

}  // namespace evt

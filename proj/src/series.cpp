#include "evt/series.hpp"

#include <cmath>
#include <stdexcept>

namespace evt {

PowerSeries::PowerSeries(std::initializer_list<double> coeffs) : coef_(coeffs) {
  if (coef_.empty()) coef_.push_back(0.0);
}

PowerSeries::PowerSeries(std::vector<double> coeffs) : coef_(std::move(coeffs)) {
  if (coef_.empty()) coef_.push_back(0.0);
}

PowerSeries PowerSeries::constant(double c0, std::size_t order) {
  PowerSeries s(order);
  s.coef_[0] = c0;
  return s;
}

PowerSeries PowerSeries::identity(std::size_t order) {
  PowerSeries s(order);
  if (order >= 1) s.coef_[1] = 1.0;
  return s;
}

PowerSeries PowerSeries::with_order(std::size_t order) const {
  PowerSeries s(order);
  for (std::size_t k = 0; k <= order && k < coef_.size(); ++k) s.coef_[k] = coef_[k];
  return s;
}

namespace {
void check_same_order(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("PowerSeries: mismatched truncation orders");
}
}  // namespace

PowerSeries& PowerSeries::operator+=(const PowerSeries& rhs) {
  check_same_order(*this, rhs);
  for (std::size_t k = 0; k < coef_.size(); ++k) coef_[k] += rhs.coef_[k];
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& rhs) {
  check_same_order(*this, rhs);
  for (std::size_t k = 0; k < coef_.size(); ++k) coef_[k] -= rhs.coef_[k];
  return *this;
}

PowerSeries& PowerSeries::operator*=(double s) {
  for (double& c : coef_) c *= s;
  return *this;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  check_same_order(a, b);
  PowerSeries out(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; i + j <= a.order(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

PowerSeries PowerSeries::reciprocal() const {
  if (coef_[0] == 0.0)
    throw std::domain_error("PowerSeries::reciprocal: zero constant term");
  PowerSeries r(order());
  r[0] = 1.0 / coef_[0];
  for (std::size_t n = 1; n <= order(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) acc += coef_[k] * r[n - k];
    r[n] = -acc / coef_[0];
  }
  return r;
}

PowerSeries PowerSeries::log() const {
  if (!(coef_[0] > 0.0))
    throw std::domain_error("PowerSeries::log: constant term must be positive");
  PowerSeries b(order());
  b[0] = std::log(coef_[0]);
  // n a0 b_n = n a_n - sum_{j=1}^{n-1} (n - j) a_j b_{n-j}
  for (std::size_t n = 1; n <= order(); ++n) {
    double acc = static_cast<double>(n) * coef_[n];
    for (std::size_t j = 1; j < n; ++j)
      acc -= static_cast<double>(n - j) * coef_[j] * b[n - j];
    b[n] = acc / (static_cast<double>(n) * coef_[0]);
  }
  return b;
}

PowerSeries PowerSeries::exp() const {
  PowerSeries e(order());
  e[0] = std::exp(coef_[0]);
  // n e_n = sum_{k=1}^{n} k a_k e_{n-k}
  for (std::size_t n = 1; n <= order(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * coef_[k] * e[n - k];
    e[n] = acc / static_cast<double>(n);
  }
  return e;
}

PowerSeries PowerSeries::pow(double r) const {
  if (!(coef_[0] > 0.0))
    throw std::domain_error("PowerSeries::pow: constant term must be positive");
  PowerSeries p(order());
  p[0] = std::pow(coef_[0], r);
  // Miller's recurrence: n a0 p_n = sum_{k=1}^{n} ((r+1)k - n) a_k p_{n-k}
  for (std::size_t n = 1; n <= order(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
      acc += ((r + 1.0) * static_cast<double>(k) - static_cast<double>(n)) * coef_[k] * p[n - k];
    p[n] = acc / (static_cast<double>(n) * coef_[0]);
  }
  return p;
}

PowerSeries PowerSeries::compose(const PowerSeries& inner) const {
  check_same_order(*this, inner);
  if (inner[0] != 0.0)
    throw std::domain_error("PowerSeries::compose: inner constant term must be 0");
  PowerSeries acc = PowerSeries::constant(coef_[order()], order());
  for (std::size_t k = order(); k-- > 0;) {
    acc = acc * inner;
    acc[0] += coef_[k];
  }
  return acc;
}

PowerSeries PowerSeries::scale_argument(double s) const {
  PowerSeries out(order());
  double sk = 1.0;
  for (std::size_t k = 0; k <= order(); ++k) {
    out[k] = coef_[k] * sk;
    sk *= s;
  }
  return out;
}

PowerSeries PowerSeries::shift_up() const {
  PowerSeries out(order());
  for (std::size_t k = order(); k >= 1; --k) out[k] = coef_[k - 1];
  return out;
}

double PowerSeries::eval(double t) const {
  double acc = 0.0;
  for (std::size_t k = coef_.size(); k-- > 0;) acc = acc * t + coef_[k];
  return acc;
}

}  // namespace evt

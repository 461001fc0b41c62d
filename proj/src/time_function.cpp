#include "rootwalk/time_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rootwalk {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

cplx Polynomial::operator()(cplx s) const noexcept {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<cplx> c(std::max(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) c[i] += other.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  std::vector<cplx> neg(other.coeffs_.size());
  std::transform(other.coeffs_.begin(), other.coeffs_.end(), neg.begin(), [](cplx v) { return -v; });
  return *this + Polynomial(std::move(neg));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<cplx> c(coeffs_.size() + other.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw std::invalid_argument("polynomial power must be >= 0");
  Polynomial result = constant(1.0);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

Polynomial Polynomial::compose_affine(cplx a, cplx b) const {
  Polynomial inner = linear(a, b);
  Polynomial result = constant(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) result = result * inner + constant(*it);
  return result;
}

Polynomial Polynomial::antiderivative() const {
  std::vector<cplx> c(coeffs_.size() + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(c));
}

cplx Polynomial::integral(double lo, double hi) const {
  const Polynomial p = antiderivative();
  return p(hi) - p(lo);
}

cplx simpson(const std::function<cplx(double)>& f, double lo, double hi, int intervals) {
  if (intervals < 2) intervals = 2;
  if (intervals % 2) ++intervals;
  const double h = (hi - lo) / intervals;
  cplx acc = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return acc * (h / 3.0);
}

TimeFunction TimeFunction::general(std::function<cplx(double)> fn, std::string label) {
  TimeFunction tf = constant(0.0);
  tf.fn_ = std::move(fn);
  tf.label_ = std::move(label);
  return tf;
}

cplx TimeFunction::integral(double lo, double hi) const {
  if (!fn_) return poly_.integral(lo, hi);
  return simpson(fn_, lo, hi);
}

cplx TimeFunction::power_integral(int k, double lo, double hi) const {
  if (!fn_) return poly_.pow(k).integral(lo, hi);
  return simpson([&](double s) { return ipow(fn_(s), k); }, lo, hi);
}

double TimeFunction::sampled_sup(double horizon) const {
  double m = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double v = std::abs((*this)(horizon * i / 1000.0));
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    m = std::max(m, v);
  }
  return m;
}

}  // namespace rootwalk

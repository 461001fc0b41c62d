#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rootwalk/common.hpp"

namespace rootwalk {

/// Dense complex polynomial in one real or complex variable.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);

  static Polynomial constant(cplx c) { return Polynomial({c}); }
  /// c0 + c1 s.
  static Polynomial linear(cplx c0, cplx c1) { return Polynomial({c0, c1}); }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }

  cplx operator()(cplx s) const noexcept;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial pow(int k) const;
  /// p(a + b s).
  Polynomial compose_affine(cplx a, cplx b) const;
  /// Antiderivative vanishing at 0.
  Polynomial antiderivative() const;
  cplx integral(double lo, double hi) const;

 private:
  std::vector<cplx> coeffs_{cplx{}};
};

/// Composite Simpson rule with `intervals` (rounded up to even) panels.
cplx simpson(const std::function<cplx(double)>& f, double lo, double hi, int intervals = 1000);

/// A coefficient or potential on [0, T]. Polynomials are integrated in
/// closed form; any other function by composite Simpson with 10^3 panels.
class TimeFunction {
 public:
  TimeFunction() : TimeFunction(constant(1.0)) {}

  static TimeFunction constant(cplx c) { return TimeFunction(Polynomial::constant(c)); }
  static TimeFunction polynomial(std::vector<cplx> coeffs) { return TimeFunction(Polynomial(std::move(coeffs))); }
  static TimeFunction general(std::function<cplx(double)> fn, std::string label = "general");

  bool is_polynomial() const noexcept { return !fn_; }
  const Polynomial& poly() const noexcept { return poly_; }
  const std::string& label() const noexcept { return label_; }

  cplx operator()(double s) const { return fn_ ? fn_(s) : poly_(s); }

  cplx integral(double lo, double hi) const;
  /// Integral of f(s)^k over [lo, hi].
  cplx power_integral(int k, double lo, double hi) const;
  /// max |f| over 10^3 + 1 uniform nodes of [0, horizon].
  double sampled_sup(double horizon) const;

 private:
  explicit TimeFunction(Polynomial p) : poly_(std::move(p)), label_("poly") {}

  Polynomial poly_;
  std::function<cplx(double)> fn_;
  std::string label_;
};

}  // namespace rootwalk

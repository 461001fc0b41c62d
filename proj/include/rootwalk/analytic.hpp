#pragma once

#include <span>
#include <vector>

#include "rootwalk/common.hpp"

namespace rootwalk {

struct TruncationPolicy {
  int max_terms = 200;
  double tail_tolerance = 1e-12;
};

/// Entire function f(z) = sum_k a_k (z - c)^k, held through the Taylor
/// derivatives b_k = a_k k! = f^{(k)}(c).
///
/// Storing b_k keeps derivative series a pure shift and avoids the
/// overflow of k! for k > 170. A series is either an exact polynomial
/// (no tail) or the truncation of an entire function, whose tail beyond the
/// stored terms is bounded through its exponential type c:
/// |b_k| <= (c + eps)^k with eps = 0.1 c.
class PowerSeries {
 public:
  PowerSeries() : PowerSeries(std::vector<cplx>{}, false, {}, {}) {}

  /// From ordinary coefficients a_k of a truncated entire function.
  static PowerSeries from_coefficients(std::span<const cplx> a, TruncationPolicy policy = {},
                                       cplx center = {});
  /// From derivatives b_k = f^{(k)}(center) of a truncated entire function.
  static PowerSeries from_derivatives(std::vector<cplx> b, TruncationPolicy policy = {},
                                      cplx center = {});
  /// Exact polynomial sum_k a_k (z - center)^k.
  static PowerSeries polynomial(std::span<const cplx> a, cplx center = {});
  static PowerSeries monomial(int degree, cplx coefficient = 1.0);
  static PowerSeries constant(cplx value) { return monomial(0, value); }

  /// e^{c z}.
  static PowerSeries exponential(cplx c = 1.0, TruncationPolicy policy = {});
  /// cos(c z).
  static PowerSeries cosine(cplx c = 1.0, TruncationPolicy policy = {});

  int size() const noexcept { return static_cast<int>(b_.size()); }
  bool is_polynomial() const noexcept { return polynomial_; }
  cplx center() const noexcept { return center_; }
  const TruncationPolicy& policy() const noexcept { return policy_; }

  /// a_k (0 beyond the stored terms).
  cplx coefficient(int k) const noexcept { return k < size() ? a_[k] : cplx{}; }
  /// b_k = f^{(k)}(center) (0 beyond the stored terms).
  cplx derivative_at_center(int k) const noexcept { return k < size() ? b_[k] : cplx{}; }
  std::span<const cplx> coefficients() const noexcept { return a_; }
  std::span<const cplx> derivatives() const noexcept { return b_; }

  /// Exponential type used for tail bounds (0 for polynomials).
  double type() const noexcept { return type_c_; }
  /// c + eps, the growth rate in |b_k| <= (c + eps)^k.
  double growth_rate() const noexcept { return 1.1 * type_c_; }

  /// Bound on sum_{k >= size()} |a_k| r^k.
  double tail_bound(double radius) const;
  /// Largest radius at which tail_bound stays below the absolute tolerance.
  double trusted_radius() const noexcept { return trusted_radius_; }

  /// Horner evaluation of the stored terms, no tail check.
  cplx evaluate_unchecked(cplx z) const noexcept;

 private:
  PowerSeries(std::vector<cplx> b, bool polynomial, TruncationPolicy policy, cplx center);

  std::vector<cplx> b_;
  std::vector<cplx> a_;
  bool polynomial_;
  TruncationPolicy policy_;
  cplx center_;
  double type_c_ = 0.0;
  double trusted_radius_ = 0.0;
};

struct SeriesValue {
  cplx value;
  double tail_bound;
  int terms;
  double tail_tolerance;
};

/// Sum of the stored terms with its tail bound. Throws TruncationError,
/// carrying the number of terms that would be needed, when the bound
/// exceeds tail_tolerance * max(1, |value|).
SeriesValue evaluate_with_bound(const PowerSeries& f, cplx z);
cplx evaluate(const PowerSeries& f, cplx z);

/// f^{(j)} as a series about the same center: b'_k = b_{k+j}.
PowerSeries derivative_series(const PowerSeries& f, int j);

/// f^{(j)}(z) for j in [0, count), from one shared pass over the terms.
std::vector<cplx> derivatives_at(const PowerSeries& f, cplx z, int count);

/// The same values with a bound on each truncation error, without throwing.
struct DerivativeValues {
  std::vector<cplx> values;
  std::vector<double> tails;
};
DerivativeValues derivatives_with_tails(const PowerSeries& f, cplx z, int count);

/// Throws TruncationError when `tail` exceeds the policy tolerance for derivative j.
void require_derivative_tail(const PowerSeries& f, cplx z, int j, double tail, cplx value);

struct ExponentialTypeEstimate {
  double type_c;          ///< max of |b_k|^{1/k} over the window
  double point_estimate;  ///< |b_k|^{1/k} at the last nonzero k in the window
  int window_lo;
  int window_hi;
  std::vector<double> root_sequence;  ///< |b_k|^{1/k}, k in [window_lo, window_hi]
};

/// limsup |b_k|^{1/k} estimated by the max over the upper half window.
ExponentialTypeEstimate exponential_type(const PowerSeries& f);

/// Heuristic certificate for sum_h |a_{hN}| (0.792 hN / log(hN+1))^{hN} < inf:
/// the partial sum over stored terms, and a least-squares decay rate of the
/// log-terms over the upper half of the available h. Satisfied when the
/// rate is at most 0.9 per h (or the tail is identically zero).
struct GrowthCertificate {
  bool satisfied;
  double partial_sum;
  double decay_rate;
  int terms;
};

GrowthCertificate check_growth_condition(const PowerSeries& f, int order);

/// Finite complex measure on R: f(x) = sum_j w_j e^{i y_j x}.
struct AtomicMeasure {
  struct Atom {
    double y;
    cplx w;
  };
  std::vector<Atom> atoms;

  double support_radius() const noexcept;
  double total_variation() const noexcept;
  /// sum_j w_j e^{i y_j x}, for complex x.
  cplx transform(cplx x) const;
};

/// Taylor series of the Fourier transform: a_k = (i^k / k!) sum_j w_j y_j^k.
PowerSeries fourier_of_measure(const AtomicMeasure& mu, TruncationPolicy policy = {});

}  // namespace rootwalk

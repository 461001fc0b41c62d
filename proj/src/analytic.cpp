#include "rootwalk/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rootwalk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

cplx coefficient_from_derivative(cplx b, int k) {
  if (b == cplx{}) return {};
  return std::polar(std::exp(std::log(std::abs(b)) - log_factorial(k)), std::arg(b));
}

double tail_with_terms(double rate, double radius, int terms) {
  if (rate == 0.0 || radius == 0.0) return 0.0;
  const double x = rate * radius;
  const double q = x / (terms + 1.0);
  if (q >= 1.0) return kInf;
  const double log_first = terms * std::log(x) - log_factorial(terms);
  return std::exp(log_first) / (1.0 - q);
}

double window_type(std::span<const cplx> b) {
  const int size = static_cast<int>(b.size());
  if (size < 2) return 0.0;
  double c = 0.0;
  for (int k = std::max(1, size / 2); k < size; ++k) {
    const double m = std::abs(b[k]);
    if (m > 0.0) c = std::max(c, std::exp(std::log(m) / k));
  }
  return c;
}

}  // namespace

PowerSeries::PowerSeries(std::vector<cplx> b, bool polynomial, TruncationPolicy policy, cplx center)
    : b_(std::move(b)), polynomial_(polynomial), policy_(policy), center_(center) {
  if (!polynomial_ && policy_.max_terms < 1) throw std::invalid_argument("max_terms must be >= 1");
  a_.resize(b_.size());
  for (int k = 0; k < size(); ++k) a_[k] = coefficient_from_derivative(b_[k], k);
  type_c_ = polynomial_ ? 0.0 : window_type(b_);
  if (polynomial_ || type_c_ == 0.0) {
    trusted_radius_ = kInf;
  } else {
    double lo = 0.0;
    double hi = (size() + 1.0) / growth_rate();
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (tail_bound(mid) <= policy_.tail_tolerance) lo = mid; else hi = mid;
    }
    trusted_radius_ = lo;
  }
}

PowerSeries PowerSeries::from_coefficients(std::span<const cplx> a, TruncationPolicy policy, cplx center) {
  std::vector<cplx> b(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == cplx{}) continue;
    b[k] = std::polar(std::exp(std::log(std::abs(a[k])) + log_factorial(static_cast<long long>(k))),
                      std::arg(a[k]));
  }
  return PowerSeries(std::move(b), false, policy, center);
}

PowerSeries PowerSeries::from_derivatives(std::vector<cplx> b, TruncationPolicy policy, cplx center) {
  return PowerSeries(std::move(b), false, policy, center);
}

PowerSeries PowerSeries::polynomial(std::span<const cplx> a, cplx center) {
  std::vector<cplx> b(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) b[k] = a[k] * factorial(static_cast<int>(k));
  TruncationPolicy policy;
  policy.max_terms = static_cast<int>(a.size());
  return PowerSeries(std::move(b), true, policy, center);
}

PowerSeries PowerSeries::monomial(int degree, cplx coefficient) {
  if (degree < 0) throw std::invalid_argument("monomial degree must be >= 0");
  std::vector<cplx> a(static_cast<std::size_t>(degree) + 1);
  a[degree] = coefficient;
  return polynomial(a);
}

PowerSeries PowerSeries::exponential(cplx c, TruncationPolicy policy) {
  std::vector<cplx> b(static_cast<std::size_t>(policy.max_terms));
  cplx p{1.0, 0.0};
  for (auto& v : b) {
    v = p;
    p *= c;
  }
  return PowerSeries(std::move(b), false, policy, {});
}

PowerSeries PowerSeries::cosine(cplx c, TruncationPolicy policy) {
  std::vector<cplx> b(static_cast<std::size_t>(policy.max_terms));
  cplx p{1.0, 0.0};
  for (int k = 0; k < policy.max_terms; ++k) {
    if (k % 2 == 0) b[k] = (k % 4 == 0) ? p : -p;
    p *= c;
  }
  return PowerSeries(std::move(b), false, policy, {});
}

double PowerSeries::tail_bound(double radius) const {
  if (polynomial_) return 0.0;
  return tail_with_terms(growth_rate(), radius, size());
}

cplx PowerSeries::evaluate_unchecked(cplx z) const noexcept {
  const double wr = z.real() - center_.real(), wi = z.imag() - center_.imag();
  double ar = 0.0, ai = 0.0;
  for (int k = size() - 1; k >= 0; --k) {
    const double nr = ar * wr - ai * wi + a_[k].real();
    ai = ar * wi + ai * wr + a_[k].imag();
    ar = nr;
  }
  return {ar, ai};
}

SeriesValue evaluate_with_bound(const PowerSeries& f, cplx z) {
  const double r = std::abs(z - f.center());
  SeriesValue out{f.evaluate_unchecked(z), f.tail_bound(r), f.size(), f.policy().tail_tolerance};
  if (r <= f.trusted_radius()) return out;
  const double target = f.policy().tail_tolerance * std::max(1.0, std::abs(out.value));
  if (out.tail_bound <= target) return out;
  int needed = f.size();
  while (needed < 1'000'000 && tail_with_terms(f.growth_rate(), r, needed) > target) {
    needed = std::max(needed + 1, needed + needed / 8);
  }
  throw TruncationError("power series tail bound " + std::to_string(out.tail_bound) + " at |z - c| = " +
                            std::to_string(r) + " exceeds tolerance; about " + std::to_string(needed) +
                            " terms are required",
                        needed);
}

cplx evaluate(const PowerSeries& f, cplx z) { return evaluate_with_bound(f, z).value; }

PowerSeries derivative_series(const PowerSeries& f, int j) {
  if (j < 0) throw std::invalid_argument("derivative order must be >= 0");
  if (j > f.size()) {
    if (f.is_polynomial()) return PowerSeries::constant(0.0);
    throw std::invalid_argument("derivative order exceeds the stored terms");
  }
  std::vector<cplx> b(f.derivatives().begin() + j, f.derivatives().end());
  if (f.is_polynomial()) {
    std::vector<cplx> a(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) a[k] = b[k] / factorial(static_cast<int>(k));
    if (a.empty()) a.push_back(0.0);
    return PowerSeries::polynomial(a, f.center());
  }
  return PowerSeries::from_derivatives(std::move(b), f.policy(), f.center());
}

DerivativeValues derivatives_with_tails(const PowerSeries& f, cplx z, int count) {
  const int size = f.size();
  DerivativeValues out;
  out.values.assign(static_cast<std::size_t>(std::max(count, 0)), cplx{});
  out.tails.assign(out.values.size(), 0.0);
  const cplx w = z - f.center();
  static thread_local std::vector<double> inv_fact;
  if (static_cast<int>(inv_fact.size()) < size) {
    inv_fact.resize(size);
    for (int k = 0; k < size; ++k) inv_fact[k] = std::exp(-log_factorial(k));
  }
  auto b = f.derivatives();
  // Horner in real arithmetic: std::complex multiplication goes through the
  // NaN-recovering library call, which dominates this loop otherwise.
  const double wr = w.real(), wi = w.imag();
  const double r = std::abs(w);
  const bool entire = !f.is_polynomial() && f.type() > 0.0;
  const double rate = f.growth_rate();
  for (int j = 0; j < count && j < size; ++j) {
    // Stop where the majorant rate^{j+k} r^k / k! of what is left falls below
    // the rounding of the absolute sum so far.
    int terms = size - j;
    if (entire) {
      const double x = rate * r;
      const double scale = ipow(rate, j);
      double p = 1.0, abs_sum = 0.0;
      for (int k = 0; k < size - j; ++k) {
        abs_sum += std::abs(b[j + k]) * p;
        p *= r / (k + 1);
        const double q = x / (k + 2);
        if (q < 1.0 && abs_sum > 0.0 && scale * ipow(rate, k + 1) * p / (1.0 - q) <= 1e-18 * abs_sum) {
          terms = k + 1;
          break;
        }
      }
    }
    double ar = 0.0, ai = 0.0;
    for (int k = terms - 1; k >= 0; --k) {
      const double nr = ar * wr - ai * wi + b[j + k].real() * inv_fact[k];
      ai = ar * wi + ai * wr + b[j + k].imag() * inv_fact[k];
      ar = nr;
    }
    out.values[j] = {ar, ai};
  }
  if (!entire) return out;
  // f^{(j)} keeps only size - j terms: its tail is rate^j * tail(rate r, size - j).
  for (int j = 0; j < count; ++j) out.tails[j] = ipow(rate, j) * tail_with_terms(rate, r, std::max(size - j, 0));
  return out;
}

void require_derivative_tail(const PowerSeries& f, cplx z, int j, double tail, cplx value) {
  const double target = f.policy().tail_tolerance * std::max(1.0, std::abs(value));
  if (tail <= target) return;
  const double rate = f.growth_rate();
  const double r = std::abs(z - f.center());
  int needed = f.size();
  while (needed < 1'000'000 && ipow(rate, j) * tail_with_terms(rate, r, needed - j) > target) {
    needed = std::max(needed + 1, needed + needed / 8);
  }
  throw TruncationError("derivative of order " + std::to_string(j) + " at |z - c| = " + std::to_string(r) +
                            " needs about " + std::to_string(needed) + " stored terms",
                        needed);
}

std::vector<cplx> derivatives_at(const PowerSeries& f, cplx z, int count) {
  DerivativeValues d = derivatives_with_tails(f, z, count);
  for (int j = 0; j < count; ++j) require_derivative_tail(f, z, j, d.tails[j], d.values[j]);
  return std::move(d.values);
}

ExponentialTypeEstimate exponential_type(const PowerSeries& f) {
  const int size = f.size();
  ExponentialTypeEstimate est{0.0, 0.0, size / 2, size - 1, {}};
  if (f.is_polynomial()) return est;
  if (size < 8) throw std::invalid_argument("exponential type needs at least 8 stored terms");
  for (int k = std::max(1, est.window_lo); k <= est.window_hi; ++k) {
    const double m = std::abs(f.derivative_at_center(k));
    const double root = m > 0.0 ? std::exp(std::log(m) / k) : 0.0;
    est.root_sequence.push_back(root);
    est.type_c = std::max(est.type_c, root);
    if (root > 0.0) est.point_estimate = root;
  }
  return est;
}

GrowthCertificate check_growth_condition(const PowerSeries& f, int order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  std::vector<double> log_terms;
  double partial = 0.0;
  for (int h = 0; h * order < f.size(); ++h) {
    const int k = h * order;
    const double m = std::abs(f.derivative_at_center(k));
    if (m == 0.0) {
      log_terms.push_back(-kInf);
      continue;
    }
    double lt = std::log(m) - log_factorial(k);
    if (k > 0) lt += k * std::log(0.792 * k / std::log(k + 1.0));
    log_terms.push_back(lt);
    partial += std::exp(lt);
  }
  const int count = static_cast<int>(log_terms.size());
  GrowthCertificate cert{true, partial, 0.0, count};
  if (f.is_polynomial()) return cert;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (int h = count / 2; h < count; ++h) {
    if (!std::isfinite(log_terms[h])) continue;
    sx += h;
    sy += log_terms[h];
    sxx += double(h) * h;
    sxy += h * log_terms[h];
    ++used;
  }
  if (used < 2) return cert;  // identically zero tail
  const double slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
  cert.decay_rate = std::exp(slope);
  cert.satisfied = std::isfinite(partial) && cert.decay_rate <= 0.9;
  return cert;
}

double AtomicMeasure::support_radius() const noexcept {
  double r = 0.0;
  for (const auto& a : atoms) r = std::max(r, std::abs(a.y));
  return r;
}

double AtomicMeasure::total_variation() const noexcept {
  double s = 0.0;
  for (const auto& a : atoms) s += std::abs(a.w);
  return s;
}

cplx AtomicMeasure::transform(cplx x) const {
  cplx s{};
  for (const auto& a : atoms) s += a.w * std::exp(cplx{0.0, a.y} * x);
  return s;
}

PowerSeries fourier_of_measure(const AtomicMeasure& mu, TruncationPolicy policy) {
  std::vector<cplx> b(static_cast<std::size_t>(policy.max_terms));
  for (const auto& atom : mu.atoms) {
    cplx p = atom.w;
    for (int k = 0; k < policy.max_terms; ++k) {
      b[k] += i_pow(k) * p;
      p *= atom.y;
    }
  }
  return PowerSeries::from_derivatives(std::move(b), policy);
}

}  // namespace rootwalk

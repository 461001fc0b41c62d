#include "rootwalk/moments.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace rootwalk {

namespace {

using BinomialTable = std::array<std::array<std::uint64_t, kMaxMomentOrder + 1>, kMaxMomentOrder + 1>;

const BinomialTable& binomials() {
  static const BinomialTable table = [] {
    BinomialTable t{};
    for (int n = 0; n <= kMaxMomentOrder; ++n) {
      t[n][0] = t[n][n] = 1;
      for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
  }();
  return table;
}

// Moments of the sum of two independent blocks, restricted to orders hN.
std::vector<double> combine(const std::vector<double>& a, const std::vector<double>& b, int order) {
  const auto& c = binomials();
  std::vector<double> out(a.size(), 0.0);
  for (std::size_t h = 0; h < a.size(); ++h) {
    double acc = 0.0;
    for (std::size_t l = 0; l <= h; ++l) {
      acc += static_cast<double>(c[h * order][l * order]) * a[h - l] * b[l];
    }
    out[h] = acc;
  }
  return out;
}

}  // namespace

std::vector<cplx> exact_moments(const WalkSpec& spec, std::int64_t steps, int kmax) {
  if (kmax > kMaxMomentOrder) {
    throw BudgetExceeded("moment order " + std::to_string(kmax) + " above the supported maximum of " +
                         std::to_string(kMaxMomentOrder));
  }
  if (kmax < 0 || steps < 0) throw std::invalid_argument("moment order and steps must be >= 0");
  const int order = spec.order();
  const int hmax = kmax / order;
  const double inv_n = 1.0 / static_cast<double>(spec.scale());

  // One step, scaled: E[(n^{-1/N} xi)^{hN}] = (alpha/n)^h; alpha^h is factored out.
  std::vector<double> single(hmax + 1);
  for (int h = 0; h <= hmax; ++h) single[h] = ipow(inv_n, h);

  std::vector<double> total(hmax + 1, 0.0);
  total[0] = 1.0;
  std::vector<double> block = single;
  for (std::int64_t m = steps; m > 0; m >>= 1) {
    if (m & 1) total = combine(total, block, order);
    if (m > 1) block = combine(block, block, order);
  }

  std::vector<cplx> out(static_cast<std::size_t>(kmax) + 1, cplx{});
  for (int h = 0; h <= hmax; ++h) {
    if (!std::isfinite(total[h])) throw BudgetExceeded("moment recursion overflowed double range");
    out[static_cast<std::size_t>(h) * order] = ipow(spec.alpha(), h) * total[h];
  }
  return out;
}

cplx exact_moment(const WalkSpec& spec, std::int64_t steps, int k) { return exact_moments(spec, steps, k)[k]; }

cplx leading_term(const WalkSpec& spec, double t, int k) {
  const int order = spec.order();
  if (k < 0) throw std::invalid_argument("moment order must be >= 0");
  if (k % order != 0) return {};
  const int h = k / order;
  if (h > spec.steps_until(t)) return {};
  if (h == 0) return {1.0, 0.0};
  const double log_mag = log_factorial(k) - log_factorial(h) - h * log_factorial(order) + h * std::log(t);
  return std::exp(log_mag) * ipow(spec.alpha(), h);
}

double remainder_bound(const WalkSpec& spec, double t, int h) {
  if (h < 0) throw std::invalid_argument("h must be >= 0");
  if (h <= 1) return 0.0;
  const double n = static_cast<double>(spec.scale());
  const double a = std::pow(std::abs(spec.alpha()), h);
  const double hn = static_cast<double>(h) * spec.order();
  const double first = a * std::pow(t, h - 1) * (double(h) * h + h) / (2.0 * n);
  const double bell = std::pow(0.792 * hn / std::log(hn + 1.0), hn);
  return first + a / n * bell;
}

MomentResult moment_report(const WalkSpec& spec, double t, int k) {
  const std::int64_t m = spec.steps_until(t);
  const double nt = static_cast<double>(spec.scale()) * t;
  MomentResult r{k, exact_moment(spec, m, k), leading_term(spec, t, k), 0.0,
                 std::abs(nt - static_cast<double>(m)) <= 1e-9 * std::max(1.0, nt)};
  if (k % spec.order() == 0) r.remainder_bound = remainder_bound(spec, t, k / spec.order());
  return r;
}

std::vector<MomentResult> moment_table(const WalkSpec& spec, double t, int kmax) {
  const std::int64_t m = spec.steps_until(t);
  const auto exact = exact_moments(spec, m, kmax);
  std::vector<MomentResult> rows;
  for (int k = 0; k <= kmax; ++k) {
    MomentResult r = moment_report(spec, t, 0);
    r.k = k;
    r.exact_value = exact[k];
    r.leading_term = leading_term(spec, t, k);
    r.remainder_bound = (k % spec.order() == 0) ? remainder_bound(spec, t, k / spec.order()) : 0.0;
    rows.push_back(r);
  }
  return rows;
}

cplx step_mgf(const WalkSpec& spec, cplx lambda) {
  cplx acc{};
  for (int j = 0; j < spec.order(); ++j) acc += std::exp(spec.step(j) * lambda);
  return acc / static_cast<double>(spec.order());
}

cplx step_mgf_minus_one(const WalkSpec& spec, cplx lambda) {
  const int order = spec.order();
  const cplx x = spec.alpha() * ipow(lambda, order);
  cplx term{1.0, 0.0};
  cplx acc{};
  for (int m = 1; m < 400; ++m) {
    for (int i = 1; i <= order; ++i) term /= static_cast<double>((m - 1) * order + i);
    term *= x;
    acc += term;
    if (std::abs(term) <= 1e-18 * std::abs(acc) && m * order > std::abs(lambda) * spec.step_modulus()) break;
    if (term == cplx{}) break;
  }
  return acc;
}

cplx step_mgf_series(const WalkSpec& spec, cplx lambda) { return 1.0 + step_mgf_minus_one(spec, lambda); }

cplx mgf_gap_kernel(const WalkSpec& spec, cplx lambda) {
  const int order = spec.order();
  const double nfact = factorial(order);
  const cplx x = spec.alpha() * ipow(lambda, order);
  // A_m = x^m / ((m+2)N)!,  B_m = x^m / ((m+2)! (N!)^{m+2}).
  cplx a = std::exp(-log_factorial(2 * order));
  cplx b = 1.0 / (2.0 * nfact * nfact);
  cplx acc = a - b;
  for (int m = 1; m < 400; ++m) {
    for (int i = 1; i <= order; ++i) a /= static_cast<double>((m + 1) * order + i);
    a *= x;
    b *= x / ((m + 2) * nfact);
    const cplx term = a - b;
    acc += term;
    if (std::abs(a) + std::abs(b) <= 1e-18 * std::abs(acc) && m > 2) break;
  }
  return acc;
}

cplx expm1(cplx z) {
  const double a = z.real();
  const double b = z.imag();
  const double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

cplx log1p(cplx d) {
  const double re = 0.5 * std::log1p(2.0 * d.real() + std::norm(d));
  const double im = std::atan2(d.imag(), 1.0 + d.real());
  return {re, im};
}

MgfGap step_mgf_gap(const WalkSpec& spec, cplx lambda, double radius) {
  if (std::abs(lambda) > radius) throw std::invalid_argument("|lambda| must not exceed the disk radius");
  const int order = spec.order();
  const cplx gap = step_mgf_minus_one(spec, lambda) - expm1(spec.alpha() * ipow(lambda, order) / factorial(order));
  double sup = std::abs(mgf_gap_kernel(spec, 0.0));
  for (int i = 1; i <= 100; ++i) {
    const double r = radius * i / 100.0;
    for (int j = 0; j < 100; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / 100.0;
      sup = std::max(sup, std::abs(mgf_gap_kernel(spec, std::polar(r, theta))));
    }
  }
  return {gap, sup};
}

cplx characteristic_function(const WalkSpec& spec, double t, cplx lambda) {
  const std::int64_t m = spec.steps_until(t);
  if (m == 0) return {1.0, 0.0};
  const cplx mu = cplx{0.0, 1.0} * lambda * spec.increment_scale();
  return std::exp(static_cast<double>(m) * log1p(step_mgf_minus_one(spec, mu)));
}

cplx characteristic_limit(const WalkSpec& spec, double t, cplx lambda) {
  const int order = spec.order();
  return std::exp(i_pow(order) * spec.alpha() * t * ipow(lambda, order) / factorial(order));
}

}  // namespace rootwalk

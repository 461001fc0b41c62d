#include <cmath>

#include "doctest.h"
#include "rootwalk/moments.hpp"
#include "rootwalk/pde.hpp"

using namespace rootwalk;

namespace {
CauchyProblem problem(int N, TimeFunction phi, PowerSeries g) {
  CauchyProblem p;
  p.order = N;
  p.phi = std::move(phi);
  p.initial = std::move(g);
  return p;
}
}  // namespace

TEST_CASE("series solution") {
  const cplx c{0.8, -0.3}, z{0.2, 0.1};
  const auto p0 = problem(3, TimeFunction::constant(1.0), PowerSeries::exponential(c));
  CHECK(std::abs(solve_series(p0, 0.0, z).value - std::exp(c * z)) < 1e-15);
  for (int N = 1; N <= 4; ++N) {
    const auto p = problem(N, TimeFunction::constant(1.0), PowerSeries::exponential(c));
    const double t = 0.7;
    const cplx want = std::exp(c * z) * std::exp(t * std::pow(c, N) / std::tgamma(N + 1.0));
    CHECK(std::abs(solve_series(p, t, z).value - want) < 1e-12);
  }
  const auto ps = problem(2, TimeFunction::polynomial({0.0, 1.0}), PowerSeries::exponential(c));
  CHECK(std::abs(effective_time(ps, 1.0) - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(solve_series(ps, 1.0, z).value - std::exp(c * z) * std::exp(c * c / 6.0)) < 1e-12);
}

TEST_CASE("invalid problems") {
  auto p = problem(2, TimeFunction::constant(1.0), PowerSeries::exponential());
  p.alpha = 0.0;
  CHECK_THROWS(p.validate());
  p.alpha = 1.0;
  p.order = 0;
  CHECK_THROWS(p.validate());
}

TEST_CASE("probabilistic solution") {
  McOptions mc{20000, 4, 1};
  const auto p0 = problem(3, TimeFunction::constant(1.0), PowerSeries::cosine());
  const auto a = solve_probabilistic(p0, 0.0, 0.3, 100, mc);
  CHECK(std::abs(a.value - std::cos(0.3)) < 1e-15);
  CHECK(a.error == 0.0);

  // phi = 1, g = z^3: E[W^3] on the grid is exactly alpha t
  const auto p = problem(3, TimeFunction::constant(1.0), PowerSeries::monomial(3));
  const auto est = solve_probabilistic(p, 1.0, 0.0, 1000, mc);
  CHECK(std::abs(est.value.real() - 1.0) <= 4.0 * est.se_re);
  CHECK(std::abs(est.value.imag()) <= 4.0 * est.se_im + 1e-12);

  // phi(s) = s, g = e^z, N = 2: finite-n value prod_k cosh(n^{-1/2} k/n), limit e^{1/6}
  const auto ps = problem(2, TimeFunction::polynomial({0.0, 1.0}), PowerSeries::exponential());
  const std::int64_t n = 1000;
  double log_exact = 0.0;
  for (int k = 0; k < n; ++k) log_exact += std::log(std::cosh(k / double(n) / std::sqrt(double(n))));
  const auto e2 = solve_probabilistic(ps, 1.0, 0.0, n, mc);
  CHECK(std::abs(e2.value.real() - std::exp(log_exact)) <= 4.0 * e2.se_re);
  CHECK(std::abs(std::exp(log_exact) - std::exp(1.0 / 6.0)) < 1e-3);
}

TEST_CASE("PDE residual") {
  CHECK(residual(problem(3, TimeFunction::constant(1.0), PowerSeries::exponential()), 0.5, 0.0) <= 1e-6);
  CHECK(residual(problem(3, TimeFunction::constant(1.0), PowerSeries::polynomial(std::vector<cplx>{1.0, 2.0, 3.0})),
                 0.5, 0.4) <= 1e-9);
  CHECK(residual(problem(4, TimeFunction::constant(1.0), PowerSeries::cosine()), 1.0, 0.3) <= 1e-6);
  CHECK(residual(problem(4, TimeFunction::polynomial({0.0, 1.0}), PowerSeries::monomial(8)), 1.0, 0.5) <= 1e-6);
  CHECK(residual(problem(2, TimeFunction::polynomial({1.0, 1.0}), PowerSeries::exponential(cplx{0, 1})), 1e-5, 0.5) <=
        1e-6);
}

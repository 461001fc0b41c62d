#include <cmath>

#include "doctest.h"
#include "rootwalk/expectation.hpp"
#include "support/oracles.hpp"

using namespace rootwalk;

TEST_CASE("exact expectation") {
  const auto e = PowerSeries::exponential(cplx{0.5, 0.2});
  const cplx z{0.1, 0.2};
  CHECK(std::abs(expect_exact(WalkSpec(3, 1.0, 10), 0, e, z).value - std::exp(cplx{0.5, 0.2} * z)) < 1e-15);
  CHECK(std::abs(expect_exact(WalkSpec(2, 1.0, 4), 4, PowerSeries::monomial(2), 0.0).value - 1.0) < 1e-14);
  CHECK(std::abs(expect_exact(WalkSpec(4, 1.0, 256), 256, PowerSeries::monomial(4), 0.0).value - 1.0) < 1e-11);

  for (int N = 1; N <= 4; ++N) {
    const WalkSpec spec(N, cplx{1.0, 1.0}, 5);
    const cplx want = oracle::enumerate(N, spec.alpha(), 5, 7, [&](cplx x) { return std::exp(cplx{0.5, 0.2} * (z + x)); });
    const auto got = expect_exact(spec, 7, e, z);
    CHECK(got.kind == EstimateKind::exact);
    CHECK(std::abs(got.value - want) < 1e-10);
  }
}

TEST_CASE("exact expectation respects the atom budget") {
  CHECK_THROWS_AS(expect_exact(WalkSpec(4, 1.0, 1000), 1000, PowerSeries::exponential(), 0.0, 1000), BudgetExceeded);
}

TEST_CASE("Monte Carlo expectation") {
  const auto z2 = PowerSeries::monomial(2);
  McOptions mc{20000, 11, 1};
  const auto zero = expect_mc(WalkSpec(2, 1.0, 100), 0.001, z2, 0.5, mc);
  CHECK(zero.value == cplx{0.25, 0.0});
  CHECK(zero.error == 0.0);

  // E[W^2] = m/n = 1 exactly at every n on the grid
  const auto est = expect_mc(WalkSpec(2, 1.0, 1000), 1.0, z2, 0.0, mc);
  CHECK(est.kind == EstimateKind::mc_confidence);
  CHECK(std::abs(est.value.real() - 1.0) <= 4.0 * est.se_re);

  // cross-route: MC against exact enumeration at the same n
  const WalkSpec spec(3, 1.0, 30);
  const auto exact = expect_exact(spec, 30, PowerSeries::exponential(), 0.0);
  const auto mc3 = expect_mc(spec, 1.0, PowerSeries::exponential(), 0.0, mc);
  CHECK(std::abs(mc3.value.real() - exact.value.real()) <= 4.0 * mc3.se_re + 1e-12);
  CHECK(std::abs(mc3.value.imag() - exact.value.imag()) <= 4.0 * mc3.se_im + 1e-12);
}

TEST_CASE("Monte Carlo does not depend on the worker count") {
  const WalkSpec spec(3, cplx{1, 1}, 200);
  const auto g = PowerSeries::cosine(0.5);
  const auto a = expect_mc(spec, 1.0, g, 0.1, {3000, 5, 1});
  const auto b = expect_mc(spec, 1.0, g, 0.1, {3000, 5, 4});
  CHECK(a.value == b.value);
  CHECK(a.se_re == b.se_re);
}

TEST_CASE("limit series") {
  for (int N = 1; N <= 4; ++N) {
    const cplx c{0.7, 0.3}, alpha{1.0, 0.5};
    const WalkSpec spec(N, alpha, 1);
    const double t = 0.8;
    const cplx want = std::exp(std::pow(c, N) * alpha * t / std::tgamma(N + 1.0));
    CHECK(std::abs(limit_series(spec, t, PowerSeries::exponential(c), 0.0).value - want) < 1e-12);
  }
  const auto cosine = PowerSeries::cosine();
  CHECK(std::abs(limit_series(WalkSpec(3, 1.0, 1), 0.0, cosine, 0.4).value - std::cos(0.4)) < 1e-14);
  CHECK(std::abs(limit_series(WalkSpec(2, 1.0, 1), 1.0, PowerSeries::monomial(2), 0.0).value - 1.0) < 1e-14);
}

TEST_CASE("limit time integral") {
  CHECK(std::abs(limit_time_integral(WalkSpec(2, 1.0, 1), 1.0, PowerSeries::monomial(2), 0.0) - 0.5) < 1e-14);
  CHECK(limit_time_integral(WalkSpec(2, 1.0, 1), 0.0, PowerSeries::exponential(), 0.0) == cplx{});
  CHECK(std::abs(limit_time_integral(WalkSpec(2, 1.0, 1), 1.0, PowerSeries::exponential(), 0.0) -
                 2.0 * (std::exp(0.5) - 1.0)) < 1e-12);
}

TEST_CASE("Fourier initial data limit") {
  AtomicMeasure mu{{{1.0, 1.0}, {-0.5, cplx{0.3, 0.2}}}};
  const double x = 0.4;
  CHECK(std::abs(fourier_initialdata_limit(WalkSpec(3, 1.0, 1), 0.0, mu, x) -
                 (std::exp(cplx{0, x}) + cplx{0.3, 0.2} * std::exp(cplx{0, -0.5 * x}))) < 1e-15);
  AtomicMeasure one{{{1.0, 1.0}}};
  CHECK(std::abs(fourier_initialdata_limit(WalkSpec(2, 1.0, 1), 1.0, one, 0.0) - std::exp(-0.5)) < 1e-15);
  AtomicMeasure sym{{{1.0, 0.5}, {-1.0, 0.5}}};
  CHECK(std::abs(fourier_initialdata_limit(WalkSpec(4, 1.0, 1), 1.0, sym, 0.0) - std::exp(1.0 / 24)) < 1e-15);
  // agrees with the series route through the transformed measure
  CHECK(std::abs(fourier_initialdata_limit(WalkSpec(2, 1.0, 1), 0.6, mu, x) -
                 limit_series(WalkSpec(2, 1.0, 1), 0.6, fourier_of_measure(mu), x).value) < 1e-12);
}

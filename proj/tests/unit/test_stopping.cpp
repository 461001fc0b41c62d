#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "rootwalk/stopping.hpp"

using namespace rootwalk;

TEST_CASE("a walk with large steps exits at the first step") {
  const auto s = sample_exit(WalkSpec(4, 1.0, 1), 0.5, 10.0, std::uint64_t{3});
  CHECK_FALSE(s.truncated);
  CHECK(s.steps == 1);
  CHECK(s.tau == 1.0);
  CHECK(std::abs(s.exit_point) == doctest::Approx(1.0));
}

TEST_CASE("exit overshoot is at most one step") {
  const WalkSpec spec(3, cplx{1.0, 0.4}, 200);
  const double R = 1.0;
  const double step = spec.step_modulus() * spec.increment_scale();
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto s = sample_exit(spec, R, default_exit_horizon(spec, R), seed, true);
    REQUIRE_FALSE(s.truncated);
    CHECK(std::abs(s.exit_point) > R);
    CHECK(std::abs(s.exit_point) <= R + step + 1e-12);
    CHECK(static_cast<std::int64_t>(s.step_indices.size()) == s.steps);
  }
}

TEST_CASE("mean exit time") {
  // E|S_T|^2 = E[T] |alpha|^{2/N} at the exit step T, with R n^{1/N} < |S_T| <= R n^{1/N} + 1,
  // which brackets E[tau_n] between n^{2/N-1} R^2 and n^{2/N-1} R^2 + 2 R n^{1/N-1} + 1/n.
  const WalkSpec spec(4, 1.0, 16);
  const auto st = exit_statistics(spec, 1.0, default_exit_horizon(spec, 1.0), {20000, 9, 1});
  const double base = 0.25;
  CHECK(st.truncated_fraction == 0.0);
  CHECK(st.mean >= base - 4.0 * st.se);
  CHECK(st.mean <= base + 2.0 * std::pow(16.0, -0.75) + 1.0 / 16 + 4.0 * st.se);
  CHECK(st.bounds.lower == doctest::Approx(base));
  CHECK(st.bounds.upper == doctest::Approx(base + 1.0 / 16));
}

TEST_CASE("exit times shrink for N > 2") {
  McOptions mc{4000, 2, 1};
  double previous = 1e9;
  for (std::int64_t n : {100, 1000, 10000}) {
    const WalkSpec spec(3, 1.0, n);
    const auto st = exit_statistics(spec, 1.0, default_exit_horizon(spec, 1.0), mc);
    CHECK(st.median < previous);
    previous = st.median;
  }
}

TEST_CASE("optional stopping") {
  McOptions mc{20000, 12, 1};
  const WalkSpec spec(2, 1.0, 400);
  const auto c = stopped_expectation_check(spec, 1.0, PowerSeries::constant(2.0), 0.1, 50.0, 1, mc);
  CHECK(c.lhs.value == cplx{});
  CHECK(c.rhs.value == cplx{});

  const auto z2 = stopped_expectation_check(spec, 1.0, PowerSeries::monomial(2), 0.0, 50.0, 1, mc);
  CHECK(z2.consistent);
  CHECK(z2.stopped_zero);
  CHECK(z2.truncated_fraction == 0.0);
}

TEST_CASE("derivative estimator") {
  McOptions mc{20000, 31, 1};
  const std::vector<std::int64_t> schedule{100, 400};
  const auto lin = derivative_estimator(WalkSpec(3, 1.0, 1), 0.5, PowerSeries::polynomial(std::vector<cplx>{1.0, 2.0}),
                                        0.1, schedule, mc);
  for (const auto& s : lin.per_n) {
    CHECK(std::abs(s.estimate.value.real()) <= 4.0 * s.estimate.se_re + 1e-12);
    CHECK(std::abs(s.estimate.value.imag()) <= 4.0 * s.estimate.se_im + 1e-12);
  }
  // The ratio of means is what optional stopping controls: (N!/alpha) E[g(W_tau) - g(0)] / E[tau].
  const auto sq = derivative_estimator(WalkSpec(2, 1.0, 1), 0.5, PowerSeries::monomial(2), 0.0, schedule, mc);
  CHECK(std::abs(sq.per_n.back().ratio_of_means - 2.0) < 0.05);
  CHECK(sq.rate_exponent == 1.0);
  CHECK(sq.per_n.size() == 2);
}

TEST_CASE("mean exit time scales like n^{2/N-1}") {
  McOptions mc{20000, 6, 1};
  double mean[2];
  int i = 0;
  for (std::int64_t n : {1000, 10000}) {
    const WalkSpec spec(3, 1.0, n);
    mean[i++] = exit_statistics(spec, 1.0, default_exit_horizon(spec, 1.0), mc).mean;
  }
  CHECK(mean[0] / mean[1] == doctest::Approx(std::pow(10.0, 1.0 / 3.0)).epsilon(0.1));
}

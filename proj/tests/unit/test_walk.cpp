#include <cmath>
#include <map>

#include "doctest.h"
#include "rootwalk/walk.hpp"
#include "support/oracles.hpp"

using namespace rootwalk;

TEST_CASE("step power moments") {
  CHECK(std::abs(step_power_moment(WalkSpec(3, 1.0, 1), 2)) == 0.0);
  CHECK(std::abs(step_power_moment(WalkSpec(4, 1.0, 1), 0) - 1.0) < 1e-15);
  CHECK(std::abs(step_power_moment(WalkSpec(2, 2.0, 1), 4) - 4.0) < 1e-13);
  for (int N = 2; N <= 5; ++N)
    for (int m = 0; m <= 3 * N; ++m) {
      const cplx alpha{1.0, 1.0};
      const cplx want = oracle::step_moment(N, alpha, m);
      const cplx got = step_power_moment(WalkSpec(N, alpha, 1), m);
      CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("step abs moments") {
  CHECK(step_abs_moment(WalkSpec(3, 1.0, 1), 5) == doctest::Approx(1.0));
  CHECK(step_abs_moment(WalkSpec(5, cplx{0.3, 2.0}, 1), 0) == doctest::Approx(1.0));
  CHECK(step_abs_moment(WalkSpec(2, 4.0, 1), 2) == doctest::Approx(4.0));
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(WalkSpec(0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(WalkSpec(2, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(WalkSpec(2, 1.0, 0), std::invalid_argument);
}

TEST_CASE("sample paths") {
  const WalkSpec spec(4, 1.0, 1);
  CHECK(sample_path(spec, 0.0, 7).steps() == 0);
  CHECK(sample_path(spec, 0.0, 7).end() == cplx{});

  const auto one = sample_path(spec, 1.0, 7);
  REQUIRE(one.steps() == 1);
  const cplx w = one.end();
  const bool on_support = std::abs(w - 1.0) < 1e-15 || std::abs(w - cplx{0, 1}) < 1e-15 ||
                          std::abs(w + 1.0) < 1e-15 || std::abs(w + cplx{0, 1}) < 1e-15;
  CHECK(on_support);

  // same stream, same path
  const WalkSpec s3(3, 1.0, 50);
  const auto a = sample_path(s3, 1.0, 99);
  const auto b = sample_path(s3, 1.0, 99);
  CHECK(std::vector<std::uint32_t>(a.step_indices().begin(), a.step_indices().end()) ==
        std::vector<std::uint32_t>(b.step_indices().begin(), b.step_indices().end()));
}

TEST_CASE("second absolute moment of W^n(1) for N = 3") {
  // E|S_m|^2 = m |alpha|^{2/N} since the steps are orthogonal; here 1000 / 1000^{2/3} = 10.
  const WalkSpec spec(3, 1.0, 1000);
  const int paths = 20000;
  double sum = 0.0, sum2 = 0.0;
  for (int p = 0; p < paths; ++p) {
    Engine e = stream_engine(3, p);
    const double v = std::norm(sample_path(spec, 1.0, e).end());
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / paths;
  const double se = std::sqrt((sum2 / paths - mean * mean) / (paths - 1));
  CHECK(std::abs(mean - 10.0) <= 3.0 * se);
}

TEST_CASE("exact lattice distribution") {
  SUBCASE("N = 2, two steps") {
    const auto d = exact_distribution(WalkSpec(2, 1.0, 1), 2);
    std::map<long, double> w;
    for (const auto& a : d.atoms) {
      CHECK(std::abs(a.point.imag()) < 1e-15);
      w[std::lround(a.point.real())] += a.weight;
    }
    CHECK(w[-2] == doctest::Approx(0.25));
    CHECK(w[0] == doctest::Approx(0.5));
    CHECK(w[2] == doctest::Approx(0.25));
  }
  SUBCASE("no steps") {
    const auto d = exact_distribution(WalkSpec(5, 1.0, 3), 0);
    REQUIRE(d.atoms.size() == 1);
    CHECK(d.atoms[0].point == cplx{});
    CHECK(d.atoms[0].weight == 1.0);
  }
  SUBCASE("N = 4, one step") {
    const double n = 16.0;
    const auto d = exact_distribution(WalkSpec(4, 1.0, 16), 1);
    REQUIRE(d.atoms.size() == 4);
    const double r = std::pow(n, -0.25);
    for (const auto& a : d.atoms) {
      CHECK(std::abs(a.point) == doctest::Approx(r));
      CHECK(a.weight == doctest::Approx(0.25));
    }
  }
  SUBCASE("weights match enumeration of moments") {
    const WalkSpec spec(3, cplx{1.0, 0.5}, 7);
    const auto d = exact_distribution(spec, 6);
    for (int k = 0; k <= 7; ++k) {
      cplx acc{};
      for (const auto& a : d.atoms) acc += a.weight * std::pow(a.point, k);
      const cplx want = oracle::enumerate(3, spec.alpha(), 7, 6, [k](cplx x) { return std::pow(x, k); });
      CHECK(std::abs(acc - want) < 1e-12);
    }
  }
}

TEST_CASE("atom budget") {
  const WalkSpec spec(4, 1.0, 100);
  CHECK(atom_count(4, 100) > 1000);
  CHECK_THROWS_AS(for_each_atom(spec, 100, [](auto, cplx, double) {}, 1000), BudgetExceeded);
  double total = 0.0;
  for_each_atom(spec, 5, [&](auto, cplx, double w) { total += w; });
  CHECK(total == doctest::Approx(1.0));
}

#include <cmath>
#include <limits>

#include "doctest.h"
#include "rootwalk/io.hpp"

using namespace rootwalk;
using io::Json;

TEST_CASE("doubles are written with 17 significant digits") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(std::numeric_limits<double>::quiet_NaN()) == "null");
  const double x = 2.0 / 3.0;
  CHECK(std::stod(io::format_double(x)) == x);
}

TEST_CASE("complex values round-trip as [re, im]") {
  const cplx z{0.1, -3.25e-7};
  const Json j = io::to_json(z);
  CHECK(io::dump(j) == "[0.10000000000000001, -3.2500000000000001e-07]");
  CHECK(io::complex_from_json(Json::parse(io::dump(j))) == z);
  CHECK(io::complex_from_json(Json(2.5)) == cplx{2.5, 0.0});
  CHECK_THROWS_AS(io::complex_from_json(Json::parse("[1, 2, 3]")), io::ConfigError);
}

TEST_CASE("series descriptions") {
  CHECK(std::abs(evaluate(io::series_from_json(Json::parse(R"({"exp": [0, 1]})")), 0.5) - std::exp(cplx{0, 0.5})) <
        1e-14);
  const auto p = io::series_from_json(Json::parse(R"({"poly": [1, 0, [0, 2]]})"));
  CHECK(p.is_polynomial());
  CHECK(std::abs(evaluate(p, 3.0) - cplx{1.0, 18.0}) < 1e-13);
  const auto m = io::series_from_json(Json::parse(R"({"monomial": 3, "coeff": 2})"));
  CHECK(std::abs(evaluate(m, 2.0) - 16.0) < 1e-13);
  const auto f = io::series_from_json(Json::parse(R"({"atoms": [[1, 0.5], [-1, 0.5]]})"));
  CHECK(std::abs(evaluate(f, 0.8) - std::cos(0.8)) < 1e-13);
  CHECK_THROWS_AS(io::series_from_json(Json::parse(R"({"sine": 1})")), io::ConfigError);
  CHECK_THROWS_AS(io::series_from_json(Json::parse(R"({"monomial": -1})")), io::ConfigError);
}

TEST_CASE("time functions and measures") {
  CHECK(io::time_function_from_json(Json(3.0))(0.4) == cplx{3.0, 0.0});
  CHECK(io::time_function_from_json(Json::parse(R"({"poly": [1, 2]})"))(0.5) == cplx{2.0, 0.0});
  CHECK_THROWS_AS(io::time_function_from_json(Json("s")), io::ConfigError);
  const auto mu = io::measure_from_json(Json::parse(R"([[1, [0.3, 0.2]], [-0.5, 1]])"));
  REQUIRE(mu.atoms.size() == 2);
  CHECK(mu.atoms[0].w == cplx{0.3, 0.2});
  CHECK(io::measure_from_json(io::to_json(mu)).atoms[1].y == -0.5);
  CHECK_THROWS_AS(io::measure_from_json(Json::parse(R"([[1]])")), io::ConfigError);
}

TEST_CASE("config hash ignores key order") {
  const Json a = Json::parse(R"({"N": 3, "alpha": [1, 0], "t": 0.5})");
  const Json b = Json::parse(R"({"t": 0.5, "N": 3, "alpha": [1, 0]})");
  const Json c = Json::parse(R"({"t": 0.5, "N": 4, "alpha": [1, 0]})");
  CHECK(io::config_hash(a) == io::config_hash(b));
  CHECK(io::config_hash(a) != io::config_hash(c));
  CHECK(io::config_hash(a).size() == 16);
}

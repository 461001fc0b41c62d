#include "rootwalk/common.hpp"

#include <cmath>

namespace rootwalk {

double log_factorial(long long k) { return std::lgamma(static_cast<double>(k) + 1.0); }

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

std::int64_t grid_steps(std::int64_t n, double t) {
  if (t <= 0.0) return 0;
  const double nt = static_cast<double>(n) * t;
  return static_cast<std::int64_t>(std::floor(nt * (1.0 + 1e-12) + 1e-12));
}

}  // namespace rootwalk

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rootwalk {

using cplx = std::complex<double>;

/// Raised when a computation would exceed a configured resource budget
/// (lattice atoms, moment order). Callers should fall back to Monte Carlo.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a truncated power series cannot meet its tail tolerance.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int required_terms)
      : std::runtime_error(what), required_terms_(required_terms) {}
  int required_terms() const noexcept { return required_terms_; }

 private:
  int required_terms_;
};

/// i^k computed by case split on k mod 4 (no floating pow).
inline cplx i_pow(long long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

/// z^k for integer k >= 0 by repeated squaring.
inline cplx ipow(cplx z, long long k) {
  cplx result{1.0, 0.0};
  while (k > 0) {
    if (k & 1) result *= z;
    z *= z;
    k >>= 1;
  }
  return result;
}

inline double ipow(double x, long long k) {
  double result = 1.0;
  while (k > 0) {
    if (k & 1) result *= x;
    x *= x;
    k >>= 1;
  }
  return result;
}

double log_factorial(long long k);
double factorial(int k);

/// floor(n * t) with a relative guard so that t = m/n given in decimal
/// still lands on step m.
std::int64_t grid_steps(std::int64_t n, double t);

}  // namespace rootwalk

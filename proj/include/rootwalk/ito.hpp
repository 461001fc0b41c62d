#pragma once

#include <cstdint>
#include <vector>

#include "rootwalk/analytic.hpp"
#include "rootwalk/parallel.hpp"
#include "rootwalk/time_function.hpp"
#include "rootwalk/walk.hpp"

namespace rootwalk {

/// Where the integrand is sampled on each step. Only `left` gives the
/// non-anticipating integral; `midpoint` exists as a negative control and
/// breaks the zero-mean and Itô identities.
enum class IntegrandPoint { left, midpoint };

/// n^{-k/N} sum_{tau < steps} g(z + W^n(tau/n)) xi_{tau+1}^k, summed left to right.
cplx ito_integral(const PathSample& path, const PowerSeries& g, cplx z, int k,
                  IntegrandPoint point = IntegrandPoint::left);

/// Same sum truncated at `steps` grid steps of the path.
cplx ito_integral(const PathSample& path, std::int64_t steps, const PowerSeries& g, cplx z, int k,
                  IntegrandPoint point = IntegrandPoint::left);

/// E of the integral over the first m steps via the lattice law:
/// n^{-k/N} E[xi^k] sum_{tau < m} E[g(z + W^n(tau/n))]. Exactly 0 unless N | k.
cplx expected_ito_integral_exact(const WalkSpec& spec, std::int64_t steps, const PowerSeries& g, cplx z, int k,
                                 std::uint64_t budget = default_atom_budget());

struct ItoFormulaCheck {
  cplx lhs;
  cplx rhs;
  int series_terms_used = 0;
};

/// lhs = g(z + W^n(t)) - g(z), rhs = sum_k (1/k!) int d^k g d(W^n)^k.
///
/// For polynomials the sum stops at the degree. Otherwise it stops at the
/// first k with (c+eps)^k (|alpha|^{1/N} n^{-1/N})^k floor(nt)/k! times
/// e^{(c+eps) max|z + W - center|} below 1e-14.
ItoFormulaCheck ito_formula_check(const PathSample& path, const PowerSeries& g, cplx z,
                                  IntegrandPoint point = IntegrandPoint::left);

/// n^{-k/N} sum_{tau < steps} phi(tau/n) xi_{tau+1}^k.
cplx wiener_integral(const PathSample& path, const TimeFunction& phi, int k);

struct MartingalePoint {
  double s;
  cplx mean;  ///< conditional mean of H_t - H_s given the stored prefix
  double se;
  bool within;  ///< |mean| <= 4 se (or exactly 0 when se = 0)
};

struct MartingaleReport {
  int k;
  bool analytic_zero;  ///< N does not divide k, so every increment has mean 0
  bool martingale;     ///< all grid points within their band
  std::vector<MartingalePoint> points;
};

/// Conditional increments of H^{n,k}_t = int_0^t g(z + W^n) d(W^n)^k by
/// resampling the suffix after each s in the grid, keeping a fixed prefix.
MartingaleReport martingale_check(const WalkSpec& spec, const PowerSeries& g, cplx z, int k,
                                  const std::vector<double>& s_grid, double t, const McOptions& mc);

}  // namespace rootwalk

#pragma once

#include <cstdint>

#include "rootwalk/analytic.hpp"
#include "rootwalk/estimate.hpp"
#include "rootwalk/parallel.hpp"
#include "rootwalk/time_function.hpp"

namespace rootwalk {

/// d_t u = (alpha/N!) phi(t)^N d^N u, u(0, .) = initial.
struct CauchyProblem {
  int order = 2;
  cplx alpha{1.0, 0.0};
  TimeFunction phi = TimeFunction::constant(1.0);
  PowerSeries initial = PowerSeries::exponential();
  double horizon = 10.0;

  /// Throws std::invalid_argument on N < 1, alpha = 0, a non-finite or
  /// unbounded phi on [0, horizon] (sampled on 10^3 + 1 nodes).
  void validate() const;
};

/// int_0^t phi(s)^N ds.
cplx effective_time(const CauchyProblem& problem, double t);

/// sum_h g^{(hN)}(z)/h! ((alpha/N!) int_0^t phi^N)^h.
EstimateWithError solve_series(const CauchyProblem& problem, double t, cplx z);

/// Monte Carlo mean of g(z + X_n(t)), X_n(t) = n^{-1/N} sum_{tau < nt} phi(tau/n) xi_{tau+1}.
EstimateWithError solve_probabilistic(const CauchyProblem& problem, double t, cplx z, std::int64_t n,
                                      const McOptions& mc);

/// |d_t u - (alpha/N!) phi(t)^N d^N u| with a central difference of step
/// 1e-4 (1 + t) in time and d^N taken on the initial series.
double residual(const CauchyProblem& problem, double t, cplx z);

}  // namespace rootwalk

#pragma once

#include <cstdint>
#include <vector>

#include "rootwalk/analytic.hpp"
#include "rootwalk/estimate.hpp"
#include "rootwalk/parallel.hpp"
#include "rootwalk/walk.hpp"

namespace rootwalk {

struct ExitSample {
  double tau = 0.0;  ///< first j/n with |W^n(j/n)| > R, or the horizon when truncated
  cplx exit_point;
  std::int64_t steps = 0;
  bool truncated = false;
  std::vector<std::uint32_t> step_indices;  ///< filled only when requested
};

/// 50 n^{2/N-1} R^2 |alpha|^{-2/N}, fifty times the lower mean bound.
double default_exit_horizon(const WalkSpec& spec, double R);

/// Runs the walk until it leaves the closed ball of radius R or
/// floor(n T) steps have been taken.
ExitSample sample_exit(const WalkSpec& spec, double R, double horizon, Engine& engine, bool keep_path = false);
ExitSample sample_exit(const WalkSpec& spec, double R, double horizon, std::uint64_t seed, bool keep_path = false);

/// Mean exit-time bounds [n^{2/N-1} R^2, n^{2/N-1} R^2 + 1/n], in units of
/// |alpha|^{-2/N} for a general alpha.
struct ExitBounds {
  double lower;
  double upper;
};
ExitBounds exit_time_bounds(const WalkSpec& spec, double R);

struct ExitStatistics {
  std::int64_t samples = 0;
  double mean = 0.0;  ///< over non-truncated samples
  double se = 0.0;
  double median = 0.0;
  double truncated_fraction = 0.0;
  double mean_exit_modulus = 0.0;
  double max_exit_modulus = 0.0;
  ExitBounds bounds{};
};

ExitStatistics exit_statistics(const WalkSpec& spec, double R, double horizon, const McOptions& mc);

struct StoppedExpectationReport {
  EstimateWithError lhs;  ///< E[g(z + W(tau))] - g(z)
  EstimateWithError rhs;  ///< (alpha/N!) E sum_{j < T} d^N g(z + W(j/n)) / n
  cplx gap;
  double gap_se = 0.0;           ///< paired standard error of lhs - rhs
  double higher_order = 0.0;     ///< bound on the h >= 2 terms, O(1/n)
  bool consistent = false;       ///< |gap| <= 4 gap_se + higher_order
  int k_check = 0;
  EstimateWithError stopped_integral;  ///< E int_0^tau d^k g d(W^n)^k
  bool stopped_zero = false;           ///< |mean| <= 4 se
  double truncated_fraction = 0.0;
};

/// Optional-stopping checks at the exit time from B(0, R).
StoppedExpectationReport stopped_expectation_check(const WalkSpec& spec, double R, const PowerSeries& g, cplx z,
                                                   double horizon, int k_check, const McOptions& mc);

struct DerivativeAtScale {
  std::int64_t n;
  EstimateWithError estimate;  ///< untrimmed mean of (N!/alpha)(g(z + W(tau)) - g(z))/tau
  cplx trimmed;                ///< same without the 0.1% of samples largest in modulus
  double truncated_fraction;
  /// Diagnostic only: (N!/alpha)(E[g(z + W(tau))] - g(z)) / E[tau].
  cplx ratio_of_means;
};

struct DerivativeEstimate {
  std::vector<DerivativeAtScale> per_n;
  cplx extrapolated;
  double rate_exponent;  ///< p in the assumed error model C n^{-p}
};

/// Estimates g^{(N)}(z) from exit-time ratios for each n in the schedule,
/// then Richardson-extrapolates the last two assuming an error C n^{-p}
/// with p = 1 - 2/N (p = 1 when N <= 2).
DerivativeEstimate derivative_estimator(const WalkSpec& spec, double R, const PowerSeries& g, cplx z,
                                        const std::vector<std::int64_t>& schedule, const McOptions& mc);

}  // namespace rootwalk

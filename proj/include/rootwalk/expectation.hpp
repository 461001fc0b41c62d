#pragma once

#include <cstdint>

#include "rootwalk/analytic.hpp"
#include "rootwalk/estimate.hpp"
#include "rootwalk/parallel.hpp"
#include "rootwalk/walk.hpp"

namespace rootwalk {

/// E[f(z + W^n(m/n))] by total expectation over the lattice law.
EstimateWithError expect_exact(const WalkSpec& spec, std::int64_t steps, const PowerSeries& f, cplx z,
                               std::uint64_t budget = default_atom_budget());

/// Monte Carlo mean of f(z + W^n(t)) over independent paths.
EstimateWithError expect_mc(const WalkSpec& spec, double t, const PowerSeries& f, cplx z,
                            const McOptions& mc);

/// sum_h f^{(hN)}(z) s^h / (h + shift)!, truncated once the exponential-type
/// bound on the remaining terms falls below 1e-12 |partial sum|, at most
/// 400 terms. shift = 0 gives the heat-type propagator with s = alpha t/N!.
EstimateWithError propagate_series(const PowerSeries& f, int order, cplx s, cplx z, int shift = 0);

/// lim_n E[f(z + W^n(t))] = sum_h f^{(hN)}(z)/h! (alpha t / N!)^h.
/// A warning is attached when the coefficient growth condition is not
/// certified.
EstimateWithError limit_series(const WalkSpec& spec, double t, const PowerSeries& f, cplx z);

/// int_0^t lim_n E[f(z + W^n(s))] ds = sum_h f^{(hN)}(z)/(h+1)! (alpha/N!)^h t^{h+1}.
cplx limit_time_integral(const WalkSpec& spec, double t, const PowerSeries& f, cplx z);

/// sum_j w_j e^{i y_j x} exp(i^N alpha t y_j^N / N!).
cplx fourier_initialdata_limit(const WalkSpec& spec, double t, const AtomicMeasure& mu, double x);

}  // namespace rootwalk

#pragma once

#include <functional>

#include "rootwalk/analytic.hpp"
#include "rootwalk/estimate.hpp"
#include "rootwalk/parallel.hpp"
#include "rootwalk/time_function.hpp"
#include "rootwalk/walk.hpp"

namespace rootwalk {

/// I_k = int_{k/n}^t a(u) du for k = 1..floor(nt); the functional
/// int_0^t a(s) W^n(s) ds equals n^{-1/N} sum_k xi_k I_k exactly because
/// the walk is constant between grid points.
std::vector<cplx> tail_integrals(const WalkSpec& spec, double t, const TimeFunction& a);

/// exp((alpha/N!) int_0^t (int_s^t a(u) du)^N ds).
cplx exp_functional_limit(const WalkSpec& spec, double t, const TimeFunction& a);

/// Monte Carlo mean of exp(int_0^t a(s) W^n(s) ds). Warns when the sample
/// variance of the real part of the exponent exceeds 25.
EstimateWithError exp_functional_mc(const WalkSpec& spec, double t, const TimeFunction& a, const McOptions& mc);

/// e^{x B(t)} sum_j w_j e^{i y_j x} exp((alpha/N!) int_0^t (i y_j + B(t-s))^N ds),
/// B(v) = int_0^v A. Solves d_t u = (alpha/N!) d^N u + A(t) x u with
/// u(0, x) = sum_j w_j e^{i y_j x}.
cplx fk_solution_closed(const WalkSpec& spec, double t, double x, const TimeFunction& A, const AtomicMeasure& mu);

/// Monte Carlo mean of f(x + W^n(t)) exp(int_0^t A(t-s)(x + W^n(s)) ds).
EstimateWithError fk_solution_mc(const WalkSpec& spec, double t, double x, const TimeFunction& A,
                                 const PowerSeries& f, const McOptions& mc);

/// |d_t u - (alpha/N!) d_x^N u - A(t) x u| for the closed form, with a
/// central difference in t and exact x-derivatives.
double fk_residual(const WalkSpec& spec, double t, double x, const TimeFunction& A, const AtomicMeasure& mu);

using Potential = std::function<cplx(double tau, cplx x)>;

/// Experimental: the prelimit E[f(x + W^n(t)) exp(int_0^t V(t-s, x + W^n(s)) ds)]
/// for a general potential, each grid cell integrated by Simpson on 8 panels.
/// No convergence is claimed outside the linear class.
EstimateWithError fk_prelimit_experimental(const WalkSpec& spec, double t, double x, const Potential& V,
                                           const PowerSeries& f, const McOptions& mc);

}  // namespace rootwalk

#pragma once

#include <cstdint>
#include <vector>

#include "rootwalk/common.hpp"
#include "rootwalk/walk.hpp"

namespace rootwalk {

inline constexpr int kMaxMomentOrder = 64;

/// E[(W^n(m/n))^k] for k = 0..kmax.
///
/// Uses moments of sums of independent blocks,
/// E[(A+B)^k] = sum_i C(k,i) E[A^i] E[B^{k-i}], with exact 64-bit binomials
/// and block doubling over m. Only k = hN survive; they are alpha^h times a
/// positive real, so the vanishing law holds exactly.
/// Throws BudgetExceeded when kmax > 64.
std::vector<cplx> exact_moments(const WalkSpec& spec, std::int64_t steps, int kmax);
cplx exact_moment(const WalkSpec& spec, std::int64_t steps, int k);

/// (alpha t / N!)^h (hN)!/h! for k = hN with h <= floor(nt), else 0.
cplx leading_term(const WalkSpec& spec, double t, int k);

/// |alpha|^h t^{h-1} (h^2+h)/(2n) + (|alpha|^h / n) (0.792 hN / log(hN+1))^{hN},
/// and 0 for h in {0, 1}.
double remainder_bound(const WalkSpec& spec, double t, int h);

struct MomentResult {
  int k;
  cplx exact_value;
  cplx leading_term;
  double remainder_bound;
  bool on_grid;
};

MomentResult moment_report(const WalkSpec& spec, double t, int k);
std::vector<MomentResult> moment_table(const WalkSpec& spec, double t, int kmax);

/// E[e^{lambda xi}] as the N-point average over the step set.
cplx step_mgf(const WalkSpec& spec, cplx lambda);
/// E[e^{lambda xi}] as the lacunary series sum_m (alpha lambda^N)^m / (mN)!.
cplx step_mgf_series(const WalkSpec& spec, cplx lambda);
/// E[e^{lambda xi}] - 1 from the lacunary series, without cancellation.
cplx step_mgf_minus_one(const WalkSpec& spec, cplx lambda);

struct MgfGap {
  cplx gap;                ///< E[e^{lambda xi}] - exp(alpha lambda^N / N!)
  double bound_constant;   ///< sampled sup of |g| on |lambda| <= radius
};

/// The gap factors as alpha^2 lambda^{2N} g(lambda) with g entire; C is
/// estimated from 10^4 samples of |g| on the disk of the given radius.
MgfGap step_mgf_gap(const WalkSpec& spec, cplx lambda, double radius);
/// g(lambda) = sum_m (alpha lambda^N)^m (1/((m+2)N)! - 1/((m+2)! (N!)^{m+2})).
cplx mgf_gap_kernel(const WalkSpec& spec, cplx lambda);

/// psi_n(lambda) = E[exp(i lambda W^n(t))] = psi_xi(lambda n^{-1/N})^{floor(nt)}.
cplx characteristic_function(const WalkSpec& spec, double t, cplx lambda);
/// exp(i^N alpha t lambda^N / N!).
cplx characteristic_limit(const WalkSpec& spec, double t, cplx lambda);

/// Complex log(1 + d) accurate for small d.
cplx log1p(cplx d);
/// Complex exp(z) - 1 accurate for small z.
cplx expm1(cplx z);

}  // namespace rootwalk

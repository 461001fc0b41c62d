#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "rootwalk/common.hpp"

namespace rootwalk {

/// The walk W^n(t) = n^{-1/N} sum_{k <= floor(nt)} xi_k with xi uniform on
/// alpha^{1/N} times the N-th roots of unity.
///
/// The root alpha^{1/N} is taken on the principal branch, arg in (-pi, pi].
/// Any other branch only permutes the step set.
class WalkSpec {
 public:
  WalkSpec(int order, cplx alpha, std::int64_t scale);

  int order() const noexcept { return order_; }
  cplx alpha() const noexcept { return alpha_; }
  std::int64_t scale() const noexcept { return scale_; }

  /// Principal alpha^{1/N}.
  cplx root() const noexcept { return root_; }
  /// |alpha|^{1/N}.
  double step_modulus() const noexcept { return std::abs(root_); }
  /// n^{-1/N}.
  double increment_scale() const noexcept { return increment_scale_; }

  /// e^{2 pi i j / N}; quarter turns are exact.
  cplx unit_root(std::int64_t j) const noexcept;
  std::span<const cplx> unit_roots() const noexcept { return unit_roots_; }

  /// xi value for root index j: alpha^{1/N} e^{2 pi i j/N}.
  cplx step(std::uint32_t j) const noexcept { return root_ * unit_roots_[j]; }
  /// xi^k for root index j, with the root-of-unity part reduced mod N.
  cplx step_power(std::uint32_t j, int k) const noexcept;

  /// Number of steps up to time t, floor(n t).
  std::int64_t steps_until(double t) const { return grid_steps(scale_, t); }

  WalkSpec with_scale(std::int64_t scale) const { return WalkSpec(order_, alpha_, scale); }

 private:
  int order_;
  cplx alpha_;
  std::int64_t scale_;
  cplx root_;
  double increment_scale_;
  std::vector<cplx> unit_roots_;
};

struct StepValue {
  std::uint32_t root_index;
  cplx value;
};

StepValue step_value(const WalkSpec& spec, std::uint32_t root_index);

/// E[xi^m]: alpha^{m/N} when N | m, else exactly 0.
cplx step_power_moment(const WalkSpec& spec, int m);
/// E[|xi|^m] = |alpha|^{m/N}.
double step_abs_moment(const WalkSpec& spec, int m);

using Engine = std::mt19937_64;

/// Engine for stream `stream` under `master_seed`. Streams are decorrelated
/// by a splitmix64 finalizer so any worker can regenerate any path.
Engine stream_engine(std::uint64_t master_seed, std::uint64_t stream);

/// Uniform root indices in [0, N), exact (power-of-two N uses raw bits,
/// other N uses Lemire's multiply-and-reject on 32-bit halves).
class StepSampler {
 public:
  explicit StepSampler(int order);

  std::uint32_t operator()(Engine& engine) {
    if (pow2_) {
      if (shift_ == 0) return 0;
      if (bits_left_ < shift_) {
        buffer_ = engine();
        bits_left_ = 64;
      }
      const auto v = static_cast<std::uint32_t>(buffer_ & mask_);
      buffer_ >>= shift_;
      bits_left_ -= shift_;
      return v;
    }
    std::uint64_t m = static_cast<std::uint64_t>(next32(engine)) * order_;
    auto low = static_cast<std::uint32_t>(m);
    if (low < order_) {
      while (low < threshold_) {
        m = static_cast<std::uint64_t>(next32(engine)) * order_;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

 private:
  std::uint32_t next32(Engine& engine) {
    if (bits_left_ < 32) {
      buffer_ = engine();
      bits_left_ = 64;
    }
    const auto v = static_cast<std::uint32_t>(buffer_);
    buffer_ >>= 32;
    bits_left_ -= 32;
    return v;
  }

  std::uint32_t order_;
  bool pow2_;
  unsigned shift_ = 0;
  std::uint64_t mask_ = 0;
  std::uint32_t threshold_ = 0;
  std::uint64_t buffer_ = 0;
  unsigned bits_left_ = 0;
};

/// One realisation of W^n on [0, t].
///
/// partial_sums[j] = W^n((j+1)/n); the walk is piecewise constant between
/// grid points and W^n(s) = 0 for floor(ns) = 0.
class PathSample {
 public:
  PathSample(WalkSpec spec, double horizon, std::vector<std::uint32_t> step_indices);

  const WalkSpec& spec() const noexcept { return spec_; }
  double horizon() const noexcept { return horizon_; }
  std::int64_t steps() const noexcept { return static_cast<std::int64_t>(indices_.size()); }
  std::span<const std::uint32_t> step_indices() const noexcept { return indices_; }
  std::span<const cplx> partial_sums() const noexcept { return sums_; }

  /// W^n(j/n) for 0 <= j <= steps().
  cplx at_step(std::int64_t j) const noexcept { return j <= 0 ? cplx{} : sums_[j - 1]; }
  /// W^n(s) for 0 <= s <= horizon.
  cplx at(double s) const;
  /// End point W^n(t).
  cplx end() const noexcept { return at_step(steps()); }
  /// xi_{j+1}, the step taken from grid point j to j+1.
  cplx step(std::int64_t j) const noexcept { return spec_.step(indices_[j]); }

 private:
  WalkSpec spec_;
  double horizon_;
  std::vector<std::uint32_t> indices_;
  std::vector<cplx> sums_;
};

PathSample sample_path(const WalkSpec& spec, double t, std::uint64_t seed);
PathSample sample_path(const WalkSpec& spec, double t, Engine& engine);

/// Exact law of W^n(m/n): atoms indexed by compositions (m_0..m_{N-1}).
struct LatticeAtom {
  std::vector<int> composition;
  cplx point;
  double weight;
};

struct LatticeDistribution {
  WalkSpec spec;
  std::int64_t steps;
  std::vector<LatticeAtom> atoms;
};

inline constexpr std::uint64_t kDefaultAtomBudget = 10'000'000;

/// Atom budget, overridable by ROOTWALK_ATOM_BUDGET.
std::uint64_t default_atom_budget();

/// C(m + N - 1, N - 1), saturating at UINT64_MAX.
std::uint64_t atom_count(int order, std::int64_t steps);

using AtomVisitor = std::function<void(std::span<const int> composition, cplx point, double weight)>;

/// Streams the atoms of the law of W^n(m/n) without materialising them.
/// Throws BudgetExceeded when the atom count is above `budget`.
void for_each_atom(const WalkSpec& spec, std::int64_t steps, const AtomVisitor& visit,
                   std::uint64_t budget = default_atom_budget());

LatticeDistribution exact_distribution(const WalkSpec& spec, std::int64_t steps,
                                       std::uint64_t budget = default_atom_budget());

}  // namespace rootwalk

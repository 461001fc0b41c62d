#include "rootwalk/walk.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

namespace rootwalk {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

cplx exact_unit_root(std::int64_t j, int order) {
  j %= order;
  if (j < 0) j += order;
  // Quarter turns are represented exactly.
  if ((4 * j) % order == 0) {
    return i_pow(4 * j / order);
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / order;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

WalkSpec::WalkSpec(int order, cplx alpha, std::int64_t scale)
    : order_(order), alpha_(alpha), scale_(scale) {
  if (order < 1) throw std::invalid_argument("walk order N must be >= 1");
  if (scale < 1) throw std::invalid_argument("walk scale n must be >= 1");
  if (alpha == cplx{}) throw std::invalid_argument("alpha must be nonzero");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw std::invalid_argument("alpha must be finite");
  }
  const double modulus = std::pow(std::abs(alpha), 1.0 / order);
  const double arg = std::arg(alpha) / order;
  root_ = (arg == 0.0) ? cplx{modulus, 0.0} : std::polar(modulus, arg);
  increment_scale_ = std::pow(static_cast<double>(scale), -1.0 / order);
  unit_roots_.reserve(order);
  for (int j = 0; j < order; ++j) unit_roots_.push_back(exact_unit_root(j, order));
}

cplx WalkSpec::unit_root(std::int64_t j) const noexcept {
  j %= order_;
  if (j < 0) j += order_;
  return unit_roots_[static_cast<std::size_t>(j)];
}

cplx WalkSpec::step_power(std::uint32_t j, int k) const noexcept {
  return ipow(root_, k) * unit_root(static_cast<std::int64_t>(j) * k);
}

StepValue step_value(const WalkSpec& spec, std::uint32_t root_index) {
  if (root_index >= static_cast<std::uint32_t>(spec.order())) {
    throw std::out_of_range("root index out of range");
  }
  return {root_index, spec.step(root_index)};
}

cplx step_power_moment(const WalkSpec& spec, int m) {
  if (m < 0) throw std::invalid_argument("moment order must be >= 0");
  if (m % spec.order() != 0) return {0.0, 0.0};
  // alpha^{m/N} with m/N integral: an integer power of alpha itself.
  return ipow(spec.alpha(), m / spec.order());
}

double step_abs_moment(const WalkSpec& spec, int m) {
  if (m < 0) throw std::invalid_argument("moment order must be >= 0");
  return std::pow(std::abs(spec.alpha()), static_cast<double>(m) / spec.order());
}

Engine stream_engine(std::uint64_t master_seed, std::uint64_t stream) {
  return Engine(splitmix64(splitmix64(master_seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

StepSampler::StepSampler(int order) : order_(static_cast<std::uint32_t>(order)) {
  if (order < 1) throw std::invalid_argument("step sampler order must be >= 1");
  pow2_ = (order_ & (order_ - 1)) == 0;
  if (pow2_) {
    while ((1u << shift_) < order_) ++shift_;
    mask_ = (1ULL << shift_) - 1;
  } else {
    threshold_ = static_cast<std::uint32_t>(-order_) % order_;
  }
}

PathSample::PathSample(WalkSpec spec, double horizon, std::vector<std::uint32_t> step_indices)
    : spec_(std::move(spec)), horizon_(horizon), indices_(std::move(step_indices)) {
  sums_.reserve(indices_.size());
  const double scale = spec_.increment_scale();
  cplx acc{};
  for (auto j : indices_) {
    if (j >= static_cast<std::uint32_t>(spec_.order())) throw std::out_of_range("root index out of range");
    acc += spec_.unit_root(j);
    sums_.push_back(scale * spec_.root() * acc);
  }
}

cplx PathSample::at(double s) const {
  if (s < 0.0) throw std::invalid_argument("time must be >= 0");
  const std::int64_t j = std::min(grid_steps(spec_.scale(), s), steps());
  return at_step(j);
}

PathSample sample_path(const WalkSpec& spec, double t, Engine& engine) {
  if (t < 0.0) throw std::invalid_argument("horizon t must be >= 0");
  const std::int64_t m = spec.steps_until(t);
  StepSampler draw(spec.order());
  std::vector<std::uint32_t> indices(static_cast<std::size_t>(m));
  for (auto& j : indices) j = draw(engine);
  return PathSample(spec, t, std::move(indices));
}

PathSample sample_path(const WalkSpec& spec, double t, std::uint64_t seed) {
  Engine engine = stream_engine(seed, 0);
  return sample_path(spec, t, engine);
}

std::uint64_t default_atom_budget() {
  if (const char* env = std::getenv("ROOTWALK_ATOM_BUDGET")) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultAtomBudget;
}

std::uint64_t atom_count(int order, std::int64_t steps) {
  // C(m + N - 1, r) with r = min(N - 1, m), accumulated exactly while it fits.
  const std::uint64_t m = static_cast<std::uint64_t>(steps);
  const std::uint64_t top = m + static_cast<std::uint64_t>(order) - 1;
  const std::uint64_t r = std::min<std::uint64_t>(static_cast<std::uint64_t>(order) - 1, m);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    c = c * (top - r + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

void for_each_atom(const WalkSpec& spec, std::int64_t steps, const AtomVisitor& visit,
                   std::uint64_t budget) {
  if (steps < 0) throw std::invalid_argument("step count must be >= 0");
  const std::uint64_t count = atom_count(spec.order(), steps);
  if (count > budget) {
    throw BudgetExceeded("exact lattice enumeration needs " + std::to_string(count) +
                         " atoms, above the budget of " + std::to_string(budget) +
                         "; use the Monte Carlo route");
  }
  const int order = spec.order();
  std::vector<double> log_fact(static_cast<std::size_t>(steps) + 1);
  for (std::int64_t i = 0; i <= steps; ++i) log_fact[i] = log_factorial(i);
  const double base = log_fact[steps] - static_cast<double>(steps) * std::log(static_cast<double>(order));
  const cplx point_scale = spec.increment_scale() * spec.root();

  std::vector<int> comp(static_cast<std::size_t>(order), 0);
  auto rec = [&](auto&& self, int slot, std::int64_t remaining, cplx lattice, double log_w) -> void {
    if (slot == order - 1) {
      comp[slot] = static_cast<int>(remaining);
      const cplx z = lattice + static_cast<double>(remaining) * spec.unit_root(slot);
      visit(comp, point_scale * z, std::exp(log_w - log_fact[remaining]));
      return;
    }
    for (std::int64_t c = remaining; c >= 0; --c) {
      comp[slot] = static_cast<int>(c);
      self(self, slot + 1, remaining - c, lattice + static_cast<double>(c) * spec.unit_root(slot),
           log_w - log_fact[c]);
    }
  };
  rec(rec, 0, steps, cplx{}, base);
}

LatticeDistribution exact_distribution(const WalkSpec& spec, std::int64_t steps, std::uint64_t budget) {
  LatticeDistribution dist{spec, steps, {}};
  dist.atoms.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(atom_count(spec.order(), steps), budget)));
  for_each_atom(
      spec, steps,
      [&](std::span<const int> comp, cplx point, double weight) {
        dist.atoms.push_back({std::vector<int>(comp.begin(), comp.end()), point, weight});
      },
      budget);
  return dist;
}

}  // namespace rootwalk

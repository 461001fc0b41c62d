#include "rootwalk/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rootwalk {

namespace {

// Squared exit radius in lattice units, |sum zeta| > R n^{1/N} / |alpha|^{1/N}.
double lattice_threshold2(const WalkSpec& spec, double R) {
  const double r = R / (spec.increment_scale() * spec.step_modulus());
  return r * r * (1.0 + 1e-12);
}

// Majorant of |g^{(j)}| on the disk of radius rho about the expansion center.
double derivative_sup(const PowerSeries& g, int j, double rho) {
  if (g.is_polynomial() || g.type() == 0.0) {
    double acc = 0.0;
    double p = 1.0;
    for (int i = 0; j + i < g.size(); ++i) {
      acc += std::abs(g.derivative_at_center(j + i)) * p;
      p *= rho / (i + 1);
    }
    return acc;
  }
  const double rate = g.growth_rate();
  return std::exp(j * std::log(rate) + rate * rho);
}

}  // namespace

double default_exit_horizon(const WalkSpec& spec, double R) {
  return 50.0 * exit_time_bounds(spec, R).lower;
}

ExitBounds exit_time_bounds(const WalkSpec& spec, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("radius R must be positive");
  const double n = static_cast<double>(spec.scale());
  const double unit = std::pow(spec.step_modulus(), 2.0);
  const double lower = std::pow(n, 2.0 / spec.order() - 1.0) * R * R / unit;
  return {lower, lower + 1.0 / n};
}

ExitSample sample_exit(const WalkSpec& spec, double R, double horizon, Engine& engine, bool keep_path) {
  if (!(R > 0.0)) throw std::invalid_argument("radius R must be positive");
  const double thr2 = lattice_threshold2(spec, R);
  const std::int64_t cap = spec.steps_until(horizon);
  StepSampler draw(spec.order());
  ExitSample out;
  cplx lattice{};
  std::int64_t j = 0;
  bool exited = false;
  while (j < cap) {
    const auto idx = draw(engine);
    if (keep_path) out.step_indices.push_back(idx);
    lattice += spec.unit_root(idx);
    ++j;
    if (std::norm(lattice) > thr2) {
      exited = true;
      break;
    }
  }
  out.steps = j;
  out.truncated = !exited;
  out.tau = static_cast<double>(j) / static_cast<double>(spec.scale());
  out.exit_point = spec.increment_scale() * spec.root() * lattice;
  return out;
}

ExitSample sample_exit(const WalkSpec& spec, double R, double horizon, std::uint64_t seed, bool keep_path) {
  Engine engine = stream_engine(seed, 0);
  return sample_exit(spec, R, horizon, engine, keep_path);
}

ExitStatistics exit_statistics(const WalkSpec& spec, double R, double horizon, const McOptions& mc) {
  auto samples = parallel_map(mc.paths, mc.workers, [&](std::int64_t i) {
    Engine engine = stream_engine(mc.seed, static_cast<std::uint64_t>(i));
    return sample_exit(spec, R, horizon, engine);
  });
  ExitStatistics st;
  st.samples = mc.paths;
  st.bounds = exit_time_bounds(spec, R);
  std::vector<double> taus;
  taus.reserve(samples.size());
  std::int64_t truncated = 0;
  double mod_sum = 0.0;
  for (const auto& s : samples) {
    if (s.truncated) {
      ++truncated;
      continue;
    }
    taus.push_back(s.tau);
    const double mod = std::abs(s.exit_point);
    mod_sum += mod;
    st.max_exit_modulus = std::max(st.max_exit_modulus, mod);
  }
  st.truncated_fraction = samples.empty() ? 0.0 : static_cast<double>(truncated) / samples.size();
  if (taus.empty()) return st;
  const double count = static_cast<double>(taus.size());
  st.mean = std::accumulate(taus.begin(), taus.end(), 0.0) / count;
  st.mean_exit_modulus = mod_sum / count;
  double ss = 0.0;
  for (double v : taus) ss += (v - st.mean) * (v - st.mean);
  st.se = taus.size() > 1 ? std::sqrt(ss / (count - 1.0) / count) : 0.0;
  auto mid = taus.begin() + taus.size() / 2;
  std::nth_element(taus.begin(), mid, taus.end());
  st.median = *mid;
  if (taus.size() % 2 == 0) st.median = 0.5 * (st.median + *std::max_element(taus.begin(), mid));
  return st;
}

StoppedExpectationReport stopped_expectation_check(const WalkSpec& spec, double R, const PowerSeries& g, cplx z,
                                                   double horizon, int k_check, const McOptions& mc) {
  const int order = spec.order();
  if (k_check < 1) throw std::invalid_argument("k_check must be >= 1");
  const PowerSeries dn = derivative_series(g, order);
  const PowerSeries dk = derivative_series(g, k_check);
  const double thr2 = lattice_threshold2(spec, R);
  const std::int64_t cap = spec.steps_until(horizon);
  const cplx scale = spec.increment_scale() * spec.root();
  const double delta_k = ipow(spec.increment_scale(), k_check);
  const cplx g0 = evaluate(g, z);

  struct Sample {
    cplx lhs, rhs, stopped;
    double tau;
    bool truncated;
  };
  auto samples = parallel_map(mc.paths, mc.workers, [&](std::int64_t i) {
    Engine engine = stream_engine(mc.seed, static_cast<std::uint64_t>(i));
    StepSampler draw(order);
    cplx lattice{};
    cplx rhs{};
    cplx stopped{};
    std::int64_t j = 0;
    bool exited = false;
    while (j < cap) {
      const cplx w = z + scale * lattice;
      const auto idx = draw(engine);
      rhs += evaluate(dn, w);
      stopped += evaluate(dk, w) * spec.step_power(idx, k_check);
      lattice += spec.unit_root(idx);
      ++j;
      if (std::norm(lattice) > thr2) {
        exited = true;
        break;
      }
    }
    return Sample{evaluate(g, z + scale * lattice) - g0, rhs, stopped * delta_k,
                  static_cast<double>(j) / static_cast<double>(spec.scale()), !exited};
  });

  std::vector<cplx> lhs, rhs, diff, stopped;
  double tau_sum = 0.0;
  const cplx c = spec.alpha() / factorial(order) / static_cast<double>(spec.scale());
  for (const auto& s : samples) {
    if (s.truncated) continue;
    lhs.push_back(s.lhs);
    rhs.push_back(c * s.rhs);
    diff.push_back(s.lhs - c * s.rhs);
    stopped.push_back(s.stopped);
    tau_sum += s.tau;
  }
  if (lhs.empty()) throw std::runtime_error("every exit sample hit the horizon cap");

  StoppedExpectationReport rep;
  rep.truncated_fraction = 1.0 - static_cast<double>(lhs.size()) / static_cast<double>(samples.size());
  rep.lhs = mc_summary(lhs);
  rep.rhs = mc_summary(rhs);
  const EstimateWithError gap = mc_summary(diff);
  rep.gap = gap.value;
  rep.gap_se = gap.error;

  // E tau * sum_{h >= 2} |alpha|^h n^{1-h} sup|g^{(hN)}| / (hN)!, with E tau from the sample.
  const double n = static_cast<double>(spec.scale());
  const double rho = std::abs(z - g.center()) + R + spec.step_modulus() * spec.increment_scale();
  double allowance = 0.0;
  for (int h = 2; h <= 400; ++h) {
    const long long k = static_cast<long long>(h) * order;
    if ((g.is_polynomial() || g.type() == 0.0) && k >= g.size()) break;
    const double term = std::exp(h * std::log(std::abs(spec.alpha())) + (1.0 - h) * std::log(n) - log_factorial(k)) *
                        derivative_sup(g, static_cast<int>(k), rho);
    allowance += term;
    if (term <= 1e-16 * allowance) break;
  }
  rep.higher_order = tau_sum / static_cast<double>(lhs.size()) * allowance;
  rep.consistent = std::abs(rep.gap) <= 4.0 * rep.gap_se + rep.higher_order;

  rep.k_check = k_check;
  rep.stopped_integral = mc_summary(stopped);
  rep.stopped_zero = std::abs(rep.stopped_integral.value) <= 4.0 * rep.stopped_integral.error;
  return rep;
}

DerivativeEstimate derivative_estimator(const WalkSpec& spec, double R, const PowerSeries& g, cplx z,
                                        const std::vector<std::int64_t>& schedule, const McOptions& mc) {
  if (schedule.empty()) throw std::invalid_argument("schedule of n values is empty");
  const int order = spec.order();
  const cplx factor = factorial(order) / spec.alpha();
  const cplx g0 = evaluate(g, z);
  DerivativeEstimate out;
  out.rate_exponent = order <= 2 ? 1.0 : 1.0 - 2.0 / order;

  for (std::int64_t n : schedule) {
    const WalkSpec sp = spec.with_scale(n);
    const double reach = std::abs(z - g.center()) + R + sp.step_modulus() * sp.increment_scale();
    if (!g.is_polynomial() && g.tail_bound(reach) > g.policy().tail_tolerance) {
      throw std::invalid_argument("series of g is not trusted on the ball B(z, R + step)");
    }
    const double horizon = default_exit_horizon(sp, R);
    auto samples = parallel_map(mc.paths, mc.workers, [&](std::int64_t i) {
      Engine engine = stream_engine(mc.seed, static_cast<std::uint64_t>(i));
      return sample_exit(sp, R, horizon, engine);
    });
    std::vector<cplx> values;
    values.reserve(samples.size());
    cplx increment_sum{};
    double tau_sum = 0.0;
    for (const auto& s : samples) {
      if (s.truncated) continue;
      const cplx increment = evaluate(g, z + s.exit_point) - g0;
      values.push_back(factor * increment / s.tau);
      increment_sum += increment;
      tau_sum += s.tau;
    }
    if (values.empty()) throw std::runtime_error("every exit sample hit the horizon cap at n = " + std::to_string(n));

    DerivativeAtScale row{n, mc_summary(values), {}, 1.0 - static_cast<double>(values.size()) / samples.size(),
                          factor * increment_sum / tau_sum};
    std::vector<std::size_t> order_idx(values.size());
    std::iota(order_idx.begin(), order_idx.end(), std::size_t{0});
    std::stable_sort(order_idx.begin(), order_idx.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(values[a]) < std::abs(values[b]); });
    const std::size_t keep = values.size() - values.size() / 1000;
    cplx acc{};
    for (std::size_t i = 0; i < keep; ++i) acc += values[order_idx[i]];
    row.trimmed = acc / static_cast<double>(keep);
    out.per_n.push_back(std::move(row));
  }

  if (out.per_n.size() == 1) {
    out.extrapolated = out.per_n.back().estimate.value;
    return out;
  }
  const auto& a = out.per_n[out.per_n.size() - 2];
  const auto& b = out.per_n.back();
  const double r = std::pow(static_cast<double>(b.n) / static_cast<double>(a.n), out.rate_exponent);
  out.extrapolated = (r * b.estimate.value - a.estimate.value) / (r - 1.0);
  return out;
}

}  // namespace rootwalk

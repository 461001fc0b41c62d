#include "rootwalk/ito.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "rootwalk/estimate.hpp"
#include "rootwalk/expectation.hpp"

namespace rootwalk {

namespace {

// Increment n^{-1/N} xi_{tau+1} raised to k without going through pow.
cplx increment_power(const WalkSpec& spec, std::uint32_t index, int k) {
  return ipow(spec.increment_scale(), k) * spec.step_power(index, k);
}

cplx integrand_point(const PathSample& path, std::int64_t tau, IntegrandPoint point) {
  if (point == IntegrandPoint::left) return path.at_step(tau);
  return 0.5 * (path.at_step(tau) + path.at_step(tau + 1));
}


using lcplx = std::complex<long double>;

// Taylor coefficients g^{(k)}(x)/k! of a polynomial by repeated synthetic division.
std::vector<lcplx> shifted_coefficients(const std::vector<lcplx>& a, lcplx x) {
  std::vector<lcplx> c = a;
  const int d = static_cast<int>(c.size()) - 1;
  for (int i = 0; i < d; ++i)
    for (int j = d - 1; j >= i; --j) c[j] += x * c[j + 1];
  return c;
}

lcplx horner(const std::vector<lcplx>& a, lcplx x) {
  lcplx acc{};
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Polynomial case in extended precision. Along a long path |g| can exceed
// |lhs| by 1e7, and double rounding alone then breaks a 1e-12 identity.
ItoFormulaCheck polynomial_ito_check(const PathSample& path, const PowerSeries& g, cplx z, IntegrandPoint point) {
  const WalkSpec& spec = path.spec();
  std::vector<lcplx> a(g.coefficients().begin(), g.coefficients().end());
  const lcplx origin = lcplx(z) - lcplx(g.center());
  const auto idx = path.step_indices();
  const int degree = static_cast<int>(a.size()) - 1;

  std::vector<lcplx> terms(a.size(), lcplx{});
  lcplx x = origin;
  for (std::int64_t tau = 0; tau < path.steps(); ++tau) {
    const lcplx inc = static_cast<long double>(spec.increment_scale()) * lcplx(spec.step_power(idx[tau], 1));
    const lcplx at = point == IntegrandPoint::left ? x : x + inc / 2.0L;
    const auto c = shifted_coefficients(a, at);
    lcplx p = 1.0L;
    for (int k = 1; k <= degree; ++k) {
      p *= inc;
      terms[k] += c[k] * p;
    }
    x += inc;
  }
  ItoFormulaCheck out;
  out.lhs = cplx(horner(a, x) - horner(a, origin));
  lcplx rhs{};
  for (int k = 1; k <= degree; ++k) rhs += terms[k];
  out.rhs = cplx(rhs);
  out.series_terms_used = path.steps() > 0 ? std::max(degree, 0) : 0;
  return out;
}

}  // namespace

cplx ito_integral(const PathSample& path, std::int64_t steps, const PowerSeries& g, cplx z, int k,
                  IntegrandPoint point) {
  if (k < 1) throw std::invalid_argument("integral power k must be >= 1");
  if (steps < 0 || steps > path.steps()) throw std::out_of_range("steps outside the path");
  const WalkSpec& spec = path.spec();
  const auto idx = path.step_indices();
  cplx acc{};
  for (std::int64_t tau = 0; tau < steps; ++tau) {
    acc += evaluate(g, z + integrand_point(path, tau, point)) * spec.step_power(idx[tau], k);
  }
  return ipow(spec.increment_scale(), k) * acc;
}

cplx ito_integral(const PathSample& path, const PowerSeries& g, cplx z, int k, IntegrandPoint point) {
  return ito_integral(path, path.steps(), g, z, k, point);
}

cplx expected_ito_integral_exact(const WalkSpec& spec, std::int64_t steps, const PowerSeries& g, cplx z, int k,
                                 std::uint64_t budget) {
  if (k < 1) throw std::invalid_argument("integral power k must be >= 1");
  if (k % spec.order() != 0) return {};
  cplx acc{};
  for (std::int64_t tau = 0; tau < steps; ++tau) acc += expect_exact(spec, tau, g, z, budget).value;
  // n^{-k/N} E[xi^k] = (alpha/n)^{k/N}
  return ipow(spec.alpha() / static_cast<double>(spec.scale()), k / spec.order()) * acc;
}

ItoFormulaCheck ito_formula_check(const PathSample& path, const PowerSeries& g, cplx z, IntegrandPoint point) {
  const WalkSpec& spec = path.spec();
  const std::int64_t m = path.steps();
  if (g.is_polynomial()) return polynomial_ito_check(path, g, z, point);
  ItoFormulaCheck out;
  out.lhs = evaluate(g, z + path.end()) - evaluate(g, z);
  if (m == 0) return out;

  int kmax;
  if (g.is_polynomial() || g.type() == 0.0) {
    kmax = g.size() - 1;
  } else {
    double reach = 0.0;
    for (std::int64_t tau = 0; tau <= m; ++tau) {
      reach = std::max(reach, std::abs(z + path.at_step(tau) - g.center()));
    }
    const double rate = g.growth_rate();
    const double step = spec.step_modulus() * spec.increment_scale();
    const double log_base = std::log(static_cast<double>(m)) + rate * reach;
    kmax = -1;
    for (int k = 1; k < g.size(); ++k) {
      const double log_bound = k * std::log(rate * step) - log_factorial(k) + log_base;
      if (log_bound < std::log(1e-14)) {
        kmax = k;
        break;
      }
    }
    if (kmax < 0) throw TruncationError("Ito formula series does not reach 1e-14 within stored terms", 2 * g.size());
  }
  out.series_terms_used = std::max(kmax, 0);
  if (kmax < 1) return out;

  std::vector<cplx> integrals(kmax + 1, cplx{});
  const auto idx = path.step_indices();
  for (std::int64_t tau = 0; tau < m; ++tau) {
    const auto d = derivatives_at(g, z + integrand_point(path, tau, point), kmax + 1);
    for (int k = 1; k <= kmax; ++k) integrals[k] += d[k] * increment_power(spec, idx[tau], k);
  }
  cplx rhs{};
  for (int k = 1; k <= kmax; ++k) rhs += integrals[k] * std::exp(-log_factorial(k));
  out.rhs = rhs;
  return out;
}

cplx wiener_integral(const PathSample& path, const TimeFunction& phi, int k) {
  if (k < 1) throw std::invalid_argument("integral power k must be >= 1");
  const WalkSpec& spec = path.spec();
  const auto idx = path.step_indices();
  const double n = static_cast<double>(spec.scale());
  cplx acc{};
  for (std::int64_t tau = 0; tau < path.steps(); ++tau) {
    acc += phi(static_cast<double>(tau) / n) * spec.step_power(idx[tau], k);
  }
  return ipow(spec.increment_scale(), k) * acc;
}

MartingaleReport martingale_check(const WalkSpec& spec, const PowerSeries& g, cplx z, int k,
                                  const std::vector<double>& s_grid, double t, const McOptions& mc) {
  if (k < 1) throw std::invalid_argument("integral power k must be >= 1");
  if (mc.paths < 2) throw std::invalid_argument("martingale check needs at least 2 suffix samples");
  MartingaleReport report{k, k % spec.order() != 0, true, {}};
  const std::int64_t m = spec.steps_until(t);
  const PathSample prefix = sample_path(spec, t, mc.seed);
  const cplx lattice_scale = spec.increment_scale() * spec.root();
  const double weight = ipow(spec.increment_scale(), k);

  for (std::size_t gi = 0; gi < s_grid.size(); ++gi) {
    const double s = s_grid[gi];
    if (s < 0.0 || s > t) throw std::invalid_argument("grid point outside [0, t]");
    const std::int64_t ms = spec.steps_until(s);
    const cplx start = prefix.at_step(ms);
    const std::uint64_t base = (static_cast<std::uint64_t>(gi) + 1) << 40;
    auto samples = parallel_map(mc.paths, mc.workers, [&](std::int64_t i) {
      Engine engine = stream_engine(mc.seed, base + static_cast<std::uint64_t>(i));
      StepSampler draw(spec.order());
      cplx lattice{};
      cplx acc{};
      for (std::int64_t tau = ms; tau < m; ++tau) {
        const auto j = draw(engine);
        acc += evaluate(g, z + start + lattice_scale * lattice) * spec.step_power(j, k);
        lattice += spec.unit_root(j);
      }
      return weight * acc;
    });
    const EstimateWithError est = mc_summary(samples);
    const double mod = std::abs(est.value);
    const bool within = est.error > 0.0 ? mod <= 4.0 * est.error : mod <= 1e-14;
    report.points.push_back({s, est.value, est.error, within});
    report.martingale = report.martingale && within;
  }
  return report;
}

}  // namespace rootwalk

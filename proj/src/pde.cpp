#include "rootwalk/pde.hpp"

#include <cmath>

#include "rootwalk/expectation.hpp"
#include "rootwalk/walk.hpp"

namespace rootwalk {

void CauchyProblem::validate() const {
  if (order < 1) throw std::invalid_argument("order N must be >= 1");
  if (alpha == cplx{} || !std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw std::invalid_argument("alpha must be finite and nonzero");
  }
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (!std::isfinite(phi.sampled_sup(horizon))) throw std::invalid_argument("phi is not bounded on [0, T]");
}

cplx effective_time(const CauchyProblem& problem, double t) {
  if (t < 0.0) throw std::invalid_argument("t must be >= 0");
  return problem.phi.power_integral(problem.order, 0.0, t);
}

EstimateWithError solve_series(const CauchyProblem& problem, double t, cplx z) {
  const cplx s = problem.alpha / factorial(problem.order) * effective_time(problem, t);
  EstimateWithError est = propagate_series(problem.initial, problem.order, s, z);
  if (!check_growth_condition(problem.initial, problem.order).satisfied) {
    est.warnings.push_back("coefficient growth condition not certified; limit may not exist");
  }
  return est;
}

EstimateWithError solve_probabilistic(const CauchyProblem& problem, double t, cplx z, std::int64_t n,
                                      const McOptions& mc) {
  problem.validate();
  const WalkSpec spec(problem.order, problem.alpha, n);
  const std::int64_t m = spec.steps_until(t);
  if (m == 0) {
    EstimateWithError est;
    est.value = evaluate(problem.initial, z);
    est.kind = EstimateKind::mc_confidence;
    est.paths = mc.paths;
    return est;
  }
  const bool constant = problem.phi.is_polynomial() && problem.phi.poly().degree() == 0;
  std::vector<cplx> weights;
  if (!constant) {
    weights.resize(static_cast<std::size_t>(m));
    for (std::int64_t tau = 0; tau < m; ++tau) {
      weights[tau] = problem.phi(static_cast<double>(tau) / static_cast<double>(n));
    }
  }
  const cplx phi0 = problem.phi(0.0);
  const cplx scale = spec.increment_scale() * spec.root();
  const int order = spec.order();
  auto samples = parallel_map(mc.paths, mc.workers, [&](std::int64_t i) {
    Engine engine = stream_engine(mc.seed, static_cast<std::uint64_t>(i));
    StepSampler draw(order);
    cplx x{};
    if (constant) {
      std::vector<std::int64_t> counts(order, 0);
      for (std::int64_t s = 0; s < m; ++s) ++counts[draw(engine)];
      for (int j = 0; j < order; ++j) x += static_cast<double>(counts[j]) * spec.unit_root(j);
      x *= phi0;
    } else {
      for (std::int64_t s = 0; s < m; ++s) x += weights[s] * spec.unit_root(draw(engine));
    }
    return evaluate(problem.initial, z + scale * x);
  });
  return mc_summary(samples);
}

double residual(const CauchyProblem& problem, double t, cplx z) {
  const double h = 1e-4 * (1.0 + t);
  auto u = [&](double tt) { return solve_series(problem, tt, z).value; };
  // Five-point central stencil. The three-point one at this step leaves about
  // h^2/6 * u''' ~ 7e-6 for z^8 with phi = s, which swamps the check.
  cplx dt;
  if (t >= 2.0 * h) {
    dt = (8.0 * (u(t + h) - u(t - h)) - (u(t + 2.0 * h) - u(t - 2.0 * h))) / (12.0 * h);
  } else {
    dt = (-3.0 * u(t) + 4.0 * u(t + h) - u(t + 2.0 * h)) / (2.0 * h);
  }

  CauchyProblem differentiated = problem;
  differentiated.initial = derivative_series(problem.initial, problem.order);
  const cplx dn = solve_series(differentiated, t, z).value;
  const cplx coeff = problem.alpha / factorial(problem.order) * ipow(problem.phi(t), problem.order);
  return std::abs(dt - coeff * dn);
}

}  // namespace rootwalk

#include "rootwalk/feynman_kac.hpp"

#include <cmath>

namespace rootwalk {

namespace {

// u -> A(t - u), kept polynomial when A is.
TimeFunction reversed(const TimeFunction& A, double t) {
  if (A.is_polynomial()) return TimeFunction::polynomial(A.poly().compose_affine(t, -1.0).coefficients());
  return TimeFunction::general([A, t](double u) { return A(t - u); }, A.label() + " reversed");
}

// int_0^t (shift + int_s^t a(u) du)^N ds.
cplx power_functional(const TimeFunction& a, double t, cplx shift, int order) {
  if (a.is_polynomial()) {
    const Polynomial P = a.poly().antiderivative();
    const Polynomial q = Polynomial::constant(shift + P(t)) - P;
    return q.pow(order).integral(0.0, t);
  }
  return simpson([&](double s) { return ipow(shift + a.integral(s, t), order); }, 0.0, t);
}

struct FunctionalSample {
  cplx value;
  double exponent_re;
};

EstimateWithError summarize(const std::vector<FunctionalSample>& samples) {
  std::vector<cplx> values(samples.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    values[i] = samples[i].value;
    mean += samples[i].exponent_re;
  }
  EstimateWithError est = mc_summary(values);
  if (samples.size() > 1) {
    mean /= static_cast<double>(samples.size());
    double ss = 0.0;
    for (const auto& s : samples) ss += (s.exponent_re - mean) * (s.exponent_re - mean);
    const double var = ss / static_cast<double>(samples.size() - 1);
    if (var > 25.0) {
      est.warnings.push_back("variance of the exponent is " + std::to_string(var) +
                             " (> 25); Monte Carlo mean is heavy-tailed");
    }
  }
  return est;
}

}  // namespace

std::vector<cplx> tail_integrals(const WalkSpec& spec, double t, const TimeFunction& a) {
  const std::int64_t m = spec.steps_until(t);
  const double n = static_cast<double>(spec.scale());
  std::vector<cplx> out(static_cast<std::size_t>(m) + 1, cplx{});
  if (m == 0) return out;
  if (a.is_polynomial()) {
    const Polynomial P = a.poly().antiderivative();
    const cplx top = P(t);
    for (std::int64_t k = 1; k <= m; ++k) out[k] = top - P(static_cast<double>(k) / n);
    return out;
  }
  out[m] = simpson([&](double u) { return a(u); }, static_cast<double>(m) / n, t, 4);
  for (std::int64_t k = m - 1; k >= 1; --k) {
    out[k] = out[k + 1] + simpson([&](double u) { return a(u); }, k / n, (k + 1) / n, 4);
  }
  return out;
}

cplx exp_functional_limit(const WalkSpec& spec, double t, const TimeFunction& a) {
  const int order = spec.order();
  return std::exp(spec.alpha() / factorial(order) * power_functional(a, t, 0.0, order));
}

EstimateWithError exp_functional_mc(const WalkSpec& spec, double t, const TimeFunction& a, const McOptions& mc) {
  if (mc.paths < 2) throw std::invalid_argument("Monte Carlo needs at least 2 paths");
  const std::int64_t m = spec.steps_until(t);
  const auto tails = tail_integrals(spec, t, a);
  const cplx scale = spec.increment_scale() * spec.root();
  const int order = spec.order();
  auto samples = parallel_map(mc.paths, mc.workers, [&](std::int64_t i) {
    Engine engine = stream_engine(mc.seed, static_cast<std::uint64_t>(i));
    StepSampler draw(order);
    cplx acc{};
    for (std::int64_t k = 1; k <= m; ++k) acc += tails[k] * spec.unit_root(draw(engine));
    const cplx exponent = scale * acc;
    return FunctionalSample{std::exp(exponent), exponent.real()};
  });
  return summarize(samples);
}

cplx fk_solution_closed(const WalkSpec& spec, double t, double x, const TimeFunction& A, const AtomicMeasure& mu) {
  const int order = spec.order();
  const TimeFunction a = reversed(A, t);
  const cplx bt = A.integral(0.0, t);
  const cplx c = spec.alpha() / factorial(order);
  cplx acc{};
  for (const auto& atom : mu.atoms) {
    const cplx iy{0.0, atom.y};
    acc += atom.w * std::exp(iy * x + c * power_functional(a, t, iy, order));
  }
  return std::exp(x * bt) * acc;
}

EstimateWithError fk_solution_mc(const WalkSpec& spec, double t, double x, const TimeFunction& A,
                                 const PowerSeries& f, const McOptions& mc) {
  if (mc.paths < 2) throw std::invalid_argument("Monte Carlo needs at least 2 paths");
  const std::int64_t m = spec.steps_until(t);
  const auto tails = tail_integrals(spec, t, reversed(A, t));
  const cplx drift = x * A.integral(0.0, t);
  const cplx scale = spec.increment_scale() * spec.root();
  const int order = spec.order();
  auto samples = parallel_map(mc.paths, mc.workers, [&](std::int64_t i) {
    Engine engine = stream_engine(mc.seed, static_cast<std::uint64_t>(i));
    StepSampler draw(order);
    cplx acc{};
    cplx end{};
    for (std::int64_t k = 1; k <= m; ++k) {
      const cplx zeta = spec.unit_root(draw(engine));
      acc += tails[k] * zeta;
      end += zeta;
    }
    const cplx exponent = drift + scale * acc;
    return FunctionalSample{evaluate(f, x + scale * end) * std::exp(exponent), exponent.real()};
  });
  return summarize(samples);
}

double fk_residual(const WalkSpec& spec, double t, double x, const TimeFunction& A, const AtomicMeasure& mu) {
  if (mu.atoms.empty()) return 0.0;
  const int order = spec.order();
  const double h = 1e-4 * (1.0 + t);
  const cplx dt = (fk_solution_closed(spec, t + h, x, A, mu) - fk_solution_closed(spec, t - h, x, A, mu)) / (2.0 * h);

  // u = sum_j w_j exp(x (B(t) + i y_j) + c F_j(t)), so d_x^N brings down (B + i y_j)^N.
  const TimeFunction a = reversed(A, t);
  const cplx bt = A.integral(0.0, t);
  const cplx c = spec.alpha() / factorial(order);
  cplx u{};
  cplx dn{};
  for (const auto& atom : mu.atoms) {
    const cplx iy{0.0, atom.y};
    const cplx term = atom.w * std::exp(x * (bt + iy) + c * power_functional(a, t, iy, order));
    u += term;
    dn += ipow(bt + iy, order) * term;
  }
  return std::abs(dt - c * dn - A(t) * x * u);
}

EstimateWithError fk_prelimit_experimental(const WalkSpec& spec, double t, double x, const Potential& V,
                                           const PowerSeries& f, const McOptions& mc) {
  if (mc.paths < 2) throw std::invalid_argument("Monte Carlo needs at least 2 paths");
  const std::int64_t m = spec.steps_until(t);
  const double n = static_cast<double>(spec.scale());
  const cplx scale = spec.increment_scale() * spec.root();
  const int order = spec.order();
  auto samples = parallel_map(mc.paths, mc.workers, [&](std::int64_t i) {
    Engine engine = stream_engine(mc.seed, static_cast<std::uint64_t>(i));
    StepSampler draw(order);
    cplx lattice{};
    cplx exponent{};
    for (std::int64_t j = 0; j <= m; ++j) {
      const double lo = static_cast<double>(j) / n;
      const double hi = j < m ? static_cast<double>(j + 1) / n : t;
      const cplx w = x + scale * lattice;
      if (hi > lo) exponent += simpson([&](double s) { return V(t - s, w); }, lo, hi, 8);
      if (j < m) lattice += spec.unit_root(draw(engine));
    }
    return FunctionalSample{evaluate(f, x + scale * lattice) * std::exp(exponent), exponent.real()};
  });
  return summarize(samples);
}

}  // namespace rootwalk

#include "rootwalk/expectation.hpp"

#include <cmath>
#include <limits>

namespace rootwalk {

const char* to_string(EstimateKind kind) noexcept {
  switch (kind) {
    case EstimateKind::exact: return "exact";
    case EstimateKind::mc_confidence: return "mc_confidence";
    case EstimateKind::series_tail: return "series_tail";
    case EstimateKind::paper_remainder: return "paper_remainder";
  }
  return "unknown";
}

EstimateWithError mc_summary(std::span<const cplx> samples) {
  EstimateWithError est;
  est.kind = EstimateKind::mc_confidence;
  est.paths = static_cast<std::int64_t>(samples.size());
  if (samples.empty()) return est;
  cplx sum{};
  for (const auto& v : samples) sum += v;
  const double count = static_cast<double>(samples.size());
  est.value = sum / count;
  if (samples.size() < 2) return est;
  double ss_re = 0.0, ss_im = 0.0;
  for (const auto& v : samples) {
    const cplx d = v - est.value;
    ss_re += d.real() * d.real();
    ss_im += d.imag() * d.imag();
  }
  est.se_re = std::sqrt(ss_re / (count - 1.0) / count);
  est.se_im = std::sqrt(ss_im / (count - 1.0) / count);
  est.error = std::hypot(est.se_re, est.se_im);
  return est;
}

EstimateWithError expect_exact(const WalkSpec& spec, std::int64_t steps, const PowerSeries& f, cplx z,
                               std::uint64_t budget) {
  cplx acc{};
  double magnitude = 0.0;
  double tail = 0.0;
  for_each_atom(
      spec, steps,
      [&](std::span<const int>, cplx point, double weight) {
        const SeriesValue v = evaluate_with_bound(f, z + point);
        acc += weight * v.value;
        magnitude += weight * std::abs(v.value);
        tail = std::max(tail, v.tail_bound);
      },
      budget);
  EstimateWithError est;
  est.value = acc;
  est.kind = EstimateKind::exact;
  est.error = tail + 1e-15 * magnitude;
  return est;
}

EstimateWithError expect_mc(const WalkSpec& spec, double t, const PowerSeries& f, cplx z, const McOptions& mc) {
  if (mc.paths < 2) throw std::invalid_argument("Monte Carlo needs at least 2 paths");
  const std::int64_t m = spec.steps_until(t);
  if (m == 0) {
    EstimateWithError est;
    est.value = evaluate(f, z);
    est.kind = EstimateKind::mc_confidence;
    est.paths = mc.paths;
    return est;
  }
  const int order = spec.order();
  const cplx scale = spec.increment_scale() * spec.root();
  auto samples = parallel_map(mc.paths, mc.workers, [&](std::int64_t i) {
    Engine engine = stream_engine(mc.seed, static_cast<std::uint64_t>(i));
    StepSampler draw(order);
    std::vector<std::int64_t> counts(order, 0);
    for (std::int64_t s = 0; s < m; ++s) ++counts[draw(engine)];
    cplx lattice{};
    for (int j = 0; j < order; ++j) lattice += static_cast<double>(counts[j]) * spec.unit_root(j);
    return evaluate(f, z + scale * lattice);
  });
  return mc_summary(samples);
}

EstimateWithError propagate_series(const PowerSeries& f, int order, cplx s, cplx z, int shift) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  EstimateWithError est;
  est.kind = EstimateKind::series_tail;
  const int size = f.size();
  const bool finite = f.is_polynomial() || f.type() == 0.0;
  const auto d = derivatives_with_tails(f, z, size);
  const double rate = f.growth_rate();
  const double envelope = std::exp(rate * std::abs(z - f.center()));
  const double rate_n = ipow(rate, order);

  cplx sum{};
  double truncation = 0.0;  // from the stored terms of each derivative
  cplx weight = std::exp(-log_factorial(shift));  // s^h / (h + shift)!
  constexpr int kMaxTerms = 400;
  for (int h = 0;; ++h) {
    const long long k = static_cast<long long>(h) * order;
    if (k >= size) {
      if (finite) break;
      throw TruncationError("limit series needs derivatives of order " + std::to_string(k) +
                                " but only " + std::to_string(size) + " terms are stored",
                            static_cast<int>(k) + order);
    }
    require_derivative_tail(f, z, static_cast<int>(k), d.tails[k], d.values[k]);
    sum += d.values[k] * weight;
    truncation += d.tails[k] * std::abs(weight);
    est.terms = h + 1;
    if (s == cplx{}) break;
    weight *= s / static_cast<double>(h + 1 + shift);
    if (finite) continue;
    const double ratio = rate_n * std::abs(s) / (h + 2 + shift);
    const double next = ipow(rate, k + order) * envelope * std::abs(weight);
    if (ratio < 1.0) {
      const double tail = next / (1.0 - ratio);
      if (tail <= 1e-12 * std::abs(sum) || tail < 1e-300) {
        est.error = tail + truncation;
        break;
      }
    }
    if (h + 1 >= kMaxTerms) {
      throw TruncationError("limit series did not converge within 400 terms", size);
    }
  }
  est.value = sum;
  if (finite) est.error = truncation;
  return est;
}

EstimateWithError limit_series(const WalkSpec& spec, double t, const PowerSeries& f, cplx z) {
  const int order = spec.order();
  EstimateWithError est = propagate_series(f, order, spec.alpha() * t / factorial(order), z);
  if (!check_growth_condition(f, order).satisfied) {
    est.warnings.push_back("coefficient growth condition not certified; limit may not exist");
  }
  return est;
}

cplx limit_time_integral(const WalkSpec& spec, double t, const PowerSeries& f, cplx z) {
  if (t == 0.0) return {};
  const int order = spec.order();
  return t * propagate_series(f, order, spec.alpha() * t / factorial(order), z, 1).value;
}

cplx fourier_initialdata_limit(const WalkSpec& spec, double t, const AtomicMeasure& mu, double x) {
  const int order = spec.order();
  const cplx c = i_pow(order) * spec.alpha() * t / factorial(order);
  cplx acc{};
  for (const auto& a : mu.atoms) {
    acc += a.w * std::exp(cplx{0.0, a.y * x} + c * ipow(a.y, order));
  }
  return acc;
}

}  // namespace rootwalk

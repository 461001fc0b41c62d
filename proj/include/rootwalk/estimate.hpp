#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rootwalk/common.hpp"

namespace rootwalk {

enum class EstimateKind { exact, mc_confidence, series_tail, paper_remainder };

const char* to_string(EstimateKind kind) noexcept;

/// A complex estimate with an error scale and its provenance.
///
/// For Monte Carlo estimates `error` is the standard error of the complex
/// mean, hypot(se_re, se_im); acceptance bands are multiples of it. For
/// series it is the tail bound, for exact enumeration the rounding scale.
struct EstimateWithError {
  cplx value;
  double error = 0.0;
  EstimateKind kind = EstimateKind::exact;
  std::int64_t paths = 0;
  double se_re = 0.0;
  double se_im = 0.0;
  int terms = 0;
  std::vector<std::string> warnings;
};

/// Sample mean and componentwise standard errors, summed in index order.
EstimateWithError mc_summary(std::span<const cplx> samples);

}  // namespace rootwalk

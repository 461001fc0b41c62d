#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "rootwalk/analytic.hpp"
#include "rootwalk/estimate.hpp"
#include "rootwalk/time_function.hpp"

namespace rootwalk::io {

using Json = nlohmann::ordered_json;

/// Raised for malformed or out-of-range configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// %.17g in the C locale; non-finite values become "null".
std::string format_double(double v);

/// JSON text with every floating value written to 17 significant digits.
/// indent < 0 gives a single line.
std::string dump(const Json& value, int indent = 2);

Json to_json(cplx z);
cplx complex_from_json(const Json& j);

/// Test functions:
///   {"exp": c}, {"cos": c}          e^{cz}, cos(cz), c real or [re, im]
///   {"monomial": d, "coeff": c}     c z^d
///   {"poly": [c0, c1, ...]}         exact polynomial
///   {"coeffs": [...], "polynomial": false}   truncated entire function
///   {"atoms": [[y, w], ...]}        Fourier transform of a measure
/// Optional "terms" (default 200) and "center".
PowerSeries series_from_json(const Json& j);
AtomicMeasure measure_from_json(const Json& j);
Json to_json(const AtomicMeasure& mu);

/// {"const": c} or {"poly": [c0, c1, ...]}; a bare number or array is
/// read as const or poly.
TimeFunction time_function_from_json(const Json& j);

Json to_json(const EstimateWithError& est);

/// FNV-1a 64 of the canonical dump, as 16 hex digits.
std::string config_hash(const Json& config);

}  // namespace rootwalk::io

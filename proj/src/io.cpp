#include "rootwalk/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rootwalk::io {

namespace {

void write(const Json& v, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        write(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays such as [re, im] stay on one line.
      const bool flat = v.size() <= 2 && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_number(); });
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += flat && pretty ? ", " : ",";
        if (!flat) newline(depth + 1);
        write(v[i], indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
  }
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ConfigError(std::string("expected a number for ") + what);
  return j.get<double>();
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump(const Json& value, int indent) {
  std::string out;
  write(value, indent, 0, out);
  return out;
}

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError("expected a complex number as a number or [re, im], got " + j.dump());
}

AtomicMeasure measure_from_json(const Json& j) {
  const Json& atoms = j.is_object() ? j.at("atoms") : j;
  if (!atoms.is_array()) throw ConfigError("measure atoms must be an array of [y, w]");
  AtomicMeasure mu;
  for (const auto& a : atoms) {
    if (!a.is_array() || a.size() != 2) throw ConfigError("measure atom must be [y, w]");
    const double y = number(a[0], "atom location");
    if (!std::isfinite(y)) throw ConfigError("atom location must be finite");
    mu.atoms.push_back({y, complex_from_json(a[1])});
  }
  return mu;
}

Json to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms) atoms.push_back(Json::array({a.y, to_json(a.w)}));
  return Json{{"atoms", atoms}};
}

PowerSeries series_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("series must be a JSON object");
  TruncationPolicy policy;
  if (j.contains("terms")) {
    policy.max_terms = j.at("terms").get<int>();
    if (policy.max_terms < 8) throw ConfigError("series needs at least 8 terms");
  }
  const cplx center = j.contains("center") ? complex_from_json(j.at("center")) : cplx{};
  auto coeffs = [](const Json& arr) {
    if (!arr.is_array()) throw ConfigError("coefficients must be an array");
    std::vector<cplx> a;
    for (const auto& c : arr) a.push_back(complex_from_json(c));
    return a;
  };
  try {
    if (j.contains("exp")) return PowerSeries::exponential(complex_from_json(j.at("exp")), policy);
    if (j.contains("cos")) return PowerSeries::cosine(complex_from_json(j.at("cos")), policy);
    if (j.contains("monomial")) {
      const int d = j.at("monomial").get<int>();
      if (d < 0) throw ConfigError("monomial degree must be >= 0");
      return PowerSeries::monomial(d, j.contains("coeff") ? complex_from_json(j.at("coeff")) : cplx{1.0, 0.0});
    }
    if (j.contains("poly")) return PowerSeries::polynomial(coeffs(j.at("poly")), center);
    if (j.contains("coeffs")) {
      const auto a = coeffs(j.at("coeffs"));
      if (j.value("polynomial", false)) return PowerSeries::polynomial(a, center);
      return PowerSeries::from_coefficients(a, policy, center);
    }
    if (j.contains("atoms")) return fourier_of_measure(measure_from_json(j), policy);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed series: ") + e.what());
  }
  throw ConfigError("unknown series description " + j.dump());
}

TimeFunction time_function_from_json(const Json& j) {
  if (j.is_number()) return TimeFunction::constant(j.get<double>());
  if (j.is_array()) {
    std::vector<cplx> c;
    for (const auto& v : j) c.push_back(complex_from_json(v));
    return TimeFunction::polynomial(std::move(c));
  }
  if (j.is_object()) {
    if (j.contains("const")) return TimeFunction::constant(complex_from_json(j.at("const")));
    if (j.contains("poly")) return time_function_from_json(j.at("poly"));
  }
  throw ConfigError("time function must be {\"const\": c} or {\"poly\": [...]}");
}

Json to_json(const EstimateWithError& est) {
  Json j{{"value", to_json(est.value)}, {"error", est.error}, {"kind", to_string(est.kind)}};
  if (est.kind == EstimateKind::mc_confidence) {
    j["paths"] = est.paths;
    j["se"] = Json::array({est.se_re, est.se_im});
    j["band_sigmas"] = 4;
  }
  if (est.terms > 0) j["terms"] = est.terms;
  if (!est.warnings.empty()) j["warnings"] = est.warnings;
  return j;
}

std::string config_hash(const Json& config) {
  // Sorted keys, so the hash does not depend on how the config was assembled.
  const Json canonical = Json::parse(nlohmann::json::parse(dump(config, -1)).dump());
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump(canonical, -1)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rootwalk::io

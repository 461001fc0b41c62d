// rootwalk: command-line front end.
//
// Every subcommand resolves its parameters (config file, then flags, then
// defaults) into one JSON object. That object is what gets hashed and stored
// in the manifest, so `--config run.manifest.json` replays a run exactly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acceptance/criteria.hpp"
#include "rootwalk/expectation.hpp"
#include "rootwalk/feynman_kac.hpp"
#include "rootwalk/io.hpp"
#include "rootwalk/ito.hpp"
#include "rootwalk/moments.hpp"
#include "rootwalk/parallel.hpp"
#include "rootwalk/pde.hpp"
#include "rootwalk/stopping.hpp"

#ifndef ROOTWALK_VERSION
#define ROOTWALK_VERSION "0.0.0"
#endif

namespace {

using namespace rootwalk;
using io::ConfigError;
using io::Json;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config_path;
  std::optional<int> order;
  std::optional<double> alpha_re, alpha_im;
  std::optional<std::int64_t> n;
  std::optional<double> t;
  std::optional<std::int64_t> paths;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out;
  std::optional<std::string> format;
  // subcommand specific
  std::optional<int> kmax;
  std::optional<int> k;
  std::optional<std::string> route;
  std::optional<std::string> g;
  std::optional<double> z_re, z_im;
  std::optional<double> x;
  std::optional<double> radius;
  std::vector<std::int64_t> schedule;
  std::string profile = "full";
  std::vector<int> only;
};

// --- config resolution -----------------------------------------------------

Json load_config(const std::string& path, const std::string& subcommand) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  // A manifest carries the resolved config under "config".
  if (j.is_object() && j.contains("manifest_version") && j.contains("config")) j = j.at("config");
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (j.contains("subcommand") && j.at("subcommand") != subcommand) {
    throw ConfigError("config is for subcommand " + j.at("subcommand").dump() + ", not " + subcommand);
  }
  return j;
}

template <class T>
T get(const Json& c, const char* key) {
  try {
    return c.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config field \"") + key + "\" is missing or has the wrong type");
  }
}

void set_default(Json& c, const char* key, Json value) {
  if (!c.contains(key)) c[key] = std::move(value);
}

Json resolve(const std::string& subcommand, const Flags& f) {
  Json c = load_config(f.config_path, subcommand);
  if (f.order) c["N"] = *f.order;
  if (f.alpha_re || f.alpha_im) {
    cplx a = c.contains("alpha") ? io::complex_from_json(c["alpha"]) : cplx{1.0, 0.0};
    if (f.alpha_re) a.real(*f.alpha_re);
    if (f.alpha_im) a.imag(*f.alpha_im);
    c["alpha"] = io::to_json(a);
  }
  if (f.n) c["n"] = *f.n;
  if (f.t) c["t"] = *f.t;
  if (f.paths) c["paths"] = *f.paths;
  if (f.seed) c["seed"] = *f.seed;
  if (f.workers) c["workers"] = *f.workers;
  if (f.format) c["format"] = *f.format;
  if (f.kmax) c["kmax"] = *f.kmax;
  if (f.k) c["k"] = *f.k;
  if (f.route) c["route"] = *f.route;
  if (f.g) {
    try {
      c["g"] = Json::parse(*f.g);
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("--g must be a JSON series description such as {\"exp\": 1}");
    }
  }
  if (f.z_re || f.z_im) {
    cplx z = c.contains("z") ? io::complex_from_json(c["z"]) : cplx{};
    if (f.z_re) z.real(*f.z_re);
    if (f.z_im) z.imag(*f.z_im);
    c["z"] = io::to_json(z);
  }
  if (f.x) c["x"] = *f.x;
  if (f.radius) c["R"] = *f.radius;
  if (!f.schedule.empty()) c["schedule"] = f.schedule;

  c["subcommand"] = subcommand;
  set_default(c, "N", 2);
  set_default(c, "alpha", io::to_json(cplx{1.0, 0.0}));
  if (subcommand != "verify") set_default(c, "seed", 1);
  set_default(c, "workers", 1);
  return c;
}

WalkSpec walk_from(const Json& c, const char* n_key = "n") {
  const int order = get<int>(c, "N");
  const cplx alpha = io::complex_from_json(c.at("alpha"));
  const auto n = get<std::int64_t>(c, n_key);
  if (order < 1) throw ConfigError("N must be >= 1");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) || alpha == cplx{}) {
    throw ConfigError("alpha must be finite and nonzero");
  }
  if (n < 1) throw ConfigError("n must be >= 1");
  return WalkSpec(order, alpha, n);
}

double time_from(const Json& c) {
  const double t = get<double>(c, "t");
  if (!std::isfinite(t) || t < 0.0) throw ConfigError("t must be finite and >= 0");
  return t;
}

McOptions mc_from(const Json& c) {
  McOptions mc;
  mc.paths = get<std::int64_t>(c, "paths");
  mc.seed = get<std::uint64_t>(c, "seed");
  mc.workers = get<int>(c, "workers");
  if (mc.paths < 2) throw ConfigError("paths must be >= 2");
  if (mc.workers < 1) throw ConfigError("workers must be >= 1");
  return mc;
}

std::string format_of(const Json& c, const char* fallback) {
  const std::string f = c.contains("format") ? get<std::string>(c, "format") : fallback;
  if (f != "csv" && f != "json") throw ConfigError("format must be csv or json");
  return f;
}

// Parameters echoed into outputs: everything except execution details, so the
// bytes do not change with the worker count.
Json params_of(const Json& c) {
  Json p = c;
  p.erase("workers");
  p.erase("format");
  p.erase("subcommand");
  return p;
}

// --- output helpers --------------------------------------------------------

void require_finite(cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NumericalError(std::string("non-finite result for ") + what);
  }
}

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string s;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) s += ',';
    first = false;
    s += c;
  }
  return s + '\n';
}

std::string num(double v) { return io::format_double(v); }
std::string num(std::int64_t v) { return std::to_string(v); }

Json estimate_json(const EstimateWithError& est, const char* what) {
  require_finite(est.value, what);
  return io::to_json(est);
}

struct Output {
  std::string body;
  std::string format;
  std::vector<std::pair<std::string, std::string>> extra_files;  // suffix, contents
  int status = 0;
};

// --- subcommands -----------------------------------------------------------

Output run_moments(Json& c) {
  set_default(c, "n", 100);
  set_default(c, "t", 1.0);
  const WalkSpec spec = walk_from(c);
  set_default(c, "kmax", 3 * spec.order());
  const double t = time_from(c);
  const int kmax = get<int>(c, "kmax");
  if (kmax < 0 || kmax > kMaxMomentOrder) {
    throw ConfigError("kmax must be in [0, " + std::to_string(kMaxMomentOrder) + "]");
  }
  const auto rows = moment_table(spec, t, kmax);
  Output out;
  out.format = format_of(c, "csv");
  if (out.format == "csv") {
    out.body = "k,exact_re,exact_im,leading_re,leading_im,bound,on_grid\n";
    for (const auto& r : rows) {
      out.body += csv_line({std::to_string(r.k), num(r.exact_value.real()), num(r.exact_value.imag()),
                            num(r.leading_term.real()), num(r.leading_term.imag()), num(r.remainder_bound),
                            r.on_grid ? "1" : "0"});
    }
  } else {
    Json list = Json::array();
    for (const auto& r : rows) {
      list.push_back({{"k", r.k},
                      {"exact", io::to_json(r.exact_value)},
                      {"leading", io::to_json(r.leading_term)},
                      {"bound", r.remainder_bound},
                      {"on_grid", r.on_grid}});
    }
    out.body = io::dump(Json{{"params", params_of(c)}, {"rows", list}}) + "\n";
  }
  return out;
}

Output run_expect(Json& c) {
  set_default(c, "n", 10);
  set_default(c, "t", 1.0);
  set_default(c, "route", "exact");
  set_default(c, "g", Json{{"exp", 1}});
  set_default(c, "z", io::to_json(cplx{}));
  const std::string route = get<std::string>(c, "route");
  if (route == "mc") set_default(c, "paths", 100000);
  const WalkSpec spec = walk_from(c);
  const double t = time_from(c);
  const PowerSeries g = io::series_from_json(c.at("g"));
  const cplx z = io::complex_from_json(c.at("z"));

  EstimateWithError est;
  if (route == "exact") {
    est = expect_exact(spec, spec.steps_until(t), g, z);
  } else if (route == "mc") {
    est = expect_mc(spec, t, g, z, mc_from(c));
  } else if (route == "limit") {
    est = limit_series(spec, t, g, z);
  } else {
    throw ConfigError("route must be exact, mc or limit");
  }
  require_finite(est.value, "expectation");

  Output out;
  out.format = format_of(c, "json");
  if (out.format == "csv") {
    out.body = "route,value_re,value_im,error\n" +
               csv_line({route, num(est.value.real()), num(est.value.imag()), num(est.error)});
  } else {
    Json j{{"route", route}, {"value", io::to_json(est.value)}, {"error", est.error},
           {"kind", to_string(est.kind)}};
    if (est.kind == EstimateKind::mc_confidence) j["se"] = Json::array({est.se_re, est.se_im});
    if (!est.warnings.empty()) j["warnings"] = est.warnings;
    j["params"] = params_of(c);
    out.body = io::dump(j) + "\n";
  }
  return out;
}

Output run_ito(Json& c) {
  set_default(c, "n", 100);
  set_default(c, "t", 1.0);
  set_default(c, "paths", 4);
  set_default(c, "g", Json{{"exp", 1}});
  set_default(c, "z", io::to_json(cplx{}));
  const WalkSpec spec = walk_from(c);
  set_default(c, "k", spec.order());
  set_default(c, "point", "left");
  const double t = time_from(c);
  const PowerSeries g = io::series_from_json(c.at("g"));
  const cplx z = io::complex_from_json(c.at("z"));
  const int k = get<int>(c, "k");
  if (k < 1) throw ConfigError("k must be >= 1");
  const std::string point_name = get<std::string>(c, "point");
  if (point_name != "left" && point_name != "midpoint") throw ConfigError("point must be left or midpoint");
  const auto point = point_name == "left" ? IntegrandPoint::left : IntegrandPoint::midpoint;
  const auto paths = get<std::int64_t>(c, "paths");
  if (paths < 1) throw ConfigError("paths must be >= 1");
  const auto seed = get<std::uint64_t>(c, "seed");
  const int workers = get<int>(c, "workers");
  if (workers < 1) throw ConfigError("workers must be >= 1");

  struct PathResult {
    std::string rows;
    cplx h_end;
    double formula_gap;
  };
  const double scale_k = ipow(spec.increment_scale(), k);
  auto results = parallel_map(paths, workers, [&](std::int64_t p) {
    Engine engine = stream_engine(seed, static_cast<std::uint64_t>(p));
    const PathSample path = sample_path(spec, t, engine);
    const auto idx = path.step_indices();
    PathResult r{{}, {}, 0.0};
    cplx h{};
    const double n = static_cast<double>(spec.scale());
    for (std::int64_t tau = 0; tau <= path.steps(); ++tau) {
      const cplx w = path.at_step(tau);
      r.rows += csv_line({num(p), num(static_cast<double>(tau) / n), num(w.real()), num(w.imag()),
                          num(h.real()), num(h.imag())});
      if (tau == path.steps()) break;
      const cplx at = point == IntegrandPoint::left ? w : 0.5 * (w + path.at_step(tau + 1));
      h += evaluate(g, z + at) * scale_k * spec.step_power(idx[tau], k);
    }
    require_finite(h, "Ito integral");
    r.h_end = h;
    const auto check = ito_formula_check(path, g, z, point);
    r.formula_gap = std::abs(check.lhs - check.rhs) / (1.0 + std::abs(check.lhs));
    return r;
  });

  std::vector<cplx> ends;
  double worst_gap = 0.0;
  std::int64_t worst_path = 0;
  for (std::int64_t p = 0; p < paths; ++p) {
    ends.push_back(results[p].h_end);
    if (results[p].formula_gap > worst_gap) {
      worst_gap = results[p].formula_gap;
      worst_path = p;
    }
  }
  Json summary{{"paths", paths}};
  if (paths >= 2) {
    summary["mean_integral"] = estimate_json(mc_summary(ends), "mean Ito integral");
  } else {
    summary["integral"] = io::to_json(ends.front());
  }
  try {
    const cplx exact = expected_ito_integral_exact(spec, spec.steps_until(t), g, z, k);
    summary["expected_exact"] = io::to_json(exact);
  } catch (const BudgetExceeded& e) {
    summary["expected_exact"] = nullptr;
    summary["expected_exact_note"] = e.what();
  }
  summary["ito_formula"] = {{"max_relative_gap", worst_gap}, {"worst_path", worst_path}};
  summary["params"] = params_of(c);

  Output out;
  out.format = format_of(c, "csv");
  if (out.format == "csv") {
    out.body = "path,tau,W_re,W_im,H_re,H_im\n";
    for (const auto& r : results) out.body += r.rows;
    out.extra_files.push_back({".summary.json", io::dump(summary) + "\n"});
  } else {
    out.body = io::dump(summary) + "\n";
  }
  return out;
}

Output run_solve(Json& c) {
  set_default(c, "t", 1.0);
  set_default(c, "phi", Json{{"const", 1}});
  set_default(c, "init", Json{{"exp", 1}});
  set_default(c, "z", io::to_json(cplx{}));
  CauchyProblem problem;
  problem.order = get<int>(c, "N");
  problem.alpha = io::complex_from_json(c.at("alpha"));
  problem.phi = io::time_function_from_json(c.at("phi"));
  problem.initial = io::series_from_json(c.at("init"));
  if (c.contains("horizon")) problem.horizon = get<double>(c, "horizon");
  const double t = time_from(c);
  const cplx z = io::complex_from_json(c.at("z"));
  if (problem.alpha == cplx{}) throw ConfigError("alpha must be nonzero");
  problem.validate();
  if (t > problem.horizon) throw ConfigError("t exceeds the problem horizon");

  Json j;
  j["series"] = estimate_json(solve_series(problem, t, z), "series solution");
  j["effective_time"] = io::to_json(effective_time(problem, t));
  j["residual"] = residual(problem, t, z);
  if (c.contains("n")) {
    set_default(c, "paths", 100000);
    const auto n = get<std::int64_t>(c, "n");
    if (n < 1) throw ConfigError("n must be >= 1");
    j["probabilistic"] = estimate_json(solve_probabilistic(problem, t, z, n, mc_from(c)), "probabilistic solution");
  }
  j["params"] = params_of(c);
  Output out;
  out.format = format_of(c, "json");
  if (out.format == "csv") {
    const cplx s = io::complex_from_json(j["series"]["value"]);
    out.body = "route,value_re,value_im,error\n" + csv_line({"series", num(s.real()), num(s.imag()),
                                                              num(j["series"]["error"].get<double>())});
    if (j.contains("probabilistic")) {
      const cplx p = io::complex_from_json(j["probabilistic"]["value"]);
      out.body += csv_line({"probabilistic", num(p.real()), num(p.imag()),
                            num(j["probabilistic"]["error"].get<double>())});
    }
  } else {
    out.body = io::dump(j) + "\n";
  }
  return out;
}

Output run_fk(Json& c) {
  set_default(c, "n", 1000);
  set_default(c, "t", 0.5);
  set_default(c, "x", 0.2);
  set_default(c, "paths", 10000);
  set_default(c, "A", Json::array({1.0}));
  set_default(c, "mu", Json::array({Json::array({1.0, 1.0})}));
  const WalkSpec spec = walk_from(c);
  const double t = time_from(c);
  const double x = get<double>(c, "x");
  if (!std::isfinite(x)) throw ConfigError("x must be finite");
  const TimeFunction A = io::time_function_from_json(c.at("A"));
  const AtomicMeasure mu = io::measure_from_json(c.at("mu"));
  if (mu.atoms.empty()) throw ConfigError("mu needs at least one atom");
  const McOptions mc = mc_from(c);

  Json j;
  const cplx closed = fk_solution_closed(spec, t, x, A, mu);
  require_finite(closed, "closed form");
  j["closed"] = io::to_json(closed);
  j["mc"] = estimate_json(fk_solution_mc(spec, t, x, A, fourier_of_measure(mu), mc), "Feynman-Kac estimate");
  j["residual"] = fk_residual(spec, t, x, A, mu);
  j["exp_functional"] = {{"limit", io::to_json(exp_functional_limit(spec, t, A))},
                         {"mc", estimate_json(exp_functional_mc(spec, t, A, mc), "exponential functional")}};
  j["params"] = params_of(c);
  Output out;
  out.format = format_of(c, "json");
  if (out.format == "csv") {
    const cplx m = io::complex_from_json(j["mc"]["value"]);
    out.body = "route,value_re,value_im,error\n" + csv_line({"closed", num(closed.real()), num(closed.imag()), "0"}) +
               csv_line({"mc", num(m.real()), num(m.imag()), num(j["mc"]["error"].get<double>())});
  } else {
    out.body = io::dump(j) + "\n";
  }
  return out;
}

Output run_derive(Json& c) {
  set_default(c, "n", 1000);
  set_default(c, "R", 0.5);
  set_default(c, "paths", 100000);
  set_default(c, "g", Json{{"exp", 1}});
  set_default(c, "z", io::to_json(cplx{}));
  const auto n = get<std::int64_t>(c, "n");
  set_default(c, "schedule", Json::array({n, 10 * n}));
  const WalkSpec spec = walk_from(c);
  const double R = get<double>(c, "R");
  if (!(R > 0.0) || !std::isfinite(R)) throw ConfigError("R must be positive");
  const auto schedule = get<std::vector<std::int64_t>>(c, "schedule");
  if (schedule.empty()) throw ConfigError("schedule needs at least one n");
  for (auto v : schedule)
    if (v < 1) throw ConfigError("schedule entries must be >= 1");
  const PowerSeries g = io::series_from_json(c.at("g"));
  const cplx z = io::complex_from_json(c.at("z"));

  const DerivativeEstimate d = derivative_estimator(spec, R, g, z, schedule, mc_from(c));
  Json per = Json::array();
  for (const auto& s : d.per_n) {
    require_finite(s.estimate.value, "derivative estimate");
    per.push_back({{"n", s.n},
                   {"est", io::to_json(s.estimate.value)},
                   {"se", std::hypot(s.estimate.se_re, s.estimate.se_im)},
                   {"trimmed", io::to_json(s.trimmed)},
                   {"ratio_of_means", io::to_json(s.ratio_of_means)},
                   {"truncated_fraction", s.truncated_fraction}});
  }
  require_finite(d.extrapolated, "extrapolated derivative");
  Json j{{"per_n", per}, {"extrapolated", io::to_json(d.extrapolated)}, {"rate_exponent", d.rate_exponent},
         {"params", params_of(c)}};
  Output out;
  out.format = format_of(c, "json");
  if (out.format == "csv") {
    out.body = "n,est_re,est_im,se\n";
    for (const auto& s : d.per_n) {
      out.body += csv_line({num(s.n), num(s.estimate.value.real()), num(s.estimate.value.imag()),
                            num(std::hypot(s.estimate.se_re, s.estimate.se_im))});
    }
  } else {
    out.body = io::dump(j) + "\n";
  }
  return out;
}

Output run_verify(Json& c, const Flags& f) {
  set_default(c, "profile", f.profile);
  set_default(c, "seed", acceptance::SuiteOptions{}.seed);
  if (!f.only.empty()) c["only"] = f.only;
  acceptance::SuiteOptions options;
  options.profile = get<std::string>(c, "profile");
  if (options.profile != "full" && options.profile != "quick") throw ConfigError("profile must be full or quick");
  options.seed = get<std::uint64_t>(c, "seed");
  options.workers = get<int>(c, "workers");
  if (options.workers < 1) throw ConfigError("workers must be >= 1");
  if (c.contains("only")) options.only = get<std::vector<int>>(c, "only");
  for (int id : options.only)
    if (id < 1 || id > acceptance::kCriteria) throw ConfigError("criterion ids are 1.." + std::to_string(acceptance::kCriteria));

  const auto results = acceptance::run_suite(options);
  int passed = 0;
  for (const auto& r : results) {
    std::cerr << acceptance::format_line(r) << '\n';
    passed += r.pass;
  }
  std::cerr << passed << " of " << results.size() << " criteria passed\n";
  Json rep = acceptance::report(results, options);
  rep.erase("workers");
  Output out;
  out.format = "json";
  out.body = io::dump(rep) + "\n";
  out.status = passed == static_cast<int>(results.size()) ? 0 : kExitFailure;
  return out;
}

// --- driver ----------------------------------------------------------------

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path);
  os << contents;
  if (!os) throw ConfigError("failed writing " + path);
}

int execute(const std::string& subcommand, const Flags& flags) {
  const auto started = std::chrono::steady_clock::now();
  Json config = resolve(subcommand, flags);
  Output out;
  if (subcommand == "moments") out = run_moments(config);
  else if (subcommand == "expect") out = run_expect(config);
  else if (subcommand == "ito") out = run_ito(config);
  else if (subcommand == "solve") out = run_solve(config);
  else if (subcommand == "fk") out = run_fk(config);
  else if (subcommand == "derive") out = run_derive(config);
  else out = run_verify(config, flags);

  if (flags.out.empty()) {
    std::cout << out.body;
    for (const auto& [suffix, text] : out.extra_files) std::cout << text;
    return out.status;
  }
  write_file(flags.out, out.body);
  Json files = Json::array({flags.out});
  for (const auto& [suffix, text] : out.extra_files) {
    write_file(flags.out + suffix, text);
    files.push_back(flags.out + suffix);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  Json hashed = config;
  hashed.erase("workers");
  Json manifest{{"manifest_version", 1},
                {"tool", "rootwalk"},
                {"versions",
                 {{"rootwalk", ROOTWALK_VERSION},
                  {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                        std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                        std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                  {"cli11", CLI11_VERSION}}},
                {"subcommand", subcommand},
                {"config_hash", io::config_hash(hashed)},
                {"config", config},
                {"format", out.format},
                {"outputs", files},
                {"atom_budget", default_atom_budget()},
                {"workers", config.value("workers", 1)},
                {"wall_seconds", wall},
                {"exit_status", out.status}};
  write_file(flags.out + ".manifest.json", io::dump(manifest) + "\n");
  return out.status;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config (or a manifest from an earlier run)");
  cmd->add_option("--N", f.order, "root order N");
  cmd->add_option("--alpha-re,--alpha", f.alpha_re, "real part of alpha");
  cmd->add_option("--alpha-im", f.alpha_im, "imaginary part of alpha");
  cmd->add_option("--n", f.n, "scaling parameter n");
  cmd->add_option("--t", f.t, "time");
  cmd->add_option("--paths", f.paths, "Monte Carlo paths");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--workers", f.workers, "worker threads (does not change results)");
  cmd->add_option("--out", f.out, "output file; a manifest is written next to it");
  cmd->add_option("--format", f.format, "csv or json");
}

void add_point(CLI::App* cmd, Flags& f) {
  cmd->add_option("--g", f.g, "test function as JSON, e.g. '{\"exp\": 1}' or '{\"poly\": [0, 0, 1]}'");
  cmd->add_option("--z-re", f.z_re, "real part of the base point z");
  cmd->add_option("--z-im", f.z_im, "imaginary part of the base point z");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random walks on scaled roots of unity and their higher-order heat equations"};
  app.set_version_flag("--version", ROOTWALK_VERSION);
  app.require_subcommand(1);
  Flags f;

  auto* moments = app.add_subcommand("moments", "exact moments of W^n(t) against the leading term");
  add_common(moments, f);
  moments->add_option("--kmax", f.kmax, "largest moment order (default 3N)");

  auto* expect = app.add_subcommand("expect", "E[g(z + W^n(t))] by exact enumeration, Monte Carlo or the limit series");
  add_common(expect, f);
  add_point(expect, f);
  expect->add_option("--route", f.route, "exact, mc or limit");

  auto* ito = app.add_subcommand("ito", "sample paths with their running Ito integrals");
  add_common(ito, f);
  add_point(ito, f);
  ito->add_option("--k", f.k, "power of the increments (default N)");

  auto* solve = app.add_subcommand("solve", "Cauchy problem du/dt = (alpha/N!) phi(t)^N d^N u");
  add_common(solve, f);
  solve->add_option("--z-re", f.z_re, "real part of z");
  solve->add_option("--z-im", f.z_im, "imaginary part of z");

  auto* fk = app.add_subcommand("fk", "Feynman-Kac solution with potential A(t) x");
  add_common(fk, f);
  fk->add_option("--x", f.x, "spatial point");

  auto* derive = app.add_subcommand("derive", "N-th derivative from exit-time averages");
  add_common(derive, f);
  add_point(derive, f);
  derive->add_option("--R", f.radius, "exit radius");
  derive->add_option("--schedule", f.schedule, "n values for extrapolation");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  add_common(verify, f);
  verify->add_option("--profile", f.profile, "full or quick")->check(CLI::IsMember({"full", "quick"}));
  verify->add_option("--only", f.only, "criterion ids to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return execute(name, f);
  } catch (const ConfigError& e) {
    std::cerr << "rootwalk: invalid config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "rootwalk: invalid config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    std::cerr << "rootwalk: budget exceeded: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const TruncationError& e) {
    std::cerr << "rootwalk: series truncation: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NumericalError& e) {
    std::cerr << "rootwalk: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "rootwalk: " << e.what() << '\n';
    return kExitFailure;
  }
}

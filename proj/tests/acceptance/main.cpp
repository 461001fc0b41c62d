// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <algorithm>
#include <fstream>
#include <string>

#include "criteria.hpp"

int main(int argc, char** argv) {
  acceptance::SuiteOptions options;
  std::string out;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "missing value for %s\n", arg.c_str());
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--quick") options.profile = "quick";
    else if (arg == "--seed") options.seed = std::stoull(next());
    else if (arg == "--workers") options.workers = std::stoi(next());
    else if (arg == "--only") options.only.push_back(std::stoi(next()));
    else if (arg == "--out") out = next();
    else {
      std::fprintf(stderr, "usage: acceptance [--quick] [--seed S] [--workers W] [--only ID]... [--out report.json]\n");
      return 2;
    }
  }
  int failures = 0;
  std::vector<acceptance::CriterionResult> results;
  for (int id = 1; id <= acceptance::kCriteria; ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) continue;
    results.push_back(acceptance::run_criterion(id, options));
    std::printf("%s\n", acceptance::format_line(results.back()).c_str());
    std::fflush(stdout);
    failures += !results.back().pass;
  }
  if (!out.empty()) std::ofstream(out) << rootwalk::io::dump(acceptance::report(results, options)) << '\n';
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failures, results.size());
  return failures == 0 ? 0 : 1;
}

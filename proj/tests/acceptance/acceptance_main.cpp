// Runs every acceptance criterion at its pinned tolerance and prints one
// pass/fail line per criterion. Exit status is nonzero if any criterion fails.

#include <cstring>
#include <iostream>
#include <string>

#include "bicolor/acceptance.hpp"

int main(int argc, char** argv) {
  bicolor::AcceptanceOptions opt;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--scale" && i + 1 < argc) {
      opt.scale = bicolor::parse_scale(argv[++i]);
    } else if (arg == "--only" && i + 1 < argc) {
      only = std::stoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--scale smoke|desk|extended] [--only N]\n";
      return 2;
    }
  }

  std::vector<bicolor::CriterionResult> results;
  auto report = [&](const bicolor::CriterionResult& r) {
    bicolor::print_checks(std::cout, r);
    std::cout << std::endl;
    results.push_back(r);
  };
  if (only > 0) {
    report(bicolor::run_criterion(only, opt));
  } else {
    bicolor::run_acceptance(opt, report);
  }

  std::cout << "acceptance summary (scale " << bicolor::scale_name(opt.scale) << ")\n";
  int failed = 0;
  for (const auto& r : results) {
    std::cout << bicolor::summary_line(r) << "\n";
    failed += !r.passed;
  }
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

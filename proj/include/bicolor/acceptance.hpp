#pragma once
// The acceptance suite: eight criteria, each a list of checks evaluated at
// pinned tolerances.

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "bicolor/report.hpp"

namespace bicolor {

namespace tolerance {
inline constexpr double kGroundResidual = 1e-9;
inline constexpr double kGroundRuntimeSeconds = 60.0;
inline constexpr double kLocalEigen = 1e-10;
inline constexpr std::size_t kMoveSamples = 100000;
inline constexpr double kHexAgreement = 1e-8;
inline constexpr double kBlcRatio = 0.05;
inline constexpr double kFplRatio = 0.01;
inline constexpr double kTransferEigen = 1e-12;
inline constexpr double kSchmidt = 1e-10;
inline constexpr double kFit = 1e-3;
inline constexpr double kMultiset = 1e-9;
inline constexpr double kExactTower = 1e-10;
}  // namespace tolerance

enum class Scale { smoke, desk, extended };

Scale parse_scale(const std::string& name);
std::string scale_name(Scale s);

struct AcceptanceOptions {
  Scale scale = Scale::desk;
  std::uint64_t seed = 20240611;
  std::size_t budget = 50'000'000;
};

struct Check {
  std::string text;
  bool ok = true;
  bool informational = false;  // reported, never fails the criterion
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = true;
  std::vector<Check> checks;
  Json data;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 8;

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_done = {});

void print_checks(std::ostream& os, const CriterionResult& r);
std::string summary_line(const CriterionResult& r);
Json to_json(const CriterionResult& r);

}  // namespace bicolor

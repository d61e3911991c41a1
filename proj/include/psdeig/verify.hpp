#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace psdeig::verify {

// One property checked over many seeded trials. Violations are reported
// after the property's tolerance has been applied, so any positive
// max_violation is a failure and a negative value shows the safety margin.
struct PropertyResult {
  std::string name;
  int trials = 0;
  double tolerance = 0.0;
  double max_violation = -std::numeric_limits<double>::infinity();
  bool passed = true;
  std::string worst;  // parameters of the worst trial, for reproduction
};

struct SuiteResult {
  std::string suite;
  std::vector<PropertyResult> properties;
  bool passed() const;
};

// chain, trailing, identities, bounds, angles, shift
const std::vector<std::string>& suite_names();

// Runs one suite with trial seeds derived from `seed`.
// Throws std::invalid_argument on an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

// which == "all" runs every suite in order; otherwise a single suite.
std::vector<SuiteResult> run(const std::string& which, std::uint64_t seed);

bool all_passed(const std::vector<SuiteResult>& results);

// Machine-readable dump of the results.
std::string json_summary(const std::vector<SuiteResult>& results);

}  // namespace psdeig::verify

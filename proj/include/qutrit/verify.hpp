#pragma once

#include <string>
#include <vector>

/// Self-checks runnable from the command line.
namespace qutrit::verify {

struct Check {
  std::string name;
  double value = 0.0;      // measured residual
  double tolerance = 0.0;  // pass iff value <= tolerance
  bool passed = false;
};

/// "algebra", "elliptic", "oracles", "invariants" or "all".
const std::vector<std::string>& suite_names();

/// UsageError for an unknown suite.
std::vector<Check> run_suite(const std::string& suite);

}  // namespace qutrit::verify

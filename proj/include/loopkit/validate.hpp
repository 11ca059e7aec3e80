#pragma once

#include <string>
#include <vector>

namespace loopkit::validate {

// One comparison of the validation suite.  The value columns come
// preformatted with units so every front end renders them identically.
struct CheckResult {
  int criterion = 0;      // 1-based criterion number; 0 for integrity extras
  std::string group;      // scenario, e.g. "stripline reference design"
  std::string name;       // quantity, e.g. "f0"
  std::string expected;
  std::string computed;
  std::string tolerance;
  bool passed = false;
};

struct Options {
  // Multiplies every dielectric constant before building; 1.0 reproduces the
  // reference designs, anything else demonstrates the suite's sensitivity to
  // its inputs.
  double eps_r_scale = 1.0;
  // Multiplies every relative tolerance.
  double tolerance_scale = 1.0;
};

struct Report {
  std::vector<CheckResult> checks;
  int failures() const;
  bool all_passed() const { return failures() == 0; }
};

// Recomputes every published comparison and property assertion against the
// embedded reference tables.
Report run(const Options& options = {});

}  // namespace loopkit::validate

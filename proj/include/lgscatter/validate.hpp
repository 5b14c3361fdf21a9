#pragma once

#include <string>
#include <vector>

#include "lgscatter/beams.hpp"

namespace lgs {

struct ValidationProfile {
  std::string name = "default";
  double rel_tol = 1e-8;  // quadrature tolerance; check thresholds are fixed

  /// "default" or "tight". Throws ConfigError for anything else.
  static ValidationProfile named(const std::string& name);
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_pass() const;
  /// One "PASS|FAIL <name>: <detail>" line per check, then a summary line.
  std::string text() const;
};

/// Runs every invariant of the library. `gouy` is the Gouy convention the
/// physics is evaluated with; the signed form is a deliberate mutation that
/// the parity checks are expected to catch.
ValidationReport validate_suite(const ValidationProfile& profile,
                                GouyConvention gouy = GouyConvention::abs_winding);

}  // namespace lgs

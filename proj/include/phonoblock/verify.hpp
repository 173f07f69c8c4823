#pragma once

#include <string>
#include <vector>

namespace phonoblock {

// Outcome of one self-check against a closed-form or structural oracle.
struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured error or ratio
  double tolerance = 0.0;
  std::string detail;
  // Reported for reference only; never fails the suite.
  bool informational = false;
};

// Runs the oracle checks: coherent and thermal states, trace preservation,
// steady-state residual, amplitude model against the master equation, the
// semigroup property of evolve and the blockade determinant. Also reports
// |a0| at the single-drive optimum. Uses no paper numbers.
std::vector<CheckResult> run_verification();

}  // namespace phonoblock

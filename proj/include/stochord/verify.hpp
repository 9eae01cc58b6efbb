#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stochord/common.hpp"

namespace stochord {
namespace verify {

struct CheckResult {
  std::string name;
  int trials = 0;
  int violations = 0;
  double max_deviation = 0.0;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  int violations() const;
};

/// Oracle-backed property suites. suite is one of quantile, orders,
/// lattice, maxitive, all, or selfcheck (a synthetic always-violating check
/// that exercises the reporting and exit-code path). Deterministic for a
/// given seed. Throws std::invalid_argument on an unknown suite name.
std::vector<SuiteReport> run_suites(const std::string& suite, int trials,
                                    std::uint64_t seed,
                                    double tol = kDefaultTol);

int total_violations(const std::vector<SuiteReport>& reports);

}  // namespace verify
}  // namespace stochord

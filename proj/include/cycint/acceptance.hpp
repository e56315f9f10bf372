#pragma once

// The acceptance suite: thirteen end-to-end checks with pinned tolerances,
// shared by the `acceptance` test binary and `cycint selftest`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cycint {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  long bits = 128;
  int workers = 1;
  std::uint64_t seed = 20240615;
  /// Run only these criteria (1-based); empty means all.
  std::vector<int> only;
};

/// Runs the suite; `report` is called as each criterion finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& report = {});

/// One line per criterion: "[ 1] PASS  name  (0.1 s)  detail".
std::string format_result(const CriterionResult& r);

}  // namespace cycint

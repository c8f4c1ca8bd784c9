#pragma once

// The reproduction matrix: nine criteria, each evaluated at its stated
// tolerance.  Shared by `chi2qec report all` and the acceptance test binary.

#include <string>
#include <vector>

namespace chi2qec {

struct AcceptanceOptions {
  unsigned long long seed = 20240601;  // recovery trials use seed, seed+1, ...
  int trials = 100;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;  // one line per sub-check
};

inline constexpr int kCriterionCount = 9;

// Throws InvalidArgument for ids outside 1..9.
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

// "[PASS] 3 BC correctness: ..." (one line).
std::string format_line(const CriterionResult& result);

}  // namespace chi2qec

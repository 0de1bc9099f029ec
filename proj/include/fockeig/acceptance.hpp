// acceptance.hpp: the numbered verification criteria, shared by the CLI's
// verify command and the acceptance test binary.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fockeig::acceptance {

struct Config {
  int single_dim = 256;
  int single_guard = 16;
  int two_dim = 48;
  int two_guard = 8;
  int wave_dim = 512;
  int transform_dim = 32;

  /// Applies a --dim override: D on single-mode spaces, min(D, 48) and
  /// min(D, 32) on the two-mode ones, with every guard capped at dim/4.
  static Config with_dim(int dim);
};

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  double measured;   // worst error found
  double threshold;  // pass iff measured < threshold (inverted for the negative control)
  std::string detail;
};

/// Criteria 1-11 in order. Exceptions inside a criterion become failures.
std::vector<CriterionResult> run_criteria(const Config& cfg);

/// Runs one criterion (1-11).
CriterionResult run_criterion(int id, const Config& cfg);

/// Negative control: the even-sector conjugate of a^2 checked on the odd
/// sector. Passes iff that check fails, i.e. the residual is at least 0.1.
CriterionResult wrong_sector_control(const Config& cfg);

}  // namespace fockeig::acceptance

#pragma once

#include <string>
#include <vector>

#include "spdcimg/config.hpp"

namespace spdcimg {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Informational entries record a residual without asserting on it.
  bool informational = false;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  std::string to_text() const;
};

struct VerificationOptions {
  std::size_t small_n = 128;         // randomized fast-vs-direct instances
  std::size_t random_instances = 20;
  std::size_t spot_points = 11;
  std::size_t relative_factor_n = 1024;
  std::uint64_t seed = 12345;
};

/// Runs the invariant suite against one experiment config: transform and
/// propagation hygiene, kernel vs ray-matrix oracle, fast vs direct engine,
/// and (with a lens at the imaging condition) the rho_+ and rho_- properties.
VerificationReport run_verification(const ExperimentConfig& config, const VerificationOptions& options = {});

}  // namespace spdcimg

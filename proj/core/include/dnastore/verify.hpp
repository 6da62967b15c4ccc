// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dnastore {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Tuning knobs for the property suites; `quick()` shrinks sample counts
/// for interactive runs, the defaults match the advertised sweep sizes.
struct VerifyOptions {
  std::uint64_t seed = 20240607;
  std::int64_t pmf_pairs = 10000;        // divergence sandwich sweep
  std::int64_t amgm_pairs = 10000;       // AM-GM refinement sweep
  std::int64_t dirichlet_draws = 1000000;  // Monte Carlo moment probes
  std::int64_t chi2_trials = 100000;     // chi-squared mean identity
  std::int64_t equivalence_cases = 1000;  // decoder equivalence probes

  static VerifyOptions quick();
};

/// Known suites: divergences, gamma, amgm, dirichlet, chi2-mean, stirling,
/// quantize, decoder, or "all". Unknown suite names throw.
std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          const VerifyOptions& options = {});

std::vector<std::string> verify_suite_names();

}  // namespace dnastore

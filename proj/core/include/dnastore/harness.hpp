// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dnastore/bounds.hpp"
#include "dnastore/params.hpp"
#include "dnastore/random_coding.hpp"

namespace dnastore {

enum class Scheme { partition, random_coding };

const char* scheme_name(Scheme scheme);
Scheme scheme_from_name(const std::string& name);

struct ExperimentSpec {
  SystemParams params;
  Scheme scheme = Scheme::partition;
  std::int64_t trials = 1;
  std::uint64_t master_seed = 0;
  std::int64_t codebook_size = 0;  // random coding only
  bool strict_zero_rule = true;
  int parallelism = 1;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// 95% Wilson score interval by default; well behaved at zero observed
/// errors (one-sided upper limit instead of 0 +/- 0).
WilsonInterval wilson_interval(std::int64_t errors, std::int64_t trials,
                               double z = 1.959963984540054);

struct ExperimentResult {
  ExperimentSpec spec;
  DerivedSizes sizes;
  std::int64_t errors = 0;
  double error_rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double bound_term1 = 1.0;
  double bound_term2 = 1.0;
  double bound_total = 1.0;
  BoundBreakdown bound_breakdown;      // partition scheme only
  double rc_delta_effective = 0.0;     // random coding only: implied rate slack
  std::int64_t zero_count_errors = 0;  // B1-type failures (partition)
  std::int64_t order_errors = 0;       // B2-type failures (partition)
  std::int64_t all_infinite_events = 0;  // random coding: no codeword had finite KL
  std::int64_t wall_time_ms = 0;
};

/// Runs one partition-code experiment: per trial draw a uniform message,
/// encode, sample K reads, decode, compare. Deterministic given
/// (spec, master_seed) at any parallelism. Infeasible parameters throw.
ExperimentResult run_pc_experiment(const ExperimentSpec& spec);

/// Runs one random-coding experiment over a freshly generated seeded
/// codebook. Requires codebook_size >= 2 and M >= n.
ExperimentResult run_rc_experiment(const ExperimentSpec& spec);

/// The exact codebook run_rc_experiment(spec) generates, for oracles and
/// reproduction tooling.
Codebook experiment_codebook(const ExperimentSpec& spec);

ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Exact CSV schema shared by the CLI and the sweep runner.
std::string csv_header();
std::string to_csv_row(const ExperimentResult& result);
std::string result_to_json(const ExperimentResult& result);

/// Key identifying a spec for sweep resumption; hashes the fields that
/// appear in the CSV schema.
std::uint64_t spec_hash(const ExperimentSpec& spec);

struct SweepOutcome {
  std::int64_t total = 0;
  std::int64_t executed = 0;
  std::int64_t skipped = 0;
  std::vector<std::string> row_errors;  // per-row failures; sweep continues
  std::string csv_path;
  std::string summary_path;
};

/// Runs every spec in the grid, appending one CSV row per result and
/// maintaining a JSON summary next to the CSV. Rows already present in the
/// CSV (matched by spec hash) are skipped, so an interrupted sweep resumes
/// to an identical file. Experiments run sequentially unless
/// experiment_parallelism > 1; output order always follows the grid.
SweepOutcome sweep(const std::vector<ExperimentSpec>& grid, const std::string& csv_path,
                   int experiment_parallelism = 1);

}  // namespace dnastore

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dnastore/harness.hpp"
#include "dnastore/rng.hpp"

using namespace dnastore;
namespace fs = std::filesystem;

namespace {

// Strips the trailing wall_time_ms column.
std::string drop_wall_time(const std::string& row) {
  return row.substr(0, row.rfind(','));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dnastore_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

// n = 4, s = w = 2, K = 8 at M = 12: the small exactly-enumerable PC point.
SystemParams small_pc_params() {
  return {12, 2, std::log(4.5) / (std::log(2.0) * std::log(12.0)), 8.0 / 12.0, 0.5};
}

}  // namespace

TEST_CASE("wilson interval") {
  SUBCASE("contains the point estimate") {
    for (std::int64_t errors : {0, 1, 5, 250, 499, 500}) {
      const WilsonInterval ci = wilson_interval(errors, 500);
      const double p = static_cast<double>(errors) / 500.0;
      CHECK(ci.low <= p);
      CHECK(ci.high >= p);
      CHECK(ci.low >= 0.0);
      CHECK(ci.high <= 1.0);
    }
  }
  SUBCASE("zero errors yields a one-sided upper limit") {
    const WilsonInterval ci = wilson_interval(0, 1000);
    CHECK(ci.low == 0.0);
    CHECK(ci.high > 0.0);
    CHECK(ci.high < 0.01);
  }
  SUBCASE("coverage against a Bernoulli oracle") {
    const double p = 0.1;
    const std::int64_t reps = 2000, n = 500;
    std::int64_t covered = 0;
    for (std::int64_t r = 0; r < reps; ++r) {
      auto eng = make_engine({808, static_cast<std::uint64_t>(r)});
      std::int64_t hits = 0;
      for (std::int64_t i = 0; i < n; ++i)
        if (uniform_unit(eng) < p) ++hits;
      const WilsonInterval ci = wilson_interval(hits, n);
      if (ci.low <= p && p <= ci.high) ++covered;
    }
    CHECK(static_cast<double>(covered) / static_cast<double>(reps) >= 0.93);
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS(wilson_interval(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(-1, 10), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(11, 10), std::invalid_argument);
  }
}

TEST_CASE("pc experiment: saturation coverage has zero errors") {
  ExperimentSpec spec;
  spec.params = {64, 2, std::log(4.5) / (std::log(2.0) * std::log(64.0)),
                 100.0 * std::log(64.0), 0.5};
  spec.scheme = Scheme::partition;
  spec.trials = 1000;
  spec.master_seed = 31;
  const ExperimentResult r = run_pc_experiment(spec);
  CHECK(r.errors == 0);
  CHECK(r.error_rate == 0.0);
  CHECK(r.ci_low == 0.0);
  CHECK(r.zero_count_errors == 0);
  CHECK(r.order_errors == 0);
}

TEST_CASE("pc experiment: tallies split errors without double counting") {
  ExperimentSpec spec;
  spec.params = small_pc_params();
  spec.scheme = Scheme::partition;
  spec.trials = 20000;
  spec.master_seed = 99;
  const ExperimentResult r = run_pc_experiment(spec);
  CHECK(r.errors == r.zero_count_errors + r.order_errors);
  CHECK(r.errors > 0);  // this point is noisy by construction
  CHECK(r.sizes.n_eff == 4);
  CHECK(r.sizes.K == 8);
  CHECK(r.bound_total == doctest::Approx(1.0).epsilon(1e-12));  // vacuous here
}

TEST_CASE("pc experiment propagates infeasible parameters") {
  ExperimentSpec spec;
  spec.params = {4, 2, 2.88, 1.0, 0.5};  // derives n = 16 >> M
  spec.scheme = Scheme::partition;
  spec.trials = 10;
  CHECK_THROWS_AS(run_pc_experiment(spec), std::domain_error);
}

TEST_CASE("rc experiment basics") {
  ExperimentSpec spec;
  spec.params = {200, 2, std::log(4.5) / (std::log(2.0) * std::log(200.0)), 0.5, 0.5};
  spec.scheme = Scheme::random_coding;
  spec.trials = 4000;
  spec.master_seed = 5;
  spec.codebook_size = 8;

  SUBCASE("runs and reports") {
    const ExperimentResult r = run_rc_experiment(spec);
    CHECK(r.sizes.n == 4);
    CHECK(r.spec.codebook_size == 8);
    CHECK(r.errors >= 0);
    CHECK(r.errors <= spec.trials);
    CHECK(r.zero_count_errors == 0);
    CHECK(r.order_errors == 0);
  }
  SUBCASE("single-codeword books are rejected") {
    spec.codebook_size = 1;
    CHECK_THROWS_AS(run_rc_experiment(spec), std::invalid_argument);
  }
  SUBCASE("error rate trends down as coverage grows (5-seed average)") {
    double lo_sum = 0.0, hi_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      spec.master_seed = seed;
      spec.params.xi = 0.5;
      lo_sum += run_rc_experiment(spec).error_rate;
      spec.params.xi = 8.0;  // x16 reads
      hi_sum += run_rc_experiment(spec).error_rate;
    }
    CHECK(hi_sum <= lo_sum);
  }
}

TEST_CASE("determinism across parallelism levels") {
  ExperimentSpec spec;
  spec.params = small_pc_params();
  spec.scheme = Scheme::partition;
  spec.trials = 20000;
  spec.master_seed = 1234;

  spec.parallelism = 1;
  const ExperimentResult serial = run_pc_experiment(spec);
  spec.parallelism = 8;
  const ExperimentResult parallel = run_pc_experiment(spec);
  CHECK(drop_wall_time(to_csv_row(serial)) == drop_wall_time(to_csv_row(parallel)));

  ExperimentSpec rc;
  rc.params = {200, 2, std::log(4.5) / (std::log(2.0) * std::log(200.0)), 0.5, 0.5};
  rc.scheme = Scheme::random_coding;
  rc.trials = 10000;
  rc.master_seed = 77;
  rc.codebook_size = 8;
  rc.parallelism = 1;
  const ExperimentResult rc_serial = run_rc_experiment(rc);
  rc.parallelism = 8;
  const ExperimentResult rc_parallel = run_rc_experiment(rc);
  CHECK(drop_wall_time(to_csv_row(rc_serial)) == drop_wall_time(to_csv_row(rc_parallel)));
}

TEST_CASE("csv schema and json mirror") {
  CHECK(csv_header() ==
        "scheme,M,alphabet,beta,xi,rho,n,n_eff,K,codebook_size,trials,errors,"
        "error_rate,ci_low,ci_high,bound_term1,bound_term2,bound_total,"
        "zero_count_errors,order_errors,master_seed,wall_time_ms");

  ExperimentSpec spec;
  spec.params = small_pc_params();
  spec.scheme = Scheme::partition;
  spec.trials = 100;
  spec.master_seed = 3;
  const ExperimentResult r = run_pc_experiment(spec);

  std::stringstream row(to_csv_row(r));
  std::string col;
  std::vector<std::string> cols;
  while (std::getline(row, col, ',')) cols.push_back(col);
  CHECK(cols.size() == 22);
  CHECK(cols[0] == "partition");
  CHECK(cols[1] == "12");
  CHECK(cols[8] == "8");     // K
  CHECK(cols[10] == "100");  // trials

  const auto j = nlohmann::json::parse(result_to_json(r));
  CHECK(j["scheme"] == "partition");
  CHECK(j["M"] == 12);
  CHECK(j["trials"] == 100);
  CHECK(j["errors"].get<std::int64_t>() == r.errors);
  CHECK(j.contains("spec_hash"));
}

TEST_CASE("spec hash distinguishes specs") {
  ExperimentSpec spec;
  spec.params = small_pc_params();
  spec.scheme = Scheme::partition;
  spec.trials = 100;
  spec.master_seed = 3;
  const std::uint64_t base = spec_hash(spec);

  ExperimentSpec other = spec;
  other.master_seed = 4;
  CHECK(spec_hash(other) != base);
  other = spec;
  other.trials = 101;
  CHECK(spec_hash(other) != base);
  other = spec;
  other.params.xi += 0.001;
  CHECK(spec_hash(other) != base);
  other = spec;
  other.scheme = Scheme::random_coding;
  CHECK(spec_hash(other) != base);
  // parallelism does not change identity
  other = spec;
  other.parallelism = 8;
  CHECK(spec_hash(other) == base);
}

TEST_CASE("sweep writes, resumes, and stays idempotent") {
  TempDir tmp;
  const std::string csv = (tmp.path / "grid.csv").string();

  std::vector<ExperimentSpec> grid(3);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i].params = small_pc_params();
    grid[i].scheme = Scheme::partition;
    grid[i].trials = 500;
    grid[i].master_seed = 100 + i;
  }

  const SweepOutcome first = sweep(grid, csv);
  CHECK(first.executed == 3);
  CHECK(first.skipped == 0);
  CHECK(first.row_errors.empty());
  const std::string full = read_file(csv);
  CHECK(std::count(full.begin(), full.end(), '\n') == 4);  // header + 3 rows

  SUBCASE("rerun performs no new work and leaves the file unchanged") {
    const SweepOutcome second = sweep(grid, csv);
    CHECK(second.executed == 0);
    CHECK(second.skipped == 3);
    CHECK(read_file(csv) == full);
  }
  SUBCASE("a partial file resumes to the identical final CSV") {
    const std::string partial_csv = (tmp.path / "partial.csv").string();
    sweep({grid[0]}, partial_csv);
    const SweepOutcome resumed = sweep(grid, partial_csv);
    CHECK(resumed.executed == 2);
    CHECK(resumed.skipped == 1);
    std::istringstream a(read_file(partial_csv)), b(full);
    std::string ra, rb;
    while (std::getline(a, ra) && std::getline(b, rb))
      CHECK(drop_wall_time(ra) == drop_wall_time(rb));  // wall times may differ
  }
  SUBCASE("experiment-level parallelism produces the identical CSV") {
    const std::string par_csv = (tmp.path / "par.csv").string();
    const SweepOutcome out = sweep(grid, par_csv, 3);
    CHECK(out.executed == 3);
    // wall times differ; compare rows without them
    std::istringstream a(read_file(par_csv)), b(full);
    std::string ra, rb;
    while (std::getline(a, ra) && std::getline(b, rb))
      CHECK(drop_wall_time(ra) == drop_wall_time(rb));
  }
  SUBCASE("summary JSON mirrors the rows") {
    const auto j = nlohmann::json::parse(read_file(first.summary_path));
    CHECK(j["schema_version"] == 1);
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][0]["M"] == 12);
  }
}

TEST_CASE("sweep reports per-row failures without aborting") {
  TempDir tmp;
  const std::string csv = (tmp.path / "mixed.csv").string();
  std::vector<ExperimentSpec> grid(3);
  for (auto& spec : grid) {
    spec.params = small_pc_params();
    spec.scheme = Scheme::partition;
    spec.trials = 200;
    spec.master_seed = 9;
  }
  grid[0].master_seed = 1;
  grid[1].params.M = 4;
  grid[1].params.beta = 2.88;  // infeasible: n >> M
  grid[2].master_seed = 2;

  const SweepOutcome out = sweep(grid, csv);
  CHECK(out.executed == 2);
  CHECK(out.row_errors.size() == 1);
  const std::string text = read_file(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);  // header + 2 rows
}

TEST_CASE("empty grid is rejected") {
  CHECK_THROWS_AS(sweep({}, "unused.csv"), std::invalid_argument);
}

// SPDX-License-Identifier: Apache-2.0
#include "dnastore/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "dnastore/channel.hpp"
#include "dnastore/partition_code.hpp"
#include "dnastore/random_coding.hpp"

namespace dnastore {

namespace {

using json = nlohmann::json;

// Trial streams use indices [0, trials); codebook generation is carved out
// of the upper half of the stream-index space so the two never collide.
constexpr std::uint64_t kCodebookStreamBase = std::uint64_t{1} << 63;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Tally {
  std::int64_t errors = 0;
  std::int64_t zero_count = 0;
  std::int64_t wrong_order = 0;
  std::int64_t all_infinite = 0;

  Tally& operator+=(const Tally& other) {
    errors += other.errors;
    zero_count += other.zero_count;
    wrong_order += other.wrong_order;
    all_infinite += other.all_infinite;
    return *this;
  }
};

// Static block partition over trial indices; every trial owns the stream
// (master_seed, trial_index), so the tally is schedule-invariant.
Tally run_trials(std::int64_t trials, int parallelism,
                 const std::function<Tally(std::int64_t)>& trial) {
  const int workers = std::max(1, parallelism);
  if (workers == 1) {
    Tally tally;
    for (std::int64_t t = 0; t < trials; ++t) tally += trial(t);
    return tally;
  }
  std::vector<Tally> partial(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = trials * w / workers;
    const std::int64_t end = trials * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      Tally local;
      for (std::int64_t t = begin; t < end; ++t) local += trial(t);
      partial[static_cast<std::size_t>(w)] = local;
    });
  }
  for (auto& th : pool) th.join();
  Tally tally;
  for (const Tally& p : partial) tally += p;
  return tally;
}

void finalize_result(ExperimentResult& result) {
  result.error_rate =
      static_cast<double>(result.errors) / static_cast<double>(result.spec.trials);
  const WilsonInterval ci = wilson_interval(result.errors, result.spec.trials);
  result.ci_low = ci.low;
  result.ci_high = ci.high;
}

// The random-coding bound is stated for |C| = exp{(1/2 - delta) n ln(M/n)};
// a truncated codebook of a given size corresponds to the implied slack
// delta = 1/2 - ln|C| / (n ln(M/n)). Out-of-regime inputs get the vacuous
// bound 1.
void attach_rc_bound(ExperimentResult& result) {
  const auto& p = result.spec.params;
  const double n = static_cast<double>(result.sizes.n);
  const double log_ratio = std::log(static_cast<double>(p.M) / n);
  result.bound_term1 = 1.0;
  result.bound_term2 = 1.0;
  result.bound_total = 1.0;
  if (log_ratio <= 0.0) return;
  const double delta =
      0.5 - std::log(static_cast<double>(result.spec.codebook_size)) / (n * log_ratio);
  result.rc_delta_effective = delta;
  const double xi_m = p.xi * static_cast<double>(p.M);
  if (delta <= 0.0 || !(xi_m > std::numbers::e)) return;
  const RcBoundConstants c = rc_bound_constants(p, delta);
  const double ln_m = std::log(static_cast<double>(p.M));
  const double lnln = std::log(std::log(xi_m));
  const double log_first = std::log(2.0) +
                           0.5 * std::log1p(p.xi * std::exp(c.c0 * ln_m)) +
                           (c.c2 + lnln - delta * c.c0 * ln_m) * std::exp(c.c1 * ln_m);
  result.bound_term1 = std::min(1.0, std::exp(log_first));
  result.bound_term2 = std::min(1.0, 1.0 / lnln);
  result.bound_total = std::min(1.0, std::exp(log_first) + 1.0 / lnln);
}

std::string spec_key(const ExperimentSpec& spec) {
  // Exactly the identifying CSV columns, rendered as the writer renders them.
  std::ostringstream key;
  key << scheme_name(spec.scheme) << ',' << spec.params.M << ',' << spec.params.alphabet_size
      << ',' << fmt_double(spec.params.beta) << ',' << fmt_double(spec.params.xi) << ','
      << fmt_double(spec.params.rho) << ',' << spec.codebook_size << ',' << spec.trials << ','
      << spec.master_seed;
  return key.str();
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Key recovered from an already-written CSV row: columns
// scheme,M,alphabet,beta,xi,rho (0..5), codebook_size (9), trials (10),
// master_seed (20).
bool key_from_csv_row(const std::string& line, std::string& key) {
  std::vector<std::string> cols;
  std::stringstream ss(line);
  std::string col;
  while (std::getline(ss, col, ',')) cols.push_back(col);
  if (cols.size() != 22) return false;
  key = cols[0] + ',' + cols[1] + ',' + cols[2] + ',' + cols[3] + ',' + cols[4] + ',' +
        cols[5] + ',' + cols[9] + ',' + cols[10] + ',' + cols[20];
  return true;
}

json result_json_object(const ExperimentResult& r) {
  json j;
  j["scheme"] = scheme_name(r.spec.scheme);
  j["M"] = r.spec.params.M;
  j["alphabet"] = r.spec.params.alphabet_size;
  j["beta"] = r.spec.params.beta;
  j["xi"] = r.spec.params.xi;
  j["rho"] = r.spec.params.rho;
  j["n"] = r.sizes.n;
  j["L"] = r.sizes.L;
  j["K"] = r.sizes.K;
  j["num_subsets"] = r.sizes.num_subsets;
  j["subset_size"] = r.sizes.subset_size;
  j["n_eff"] = r.sizes.n_eff;
  j["codebook_size"] = r.spec.codebook_size;
  j["trials"] = r.spec.trials;
  j["strict_zero_rule"] = r.spec.strict_zero_rule;
  j["parallelism"] = r.spec.parallelism;
  j["errors"] = r.errors;
  j["error_rate"] = r.error_rate;
  j["ci_low"] = r.ci_low;
  j["ci_high"] = r.ci_high;
  j["bound_term1"] = r.bound_term1;
  j["bound_term2"] = r.bound_term2;
  j["bound_total"] = r.bound_total;
  if (r.spec.scheme == Scheme::partition) {
    j["bound_term1_log"] = r.bound_breakdown.term1_log;
    j["bound_term2_log"] = r.bound_breakdown.term2_log;
    j["bound_phi"] = r.bound_breakdown.phi;
  } else {
    j["rc_delta_effective"] = r.rc_delta_effective;
    j["all_infinite_events"] = r.all_infinite_events;
  }
  j["zero_count_errors"] = r.zero_count_errors;
  j["order_errors"] = r.order_errors;
  j["master_seed"] = r.spec.master_seed;
  j["wall_time_ms"] = r.wall_time_ms;
  j["spec_hash"] = spec_hash(r.spec);
  return j;
}

}  // namespace

const char* scheme_name(Scheme scheme) {
  return scheme == Scheme::partition ? "partition" : "random_coding";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "partition" || name == "pc") return Scheme::partition;
  if (name == "random_coding" || name == "rc") return Scheme::random_coding;
  throw std::invalid_argument("unknown scheme: " + name);
}

WilsonInterval wilson_interval(std::int64_t errors, std::int64_t trials, double z) {
  if (trials < 1) throw std::invalid_argument("wilson_interval: trials must be >= 1");
  if (errors < 0 || errors > trials)
    throw std::invalid_argument("wilson_interval: errors outside [0, trials]");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  WilsonInterval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  // Exact endpoints at the boundary; at zero errors this is the one-sided
  // upper limit rather than 0 +/- rounding residue.
  if (errors == 0) ci.low = 0.0;
  if (errors == trials) ci.high = 1.0;
  return ci;
}

ExperimentResult run_pc_experiment(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  ExperimentResult result;
  result.spec = spec;
  result.sizes = derive(spec.params);
  const DerivedSizes sizes = result.sizes;
  const SubsetCounts counts = subset_counts(spec.params.M, sizes);  // throws if infeasible
  const BigInt messages = codebook_size(sizes);

  const Tally tally = run_trials(
      spec.trials, spec.parallelism, [&](std::int64_t trial) -> Tally {
        const RngStream stream{spec.master_seed, static_cast<std::uint64_t>(trial)};
        auto eng = make_engine(stream);
        const BigInt index = uniform_below_big(eng, messages);
        const PartitionMessage sent = unrank(index, sizes);
        const CountVector pool = encode(sent, counts, sizes);
        // The channel draw continues the same per-trial stream.
        const ReadCounts reads = sample_reads(pool, sizes.K, eng);
        const auto decoded = decode(reads, sizes, spec.strict_zero_rule);
        Tally t;
        if (!decoded.has_value()) {
          t.errors = 1;
          t.zero_count = 1;
        } else if (!(*decoded == sent)) {
          t.errors = 1;
          t.wrong_order = 1;
        }
        return t;
      });

  result.errors = tally.errors;
  result.zero_count_errors = tally.zero_count;
  result.order_errors = tally.wrong_order;
  result.bound_breakdown = pc_error_bound(spec.params, sizes);
  result.bound_term1 = std::exp(result.bound_breakdown.term1_log);
  result.bound_term2 = std::exp(result.bound_breakdown.term2_log);
  result.bound_total = result.bound_breakdown.total;
  finalize_result(result);
  result.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
  return result;
}

Codebook experiment_codebook(const ExperimentSpec& spec) {
  if (spec.codebook_size < 2)
    throw std::invalid_argument("experiment: random coding needs codebook_size >= 2");
  const DerivedSizes sizes = derive(spec.params);
  return generate_codebook(spec.codebook_size, sizes.n, spec.params.M,
                           RngStream{spec.master_seed, kCodebookStreamBase});
}

ExperimentResult run_rc_experiment(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  ExperimentResult result;
  result.spec = spec;
  result.sizes = derive(spec.params);
  const DerivedSizes sizes = result.sizes;
  const Codebook book = experiment_codebook(spec);

  const auto size = static_cast<std::uint64_t>(spec.codebook_size);
  const Tally tally = run_trials(
      spec.trials, spec.parallelism, [&](std::int64_t trial) -> Tally {
        const RngStream stream{spec.master_seed, static_cast<std::uint64_t>(trial)};
        auto eng = make_engine(stream);
        const std::uint64_t sent = uniform_below(eng, size);
        // Sample reads from the sent codeword's pool with the same engine.
        const ReadCounts reads =
            sample_reads(book.codewords[sent].counts, sizes.K, eng);
        const MlDecision decision = ml_decode(reads, book);
        Tally t;
        if (decision.index != sent) t.errors = 1;
        if (decision.all_infinite) t.all_infinite = 1;
        return t;
      });

  result.errors = tally.errors;
  result.all_infinite_events = tally.all_infinite;
  attach_rc_bound(result);
  finalize_result(result);
  result.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  return spec.scheme == Scheme::partition ? run_pc_experiment(spec)
                                          : run_rc_experiment(spec);
}

std::string csv_header() {
  return "scheme,M,alphabet,beta,xi,rho,n,n_eff,K,codebook_size,trials,errors,"
         "error_rate,ci_low,ci_high,bound_term1,bound_term2,bound_total,"
         "zero_count_errors,order_errors,master_seed,wall_time_ms";
}

std::string to_csv_row(const ExperimentResult& r) {
  std::ostringstream row;
  row << scheme_name(r.spec.scheme) << ',' << r.spec.params.M << ','
      << r.spec.params.alphabet_size << ',' << fmt_double(r.spec.params.beta) << ','
      << fmt_double(r.spec.params.xi) << ',' << fmt_double(r.spec.params.rho) << ','
      << r.sizes.n << ',' << r.sizes.n_eff << ',' << r.sizes.K << ','
      << r.spec.codebook_size << ',' << r.spec.trials << ',' << r.errors << ','
      << fmt_double(r.error_rate) << ',' << fmt_double(r.ci_low) << ','
      << fmt_double(r.ci_high) << ',' << fmt_double(r.bound_term1) << ','
      << fmt_double(r.bound_term2) << ',' << fmt_double(r.bound_total) << ','
      << r.zero_count_errors << ',' << r.order_errors << ',' << r.spec.master_seed << ','
      << r.wall_time_ms;
  return row.str();
}

std::string result_to_json(const ExperimentResult& result) {
  return result_json_object(result).dump(2);
}

std::uint64_t spec_hash(const ExperimentSpec& spec) { return fnv1a(spec_key(spec)); }

SweepOutcome sweep(const std::vector<ExperimentSpec>& grid, const std::string& csv_path,
                   int experiment_parallelism) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
  SweepOutcome outcome;
  outcome.total = static_cast<std::int64_t>(grid.size());
  outcome.csv_path = csv_path;
  outcome.summary_path = csv_path + ".summary.json";

  // Resume: collect the keys of rows already written.
  std::vector<std::uint64_t> done;
  json summary_rows = json::array();
  {
    std::ifstream existing(csv_path);
    std::string line;
    bool first = true;
    while (existing && std::getline(existing, line)) {
      if (first) {  // header
        first = false;
        continue;
      }
      std::string key;
      if (key_from_csv_row(line, key)) done.push_back(fnv1a(key));
    }
  }
  {
    std::ifstream summary_in(outcome.summary_path);
    if (summary_in) {
      json previous = json::parse(summary_in, nullptr, /*allow_exceptions=*/false);
      if (previous.is_object() && previous.contains("rows") && previous["rows"].is_array())
        summary_rows = previous["rows"];
    }
  }

  const bool fresh_csv = [&] {
    std::ifstream probe(csv_path);
    return !probe.good();
  }();
  if (fresh_csv) {
    std::ofstream header_out(csv_path);
    if (!header_out) {
      outcome.row_errors.push_back("cannot open CSV for writing: " + csv_path);
      return outcome;
    }
    header_out << csv_header() << '\n';
  }

  auto is_done = [&](const ExperimentSpec& spec) {
    const std::uint64_t h = spec_hash(spec);
    return std::find(done.begin(), done.end(), h) != done.end();
  };

  auto write_summary = [&] {
    json summary;
    summary["schema_version"] = 1;
    summary["rows"] = summary_rows;
    std::ofstream out(outcome.summary_path);
    if (out)
      out << summary.dump(2) << '\n';
    else
      outcome.row_errors.push_back("cannot write summary: " + outcome.summary_path);
  };

  const int lanes = std::max(1, experiment_parallelism);
  std::size_t next = 0;
  while (next < grid.size()) {
    // Launch up to `lanes` experiments, then emit results in grid order so
    // the CSV is identical regardless of experiment-level parallelism.
    std::vector<std::pair<std::size_t, std::future<ExperimentResult>>> inflight;
    while (next < grid.size() && inflight.size() < static_cast<std::size_t>(lanes)) {
      const std::size_t i = next++;
      if (is_done(grid[i])) {
        outcome.skipped += 1;
        continue;
      }
      inflight.emplace_back(i, std::async(std::launch::async, [&grid, i] {
                              return run_experiment(grid[i]);
                            }));
    }
    for (auto& [i, fut] : inflight) {
      try {
        const ExperimentResult result = fut.get();
        std::ofstream csv_out(csv_path, std::ios::app);
        if (!csv_out) {
          outcome.row_errors.push_back("row " + std::to_string(i) +
                                       ": cannot append to " + csv_path);
          continue;
        }
        csv_out << to_csv_row(result) << '\n';
        csv_out.flush();
        done.push_back(spec_hash(grid[i]));
        summary_rows.push_back(result_json_object(result));
        write_summary();
        outcome.executed += 1;
      } catch (const std::exception& e) {
        outcome.row_errors.push_back("row " + std::to_string(i) + ": " + e.what());
      }
    }
  }
  return outcome;
}

}  // namespace dnastore

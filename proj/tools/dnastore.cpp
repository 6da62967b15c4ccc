// SPDX-License-Identifier: Apache-2.0
//
// dnastore: simulate and bound the two coding schemes for the noiseless
// shuffling-sampling DNA storage channel.
//
// Subcommands: pc-run, rc-run, sweep, bounds, density, verify, codec.
// Exit codes: 0 success, 1 parameter/validation error, 2 I/O error,
// 3 verify failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dnastore/bigint.hpp"
#include "dnastore/bounds.hpp"
#include "dnastore/channel.hpp"
#include "dnastore/harness.hpp"
#include "dnastore/params.hpp"
#include "dnastore/partition_code.hpp"
#include "dnastore/serialize.hpp"
#include "dnastore/verify.hpp"

namespace {

using dnastore::BigInt;
using json = nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  if (!out.good()) throw IoError("write failed: " + path);
}

std::string read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void warn_if_long_molecules(const dnastore::SystemParams& params) {
  if (!dnastore::in_short_molecule_regime(params))
    std::cerr << "warning: beta ln|A| >= 1 leaves the short-molecule regime; "
                 "a header scheme would beat both codes here\n";
}

struct RunFlags {
  dnastore::ExperimentSpec spec;
  std::string format = "pretty";
  std::string output;
  bool relaxed_zero_rule = false;
  std::string save_codebook;  // rc-run only
};

void add_param_flags(CLI::App* cmd, dnastore::SystemParams& p) {
  cmd->add_option("--M", p.M, "Molecules per codeword")->required();
  cmd->add_option("--alphabet", p.alphabet_size, "Alphabet size |A|")
      ->default_val(4);
  cmd->add_option("--beta", p.beta, "Molecule length parameter (L = beta ln M)")
      ->required();
  cmd->add_option("--xi", p.xi, "Coverage depth K/M")->default_val(1.0);
  cmd->add_option("--rho", p.rho, "Partition design parameter in [0,1]")
      ->default_val(0.5);
}

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
  add_param_flags(cmd, flags.spec.params);
  cmd->add_option("--trials", flags.spec.trials, "Monte Carlo trials")->default_val(10000);
  cmd->add_option("--seed", flags.spec.master_seed, "Master seed")->default_val(1);
  cmd->add_option("-j,--parallelism", flags.spec.parallelism,
                  "Worker threads for trials")
      ->envname("DNASTORE_THREADS")
      ->default_val(1);
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "pretty"}))
      ->default_val("pretty");
  cmd->add_option("-o,--output", flags.output, "Write output to a file instead of stdout");
}

std::string render_pretty(const dnastore::ExperimentResult& r) {
  std::ostringstream out;
  out << "scheme            " << dnastore::scheme_name(r.spec.scheme) << '\n'
      << "M, |A|, beta      " << r.spec.params.M << ", " << r.spec.params.alphabet_size
      << ", " << fmt(r.spec.params.beta) << '\n'
      << "xi, rho           " << fmt(r.spec.params.xi) << ", " << fmt(r.spec.params.rho)
      << '\n'
      << "n, L, K           " << r.sizes.n << ", " << r.sizes.L << ", " << r.sizes.K << '\n'
      << "subsets x size    " << r.sizes.num_subsets << " x " << r.sizes.subset_size
      << " (n_eff " << r.sizes.n_eff << ")\n";
  if (r.spec.scheme == dnastore::Scheme::random_coding)
    out << "codebook size     " << r.spec.codebook_size << '\n';
  out << "trials            " << r.spec.trials << '\n'
      << "errors            " << r.errors;
  if (r.spec.scheme == dnastore::Scheme::partition)
    out << "  (zero-count " << r.zero_count_errors << ", wrong-order " << r.order_errors
        << ")";
  out << '\n'
      << "error rate        " << fmt(r.error_rate) << "  [" << fmt(r.ci_low) << ", "
      << fmt(r.ci_high) << "] 95% Wilson\n"
      << "bound total       " << fmt(r.bound_total) << "  (terms " << fmt(r.bound_term1)
      << " + " << fmt(r.bound_term2) << ")\n"
      << "wall time         " << r.wall_time_ms << " ms\n";
  return out.str();
}

std::string render_result(const dnastore::ExperimentResult& r, const std::string& format) {
  if (format == "csv") return dnastore::csv_header() + "\n" + dnastore::to_csv_row(r) + "\n";
  if (format == "json") return dnastore::result_to_json(r) + "\n";
  return render_pretty(r);
}

int cmd_run(const RunFlags& flags) {
  warn_if_long_molecules(flags.spec.params);
  dnastore::ExperimentSpec spec = flags.spec;
  spec.strict_zero_rule = !flags.relaxed_zero_rule;
  const dnastore::ExperimentResult result = dnastore::run_experiment(spec);
  if (!flags.save_codebook.empty())
    write_output(dnastore::codebook_to_json(dnastore::experiment_codebook(spec)) + "\n",
                 flags.save_codebook);
  write_output(render_result(result, flags.format), flags.output);
  return 0;
}

dnastore::ExperimentSpec spec_from_json(const json& j) {
  dnastore::ExperimentSpec spec;
  spec.scheme = dnastore::scheme_from_name(j.value("scheme", "partition"));
  spec.params.M = j.at("M").get<std::int64_t>();
  spec.params.alphabet_size = j.value("alphabet", 4);
  spec.params.beta = j.at("beta").get<double>();
  spec.params.xi = j.value("xi", 1.0);
  spec.params.rho = j.value("rho", 0.5);
  spec.trials = j.value("trials", std::int64_t{10000});
  spec.master_seed = j.value("seed", std::uint64_t{1});
  spec.codebook_size = j.value("codebook_size", std::int64_t{0});
  spec.strict_zero_rule = j.value("strict_zero_rule", true);
  spec.parallelism = j.value("parallelism", 1);
  return spec;
}

int cmd_sweep(const std::string& grid_path, const std::string& output,
              int experiment_parallelism) {
  const json grid_json = json::parse(read_input(grid_path), nullptr, false);
  if (grid_json.is_discarded())
    throw std::invalid_argument("sweep: grid file is not valid JSON: " + grid_path);
  const json rows = grid_json.is_array() ? grid_json : grid_json.value("experiments", json{});
  if (!rows.is_array() || rows.empty())
    throw std::invalid_argument("sweep: grid must be a JSON array (or {\"experiments\":[...]})");

  std::vector<dnastore::ExperimentSpec> grid;
  grid.reserve(rows.size());
  for (const json& row : rows) grid.push_back(spec_from_json(row));

  const dnastore::SweepOutcome outcome =
      dnastore::sweep(grid, output, experiment_parallelism);
  std::cerr << "sweep: " << outcome.executed << " run, " << outcome.skipped
            << " skipped (already present), " << outcome.row_errors.size() << " failed\n";
  for (const std::string& err : outcome.row_errors) std::cerr << "  " << err << '\n';
  if (!outcome.row_errors.empty()) {
    const bool io_failure =
        outcome.row_errors.front().find("cannot") != std::string::npos;
    return io_failure ? 2 : 1;
  }
  return 0;
}

int cmd_bounds(const dnastore::SystemParams& params, double delta, double log_base,
               const std::string& output) {
  warn_if_long_molecules(params);
  const dnastore::DerivedSizes sizes = dnastore::derive(params);
  const dnastore::BoundBreakdown pc = dnastore::pc_error_bound(params, sizes);

  json j;
  j["params"] = {{"M", params.M},   {"alphabet", params.alphabet_size},
                 {"beta", params.beta}, {"xi", params.xi},
                 {"rho", params.rho}};
  j["derived"] = {{"n", sizes.n},
                  {"L", sizes.L},
                  {"K", sizes.K},
                  {"num_subsets", sizes.num_subsets},
                  {"subset_size", sizes.subset_size},
                  {"n_eff", sizes.n_eff}};
  j["pc"] = {{"term1_log", pc.term1_log}, {"term2_log", pc.term2_log},
             {"term1", std::exp(pc.term1_log)}, {"term2", std::exp(pc.term2_log)},
             {"total", pc.total}, {"phi", pc.phi}};
  try {
    j["pc_simplified"] = dnastore::pc_error_bound_simplified(params, sizes);
  } catch (const std::domain_error&) {
    j["pc_simplified"] = nullptr;
  }
  try {
    const dnastore::RcBoundConstants c = dnastore::rc_bound_constants(params, delta);
    j["rc"] = {{"delta", delta},
               {"c0", c.c0},
               {"c1", c.c1},
               {"c2", c.c2},
               {"total", dnastore::rc_error_bound(params, sizes, delta)}};
  } catch (const std::domain_error&) {
    j["rc"] = nullptr;
  }
  j["density"] = {
      {"log_base", log_base},
      {"rc_target", dnastore::rc_density_target(params.beta, params.alphabet_size, log_base)},
      {"pc_target", dnastore::pc_density_target(params.beta, params.rho,
                                                params.alphabet_size, log_base)},
      {"pc_exact", dnastore::pc_exact_density(sizes, params.M)}};
  write_output(j.dump(2) + "\n", output);
  return 0;
}

int cmd_density(int alphabet, double log_base, std::vector<double> rhos,
                std::vector<double> betas, int steps, const std::string& output,
                const std::string& gnuplot_path) {
  if (rhos.empty()) rhos = {0.2, 0.5, 1.0};
  const double beta_max =
      std::log(log_base) / std::log(static_cast<double>(alphabet));
  if (betas.empty()) {
    if (steps < 1) throw std::invalid_argument("density: --steps must be >= 1");
    betas.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i)
      betas.push_back(beta_max * static_cast<double>(i) / static_cast<double>(steps));
  }

  std::ostringstream csv;
  csv << "beta,rc";
  for (double rho : rhos) csv << ",pc_rho_" << fmt(rho, "%g");
  csv << '\n';
  for (double beta : betas) {
    csv << fmt(beta) << ',' << fmt(dnastore::rc_density_target(beta, alphabet, log_base));
    for (double rho : rhos)
      csv << ',' << fmt(dnastore::pc_density_target(beta, rho, alphabet, log_base));
    csv << '\n';
  }
  write_output(csv.str(), output);

  if (!gnuplot_path.empty()) {
    if (output.empty())
      throw std::invalid_argument("density: --gnuplot requires -o/--output for the CSV path");
    std::ostringstream gp;
    gp << "set datafile separator ','\n"
       << "set xlabel 'beta'\n"
       << "set ylabel 'leading density factor'\n"
       << "set key top right\n"
       << "plot '" << output << "' using 1:2 with lines title 'RC'";
    for (std::size_t i = 0; i < rhos.size(); ++i)
      gp << ", '' using 1:" << (3 + i) << " with lines title 'PC rho=" << fmt(rhos[i], "%g")
         << "'";
    gp << '\n';
    write_output(gp.str(), gnuplot_path);
  }
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, bool quick) {
  dnastore::VerifyOptions options =
      quick ? dnastore::VerifyOptions::quick() : dnastore::VerifyOptions{};
  options.seed = seed;
  const auto results = dnastore::run_verify_suite(suite, options);
  bool all_passed = true;
  for (const dnastore::CheckResult& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
    all_passed = all_passed && r.passed;
  }
  std::cout << (all_passed ? "verify: all checks passed\n" : "verify: FAILURES\n");
  return all_passed ? 0 : 3;
}

struct CodecFlags {
  std::int64_t n_eff = 0;
  std::int64_t num_subsets = 0;
  std::int64_t n = 0;       // defaults to n_eff
  std::int64_t M = 0;       // encode only
  std::string index;        // decimal, arbitrary precision
  std::vector<std::int32_t> assignment;
  std::vector<std::int64_t> counts;
  bool relaxed = false;
  bool labels = false;      // encode only: include molecule strings
  int label_alphabet = 4;
  std::string output;
};

dnastore::DerivedSizes codec_sizes(const CodecFlags& flags) {
  if (flags.num_subsets < 1) throw std::invalid_argument("codec: --subsets must be >= 1");
  if (flags.n_eff < 1 || flags.n_eff % flags.num_subsets != 0)
    throw std::invalid_argument("codec: --neff must be a positive multiple of --subsets");
  dnastore::DerivedSizes sizes;
  sizes.num_subsets = flags.num_subsets;
  sizes.subset_size = flags.n_eff / flags.num_subsets;
  sizes.n_eff = flags.n_eff;
  sizes.n = flags.n > 0 ? flags.n : flags.n_eff;
  sizes.L = 1;
  sizes.K = 1;
  return sizes;
}

int cmd_codec_unrank(const CodecFlags& flags) {
  const dnastore::DerivedSizes sizes = codec_sizes(flags);
  const dnastore::PartitionMessage msg = dnastore::unrank(BigInt{flags.index}, sizes);
  write_output(dnastore::message_to_json(msg) + "\n", flags.output);
  return 0;
}

int cmd_codec_rank(const CodecFlags& flags) {
  CodecFlags adjusted = flags;
  if (adjusted.n_eff == 0) adjusted.n_eff = static_cast<std::int64_t>(flags.assignment.size());
  const dnastore::DerivedSizes sizes = codec_sizes(adjusted);
  const BigInt index = dnastore::rank({flags.assignment}, sizes);
  json j;
  j["schema_version"] = 1;
  j["index"] = index.str();
  j["codebook_size"] = dnastore::codebook_size(sizes).str();
  write_output(j.dump() + "\n", flags.output);
  return 0;
}

int cmd_codec_encode(const CodecFlags& flags) {
  CodecFlags adjusted = flags;
  if (adjusted.n_eff == 0 && !flags.assignment.empty())
    adjusted.n_eff = static_cast<std::int64_t>(flags.assignment.size());
  const dnastore::DerivedSizes sizes = codec_sizes(adjusted);
  if (flags.M < 1) throw std::invalid_argument("codec encode: --M is required");
  dnastore::PartitionMessage msg;
  if (!flags.assignment.empty())
    msg.assignment = flags.assignment;
  else if (!flags.index.empty())
    msg = dnastore::unrank(BigInt{flags.index}, sizes);
  else
    throw std::invalid_argument("codec encode: provide --assignment or --index");
  const dnastore::SubsetCounts counts = dnastore::subset_counts(flags.M, sizes);
  const dnastore::CountVector pool = dnastore::encode(msg, counts, sizes);
  json j = json::parse(dnastore::codeword_to_json(pool));
  j["assignment"] = msg.assignment;
  j["index"] = dnastore::rank(msg, sizes).str();
  if (flags.labels) {
    // Export-only view: the molecule string of each used type index,
    // at the shortest length that can host all n types.
    std::int64_t length = 1;
    for (std::int64_t cap = flags.label_alphabet; cap < sizes.n;
         cap *= flags.label_alphabet)
      ++length;
    json labels = json::array();
    for (std::int64_t t = 0; t < sizes.n_eff; ++t)
      labels.push_back(dnastore::type_label(t, length, flags.label_alphabet));
    j["labels"] = std::move(labels);
  }
  write_output(j.dump() + "\n", flags.output);
  return 0;
}

int cmd_codec_decode(const CodecFlags& flags) {
  CodecFlags adjusted = flags;
  if (adjusted.n_eff == 0) adjusted.n_eff = static_cast<std::int64_t>(flags.counts.size());
  const dnastore::DerivedSizes sizes = codec_sizes(adjusted);
  std::int64_t total = 0;
  for (std::int64_t c : flags.counts) total += c;
  const dnastore::ReadCounts reads{flags.counts, total};
  const auto decoded = dnastore::decode(reads, sizes, !flags.relaxed);
  json j;
  j["schema_version"] = 1;
  if (decoded.has_value()) {
    j["assignment"] = decoded->assignment;
    j["index"] = dnastore::rank(*decoded, sizes).str();
  } else {
    j["error"] = "zero_count";
  }
  write_output(j.dump() + "\n", flags.output);
  return decoded.has_value() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coding schemes and bounds for the shuffling-sampling DNA storage channel"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read defaults from a key=value file");

  RunFlags pc_flags;
  pc_flags.spec.scheme = dnastore::Scheme::partition;
  CLI::App* pc = app.add_subcommand("pc-run", "Run one partition-code experiment");
  add_run_flags(pc, pc_flags);
  pc->add_flag("--relaxed-zero-rule", pc_flags.relaxed_zero_rule,
               "Fail only when more than subset_size counts are zero");

  RunFlags rc_flags;
  rc_flags.spec.scheme = dnastore::Scheme::random_coding;
  CLI::App* rc = app.add_subcommand("rc-run", "Run one random-coding experiment");
  add_run_flags(rc, rc_flags);
  rc->add_option("--codebook-size", rc_flags.spec.codebook_size,
                 "Number of quantized Dirichlet codewords")
      ->required();
  rc->add_option("--save-codebook", rc_flags.save_codebook,
                 "Write the generated codebook (with seed provenance) as JSON");

  std::string sweep_grid, sweep_output;
  int sweep_parallelism = 1;
  CLI::App* sw = app.add_subcommand("sweep", "Run a grid of experiments into a CSV");
  sw->add_option("--grid", sweep_grid, "JSON grid file")->required();
  sw->add_option("-o,--output", sweep_output, "CSV output path")->required();
  sw->add_option("--experiment-parallelism", sweep_parallelism,
                 "Experiments in flight at once (rows stay in grid order)")
      ->default_val(1);

  dnastore::SystemParams bounds_params;
  double bounds_delta = 0.05, bounds_log_base = 2.0;
  std::string bounds_output;
  CLI::App* bd = app.add_subcommand("bounds", "Evaluate the closed-form bounds as JSON");
  add_param_flags(bd, bounds_params);
  bd->add_option("--delta", bounds_delta, "Rate slack for the random-coding bound")
      ->default_val(0.05);
  bd->add_option("--log-base", bounds_log_base, "Log base for density targets")
      ->default_val(2.0);
  bd->add_option("-o,--output", bounds_output);

  int density_alphabet = 2;
  double density_base = 2.0;
  std::vector<double> density_rhos, density_betas;
  int density_steps = 300;
  std::string density_output, density_gnuplot;
  CLI::App* de = app.add_subcommand(
      "density", "Tabulate the leading information-density factors as CSV");
  de->add_option("--alphabet", density_alphabet)->default_val(2);
  de->add_option("--log-base", density_base)->default_val(2.0);
  de->add_option("--rho", density_rhos, "Partition rho values")
      ->delimiter(',');
  de->add_option("--betas", density_betas, "Explicit beta grid")->delimiter(',');
  de->add_option("--steps", density_steps, "Uniform grid resolution when --betas is absent")
      ->default_val(300);
  de->add_option("-o,--output", density_output);
  de->add_option("--gnuplot", density_gnuplot, "Also write a gnuplot script for the CSV");

  std::string verify_suite = "all";
  std::uint64_t verify_seed = 20240607;
  bool verify_quick = false;
  CLI::App* vf = app.add_subcommand("verify", "Run the numeric property suites");
  vf->add_option("--suite", verify_suite,
                 "One of: all, divergences, gamma, amgm, dirichlet, chi2-mean, "
                 "stirling, quantize, decoder")
      ->default_val("all");
  vf->add_option("--seed", verify_seed)->default_val(20240607);
  vf->add_flag("--quick", verify_quick, "Smaller sweeps for interactive use");

  CLI::App* codec = app.add_subcommand("codec", "Partition-code round-trip tooling");
  codec->require_subcommand(1);
  CodecFlags codec_flags;
  CLI::App* unrank_cmd = codec->add_subcommand("unrank", "Message index -> assignment");
  CLI::App* rank_cmd = codec->add_subcommand("rank", "Assignment -> message index");
  CLI::App* encode_cmd = codec->add_subcommand("encode", "Message -> molecule counts");
  CLI::App* decode_cmd = codec->add_subcommand("decode", "Read counts -> message");
  for (CLI::App* sub : {unrank_cmd, rank_cmd, encode_cmd, decode_cmd}) {
    sub->add_option("--neff", codec_flags.n_eff, "Effective number of types");
    sub->add_option("--subsets", codec_flags.num_subsets, "Number of subsets")->required();
    sub->add_option("--n", codec_flags.n, "Ambient number of types (default n_eff)");
    sub->add_option("-o,--output", codec_flags.output);
  }
  unrank_cmd->add_option("--index", codec_flags.index, "Message index (decimal)")->required();
  rank_cmd->add_option("--assignment", codec_flags.assignment)->delimiter(',')->required();
  encode_cmd->add_option("--M", codec_flags.M, "Molecules per codeword")->required();
  encode_cmd->add_option("--index", codec_flags.index);
  encode_cmd->add_option("--assignment", codec_flags.assignment)->delimiter(',');
  encode_cmd->add_flag("--labels", codec_flags.labels,
                       "Also emit the molecule string of each used type");
  encode_cmd->add_option("--label-alphabet", codec_flags.label_alphabet,
                         "Alphabet for --labels (4 = ACGT)")
      ->default_val(4);
  decode_cmd->add_option("--counts", codec_flags.counts, "Per-type read counts")
      ->delimiter(',')
      ->required();
  decode_cmd->add_flag("--relaxed", codec_flags.relaxed,
                       "Tolerate up to subset_size zero counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (pc->parsed()) return cmd_run(pc_flags);
    if (rc->parsed()) return cmd_run(rc_flags);
    if (sw->parsed()) return cmd_sweep(sweep_grid, sweep_output, sweep_parallelism);
    if (bd->parsed()) return cmd_bounds(bounds_params, bounds_delta, bounds_log_base,
                                        bounds_output);
    if (de->parsed())
      return cmd_density(density_alphabet, density_base, density_rhos, density_betas,
                         density_steps, density_output, density_gnuplot);
    if (vf->parsed()) return cmd_verify(verify_suite, verify_seed, verify_quick);
    if (codec->parsed()) {
      if (unrank_cmd->parsed()) return cmd_codec_unrank(codec_flags);
      if (rank_cmd->parsed()) return cmd_codec_rank(codec_flags);
      if (encode_cmd->parsed()) return cmd_codec_encode(codec_flags);
      if (decode_cmd->parsed()) return cmd_codec_decode(codec_flags);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

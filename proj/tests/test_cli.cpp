// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks against the built CLI binary.
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#ifndef DNASTORE_CLI_BIN
#error "DNASTORE_CLI_BIN must point at the dnastore binary"
#endif

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(DNASTORE_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    result.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

std::string strip_wall_times(const std::string& csv) {
  std::string out;
  for (const std::string& line : split(csv, '\n')) {
    out += line.substr(0, line.rfind(','));
    out += '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("pc-run --help").exit_code == 0);
  CHECK(run_cli("--definitely-not-a-flag").exit_code == 1);
  CHECK(run_cli("pc-run --M 100").exit_code == 1);  // missing --beta
  CHECK(run_cli("bounds --M 100 --alphabet 2 --beta 0 --xi 1").exit_code == 1);
}

TEST_CASE("density table hits the crossing rows") {
  const CliResult r = run_cli("density --alphabet 2 --log-base 2 --rho 1.0");
  REQUIRE(r.exit_code == 0);
  const auto lines = split(r.out, '\n');
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "beta,rc,pc_rho_1");
  bool found = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cols = split(lines[i], ',');
    if (cols.size() != 3) continue;
    const double beta = std::stod(cols[0]);
    if (std::fabs(beta - 1.0 / 3.0) < 1e-9) {
      found = true;
      CHECK(std::fabs(std::stod(cols[1]) - 1.0 / 3.0) < 1e-6);
      CHECK(std::fabs(std::stod(cols[2]) - 1.0 / 3.0) < 1e-6);
    }
  }
  CHECK(found);
}

TEST_CASE("codec round-trip tooling") {
  const CliResult unranked = run_cli("codec unrank --neff 4 --subsets 2 --index 0");
  REQUIRE(unranked.exit_code == 0);
  const auto msg = nlohmann::json::parse(unranked.out);
  CHECK(msg["assignment"] == nlohmann::json::array({1, 1, 2, 2}));

  const CliResult ranked = run_cli("codec rank --subsets 2 --assignment 2,2,1,1");
  REQUIRE(ranked.exit_code == 0);
  const auto idx = nlohmann::json::parse(ranked.out);
  CHECK(idx["index"] == "5");
  CHECK(idx["codebook_size"] == "6");

  const CliResult encoded =
      run_cli("codec encode --subsets 2 --M 12 --assignment 1,1,2,2");
  REQUIRE(encoded.exit_code == 0);
  const auto pool = nlohmann::json::parse(encoded.out);
  CHECK(pool["counts"] == nlohmann::json::array({5, 5, 1, 1}));
  CHECK(pool["total"] == 12);

  const CliResult decoded = run_cli("codec decode --subsets 2 --counts 9,7,5,3");
  REQUIRE(decoded.exit_code == 0);
  CHECK(nlohmann::json::parse(decoded.out)["assignment"] ==
        nlohmann::json::array({1, 1, 2, 2}));

  const CliResult failed = run_cli("codec decode --subsets 2 --counts 9,7,0,3");
  CHECK(failed.exit_code == 1);
  CHECK(nlohmann::json::parse(failed.out)["error"] == "zero_count");
}

TEST_CASE("bounds emits parseable JSON") {
  const CliResult r =
      run_cli("bounds --M 65536 --alphabet 2 --beta 0.5 --xi 1 --rho 0.5");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["derived"]["n"] == 46);
  CHECK(j["derived"]["n_eff"] == 36);
  CHECK(j["pc"]["total"].get<double>() == doctest::Approx(1.0582319360808851e-4).epsilon(1e-6));
  CHECK(j["pc"]["phi"].get<double>() == doctest::Approx(0.496357307).epsilon(1e-6));
  CHECK(j.contains("pc_simplified"));
  CHECK(j["density"]["rc_target"].get<double>() == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("experiment runs are byte-identical modulo wall time") {
  const std::string args =
      "pc-run --M 160 --alphabet 4 --beta 0.2955 --xi 2 --rho 0.5 --trials 2000 "
      "--seed 42 --format csv";
  const CliResult a = run_cli(args);
  const CliResult b = run_cli(args + " -j 4");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(strip_wall_times(a.out) == strip_wall_times(b.out));

  const CliResult rc = run_cli(
      "rc-run --M 200 --alphabet 2 --beta 0.87 --xi 0.5 --rho 0.5 --trials 1000 "
      "--seed 7 --codebook-size 8 --format json");
  REQUIRE(rc.exit_code == 0);
  const auto j = nlohmann::json::parse(rc.out);
  CHECK(j["scheme"] == "random_coding");
  CHECK(j["trials"] == 1000);
}

TEST_CASE("verify subcommand") {
  const CliResult r = run_cli("verify --suite amgm --quick");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS amgm-refinement") != std::string::npos);
  CHECK(run_cli("verify --suite no-such-suite").exit_code == 1);
}

TEST_CASE("sweep end to end with resume") {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("dnastore_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path grid = dir / "grid.json";
  const fs::path csv = dir / "out.csv";
  {
    std::ofstream g(grid);
    g << R"([
      {"scheme":"partition","M":160,"alphabet":4,"beta":0.2955,"xi":2.0,"rho":0.5,
       "trials":500,"seed":1},
      {"scheme":"random_coding","M":200,"alphabet":2,"beta":0.87,"xi":0.5,"rho":0.5,
       "trials":500,"seed":2,"codebook_size":4}
    ])";
  }
  const CliResult first = run_cli("sweep --grid " + grid.string() + " -o " + csv.string());
  CHECK(first.exit_code == 0);
  std::ifstream in(csv);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(split(text, '\n').size() >= 3);

  const CliResult again = run_cli("sweep --grid " + grid.string() + " -o " + csv.string());
  CHECK(again.exit_code == 0);
  std::ifstream in2(csv);
  std::string text2((std::istreambuf_iterator<char>(in2)), std::istreambuf_iterator<char>());
  CHECK(text == text2);  // no new rows on rerun

  CHECK(run_cli("sweep --grid " + grid.string() + " -o /nonexistent-dir/x.csv").exit_code ==
        2);
  fs::remove_all(dir);
}

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "evt/distributions.hpp"
#include "evt/norming.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the installed binary through the shell, capturing stdout.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd = env_prefix + std::string(EVT_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Minimal CSV reader for the emitted format: '#' envelope then header+rows.
struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, std::string> envelope;

  double at(std::size_t row, const std::string& col) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (columns[c] == col) return rows[row][c];
    REQUIRE(false);
    return 0.0;
  }
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream is(text);
  std::string line;
  bool header_done = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto colon = line.find(": ");
      if (colon != std::string::npos)
        csv.envelope[line.substr(2, colon - 2)] = line.substr(colon + 2);
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!header_done) {
      csv.columns = cells;
      header_done = true;
      continue;
    }
    std::vector<double> row;
    for (const std::string& c : cells) row.push_back(std::strtod(c.c_str(), nullptr));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

std::string golden_path(const std::string& name) {
  return std::string(EVT_GOLDEN_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("constants command reproduces the reference rows") {
  RunResult r = run_cli(
      "constants --gw K=e,C=1,tau=1,alpha=1,x0=1 --n 10,100 "
      "--methods exact,standard,improved");
  REQUIRE(r.exit_code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 2);
  CHECK(csv.at(0, "n") == 10.0);
  CHECK(csv.at(0, "b_exact") == doctest::Approx(4.8897).epsilon(1e-4));
  CHECK(csv.at(0, "b_standard") == doctest::Approx(4.1366).epsilon(1e-4));
  CHECK(csv.at(0, "b_improved") == doctest::Approx(4.8590).epsilon(1e-4));
  CHECK(csv.at(1, "b_exact") == doctest::Approx(7.6384).epsilon(1e-4));
  CHECK(csv.at(1, "a_exact") == doctest::Approx(1.1506).epsilon(1e-4));
}

TEST_CASE("constants command on chi2 matches the published anchors") {
  RunResult r = run_cli("constants --chi2 10 --n 10 --methods exact");
  REQUIRE(r.exit_code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.at(0, "b_exact") == doctest::Approx(15.9872).epsilon(1e-4));
  CHECK(csv.at(0, "a_exact") == doctest::Approx(4.0032).epsilon(1e-4));
}

TEST_CASE("gamma spec agrees with the in-process computation at the branch seam") {
  RunResult r = run_cli("constants --gamma nu=2,theta=1 --n 100 --methods improved");
  REQUIRE(r.exit_code == 0);
  Csv csv = parse_csv(r.out);
  evt::NormingConstants want =
      evt::improved_constants(evt::Distribution{evt::Gamma{2.0, 1.0}}, 100);
  CHECK(csv.at(0, "b_improved") == doctest::Approx(want.b).epsilon(1e-9));
  CHECK(csv.at(0, "a_improved") == doctest::Approx(want.a).epsilon(1e-9));
}

TEST_CASE("n lists accept decade ranges and scientific notation") {
  RunResult r = run_cli("constants --chi2 10 --n 1e2:1e4,25 --methods standard");
  REQUIRE(r.exit_code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 4);
  CHECK(csv.at(0, "n") == 100.0);
  CHECK(csv.at(1, "n") == 1000.0);
  CHECK(csv.at(2, "n") == 10000.0);
  CHECK(csv.at(3, "n") == 25.0);
}

TEST_CASE("table command emits reference and error columns") {
  RunResult r = run_cli("table 1");
  REQUIRE(r.exit_code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(csv.at(i, "b_err") < 1e-4);
    CHECK(csv.at(i, "b_std_err") < 1e-4);
    CHECK(csv.at(i, "b_imp_err") < 1e-4);
  }
  // Table 3's standard-scale column is the bare scale parameter.
  Csv t3 = parse_csv(run_cli("table 3").out);
  for (std::size_t i = 0; i < 6; ++i) CHECK(t3.at(i, "a_std") == 2.0);
  // Table 2 carries one known reference discrepancy (documented in README).
  Csv t2 = parse_csv(run_cli("table 2").out);
  int big = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    if (t2.at(i, "b_std_err") > 1e-4) ++big;
    CHECK(t2.at(i, "b_err") < 1e-4);
    CHECK(t2.at(i, "b_imp_err") < 1e-4);
  }
  CHECK(big == 1);
  CHECK(t2.at(2, "b_std_err") == doctest::Approx(0.0400).epsilon(1e-2));
}

TEST_CASE("json and csv emissions carry identical numbers") {
  const std::string flags = "constants --chi2 10 --n 100,10000 --methods exact,improved";
  Csv csv = parse_csv(run_cli(flags).out);
  auto j = nlohmann::json::parse(run_cli(flags + " --json").out);
  REQUIRE(j["rows"].size() == csv.rows.size());
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    REQUIRE(j["rows"][i].size() == csv.rows[i].size());
    for (std::size_t k = 0; k < csv.rows[i].size(); ++k)
      CHECK(j["rows"][i][k].get<double>() == csv.rows[i][k]);  // bit-exact
  }
  for (std::size_t c = 0; c < csv.columns.size(); ++c)
    CHECK(j["columns"][c].get<std::string>() == csv.columns[c]);
}

TEST_CASE("simulate summary reports constants and ks") {
  RunResult r = run_cli(
      "simulate --gw K=e,C=1,tau=1,alpha=1,x0=1 --n 100 --reps 200 --seed 9 "
      "--method exact --output maxima");
  REQUIRE(r.exit_code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 200);
  CHECK(csv.envelope.at("b").substr(0, 6) == "7.6383");
  CHECK(std::stod(csv.envelope.at("ks")) > 0.0);
  // Histogram output: 50 bins covering [-4, 8], counts summing to reps.
  Csv hist = parse_csv(run_cli(
      "simulate --gw K=e,C=1,tau=1,alpha=1,x0=1 --n 100 --reps 200 --seed 9 "
      "--method exact --output hist").out);
  REQUIRE(hist.rows.size() == 50);
  double total = 0.0;
  for (std::size_t i = 0; i < 50; ++i) total += hist.at(i, "count");
  total += std::stod(hist.envelope.at("below_lo")) + std::stod(hist.envelope.at("above_hi"));
  CHECK(total == 200.0);
  CHECK(hist.at(0, "bin_lo") == -4.0);
  CHECK(hist.at(49, "bin_hi") == 8.0);
}

TEST_CASE("diagnose modes emit their documented schemas") {
  Csv rate = parse_csv(run_cli(
      "diagnose --gw K=e,C=1,tau=1,alpha=1,x0=1 --method exact --ngrid 1e2:1e4").out);
  REQUIRE(rate.columns ==
          std::vector<std::string>{"n", "sup_err", "sup_err_log_n", "sup_err_b_tau"});
  REQUIRE(rate.rows.size() == 3);
  CHECK(rate.at(0, "sup_err") > rate.at(2, "sup_err"));

  Csv pert = parse_csv(run_cli(
      "diagnose --chi2 10 --perturb standard --ngrid 1e2:1e3").out);
  CHECK(pert.columns.size() == 9);
  CHECK(pert.at(0, "gap_over_a") > 0.0);

  Csv opt = parse_csv(run_cli(
      "diagnose --gw K=e,C=1,tau=1,alpha=1,x0=1 --optimal-a --n 1e3 --delta 0.5:1.5:0.5").out);
  REQUIRE(opt.rows.size() == 3);
  CHECK(std::stod(opt.envelope.at("best_delta")) == doctest::Approx(1.0));
}

TEST_CASE("special-function commands evaluate in place") {
  Csv w = parse_csv(run_cli("lambert --branch secondary --x -0.1").out);
  CHECK(w.at(0, "w") == doctest::Approx(-3.5771520639572972184).epsilon(1e-10));
  CHECK(std::abs(w.at(0, "residual")) < 1e-12);

  Csv u = parse_csv(run_cli("ugamma --gamma -0.5 --x 10 --order 1 --mode both").out);
  CHECK(u.at(0, "numeric") == doctest::Approx(2.82115898748824737).epsilon(1e-9));
  CHECK(u.at(0, "expansion") == doctest::Approx(2.81015523779289).epsilon(1e-9));
  Csv un = parse_csv(run_cli("ugamma --gamma 2 --x 403.428793492735 --d1 0.3 "
                             "--mode numeric").out);
  CHECK(un.at(0, "t") == doctest::Approx(3.44349396565271439).epsilon(1e-9));
  CHECK(std::abs(un.at(0, "rel_residual")) < 1e-10);
}

TEST_CASE("exit codes distinguish bad requests from validity trips") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("constants --help").exit_code == 0);
  // Malformed requests: exit 2.
  CHECK(run_cli("").exit_code == 2);                                   // no subcommand
  CHECK(run_cli("constants --n 10 --methods exact").exit_code == 2);   // no dist
  CHECK(run_cli("constants --gw K=1 --n 10").exit_code == 2);          // missing keys
  CHECK(run_cli("constants --gw K=e,C=1,tau=1,alpha=1,x0=1 --gamma nu=2,theta=1 --n 10")
            .exit_code == 2);                                          // two dists
  CHECK(run_cli("constants --chi2 2 --n 10").exit_code == 2);          // df too small
  CHECK(run_cli("constants --gw K=1,C=1,tau=0.5,alpha=1,x0=1 --n 10").exit_code == 2);
  CHECK(run_cli("constants --chi2 10 --n 0").exit_code == 2);
  CHECK(run_cli("constants --chi2 10 --n ten").exit_code == 2);
  CHECK(run_cli("constants --chi2 10 --n 10 --methods best").exit_code == 2);
  CHECK(run_cli("table 7").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  // Well-formed requests tripping computation guards: exit 3.
  CHECK(run_cli("constants --gw K=1,C=1,tau=1,alpha=0.5,x0=1 --n 2 --methods exact")
            .exit_code == 3);
  CHECK(run_cli("constants --gw K=1,C=8,tau=1,alpha=2,x0=1 --n 50 --methods improved")
            .exit_code == 3);
  CHECK(run_cli("ugamma --gamma -2 --x 1.2 --mode numeric").exit_code == 3);
}

TEST_CASE("golden outputs are byte-stable") {
  const std::pair<const char*, const char*> cases[] = {
      {"constants_gw.csv",
       "constants --gw K=e,C=1,tau=1,alpha=1,x0=1 --n 10,100,1000 "
       "--methods exact,standard,improved"},
      {"table4.csv", "table 4"},
      {"simulate_hist.csv",
       "simulate --chi2 10 --n 100 --reps 2000 --seed 31415 --method improved "
       "--output hist"},
      {"diagnose_perturb.csv", "diagnose --gamma nu=5,theta=2 --perturb standard "
                               "--ngrid 1e2:1e4"},
      {"lambert.json", "lambert --branch secondary --x -0.05 --json"},
  };
  for (const auto& [name, cmd] : cases) {
    CAPTURE(name);
    RunResult r = run_cli(cmd);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == read_file(golden_path(name)));
  }
  // Determinism does not depend on the worker count.
  RunResult serial = run_cli(cases[2].second, "EVT_THREADS=1 ");
  CHECK(serial.out == read_file(golden_path("simulate_hist.csv")));
}

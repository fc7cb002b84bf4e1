// Copyright 2026 The gnsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gnsim/cli.hpp"

using namespace gnsim;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("gnsim-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

json report_json(const fs::path& dir) {
  return json::parse(slurp(dir / "report.json"));
}

int run_binary(const std::string& args) {
  const std::string cmd =
      std::string(GNSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("gate-level search reports the one-iteration success") {
  TempDir tmp;
  cli::ExperimentSpec spec;
  spec.level = cli::ExperimentSpec::Level::gate;
  spec.u = nmr::NamedSequence::u2;
  spec.tau = spectro::StateLabel::ud;
  std::ostringstream log;
  CHECK(cli::cmd_search(spec, cli::Config{}, tmp.path, log) == cli::kExitOk);

  const json report = report_json(tmp.path / "search-gate-U2-ud");
  CHECK(report["gate"]["k_opt"] == 1);
  CHECK(std::abs(report["gate"]["success_probability"].get<double>() - 1.0) <
        1e-12);
  CHECK(report["gate"]["classification"] == "ud");
  CHECK(report["spec"]["level"] == "gate");
}

TEST_CASE("pulse-level search writes spectra and classifies the target") {
  TempDir tmp;
  cli::ExperimentSpec spec;
  spec.u = nmr::NamedSequence::u3;
  spec.tau = spectro::StateLabel::du;
  std::ostringstream log;
  CHECK(cli::cmd_search(spec, cli::Config{}, tmp.path, log) == cli::kExitOk);

  const fs::path dir = tmp.path / "search-pulse-U3-du";
  CHECK(fs::exists(dir / "spin1.csv"));
  CHECK(fs::exists(dir / "spin2.csv"));
  CHECK(fs::exists(dir / "sequence.txt"));
  const json report = report_json(dir);
  CHECK(report["pulse"]["classification"] == "du");
  CHECK(report["gate"]["classification"] == "du");

  // the sequence artifact parses back into the same program
  const auto parsed = nmr::sequence_from_text(slurp(dir / "sequence.txt"));
  CHECK(parsed.events.size() > 10);
}

TEST_CASE("sign-swapped search gives the same answer") {
  TempDir tmp;
  cli::ExperimentSpec spec;
  spec.u = nmr::NamedSequence::u1;
  spec.tau = spectro::StateLabel::ud;
  spec.sign_swapped = true;
  std::ostringstream log;
  CHECK(cli::cmd_search(spec, cli::Config{}, tmp.path, log) == cli::kExitOk);
  const json report = report_json(tmp.path / "search-pulse-U1-ud-swapped");
  CHECK(report["pulse"]["classification"] == "ud");
}

TEST_CASE("prepare emits one peak per spin and is deterministic") {
  TempDir tmp;
  std::ostringstream log;
  CHECK(cli::cmd_prepare(spectro::StateLabel::uu, cli::Config{}, tmp.path,
                         log) == cli::kExitOk);
  const fs::path dir = tmp.path / "prepare-uu";
  const json report = report_json(dir);
  CHECK(report["classification"] == "uu");
  CHECK(report["spin1_peaks"]["peaks"].size() == 1);
  CHECK(report["spin2_peaks"]["peaks"].size() == 1);

  const std::string spin1_first = slurp(dir / "spin1.csv");
  const std::string report_first = slurp(dir / "report.json");

  TempDir tmp2;
  CHECK(cli::cmd_prepare(spectro::StateLabel::uu, cli::Config{}, tmp2.path,
                         log) == cli::kExitOk);
  CHECK(slurp(tmp2.path / "prepare-uu" / "spin1.csv") == spin1_first);
  CHECK(slurp(tmp2.path / "prepare-uu" / "report.json") == report_first);
}

TEST_CASE("prepare dd classifies as dd") {
  TempDir tmp;
  std::ostringstream log;
  CHECK(cli::cmd_prepare(spectro::StateLabel::dd, cli::Config{}, tmp.path,
                         log) == cli::kExitOk);
  CHECK(report_json(tmp.path / "prepare-dd")["classification"] == "dd");
}

TEST_CASE("verify passes on the defaults") {
  std::ostringstream log;
  CHECK(cli::cmd_verify(cli::Config{}, log) == cli::kExitOk);
  CHECK(log.str().find("[FAIL]") == std::string::npos);
  CHECK(log.str().find("all checks passed") != std::string::npos);
}

TEST_CASE("verify names a corrupted sequence") {
  // an I2 with one pulse sign broken must be caught and named
  const auto corrupted = [](nmr::NamedSequence name) {
    nmr::PulseSequence seq = nmr::builtin_sequence(name);
    if (name == nmr::NamedSequence::i2) {
      seq.events[2].angle_rad = -seq.events[2].angle_rad;
    }
    return seq;
  };
  std::ostringstream log;
  CHECK(cli::cmd_verify(cli::Config{}, log, corrupted) == cli::kExitFailure);
  CHECK(log.str().find("[FAIL] I2") != std::string::npos);
  CHECK(log.str().find("[FAIL] I1") == std::string::npos);
}

TEST_CASE("verify holds at the homonuclear ratio") {
  cli::Config config;
  config.spin_system.gamma_ratio = 1.0;
  std::ostringstream log;
  CHECK(cli::cmd_verify(config, log) == cli::kExitOk);
}

TEST_CASE("sweep emits the expected iteration counts") {
  TempDir tmp;
  std::ostringstream log;
  CHECK(cli::cmd_sweep({0.5, 0.2, 0.1, 0.05, 0.02, 0.0}, cli::Config{},
                       tmp.path, log) == cli::kExitOk);
  std::istringstream csv(slurp(tmp.path / "sweep" / "sweep.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "amplitude,k_opt,pi_over_4amp,success_probability,status");

  const int expected_k[] = {1, 3, 7, 15, 39};
  for (int i = 0; i < 5; ++i) {
    REQUIRE(std::getline(csv, line));
    std::istringstream row(line);
    std::string amp, k;
    std::getline(row, amp, ',');
    std::getline(row, k, ',');
    CHECK(std::stoi(k) == expected_k[i]);
    CHECK(line.find(",ok") != std::string::npos);
  }
  REQUIRE(std::getline(csv, line));
  CHECK(line == "0,,,,unreachable");
}

TEST_CASE("config file overrides and rejects garbage") {
  TempDir tmp;
  const fs::path cfg_path = tmp.path / "config.json";
  {
    std::ofstream out(cfg_path);
    out << R"({"spin_system": {"j_hz": 100.0},
               "acquisition": {"t2_s": 0.5}})";
  }
  const cli::Config config = cli::load_config(cfg_path);
  CHECK(config.spin_system.j_hz == 100.0);
  CHECK(config.acquisition.t2_s == 0.5);
  CHECK(config.spin_system.nu1_mhz == 125.76);  // untouched default

  CHECK_THROWS_AS(cli::load_config(tmp.path / "missing.json"),
                  std::invalid_argument);

  const fs::path bad_path = tmp.path / "bad.json";
  {
    std::ofstream out(bad_path);
    out << R"({"spin_system": {"j_hz": -1.0}})";
  }
  CHECK_THROWS_AS(cli::load_config(bad_path), std::invalid_argument);
}

TEST_CASE("name parsing") {
  CHECK(cli::u_from_string("U1") == nmr::NamedSequence::u1);
  CHECK_THROWS_AS(cli::u_from_string("U4"), std::invalid_argument);
  CHECK(cli::u_to_string(nmr::NamedSequence::u3) == "U3");
}

TEST_CASE("GNSIM_OUT sets the default output directory") {
  ::setenv("GNSIM_OUT", "/tmp/gnsim-env-out", 1);
  CHECK(cli::default_out_dir() == fs::path("/tmp/gnsim-env-out"));
  ::unsetenv("GNSIM_OUT");
  CHECK(cli::default_out_dir() == fs::path("out"));
}

TEST_CASE("binary exit codes: 0 success, 1 failure, 2 usage") {
  TempDir tmp;
  const std::string out = " --out " + tmp.path.string();
  CHECK(run_binary("search --level gate --u U2 --tau ud" + out) == 0);
  CHECK(run_binary("verify") == 0);
  CHECK(run_binary("search --level gate --u U9 --tau ud" + out) == 2);
  CHECK(run_binary("search --level gate --u U2 --tau xx" + out) == 2);
  CHECK(run_binary("prepare" + out) == 2);          // missing --target
  CHECK(run_binary("search --level nope --u U2 --tau ud" + out) == 2);
  CHECK(run_binary("") == 2);                       // subcommand required
  CHECK(run_binary("--help") == 0);
}

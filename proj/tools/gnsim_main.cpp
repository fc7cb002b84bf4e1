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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gnsim/cli.hpp"

namespace cli = gnsim::cli;

int main(int argc, char** argv) {
  CLI::App app{
      "gnsim: generalized quantum search on a simulated two-spin NMR "
      "computer"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand name

  std::string config_path;
  std::string out_dir = cli::default_out_dir().string();
  unsigned long long seed = 0;
  bool seed_given = false;
  app.add_option("--config", config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (default $GNSIM_OUT)");
  app.add_option("--seed", seed, "noise seed (noise only)")
      ->each([&seed_given](const std::string&) { seed_given = true; });

  auto* prepare = app.add_subcommand(
      "prepare", "prepare a pseudo-pure state and emit its spectra");
  std::string prepare_target = "uu";
  prepare->add_option("--target", prepare_target, "uu|ud|du|dd")->required();

  auto* search = app.add_subcommand(
      "search", "run one generalized search experiment");
  std::string level = "pulse", u_name = "U3";
  std::string tau = "", gamma = "uu";
  bool sign_swapped = false;
  search->add_option("--level", level, "gate|pulse")
      ->check(CLI::IsMember({"gate", "pulse"}));
  search->add_option("--u", u_name, "U1|U2|U3")->required();
  search->add_option("--tau", tau, "target state uu|ud|du|dd")->required();
  search->add_option("--gamma", gamma, "source state (default uu)");
  search->add_flag("--sign-swapped", sign_swapped,
                   "negate every pi/2 pulse in the I/U sequences");

  auto* verify = app.add_subcommand(
      "verify", "cross-check pulse compilations, preparation and the grid");

  auto* sweep = app.add_subcommand(
      "sweep", "iteration counts over a grid of |U_tau_gamma| amplitudes");
  std::vector<double> amplitudes = {0.5, 0.2, 0.1, 0.05, 0.02};
  sweep->add_option("--amps", amplitudes, "amplitude grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  try {
    cli::Config config;
    if (!config_path.empty()) config = cli::load_config(config_path);
    if (seed_given) config.acquisition.noise_seed = seed;

    if (prepare->parsed()) {
      return cli::cmd_prepare(
          gnsim::spectro::state_label_from_string(prepare_target), config,
          out_dir, std::cout);
    }
    if (search->parsed()) {
      cli::ExperimentSpec spec;
      spec.level = level == "gate" ? cli::ExperimentSpec::Level::gate
                                   : cli::ExperimentSpec::Level::pulse;
      spec.u = cli::u_from_string(u_name);
      spec.tau = gnsim::spectro::state_label_from_string(tau);
      spec.gamma = gnsim::spectro::state_label_from_string(gamma);
      spec.sign_swapped = sign_swapped;
      return cli::cmd_search(spec, config, out_dir, std::cout);
    }
    if (verify->parsed()) {
      return cli::cmd_verify(config, std::cout);
    }
    if (sweep->parsed()) {
      return cli::cmd_sweep(amplitudes, config, out_dir, std::cout);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitFailure;
  }
  return cli::kExitUsage;
}

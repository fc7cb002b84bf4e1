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

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gnsim/nmr.hpp"
#include "gnsim/spectro.hpp"

namespace gnsim::cli {

// exit codes shared by every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct Config {
  nmr::SpinSystem spin_system;
  spectro::AcquisitionConfig acquisition;
};

// JSON config {"spin_system": {...}, "acquisition": {...}}; absent keys keep
// the built-in chloroform defaults
Config load_config(const std::filesystem::path& path);

struct ExperimentSpec {
  enum class Level { gate, pulse };
  Level level = Level::pulse;
  nmr::NamedSequence u = nmr::NamedSequence::u3;
  spectro::StateLabel tau = spectro::StateLabel::uu;
  spectro::StateLabel gamma = spectro::StateLabel::uu;
  bool sign_swapped = false;
};

nmr::NamedSequence u_from_string(const std::string& name);  // U1|U2|U3
std::string u_to_string(nmr::NamedSequence u);

// $GNSIM_OUT when set, else ./out
std::filesystem::path default_out_dir();

// Runs the search at the requested level and writes
// <out>/<experiment-id>/report.json (plus spin CSVs and the serialized
// pulse program for pulse-level runs). Returns 0 iff the classification
// equals tau.
int cmd_search(const ExperimentSpec& spec, const Config& config,
               const std::filesystem::path& out_root, std::ostream& log);

// Prepares the pseudo-pure target state and writes both spins' spectra and
// the deviation matrix. Returns 0 iff the spectra classify as the target.
int cmd_prepare(spectro::StateLabel target, const Config& config,
                const std::filesystem::path& out_root, std::ostream& log);

// hook for substituting pulse sequences under test; defaults to
// nmr::builtin_sequence
using SequenceProvider =
    std::function<nmr::PulseSequence(nmr::NamedSequence)>;

// Cross-checks every built-in sequence against its matrix, the pseudo-pure
// preparation against its product-operator targets, and the 48-case
// gate-level grid. Prints one row per check; returns 0 iff all pass.
int cmd_verify(const Config& config, std::ostream& log,
               const SequenceProvider& sequences = {});

// Emits <out>/sweep/sweep.csv with the repetition count, its small-amplitude
// asymptote pi/(4 amp), and the achieved success probability per amplitude.
int cmd_sweep(const std::vector<double>& amplitudes, const Config& config,
              const std::filesystem::path& out_root, std::ostream& log);

}  // namespace gnsim::cli

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

#include "gnsim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gnsim/search.hpp"

namespace gnsim::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const double kPi = std::acos(-1.0);

search::BuiltinU to_builtin(nmr::NamedSequence u) {
  switch (u) {
    case nmr::NamedSequence::u1: return search::BuiltinU::u1;
    case nmr::NamedSequence::u2: return search::BuiltinU::u2;
    case nmr::NamedSequence::u3: return search::BuiltinU::u3;
    default:
      throw std::invalid_argument("not a search unitary");
  }
}

json json_complex(const qlinalg::Complex& c) {
  return json::array({c.real(), c.imag()});
}

json json_matrix(const qlinalg::CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json_complex(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << contents;
}

// spectrum CSV + peak detection for both spins of one state
struct TwoSpinReadout {
  spectro::Spectrum spectra[2];
  spectro::PeakList peaks[2];
  spectro::StateLabel classification = spectro::StateLabel::ambiguous;
};

TwoSpinReadout read_both_spins(const nmr::DeviationMatrix& rho,
                               const Config& config,
                               const spectro::Calibration& cal) {
  TwoSpinReadout out;
  for (int spin = 1; spin <= 2; ++spin) {
    spectro::AcquisitionConfig cfg = config.acquisition;
    cfg.observe_spin = spin;
    const spectro::Spectrum raw =
        spectro::readout(rho, cfg, config.spin_system);
    out.peaks[spin - 1] = spectro::detect_peaks(raw, cal);
    // emitted CSVs carry the absorption-mode (phased) spectrum
    out.spectra[spin - 1] = spectro::phased(raw, cal);
  }
  const auto a = out.peaks[0].classification;
  const auto b = out.peaks[1].classification;
  out.classification = (a != spectro::StateLabel::ambiguous && a == b)
                           ? a
                           : spectro::StateLabel::ambiguous;
  return out;
}

json peaks_json(const spectro::PeakList& peaks) {
  return json::parse(spectro::to_json(peaks));
}

void write_spin_csvs(const TwoSpinReadout& readout, const fs::path& dir) {
  for (int spin = 1; spin <= 2; ++spin) {
    std::ostringstream csv;
    spectro::write_csv(readout.spectra[spin - 1], csv);
    write_file(dir / ("spin" + std::to_string(spin) + ".csv"), csv.str());
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

Config load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config " + path.string());
  json j = json::parse(in);
  Config config;
  if (j.contains("spin_system")) {
    const json& s = j["spin_system"];
    config.spin_system.nu1_mhz = s.value("nu1_mhz", config.spin_system.nu1_mhz);
    config.spin_system.nu2_mhz = s.value("nu2_mhz", config.spin_system.nu2_mhz);
    config.spin_system.j_hz = s.value("j_hz", config.spin_system.j_hz);
    config.spin_system.gamma_ratio =
        s.value("gamma_ratio", config.spin_system.gamma_ratio);
  }
  if (j.contains("acquisition")) {
    const json& a = j["acquisition"];
    config.acquisition.n_points = a.value("n_points", config.acquisition.n_points);
    config.acquisition.dwell_s = a.value("dwell_s", config.acquisition.dwell_s);
    config.acquisition.t2_s = a.value("t2_s", config.acquisition.t2_s);
    config.acquisition.noise_amplitude =
        a.value("noise_amplitude", config.acquisition.noise_amplitude);
    config.acquisition.noise_seed =
        a.value("noise_seed", config.acquisition.noise_seed);
  }
  config.spin_system.validate();
  config.acquisition.validate(config.spin_system);
  return config;
}

nmr::NamedSequence u_from_string(const std::string& name) {
  if (name == "U1") return nmr::NamedSequence::u1;
  if (name == "U2") return nmr::NamedSequence::u2;
  if (name == "U3") return nmr::NamedSequence::u3;
  throw std::invalid_argument("unknown unitary '" + name +
                              "' (expected U1|U2|U3)");
}

std::string u_to_string(nmr::NamedSequence u) {
  switch (u) {
    case nmr::NamedSequence::u1: return "U1";
    case nmr::NamedSequence::u2: return "U2";
    case nmr::NamedSequence::u3: return "U3";
    default:
      throw std::invalid_argument("not a search unitary");
  }
}

fs::path default_out_dir() {
  if (const char* env = std::getenv("GNSIM_OUT"); env && *env) return env;
  return "out";
}

int cmd_search(const ExperimentSpec& spec, const Config& config,
               const fs::path& out_root, std::ostream& log) {
  const bool pulse = spec.level == ExperimentSpec::Level::pulse;
  const int gamma = spectro::state_index(spec.gamma);
  const int tau = spectro::state_index(spec.tau);

  std::string id = std::string("search-") + (pulse ? "pulse" : "gate") + "-" +
                   u_to_string(spec.u) + "-" + spectro::to_string(spec.tau);
  if (spec.gamma != spectro::StateLabel::uu) {
    id += "-from-" + spectro::to_string(spec.gamma);
  }
  if (spec.sign_swapped) id += "-swapped";
  const fs::path dir = out_root / id;
  fs::create_directories(dir);

  json report;
  report["spec"] = {{"level", pulse ? "pulse" : "gate"},
                    {"u", u_to_string(spec.u)},
                    {"tau", spectro::to_string(spec.tau)},
                    {"gamma", spectro::to_string(spec.gamma)},
                    {"sign_swapped", spec.sign_swapped}};
  std::vector<std::string> artifacts;

  // gate level always runs; it is the reference the pulse level must match
  search::SearchProblem problem{search::builtin_u(to_builtin(spec.u)), gamma,
                                tau};
  const search::SearchReport gate = search::run_search(problem);
  Eigen::Index argmax = 0;
  gate.final_state.cwiseAbs().maxCoeff(&argmax);
  const auto gate_label =
      spectro::state_label_from_index(static_cast<int>(argmax));

  json gate_json;
  gate_json["amplitude_tau_gamma"] = json_complex(gate.amplitude_tau_gamma);
  gate_json["k_opt"] = gate.k_opt;
  gate_json["success_probability"] = gate.success_probability;
  gate_json["per_iteration_probabilities"] = gate.per_iteration_probabilities;
  json state = json::array();
  for (Eigen::Index i = 0; i < gate.final_state.size(); ++i) {
    state.push_back(json_complex(gate.final_state(i)));
  }
  gate_json["final_state"] = state;
  gate_json["classification"] = spectro::to_string(gate_label);
  report["gate"] = gate_json;

  log << "gate level: k_opt=" << gate.k_opt
      << " success=" << format_double(gate.success_probability)
      << " classification=" << spectro::to_string(gate_label) << "\n";

  spectro::StateLabel outcome = gate_label;
  if (pulse) {
    nmr::PulseSequence program = nmr::search_sequence(
        spec.u, gamma, tau, gate.k_opt, config.spin_system);
    if (spec.sign_swapped) program = nmr::sign_swap(program);

    const nmr::DeviationMatrix initial =
        nmr::prepare_pseudo_pure(gamma, config.spin_system).rho;
    const nmr::DeviationMatrix final_state =
        nmr::apply_sequence(initial, program, config.spin_system);

    const spectro::Calibration cal =
        spectro::calibrate(config.spin_system, config.acquisition);
    const TwoSpinReadout readout = read_both_spins(final_state, config, cal);
    write_spin_csvs(readout, dir);
    write_file(dir / "sequence.txt", nmr::to_text(program));
    artifacts = {"spin1.csv", "spin2.csv", "sequence.txt"};

    json pulse_json;
    pulse_json["classification"] = spectro::to_string(readout.classification);
    json populations = json::array();
    for (int i = 0; i < 4; ++i) {
      populations.push_back(final_state.m(i, i).real());
    }
    pulse_json["final_populations"] = populations;
    pulse_json["spin1_peaks"] = peaks_json(readout.peaks[0]);
    pulse_json["spin2_peaks"] = peaks_json(readout.peaks[1]);
    report["pulse"] = pulse_json;

    outcome = readout.classification;
    log << "pulse level: classification="
        << spectro::to_string(readout.classification) << "\n";
  }

  artifacts.push_back("report.json");
  report["artifacts"] = artifacts;
  write_file(dir / "report.json", report.dump(2) + "\n");
  log << "wrote " << (dir / "report.json").string() << "\n";
  return outcome == spec.tau ? kExitOk : kExitFailure;
}

int cmd_prepare(spectro::StateLabel target, const Config& config,
                const fs::path& out_root, std::ostream& log) {
  const int index = spectro::state_index(target);
  const fs::path dir = out_root / ("prepare-" + spectro::to_string(target));
  fs::create_directories(dir);

  const nmr::PrepResult prep =
      nmr::prepare_pseudo_pure(index, config.spin_system);
  const spectro::Calibration cal =
      spectro::calibrate(config.spin_system, config.acquisition);
  const TwoSpinReadout readout = read_both_spins(prep.rho, config, cal);
  write_spin_csvs(readout, dir);
  write_file(dir / "sequence.txt", nmr::to_text(prep.sequence));

  json report;
  report["target"] = spectro::to_string(target);
  report["classification"] = spectro::to_string(readout.classification);
  report["deviation_matrix"] = json_matrix(prep.rho.m);
  report["spin1_peaks"] = peaks_json(readout.peaks[0]);
  report["spin2_peaks"] = peaks_json(readout.peaks[1]);
  report["artifacts"] = {"spin1.csv", "spin2.csv", "sequence.txt",
                         "report.json"};
  write_file(dir / "report.json", report.dump(2) + "\n");

  log << "prepared " << spectro::to_string(target) << ": classified as "
      << spectro::to_string(readout.classification) << ", wrote "
      << dir.string() << "\n";
  return readout.classification == target ? kExitOk : kExitFailure;
}

namespace {

struct VerifyTable {
  std::ostream& log;
  int failures = 0;

  void row(const std::string& name, bool ok, const std::string& detail) {
    log << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) log << "  (" << detail << ")";
    log << "\n";
    if (!ok) ++failures;
  }
};

}  // namespace

int cmd_verify(const Config& config, std::ostream& log,
               const SequenceProvider& sequences) {
  const nmr::SpinSystem& sys = config.spin_system;
  const SequenceProvider provider =
      sequences ? sequences : [&sys](nmr::NamedSequence name) {
        return nmr::builtin_sequence(name, sys);
      };
  VerifyTable table{log};

  // built-in reflection and search-unitary decompositions vs their matrices
  for (int i = 0; i < 4; ++i) {
    const auto name = static_cast<nmr::NamedSequence>(i);
    const qlinalg::CMatrix compiled =
        nmr::compile_sequence(provider(name), sys);
    const auto match = qlinalg::equal_up_to_global_phase(
        compiled, search::reflection(i, 4));
    table.row("I" + std::to_string(i) + " compiles to reflection",
              match.equal,
              match.equal ? "phase " + format_double(match.phase)
                          : "residual " + format_double(match.residual));
  }
  for (const auto u : {nmr::NamedSequence::u1, nmr::NamedSequence::u2,
                       nmr::NamedSequence::u3}) {
    const qlinalg::CMatrix compiled = nmr::compile_sequence(provider(u), sys);
    const auto match = qlinalg::equal_up_to_global_phase(
        compiled, search::builtin_u(to_builtin(u)));
    table.row(u_to_string(u) + " compiles to its matrix", match.equal,
              match.equal ? "phase " + format_double(match.phase)
                          : "residual " + format_double(match.residual));
  }

  // pseudo-pure preparation vs the product-operator targets
  const qlinalg::CMatrix iz1 = nmr::spin_operator(1, qlinalg::Axis::z);
  const qlinalg::CMatrix iz2 = nmr::spin_operator(2, qlinalg::Axis::z);
  const qlinalg::CMatrix zz2 = 2.0 * iz1 * iz2;
  const qlinalg::CMatrix targets[4] = {
      -0.5 * (iz1 + iz2 + zz2), -0.5 * (iz1 - iz2 - zz2),
      -0.5 * (-iz1 + iz2 - zz2), -0.5 * (-iz1 - iz2 + zz2)};
  for (int t = 0; t < 4; ++t) {
    const nmr::DeviationMatrix rho = nmr::prepare_pseudo_pure(t, sys).rho;
    const auto match = qlinalg::real_proportional(rho.m, targets[t], 1e-10);
    const bool ok = match.proportional && match.scale > 0.0;
    table.row("prep " + spectro::to_string(spectro::state_label_from_index(t)) +
                  " proportional to its target",
              ok,
              ok ? "scale " + format_double(match.scale)
                 : "residual " + format_double(match.residual));
  }

  // the 48-case gate-level grid
  for (const auto u : {search::BuiltinU::u1, search::BuiltinU::u2,
                       search::BuiltinU::u3}) {
    std::string failing;
    for (int g = 0; g < 4 && failing.empty(); ++g) {
      for (int t = 0; t < 4 && failing.empty(); ++t) {
        const search::SearchProblem p{search::builtin_u(u), g, t};
        const auto report = search::run_search(p);
        if (std::abs(std::abs(report.amplitude_tau_gamma) - 0.5) > 1e-12 ||
            report.k_opt != 1 ||
            std::abs(report.success_probability - 1.0) > 1e-12) {
          failing = "gamma=" + std::to_string(g) + " tau=" + std::to_string(t);
        }
      }
    }
    const std::string name =
        std::string("gate grid U") +
        std::to_string(static_cast<int>(u) + 1) + " (16 cases)";
    table.row(name, failing.empty(), failing);
  }

  log << (table.failures == 0 ? "verify: all checks passed\n"
                              : "verify: FAILURES present\n");
  return table.failures == 0 ? kExitOk : kExitFailure;
}

int cmd_sweep(const std::vector<double>& amplitudes, const Config& config,
              const fs::path& out_root, std::ostream& log) {
  (void)config;
  const fs::path dir = out_root / "sweep";
  fs::create_directories(dir);

  std::ostringstream csv;
  csv << "amplitude,k_opt,pi_over_4amp,success_probability,status\n";
  for (const double amp : amplitudes) {
    if (!(amp > 0.0) || amp > 1.0) {
      csv << format_double(amp) << ",,,,unreachable\n";
      continue;
    }
    const search::SearchProblem p{search::rotation_unitary(4, 0, 1, amp), 0,
                                  1};
    const search::SearchReport report = search::run_search(p);
    csv << format_double(amp) << ',' << report.k_opt << ','
        << format_double(kPi / (4.0 * amp)) << ','
        << format_double(report.success_probability) << ",ok\n";
  }
  write_file(dir / "sweep.csv", csv.str());
  log << csv.str();
  log << "wrote " << (dir / "sweep.csv").string() << "\n";
  return kExitOk;
}

}  // namespace gnsim::cli

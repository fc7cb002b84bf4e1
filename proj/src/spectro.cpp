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

#include "gnsim/spectro.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

#include <fftw3.h>

#include <nlohmann/json.hpp>

namespace gnsim::spectro {

namespace {

const double kPi = std::acos(-1.0);

int spin_slot(int observe_spin) {
  if (observe_spin != 1 && observe_spin != 2) {
    throw std::invalid_argument("observe_spin must be 1 or 2");
  }
  return observe_spin - 1;
}

}  // namespace

void AcquisitionConfig::validate(const nmr::SpinSystem& s) const {
  s.validate();
  if (n_points <= 0 || dwell_s <= 0.0 || t2_s <= 0.0) {
    throw std::invalid_argument(
        "AcquisitionConfig: n_points, dwell and T2 must be positive");
  }
  spin_slot(observe_spin);
  if (1.0 / dwell_s <= 2.0 * s.j_hz) {
    throw std::invalid_argument(
        "AcquisitionConfig: spectral width 1/dwell must exceed 2J");
  }
  if (n_points * dwell_s < 5.0 / s.j_hz) {
    throw std::invalid_argument(
        "AcquisitionConfig: acquisition must span at least 5/J");
  }
  if (noise_amplitude < 0.0) {
    throw std::invalid_argument("AcquisitionConfig: negative noise amplitude");
  }
}

std::vector<Complex> synthesize_fid(const nmr::DeviationMatrix& rho,
                                    const AcquisitionConfig& cfg,
                                    const nmr::SpinSystem& s) {
  cfg.validate(s);
  const int k = cfg.observe_spin;

  const qlinalg::CMatrix pulse =
      nmr::rf_propagator(nmr::PulseEvent::rf(k == 1 ? nmr::RfTarget::spin1
                                                    : nmr::RfTarget::spin2,
                                             qlinalg::Axis::y, -kPi / 2));
  const qlinalg::CMatrix observed = pulse * rho.m * pulse.adjoint();
  const qlinalg::CMatrix detect =
      nmr::spin_operator(k, qlinalg::Axis::x) +
      Complex(0.0, 1.0) * nmr::spin_operator(k, qlinalg::Axis::y);

  // J-coupling eigenfrequencies; element (m,n) of rho rotates at
  // -(E_m - E_n), so the trace reduces to a few oscillating terms
  const qlinalg::CMatrix zz =
      nmr::spin_operator(1, qlinalg::Axis::z) *
      nmr::spin_operator(2, qlinalg::Axis::z);
  std::array<double, 4> energy{};
  for (int i = 0; i < 4; ++i) energy[i] = 2.0 * kPi * s.j_hz * zz(i, i).real();

  struct Term {
    double omega;
    Complex weight;
  };
  std::vector<Term> terms;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      const Complex w = observed(m, n) * detect(n, m);
      if (std::abs(w) > 0.0) {
        terms.push_back({energy[m] - energy[n], w});
      }
    }
  }

  std::vector<Complex> fid(cfg.n_points);
  for (int i = 0; i < cfg.n_points; ++i) {
    const double t = i * cfg.dwell_s;
    Complex sum = 0.0;
    for (const Term& term : terms) {
      sum += term.weight * std::polar(1.0, -term.omega * t);
    }
    fid[i] = sum * std::exp(-t / cfg.t2_s);
  }

  if (cfg.noise_amplitude > 0.0) {
    std::mt19937_64 rng(cfg.noise_seed);
    std::normal_distribution<double> gauss(0.0, cfg.noise_amplitude);
    for (Complex& v : fid) v += Complex(gauss(rng), gauss(rng));
  }
  return fid;
}

Spectrum fid_to_spectrum(const std::vector<Complex>& fid,
                         const AcquisitionConfig& cfg) {
  const int n = static_cast<int>(fid.size());
  if (n == 0) throw std::invalid_argument("fid_to_spectrum: empty FID");

  std::vector<Complex> raw(n);
  // std::complex<double> is layout-compatible with fftw_complex
  fftw_plan plan = fftw_plan_dft_1d(
      n,
      reinterpret_cast<fftw_complex*>(const_cast<Complex*>(fid.data())),
      reinterpret_cast<fftw_complex*>(raw.data()), FFTW_FORWARD,
      FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  Spectrum sp;
  sp.observe_spin = cfg.observe_spin;
  sp.freqs_hz.resize(n);
  sp.amps.resize(n);
  const int shift = n / 2;
  const double df = 1.0 / (n * cfg.dwell_s);
  for (int i = 0; i < n; ++i) {
    sp.freqs_hz[i] = (i - shift) * df;
    sp.amps[i] = raw[(i + shift) % n];
  }
  return sp;
}

Spectrum readout(const nmr::DeviationMatrix& rho, const AcquisitionConfig& cfg,
                 const nmr::SpinSystem& s) {
  return fid_to_spectrum(synthesize_fid(rho, cfg, s), cfg);
}

Calibration calibrate(const nmr::SpinSystem& s, const AcquisitionConfig& cfg) {
  const nmr::DeviationMatrix reference = nmr::prepare_pseudo_pure(0, s).rho;
  Calibration cal;
  double reference_peak_freq[2] = {0.0, 0.0};
  for (int spin = 1; spin <= 2; ++spin) {
    AcquisitionConfig c = cfg;
    c.observe_spin = spin;
    c.noise_amplitude = 0.0;
    const Spectrum sp = readout(reference, c, s);
    int imax = 0;
    for (int i = 1; i < static_cast<int>(sp.amps.size()); ++i) {
      if (std::abs(sp.amps[i]) > std::abs(sp.amps[imax])) imax = i;
    }
    const double peak_mag = std::abs(sp.amps[imax]);
    if (peak_mag <= 0.0) {
      throw std::runtime_error("calibrate: reference spectrum is empty");
    }
    cal.phase_rad[spin - 1] = -std::arg(sp.amps[imax]);
    cal.threshold[spin - 1] = 0.2 * peak_mag;
    reference_peak_freq[spin - 1] = sp.freqs_hz[imax];
  }
  // in |uu> the partner of each observed spin is up, so the reference peak
  // position itself fixes the doublet convention
  if (reference_peak_freq[0] * reference_peak_freq[1] <= 0.0) {
    throw std::runtime_error(
        "calibrate: inconsistent doublet convention between spins");
  }
  cal.partner_up_freq_hz = reference_peak_freq[0];
  return cal;
}

namespace {

StateLabel label_from_single_peak(int observe_spin, const Peak& peak,
                                  const Calibration& cal) {
  if (peak.freq_hz == 0.0 || peak.amplitude == 0.0) {
    return StateLabel::ambiguous;
  }
  const bool observed_up = peak.amplitude > 0.0;
  const bool partner_up = peak.freq_hz * cal.partner_up_freq_hz > 0.0;
  const bool spin1_up = observe_spin == 1 ? observed_up : partner_up;
  const bool spin2_up = observe_spin == 1 ? partner_up : observed_up;
  return state_label_from_index((spin1_up ? 0 : 2) + (spin2_up ? 0 : 1));
}

}  // namespace

Spectrum phased(const Spectrum& sp, const Calibration& cal) {
  const Complex phase =
      std::polar(1.0, cal.phase_rad[spin_slot(sp.observe_spin)]);
  Spectrum out = sp;
  for (Complex& amp : out.amps) amp *= phase;
  return out;
}

PeakList detect_peaks(const Spectrum& sp, const Calibration& cal) {
  const int slot = spin_slot(sp.observe_spin);
  const Complex phase = std::polar(1.0, cal.phase_rad[slot]);
  const double threshold = cal.threshold[slot];

  const int n = static_cast<int>(sp.amps.size());
  std::vector<double> real(n);
  for (int i = 0; i < n; ++i) real[i] = (phase * sp.amps[i]).real();

  PeakList out;
  for (int i = 1; i + 1 < n; ++i) {
    const double v = std::abs(real[i]);
    if (v >= threshold && v >= std::abs(real[i - 1]) &&
        v > std::abs(real[i + 1])) {
      out.peaks.push_back(Peak{sp.freqs_hz[i], real[i]});
    }
  }
  out.classification =
      out.peaks.size() == 1
          ? label_from_single_peak(sp.observe_spin, out.peaks.front(), cal)
          : StateLabel::ambiguous;
  return out;
}

StateLabel classify_experiment(const nmr::DeviationMatrix& rho,
                               const AcquisitionConfig& cfg,
                               const nmr::SpinSystem& s,
                               const Calibration& cal) {
  StateLabel labels[2];
  for (int spin = 1; spin <= 2; ++spin) {
    AcquisitionConfig c = cfg;
    c.observe_spin = spin;
    labels[spin - 1] = detect_peaks(readout(rho, c, s), cal).classification;
  }
  if (labels[0] == StateLabel::ambiguous || labels[0] != labels[1]) {
    return StateLabel::ambiguous;
  }
  return labels[0];
}

std::string to_string(StateLabel label) {
  switch (label) {
    case StateLabel::uu: return "uu";
    case StateLabel::ud: return "ud";
    case StateLabel::du: return "du";
    case StateLabel::dd: return "dd";
    case StateLabel::ambiguous: return "ambiguous";
  }
  throw std::logic_error("to_string: bad StateLabel");
}

StateLabel state_label_from_string(const std::string& name) {
  if (name == "uu") return StateLabel::uu;
  if (name == "ud") return StateLabel::ud;
  if (name == "du") return StateLabel::du;
  if (name == "dd") return StateLabel::dd;
  if (name == "ambiguous") return StateLabel::ambiguous;
  throw std::invalid_argument("unknown state label '" + name +
                              "' (expected uu|ud|du|dd)");
}

int state_index(StateLabel label) {
  const int i = static_cast<int>(label);
  if (i < 0 || i > 3) {
    throw std::invalid_argument("state_index: label has no basis index");
  }
  return i;
}

StateLabel state_label_from_index(int index) {
  if (index < 0 || index > 3) {
    throw std::out_of_range("state_label_from_index: index 0..3");
  }
  return static_cast<StateLabel>(index);
}

void write_csv(const Spectrum& sp, std::ostream& out) {
  out << "freq_hz,real,imag\n";
  char line[128];
  for (std::size_t i = 0; i < sp.amps.size(); ++i) {
    std::snprintf(line, sizeof line, "%.10g,%.10g,%.10g\n", sp.freqs_hz[i],
                  sp.amps[i].real(), sp.amps[i].imag());
    out << line;
  }
}

std::string to_json(const PeakList& peaks) {
  nlohmann::json j;
  j["peaks"] = nlohmann::json::array();
  for (const Peak& p : peaks.peaks) {
    j["peaks"].push_back({{"freq_hz", p.freq_hz}, {"amplitude", p.amplitude}});
  }
  j["classification"] = to_string(peaks.classification);
  return j.dump(2);
}

}  // namespace gnsim::spectro

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

#include <iosfwd>
#include <string>
#include <vector>

#include "gnsim/nmr.hpp"

namespace gnsim::spectro {

using qlinalg::Complex;

// Synthetic acquisition parameters. The defaults put the J doublet at
// +-107.5 Hz on a 2000 Hz window with ~1 Hz lines.
struct AcquisitionConfig {
  int n_points = 4096;
  double dwell_s = 1.0 / 2000.0;  // seconds per sample
  double t2_s = 0.3;              // phenomenological decay during acquisition
  int observe_spin = 1;           // 1 or 2
  double noise_amplitude = 0.0;   // additive gaussian noise on the FID
  unsigned long long noise_seed = 0;

  // both doublet positions must be representable (1/dwell > 2J) and
  // resolvable (n_points * dwell >= 5/J)
  void validate(const nmr::SpinSystem& s) const;
};

// frequency-domain readout: Hz offsets in the observed spin's rotating
// frame, centered at zero
struct Spectrum {
  std::vector<double> freqs_hz;
  std::vector<Complex> amps;
  int observe_spin = 1;
};

struct Peak {
  double freq_hz = 0.0;
  double amplitude = 0.0;  // signed, after phasing
};

enum class StateLabel { uu, ud, du, dd, ambiguous };

std::string to_string(StateLabel label);
StateLabel state_label_from_string(const std::string& name);
int state_index(StateLabel label);               // uu=0, ud=1, du=2, dd=3
StateLabel state_label_from_index(int index);

struct PeakList {
  std::vector<Peak> peaks;
  StateLabel classification = StateLabel::ambiguous;
};

// Conventions derived once from the pseudo-pure |uu> reference and reused
// for every experiment: the phase making the reference peak positive-real,
// the 20%-of-reference detection threshold (per observed spin), and which
// side of the doublet means "partner spin up".
struct Calibration {
  double phase_rad[2] = {0.0, 0.0};       // [spin1, spin2]
  double threshold[2] = {0.0, 0.0};
  double partner_up_freq_hz = 0.0;
};

Calibration calibrate(const nmr::SpinSystem& s, const AcquisitionConfig& cfg);

// FID samples f(t_n) = tr(rho(t_n) (Ix^k + i Iy^k)) e^{-t_n/T2} after the
// spin-selective readout pulse [-pi/2]_y^k, with rho evolving under the
// rotating-frame J coupling
std::vector<Complex> synthesize_fid(const nmr::DeviationMatrix& rho,
                                    const AcquisitionConfig& cfg,
                                    const nmr::SpinSystem& s);

// forward DFT of the FID with the zero-frequency bin centered
Spectrum fid_to_spectrum(const std::vector<Complex>& fid,
                         const AcquisitionConfig& cfg);

Spectrum readout(const nmr::DeviationMatrix& rho, const AcquisitionConfig& cfg,
                 const nmr::SpinSystem& s);

// the spectrum rotated by the observed spin's calibration phase, so the
// real part is the absorption-mode signal the figures show
Spectrum phased(const Spectrum& sp, const Calibration& cal);

// phases the spectrum, finds local extrema of the real part above the
// calibrated threshold, and classifies: the peak's side of the doublet
// encodes the partner spin's state, its sign the observed spin's state;
// anything but exactly one peak is ambiguous
PeakList detect_peaks(const Spectrum& sp, const Calibration& cal);

// reads out both spins and fuses the two peak lists; disagreement or an
// ambiguous spin reads as ambiguous
StateLabel classify_experiment(const nmr::DeviationMatrix& rho,
                               const AcquisitionConfig& cfg,
                               const nmr::SpinSystem& s,
                               const Calibration& cal);

// CSV with header freq_hz,real,imag
void write_csv(const Spectrum& sp, std::ostream& out);

// JSON text {"peaks": [{"freq_hz": ..., "amplitude": ...}], "classification": ...}
std::string to_json(const PeakList& peaks);

}  // namespace gnsim::spectro

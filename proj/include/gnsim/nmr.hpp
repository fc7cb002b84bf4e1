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

#include <string>
#include <vector>

#include "gnsim/qlinalg.hpp"

namespace gnsim::nmr {

using qlinalg::Axis;
using qlinalg::CMatrix;
using qlinalg::Complex;

// Two heteronuclear spins 1/2 coupled by a scalar J. Spin 1 is the
// low-gamma nucleus (13C in the chloroform sample), spin 2 the high-gamma
// one (1H). The basis is fixed globally as |uu>, |ud>, |du>, |dd> with
// spin 1 the left tensor factor; all operators below use this ordering.
//
// Dynamics are simulated in the doubly rotating frame: the Zeeman terms of
// the lab Hamiltonian vanish there and free evolution is driven by the
// J coupling alone. Pulses are ideal (instantaneous, perfectly selective).
struct SpinSystem {
  double nu1_mhz = 125.76;                  // 13C Larmor frequency
  double nu2_mhz = 500.13;                  // 1H Larmor frequency
  double j_hz = 215.0;                      // scalar coupling
  double gamma_ratio = 125.76 / 500.13;     // gamma_1 / gamma_2

  static SpinSystem chloroform() { return SpinSystem{}; }
  void validate() const;
};

enum class RfTarget { spin1, spin2, both };

// One event of a pulse program: an rf pulse [angle]_axis^target, a free
// evolution for a multiple of 1/J, or a z-gradient crusher.
struct PulseEvent {
  enum class Kind { rf, delay, gradient };

  Kind kind = Kind::rf;
  RfTarget target = RfTarget::both;  // rf only
  Axis axis = Axis::x;               // rf only, x or y
  double angle_rad = 0.0;            // rf only, signed
  double delay_inv_j = 0.0;          // delay only, units of 1/J

  static PulseEvent rf(RfTarget target, Axis axis, double angle_rad);
  static PulseEvent delay(double multiple_of_inv_j);
  static PulseEvent gradient();
};

// events in chronological order: events.front() acts first
struct PulseSequence {
  std::vector<PulseEvent> events;
  std::string label;
};

// Traceless hermitian 4x4 state of the simulator (the identity part of the
// density matrix is unobservable and dropped).
struct DeviationMatrix {
  explicit DeviationMatrix(CMatrix mat);  // validates
  CMatrix m;
};

// sigma_a/2 on the requested spin tensored with the identity on the other
CMatrix spin_operator(int spin, Axis axis);

// propagator e^{i angle I_axis^target} of an rf event; for target `both`
// the product of the two commuting single-spin propagators
CMatrix rf_propagator(const PulseEvent& e);

// free evolution e^{-i 2 pi J t Iz1 Iz2} for t = multiple_of_inv_j / J
CMatrix delay_propagator(double multiple_of_inv_j, const SpinSystem& s);

// product of the event propagators, first chronological event rightmost;
// throws if the sequence contains a gradient (a channel, not a unitary)
CMatrix compile_sequence(const PulseSequence& seq, const SpinSystem& s);

// folds the events chronologically over the state: unitary events act by
// conjugation, gradients by gradient_crush
DeviationMatrix apply_sequence(const DeviationMatrix& rho,
                               const PulseSequence& seq, const SpinSystem& s);

// z-gradient crusher: zeroes every element whose coherence order
// (difference of total z quantum numbers of bra and ket states) is nonzero;
// populations and zero-quantum coherences survive. Idempotent.
DeviationMatrix gradient_crush(const DeviationMatrix& rho);

// total z quantum number of basis state i, and the coherence order of
// element (m, n)
double total_fz(int i);
int coherence_order(int m, int n);

// thermal deviation state gamma_1 Iz1 + gamma_2 Iz2 in units gamma_2 = 1
DeviationMatrix equilibrium_state(const SpinSystem& s);

struct PrepResult {
  DeviationMatrix rho;
  PulseSequence sequence;
};

// Spatial-averaging preparation of the pseudo-pure state for basis state
// `target` (0..3): the rf+gradient sequence
//   [alpha]_x^2 [grad]_z [pi/4]_x^1 1/4J [pi]_x^1 [pi]_x^2 1/4J
//   [-pi/4]_y^1 [grad]_z,   alpha = arccos(gamma_1 / 2 gamma_2),
// applied to the equilibrium state, followed by pi flips selecting the
// target. The result is diagonal and proportional to |target><target| - 1/4
// (the observed proportionality constant is -gamma_ratio).
PrepResult prepare_pseudo_pure(int target, const SpinSystem& s);

enum class NamedSequence { i0, i1, i2, i3, u1, u2, u3, prep };

// the built-in pulse decompositions, normalized to chronological order
// (operator strings read right-to-left, the preparation line
// left-to-right); prep needs the spin system for its alpha pulse
PulseSequence builtin_sequence(NamedSequence name,
                               const SpinSystem& s = SpinSystem::chloroform());

// every rf angle of magnitude pi/2 negated; other events untouched
PulseSequence sign_swap(const PulseSequence& seq);

// reversed event order with negated rf angles; defined for rf-only
// sequences (delays and gradients have no inverse pulse)
PulseSequence inverse_sequence(const PulseSequence& seq);

// pulse program of the whole search u Q^k: k repetitions of
// [u, I_tau, u^dag, I_gamma] followed by a final u, chronological order
PulseSequence search_sequence(NamedSequence u, int gamma, int tau,
                              int repetitions,
                              const SpinSystem& s = SpinSystem::chloroform());

// line-oriented text form, one event per line:
//   rf <1|2|both> <x|y> <angle_rad>
//   delay <multiple_of_inv_J>
//   grad
std::string to_text(const PulseSequence& seq);
PulseSequence sequence_from_text(const std::string& text,
                                 const std::string& label = "");

}  // namespace gnsim::nmr

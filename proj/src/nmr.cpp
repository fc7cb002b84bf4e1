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

#include "gnsim/nmr.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gnsim::nmr {

namespace {

const double kPi = std::acos(-1.0);

CMatrix identity2() { return CMatrix::Identity(2, 2); }

// lift a 2x2 operator onto spin 1 or 2 of the pair
CMatrix on_spin(int spin, const CMatrix& op) {
  if (spin == 1) return qlinalg::kron(op, identity2());
  if (spin == 2) return qlinalg::kron(identity2(), op);
  throw std::invalid_argument("spin index must be 1 or 2");
}

}  // namespace

void SpinSystem::validate() const {
  if (!(j_hz > 0.0) || !(nu1_mhz > 0.0) || !(nu2_mhz > 0.0)) {
    throw std::invalid_argument("SpinSystem: frequencies and J must be > 0");
  }
  // the homonuclear limit gamma_ratio = 1 is admitted (alpha = pi/3)
  if (!(gamma_ratio > 0.0) || !(gamma_ratio <= 1.0)) {
    throw std::invalid_argument("SpinSystem: gamma_ratio must be in (0, 1]");
  }
}

PulseEvent PulseEvent::rf(RfTarget target, Axis axis, double angle_rad) {
  if (axis == Axis::z) {
    throw std::invalid_argument("rf pulses are along x or y only");
  }
  if (!std::isfinite(angle_rad)) {
    throw std::invalid_argument("rf angle must be finite");
  }
  PulseEvent e;
  e.kind = Kind::rf;
  e.target = target;
  e.axis = axis;
  e.angle_rad = angle_rad;
  return e;
}

PulseEvent PulseEvent::delay(double multiple_of_inv_j) {
  if (multiple_of_inv_j < 0.0) {
    throw std::invalid_argument("delay duration must be >= 0");
  }
  PulseEvent e;
  e.kind = Kind::delay;
  e.delay_inv_j = multiple_of_inv_j;
  return e;
}

PulseEvent PulseEvent::gradient() {
  PulseEvent e;
  e.kind = Kind::gradient;
  return e;
}

DeviationMatrix::DeviationMatrix(CMatrix mat) : m(std::move(mat)) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw std::invalid_argument("DeviationMatrix: must be 4x4");
  }
  if (!qlinalg::is_hermitian(m, qlinalg::kAnalyticTol)) {
    throw std::invalid_argument("DeviationMatrix: not hermitian at 1e-12");
  }
  if (std::abs(m.trace()) > qlinalg::kAnalyticTol) {
    throw std::invalid_argument("DeviationMatrix: not traceless at 1e-12");
  }
}

CMatrix spin_operator(int spin, Axis axis) {
  const Complex j(0.0, 1.0);
  CMatrix half_sigma(2, 2);
  switch (axis) {
    case Axis::x: half_sigma << 0, 0.5, 0.5, 0; break;
    case Axis::y: half_sigma << 0, -0.5 * j, 0.5 * j, 0; break;
    case Axis::z: half_sigma << 0.5, 0, 0, -0.5; break;
  }
  return on_spin(spin, half_sigma);
}

CMatrix rf_propagator(const PulseEvent& e) {
  if (e.kind != PulseEvent::Kind::rf) {
    throw std::invalid_argument("rf_propagator: event is not an rf pulse");
  }
  const CMatrix u = qlinalg::exp_su2(e.axis, e.angle_rad);
  switch (e.target) {
    case RfTarget::spin1: return on_spin(1, u);
    case RfTarget::spin2: return on_spin(2, u);
    case RfTarget::both:  return qlinalg::kron(u, u);
  }
  throw std::logic_error("rf_propagator: bad target");
}

CMatrix delay_propagator(double multiple_of_inv_j, const SpinSystem& s) {
  if (multiple_of_inv_j < 0.0) {
    throw std::invalid_argument("delay_propagator: negative duration");
  }
  s.validate();
  // e^{-i 2 pi J t Iz1 Iz2} with t = m/J: the coupling sets the phase scale
  // 2 pi m regardless of J's value
  const CMatrix zz = spin_operator(1, Axis::z) * spin_operator(2, Axis::z);
  return qlinalg::exp_diag_generator(zz, 2.0 * kPi * multiple_of_inv_j);
}

namespace {

CMatrix event_propagator(const PulseEvent& e, const SpinSystem& s) {
  switch (e.kind) {
    case PulseEvent::Kind::rf:    return rf_propagator(e);
    case PulseEvent::Kind::delay: return delay_propagator(e.delay_inv_j, s);
    case PulseEvent::Kind::gradient:
      throw std::invalid_argument(
          "sequence is a channel, not a unitary; use apply_sequence");
  }
  throw std::logic_error("event_propagator: bad kind");
}

}  // namespace

CMatrix compile_sequence(const PulseSequence& seq, const SpinSystem& s) {
  CMatrix product = CMatrix::Identity(4, 4);
  for (const PulseEvent& e : seq.events) {
    product = event_propagator(e, s) * product;
  }
  return product;
}

DeviationMatrix apply_sequence(const DeviationMatrix& rho,
                               const PulseSequence& seq, const SpinSystem& s) {
  CMatrix m = rho.m;
  for (const PulseEvent& e : seq.events) {
    if (e.kind == PulseEvent::Kind::gradient) {
      m = gradient_crush(DeviationMatrix(m)).m;
    } else {
      const CMatrix p = event_propagator(e, s);
      m = p * m * p.adjoint();
      // keep conjugation results exactly hermitian against roundoff drift
      m = 0.5 * (m + CMatrix(m.adjoint()));
    }
  }
  return DeviationMatrix(m);
}

double total_fz(int i) {
  if (i < 0 || i > 3) throw std::out_of_range("total_fz: basis index 0..3");
  return (i < 2 ? 0.5 : -0.5) + (i % 2 == 0 ? 0.5 : -0.5);
}

int coherence_order(int m, int n) {
  return static_cast<int>(std::lround(total_fz(m) - total_fz(n)));
}

DeviationMatrix gradient_crush(const DeviationMatrix& rho) {
  CMatrix m = rho.m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (coherence_order(r, c) != 0) m(r, c) = 0.0;
    }
  }
  return DeviationMatrix(m);
}

DeviationMatrix equilibrium_state(const SpinSystem& s) {
  s.validate();
  return DeviationMatrix(s.gamma_ratio * spin_operator(1, Axis::z) +
                         spin_operator(2, Axis::z));
}

PrepResult prepare_pseudo_pure(int target, const SpinSystem& s) {
  if (target < 0 || target > 3) {
    throw std::out_of_range("prepare_pseudo_pure: target must be 0..3");
  }
  PulseSequence seq = builtin_sequence(NamedSequence::prep, s);
  // pi flips turning |uu> into the other pseudo-pure states
  if (target == 1 || target == 3) {
    seq.events.push_back(PulseEvent::rf(RfTarget::spin2, Axis::x, kPi));
  }
  if (target == 2 || target == 3) {
    seq.events.push_back(PulseEvent::rf(RfTarget::spin1, Axis::x, kPi));
  }
  seq.label = "prep-" + std::to_string(target);
  return PrepResult{apply_sequence(equilibrium_state(s), seq, s), seq};
}

namespace {

// I_i = Y1(p2)Y2(p2) X1(s1 p2)X2(s2 p2) Y1(-p2)Y2(-p2) [1/2J]; the
// operator string reads right to left, so the delay comes first
PulseSequence reflection_sequence(int i) {
  const double p2 = kPi / 2;
  const double s1 = (i == 1 || i == 3) ? 1.0 : -1.0;
  const double s2 = (i == 2 || i == 3) ? 1.0 : -1.0;
  PulseSequence seq;
  seq.label = "I" + std::to_string(i);
  seq.events = {
      PulseEvent::delay(0.5),
      PulseEvent::rf(RfTarget::both, Axis::y, -p2),
      PulseEvent::rf(RfTarget::spin1, Axis::x, s1 * p2),
      PulseEvent::rf(RfTarget::spin2, Axis::x, s2 * p2),
      PulseEvent::rf(RfTarget::both, Axis::y, p2),
  };
  return seq;
}

PulseSequence prep_sequence(const SpinSystem& s) {
  s.validate();
  const double alpha = std::acos(s.gamma_ratio / 2.0);
  PulseSequence seq;
  seq.label = "prep";
  seq.events = {
      PulseEvent::rf(RfTarget::spin2, Axis::x, alpha),
      PulseEvent::gradient(),
      PulseEvent::rf(RfTarget::spin1, Axis::x, kPi / 4),
      PulseEvent::delay(0.25),
      PulseEvent::rf(RfTarget::spin1, Axis::x, kPi),
      PulseEvent::rf(RfTarget::spin2, Axis::x, kPi),
      PulseEvent::delay(0.25),
      PulseEvent::rf(RfTarget::spin1, Axis::y, -kPi / 4),
      PulseEvent::gradient(),
  };
  return seq;
}

}  // namespace

PulseSequence builtin_sequence(NamedSequence name, const SpinSystem& s) {
  const double p2 = kPi / 2;
  PulseSequence seq;
  switch (name) {
    case NamedSequence::i0: return reflection_sequence(0);
    case NamedSequence::i1: return reflection_sequence(1);
    case NamedSequence::i2: return reflection_sequence(2);
    case NamedSequence::i3: return reflection_sequence(3);
    case NamedSequence::u1:
      // U1 = X1(pi)X2(pi) Y1(-pi/2)Y2(-pi/2), right to left
      seq.label = "U1";
      seq.events = {PulseEvent::rf(RfTarget::both, Axis::y, -p2),
                    PulseEvent::rf(RfTarget::both, Axis::x, kPi)};
      return seq;
    case NamedSequence::u2:
      seq.label = "U2";
      seq.events = {PulseEvent::rf(RfTarget::both, Axis::y, p2)};
      return seq;
    case NamedSequence::u3:
      seq.label = "U3";
      seq.events = {PulseEvent::rf(RfTarget::both, Axis::x, p2)};
      return seq;
    case NamedSequence::prep:
      return prep_sequence(s);
  }
  throw std::invalid_argument("builtin_sequence: unknown name");
}

PulseSequence sign_swap(const PulseSequence& seq) {
  PulseSequence out = seq;
  for (PulseEvent& e : out.events) {
    if (e.kind == PulseEvent::Kind::rf &&
        std::abs(std::abs(e.angle_rad) - kPi / 2) < 1e-12) {
      e.angle_rad = -e.angle_rad;
    }
  }
  return out;
}

PulseSequence inverse_sequence(const PulseSequence& seq) {
  PulseSequence out;
  out.label = seq.label.empty() ? "" : seq.label + "-inv";
  out.events.reserve(seq.events.size());
  for (auto it = seq.events.rbegin(); it != seq.events.rend(); ++it) {
    if (it->kind != PulseEvent::Kind::rf) {
      throw std::invalid_argument(
          "inverse_sequence: only rf-only sequences are invertible");
    }
    out.events.push_back(
        PulseEvent::rf(it->target, it->axis, -it->angle_rad));
  }
  return out;
}

PulseSequence search_sequence(NamedSequence u, int gamma, int tau,
                              int repetitions, const SpinSystem& s) {
  if (u != NamedSequence::u1 && u != NamedSequence::u2 &&
      u != NamedSequence::u3) {
    throw std::invalid_argument("search_sequence: u must be U1, U2 or U3");
  }
  if (gamma < 0 || gamma > 3 || tau < 0 || tau > 3) {
    throw std::out_of_range("search_sequence: basis index 0..3");
  }
  if (repetitions < 0) {
    throw std::invalid_argument("search_sequence: negative repetition count");
  }
  const PulseSequence seq_u = builtin_sequence(u, s);
  const PulseSequence seq_u_inv = inverse_sequence(seq_u);
  // NamedSequence::i0..i3 map onto basis indices 0..3
  const PulseSequence i_gamma =
      builtin_sequence(static_cast<NamedSequence>(gamma), s);
  const PulseSequence i_tau =
      builtin_sequence(static_cast<NamedSequence>(tau), s);

  PulseSequence out;
  out.label = seq_u.label + "-search-g" + std::to_string(gamma) + "-t" +
              std::to_string(tau);
  auto append = [&out](const PulseSequence& part) {
    out.events.insert(out.events.end(), part.events.begin(),
                      part.events.end());
  };
  // u Q^k with Q = -I_gamma u^dag I_tau u; rightmost factors act first
  for (int k = 0; k < repetitions; ++k) {
    append(seq_u);
    append(i_tau);
    append(seq_u_inv);
    append(i_gamma);
  }
  append(seq_u);
  return out;
}

std::string to_text(const PulseSequence& seq) {
  std::ostringstream out;
  out.precision(17);
  for (const PulseEvent& e : seq.events) {
    switch (e.kind) {
      case PulseEvent::Kind::rf:
        out << "rf "
            << (e.target == RfTarget::spin1   ? "1"
                : e.target == RfTarget::spin2 ? "2"
                                              : "both")
            << ' ' << (e.axis == Axis::x ? 'x' : 'y') << ' ' << e.angle_rad
            << '\n';
        break;
      case PulseEvent::Kind::delay:
        out << "delay " << e.delay_inv_j << '\n';
        break;
      case PulseEvent::Kind::gradient:
        out << "grad\n";
        break;
    }
  }
  return out.str();
}

PulseSequence sequence_from_text(const std::string& text,
                                 const std::string& label) {
  PulseSequence seq;
  seq.label = label;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string kind;
    fields >> kind;
    const auto fail = [&](const std::string& why) {
      throw std::invalid_argument("sequence line " + std::to_string(lineno) +
                                  ": " + why);
    };
    if (kind == "rf") {
      std::string target, axis;
      double angle = 0.0;
      if (!(fields >> target >> axis >> angle)) fail("malformed rf event");
      RfTarget t;
      if (target == "1") t = RfTarget::spin1;
      else if (target == "2") t = RfTarget::spin2;
      else if (target == "both") t = RfTarget::both;
      else { fail("unknown rf target '" + target + "'"); return seq; }
      if (axis != "x" && axis != "y") fail("unknown rf axis '" + axis + "'");
      seq.events.push_back(
          PulseEvent::rf(t, axis == "x" ? Axis::x : Axis::y, angle));
    } else if (kind == "delay") {
      double d = 0.0;
      if (!(fields >> d)) fail("malformed delay event");
      seq.events.push_back(PulseEvent::delay(d));
    } else if (kind == "grad") {
      seq.events.push_back(PulseEvent::gradient());
    } else {
      fail("unknown event kind '" + kind + "'");
    }
  }
  return seq;
}

}  // namespace gnsim::nmr

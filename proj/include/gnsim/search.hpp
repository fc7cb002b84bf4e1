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

#include <optional>
#include <vector>

#include "gnsim/qlinalg.hpp"

namespace gnsim::search {

using qlinalg::CMatrix;
using qlinalg::Complex;
using qlinalg::CVector;

// Amplitude-amplification search: an arbitrary unitary u plays the role the
// Walsh-Hadamard transform plays in plain Grover search. The source |gamma>
// and target |tau> are computational basis states; the relevant amplitude is
// u(tau, gamma).
struct SearchProblem {
  CMatrix u;
  Eigen::Index gamma_index = 0;
  Eigen::Index tau_index = 0;

  Eigen::Index dim() const { return u.rows(); }
  // throws unless u is unitary (1e-10) and both indices are in range
  void validate() const;
};

struct SearchReport {
  Complex amplitude_tau_gamma;
  int k_opt = 0;
  double success_probability = 0.0;
  CVector final_state;
  // entry j = probability of |tau> after u Q^j |gamma>, j = 0..k
  std::vector<double> per_iteration_probabilities;
};

// diagonal reflection I_i = 1 - 2|i><i|
CMatrix reflection(Eigen::Index i, Eigen::Index n);

// the iterate Q = -I_gamma u^dag I_tau u (u^{-1} realized as the adjoint)
CMatrix grover_q(const SearchProblem& p);

// optimal repetition count for amplitude |u(tau,gamma)|:
//   k_opt = round((pi/2 - theta) / (2 theta)), theta = arcsin|u(tau,gamma)|,
// the k maximizing sin^2((2k+1) theta) over the principal rotation window.
// For small amplitudes this is pi / (4 |u(tau,gamma)|) to within one step.
int iteration_count_for_amplitude(double amplitude);
int iteration_count(const SearchProblem& p);

// applies u Q^k to |gamma> (k = iteration_count(p) unless overridden) and
// reports the target amplitude trajectory
SearchReport run_search(const SearchProblem& p,
                        std::optional<int> iterations = std::nullopt);

enum class BuiltinU { u1, u2, u3 };

// the three 4x4 search unitaries used in the experiments; every entry has
// modulus 1/2, so every (gamma, tau) pair is found with one iterate
CMatrix builtin_u(BuiltinU which);

// unitary equal to the identity except for a rotation in the (gamma, tau)
// plane with u(tau, gamma) = amplitude; used to realize prescribed
// amplitudes in sweeps and tests
CMatrix rotation_unitary(Eigen::Index dim, Eigen::Index gamma,
                         Eigen::Index tau, double amplitude);

}  // namespace gnsim::search

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

#include "gnsim/search.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gnsim::search {

void SearchProblem::validate() const {
  if (u.rows() != u.cols() || u.rows() < 1) {
    throw std::invalid_argument("SearchProblem: u must be square");
  }
  if (!qlinalg::is_unitary(u)) {
    throw std::invalid_argument("SearchProblem: u is not unitary at 1e-10");
  }
  if (gamma_index < 0 || gamma_index >= dim() || tau_index < 0 ||
      tau_index >= dim()) {
    throw std::out_of_range("SearchProblem: basis index outside dimension");
  }
}

CMatrix reflection(Eigen::Index i, Eigen::Index n) {
  if (i < 0 || i >= n) {
    throw std::out_of_range("reflection: index " + std::to_string(i) +
                            " outside dimension " + std::to_string(n));
  }
  CMatrix m = CMatrix::Identity(n, n);
  m(i, i) = -1.0;
  return m;
}

CMatrix grover_q(const SearchProblem& p) {
  p.validate();
  return -reflection(p.gamma_index, p.dim()) * p.u.adjoint() *
         reflection(p.tau_index, p.dim()) * p.u;
}

int iteration_count_for_amplitude(double amplitude) {
  if (!(amplitude > 0.0)) {
    throw std::domain_error(
        "iteration_count: target unreachable from source under U");
  }
  if (amplitude > 1.0 + qlinalg::kAnalyticTol) {
    throw std::domain_error("iteration_count: amplitude exceeds 1");
  }
  const double theta = std::asin(std::min(amplitude, 1.0));
  return static_cast<int>(
      std::llround((M_PI / 2 - theta) / (2 * theta)));
}

int iteration_count(const SearchProblem& p) {
  p.validate();
  return iteration_count_for_amplitude(
      std::abs(p.u(p.tau_index, p.gamma_index)));
}

SearchReport run_search(const SearchProblem& p, std::optional<int> iterations) {
  p.validate();
  SearchReport report;
  report.amplitude_tau_gamma = p.u(p.tau_index, p.gamma_index);
  report.k_opt = iterations ? *iterations : iteration_count(p);
  if (report.k_opt < 0) {
    throw std::invalid_argument("run_search: negative iteration count");
  }

  const CMatrix q = grover_q(p);
  CVector state = qlinalg::basis_state(p.gamma_index, p.dim());
  report.per_iteration_probabilities.reserve(report.k_opt + 1);
  for (int j = 0; j <= report.k_opt; ++j) {
    report.final_state = p.u * state;
    report.per_iteration_probabilities.push_back(
        std::norm(report.final_state(p.tau_index)));
    if (j < report.k_opt) state = q * state;
  }
  report.success_probability = report.per_iteration_probabilities.back();
  return report;
}

CMatrix builtin_u(BuiltinU which) {
  const Complex j(0.0, 1.0);
  CMatrix m(4, 4);
  switch (which) {
    case BuiltinU::u1:
      m << -1, -1, -1, -1,
           -1,  1, -1,  1,
           -1, -1,  1,  1,
           -1,  1,  1, -1;
      break;
    case BuiltinU::u2:
      m <<  1,  1,  1,  1,
           -1,  1, -1,  1,
           -1, -1,  1,  1,
            1, -1, -1,  1;
      break;
    case BuiltinU::u3:
      m <<  1,  j,  j, -1,
            j,  1, -1,  j,
            j, -1,  1,  j,
           -1,  j,  j,  1;
      break;
  }
  return 0.5 * m;
}

CMatrix rotation_unitary(Eigen::Index dim, Eigen::Index gamma,
                         Eigen::Index tau, double amplitude) {
  if (gamma < 0 || gamma >= dim || tau < 0 || tau >= dim || gamma == tau) {
    throw std::invalid_argument(
        "rotation_unitary: need distinct in-range gamma and tau");
  }
  if (amplitude < 0.0 || amplitude > 1.0) {
    throw std::invalid_argument("rotation_unitary: amplitude outside [0, 1]");
  }
  const double theta = std::asin(amplitude);
  CMatrix m = CMatrix::Identity(dim, dim);
  m(gamma, gamma) = std::cos(theta);
  m(tau, tau) = std::cos(theta);
  m(tau, gamma) = std::sin(theta);
  m(gamma, tau) = -std::sin(theta);
  return m;
}

}  // namespace gnsim::search

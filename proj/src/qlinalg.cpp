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

#include "gnsim/qlinalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace gnsim::qlinalg {

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  return max_abs(a - b);
}

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  CMatrix residual = m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols());
  return max_abs(residual) <= tol;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m, m.adjoint()) <= tol;
}

bool is_normalized(const CVector& v, double tol) {
  return std::abs(v.squaredNorm() - 1.0) <= tol;
}

CVector basis_state(Eigen::Index i, Eigen::Index n) {
  if (i < 0 || i >= n) {
    throw std::out_of_range("basis_state: index " + std::to_string(i) +
                            " outside dimension " + std::to_string(n));
  }
  CVector v = CVector::Zero(n);
  v(i) = 1.0;
  return v;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

CMatrix matmul_chain(const std::vector<CMatrix>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("matmul_chain: empty factor list");
  }
  CMatrix result = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    if (result.cols() != factors[i].rows()) {
      throw std::invalid_argument(
          "matmul_chain: dimension mismatch between factors " +
          std::to_string(i - 1) + " and " + std::to_string(i));
    }
    result = result * factors[i];
  }
  return result;
}

PhaseMatch equal_up_to_global_phase(const CMatrix& a, const CMatrix& b,
                                    double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("equal_up_to_global_phase: shape mismatch");
  }
  if (max_abs(b) == 0.0) {
    throw std::invalid_argument("equal_up_to_global_phase: b is all-zero");
  }
  PhaseMatch match;
  const Complex overlap = (b.adjoint() * a).trace();
  // the overlap fixes the candidate phase; if it vanishes for nonzero inputs
  // the matrices are orthogonal and no single phase can align them
  if (std::abs(overlap) <= 1e-14 * max_abs(a) * max_abs(b) *
                               static_cast<double>(a.size())) {
    match.phase_defined = false;
    match.residual = max_abs_diff(a, b);
    return match;
  }
  match.phase = std::arg(overlap);
  match.residual = max_abs(a - std::polar(1.0, match.phase) * b);
  match.equal = match.residual <= tol;
  return match;
}

ScaleMatch real_proportional(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("real_proportional: shape mismatch");
  }
  const double denom = (b.adjoint() * b).trace().real();
  if (denom <= 0.0) {
    throw std::invalid_argument("real_proportional: b is all-zero");
  }
  ScaleMatch match;
  match.scale = (b.adjoint() * a).trace().real() / denom;
  match.residual = max_abs(a - match.scale * b);
  match.proportional = match.residual <= tol;
  return match;
}

CMatrix exp_diag_generator(const CMatrix& d, double scale) {
  if (d.rows() != d.cols() || d.size() == 0) {
    throw std::invalid_argument("exp_diag_generator: matrix not square");
  }
  const CMatrix off = d - CMatrix(d.diagonal().asDiagonal());
  if (max_abs(off) > 1e-14) {
    throw std::invalid_argument("exp_diag_generator: generator not diagonal");
  }
  if (d.diagonal().imag().cwiseAbs().maxCoeff() > kAnalyticTol) {
    throw std::invalid_argument("exp_diag_generator: generator not hermitian");
  }
  CMatrix result = CMatrix::Zero(d.rows(), d.cols());
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    result(i, i) = std::polar(1.0, -scale * d(i, i).real());
  }
  return result;
}

Eigen::Matrix2cd exp_su2(Axis axis, double phi) {
  const Complex j(0.0, 1.0);
  Eigen::Matrix2cd sigma;
  switch (axis) {
    case Axis::x: sigma << 0, 1, 1, 0; break;
    case Axis::y: sigma << 0, -j, j, 0; break;
    case Axis::z: sigma << 1, 0, 0, -1; break;
  }
  return std::cos(phi / 2) * Eigen::Matrix2cd::Identity() +
         j * std::sin(phi / 2) * sigma;
}

}  // namespace gnsim::qlinalg

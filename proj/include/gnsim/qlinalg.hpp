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

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace gnsim::qlinalg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Comparison tolerances: compiled pulse products are checked at 1e-10,
// analytic identities at 1e-12. All norms are entrywise max-modulus.
inline constexpr double kCompiledTol = 1e-10;
inline constexpr double kAnalyticTol = 1e-12;

enum class Axis { x, y, z };

// entrywise max-modulus norm
double max_abs(const CMatrix& m);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

bool is_unitary(const CMatrix& m, double tol = kCompiledTol);
bool is_hermitian(const CMatrix& m, double tol = kAnalyticTol);
bool is_normalized(const CVector& v, double tol = kAnalyticTol);

// column vector |i> in dimension n
CVector basis_state(Eigen::Index i, Eigen::Index n);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// product of the factors in the given order (leftmost element is the
// leftmost factor); throws naming the offending pair on a dimension mismatch
CMatrix matmul_chain(const std::vector<CMatrix>& factors);

struct PhaseMatch {
  bool equal = false;
  // false when tr(b^dag a) = 0 for nonzero a, b: no phase can be aligned
  bool phase_defined = true;
  double phase = 0.0;     // a ~ e^{i phase} b when equal
  double residual = 0.0;  // max_abs(a - e^{i phase} b)
};

// equality up to a global phase factor: true iff max_abs(a - e^{i phi} b) <= tol
// with phi = arg(tr(b^dag a))
PhaseMatch equal_up_to_global_phase(const CMatrix& a, const CMatrix& b,
                                    double tol = kCompiledTol);

struct ScaleMatch {
  bool proportional = false;
  double scale = 0.0;     // a ~ scale * b when proportional
  double residual = 0.0;  // max_abs(a - scale * b)
};

// proportionality by a real scalar: a ~ s b with s = Re tr(b^dag a) / tr(b^dag b)
ScaleMatch real_proportional(const CMatrix& a, const CMatrix& b,
                             double tol = kCompiledTol);

// e^{-i scale * d} for diagonal hermitian d, evaluated entrywise on the
// diagonal (exact; throws if d has off-diagonal entries)
CMatrix exp_diag_generator(const CMatrix& d, double scale);

// e^{i phi I_a} with I_a = sigma_a / 2, via the closed form
// cos(phi/2) I + i sin(phi/2) sigma_a
Eigen::Matrix2cd exp_su2(Axis axis, double phi);

}  // namespace gnsim::qlinalg

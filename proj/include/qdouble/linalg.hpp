// Copyright 2026 The qdouble Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qdouble {

using Cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Default absolute tolerance for complex comparisons.
inline constexpr double kTol = 1e-10;

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double unitarity_residual(const CMatrix& u) {
  return max_abs(u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols()));
}

/// Kronecker product, row index (i, k) -> i * b.rows() + k.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Zeroes entries whose magnitude is below `eps` (keeps exported numbers clean).
inline double chop(double x, double eps = 1e-13) {
  return std::abs(x) < eps ? 0.0 : x;
}

inline Cplx chop(Cplx z, double eps = 1e-13) {
  return {chop(z.real(), eps), chop(z.imag(), eps)};
}

}  // namespace qdouble

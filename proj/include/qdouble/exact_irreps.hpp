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

// Closed-form irreps used to cross-check the numeric construction.

#pragma once

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qdouble/irreps.hpp"

namespace qdouble::exact {

namespace detail {

inline UnitaryIrrep whole_group_irrep(const FiniteGroup& g, int dim, std::vector<CMatrix> mats) {
  UnitaryIrrep r;
  r.dim = dim;
  r.elements.resize(g.order());
  std::iota(r.elements.begin(), r.elements.end(), 0);
  r.local = r.elements;
  r.mats = std::move(mats);
  return r;
}

/// Reads a permutation of {1,2,3} back from its cycle-notation name.
inline std::vector<int> perm_from_name(const std::string& name, int points) {
  std::vector<int> p(points);
  std::iota(p.begin(), p.end(), 0);
  if (name == "e") return p;
  std::vector<int> cyc;
  int num = 0;
  bool in_num = false;
  for (char ch : name) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      num = num * 10 + (ch - '0');
      in_num = true;
      continue;
    }
    if (in_num) {
      cyc.push_back(num - 1);
      num = 0;
      in_num = false;
    }
    if (ch == ')') {
      for (std::size_t i = 0; i < cyc.size(); ++i) p[cyc[i]] = cyc[(i + 1) % cyc.size()];
      cyc.clear();
    }
  }
  return p;
}

}  // namespace detail

/// Irreps of Z_n built by cyclic_group(n): irrep k sends g^a to exp(2πi·k·a/n).
inline std::vector<UnitaryIrrep> cyclic_irreps(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<UnitaryIrrep> out;
  for (int k = 0; k < n; ++k) {
    std::vector<CMatrix> mats(n, CMatrix(1, 1));
    for (int a = 0; a < n; ++a) mats[a](0, 0) = std::polar(1.0, 2 * std::numbers::pi * k * a / n);
    out.push_back(detail::whole_group_irrep(g, 1, std::move(mats)));
  }
  return out;
}

/// Trivial and sign irreps of Z2.
inline std::vector<UnitaryIrrep> z2_irreps(const FiniteGroup& g) {
  if (g.order() != 2) throw std::invalid_argument("z2_irreps needs a group of order 2");
  return cyclic_irreps(g);
}

/// Trivial, sign and standard irreps of S3 as built by symmetric_group(3).
inline std::vector<UnitaryIrrep> s3_irreps(const FiniteGroup& g) {
  if (g.order() != 6) throw std::invalid_argument("s3_irreps needs S3");
  // Orthonormal basis of the sum-zero plane in C^3.
  Eigen::MatrixXd basis(3, 2);
  basis << 1 / std::sqrt(2.0), 1 / std::sqrt(6.0), -1 / std::sqrt(2.0), 1 / std::sqrt(6.0), 0,
      -2 / std::sqrt(6.0);
  std::vector<CMatrix> triv(6, CMatrix::Ones(1, 1)), sign(6, CMatrix(1, 1)), std2(6);
  for (Elem a = 0; a < 6; ++a) {
    auto p = detail::perm_from_name(g.element_name(a), 3);
    Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(3, 3);
    for (int x = 0; x < 3; ++x) perm(p[x], x) = 1.0;
    sign[a](0, 0) = perm.determinant();
    std2[a] = (basis.transpose() * perm * basis).cast<Cplx>();
  }
  return {detail::whole_group_irrep(g, 1, triv), detail::whole_group_irrep(g, 1, sign),
          detail::whole_group_irrep(g, 2, std2)};
}

}  // namespace qdouble::exact

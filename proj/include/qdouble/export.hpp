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
#include <fstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "qdouble/braiding.hpp"
#include "qdouble/quantum_double.hpp"

namespace qdouble {

using Json = nlohmann::json;  // std::map-backed, so keys come out sorted

namespace detail {

/// Rounds to 12 decimals so exports do not depend on the irrep basis chosen by the seed.
inline double clean(double x) {
  x = std::round(chop(x) * 1e12) / 1e12;
  return x == 0.0 ? 0.0 : x;  // no negative zero
}

inline Json complex_json(Cplx z) { return Json::array({clean(z.real()), clean(z.imag())}); }

inline Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// Anyon model: labels, dims, fusion tensor, normalized S (raw trace in `S_raw`), twists, D, group data.
inline Json anyon_model_json(const QuantumDouble& qd) {
  const FiniteGroup& g = qd.group();
  const FusionTable ft = fusion_table(qd);
  const SMatrix s = s_matrix(qd);
  const TMatrix t = t_matrix(qd);
  Json j;
  j["labels"] = ft.labels;
  j["dims"] = qd.dims();
  j["fusion"] = ft.N;
  j["S"] = detail::matrix_json(s.normalized);
  j["S_raw"] = detail::matrix_json(s.raw);
  Json theta = Json::array();
  for (Cplx z : t.theta) theta.push_back(detail::complex_json(z));
  j["T"] = theta;
  j["D"] = s.D;
  Json group;
  group["name"] = g.name();
  group["order"] = g.order();
  Json names = Json::array();
  for (Elem x = 0; x < g.order(); ++x) names.push_back(g.element_name(x));
  group["elements"] = names;
  Json classes = Json::array();
  for (const auto& c : qd.classes()) {
    Json cj;
    cj["name"] = c.name;
    cj["representative"] = g.element_name(c.representative);
    cj["size"] = c.size();
    classes.push_back(cj);
  }
  group["classes"] = classes;
  j["group"] = group;
  return j;
}

/// Anyon model plus `braid_generators` and the fusion-space summary for one label.
inline Json braid_json(const QuantumDouble& qd, const BraidRep& rep) {
  Json j = anyon_model_json(qd);
  Json gens = Json::array();
  for (const auto& m : rep.generators) gens.push_back(detail::matrix_json(m));
  j["braid_generators"] = gens;
  Json b;
  b["anyon"] = qd.anyons()[rep.space.label].name;
  b["n"] = rep.space.n;
  b["fusion_dim"] = rep.space.dim();
  j["braid"] = b;
  return j;
}

inline std::string to_text(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace qdouble

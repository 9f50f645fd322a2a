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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qdouble/group.hpp"
#include "qdouble/linalg.hpp"

namespace qdouble {

/// Unitary irreducible representation of a group or subgroup, indexed by parent elements.
struct UnitaryIrrep {
  int dim = 0;
  std::vector<Elem> elements;  // domain, parent numbering, ascending
  std::vector<int> local;      // parent element -> index into mats, -1 outside the domain
  std::vector<CMatrix> mats;

  bool contains(Elem g) const { return g >= 0 && g < static_cast<int>(local.size()) && local[g] >= 0; }

  const CMatrix& at(Elem g) const {
    if (!contains(g)) throw std::logic_error("irrep evaluated outside its domain");
    return mats[local[g]];
  }

  Cplx character(Elem g) const { return at(g).trace(); }
  int order() const { return static_cast<int>(elements.size()); }
};

/// Max of ‖ρ(g)ρ(h) − ρ(gh)‖ over the domain.
inline double homomorphism_residual(const FiniteGroup& parent, const UnitaryIrrep& r) {
  double worst = 0.0;
  for (Elem a : r.elements)
    for (Elem b : r.elements) worst = std::max(worst, max_abs(r.at(a) * r.at(b) - r.at(parent.mul(a, b))));
  return worst;
}

inline double irrep_unitarity_residual(const UnitaryIrrep& r) {
  double worst = 0.0;
  for (const auto& m : r.mats) worst = std::max(worst, unitarity_residual(m));
  return worst;
}

/// (1/|H|) Σ_g |χ(g)|², equal to 1 exactly for irreducible representations.
inline double character_norm(const UnitaryIrrep& r) {
  double s = 0.0;
  for (const auto& m : r.mats) s += std::norm(m.trace());
  return s / r.order();
}

/// Raised when the numeric irrep construction cannot isolate an irreducible block.
class IrrepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct ClassAlgebra {
  std::vector<ConjugacyClass> classes;
  std::vector<int> class_of;
};

inline ClassAlgebra class_algebra(const FiniteGroup& g) {
  ClassAlgebra ca;
  ca.classes = conjugacy_classes(g);
  ca.class_of.assign(g.order(), -1);
  for (const auto& c : ca.classes)
    for (Elem x : c.elements) ca.class_of[x] = c.index;
  return ca;
}

/// Burnside–Dixon: characters as simultaneous eigenvectors of the class multiplication matrices.
inline std::vector<std::vector<Cplx>> character_table(const FiniteGroup& g, const ClassAlgebra& ca,
                                                      std::mt19937_64& rng) {
  const int r = static_cast<int>(ca.classes.size());
  const int n = g.order();
  std::vector<CMatrix> mj(r, CMatrix::Zero(r, r));
  std::vector<int> rep_class(n, -1);
  for (const auto& c : ca.classes) rep_class[c.representative] = c.index;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      const int l = rep_class[g.mul(x, y)];
      if (l >= 0) mj[ca.class_of[x]](ca.class_of[y], l) += 1.0;
    }

  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    CMatrix mix = CMatrix::Zero(r, r);
    for (int j = 0; j < r; ++j) mix += Cplx(coeff(rng), coeff(rng)) * mj[j];
    Eigen::ComplexEigenSolver<CMatrix> es(mix);
    if (es.info() != Eigen::Success) continue;
    const auto& ev = es.eigenvalues();
    double gap = 1e300;
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < a; ++b) gap = std::min(gap, std::abs(ev[a] - ev[b]));
    if (r > 1 && gap < 1e-6) continue;

    std::vector<std::vector<Cplx>> table;
    bool ok = true;
    for (int a = 0; a < r && ok; ++a) {
      CVector w = es.eigenvectors().col(a);
      if (std::abs(w[0]) < 1e-9) {
        ok = false;
        break;
      }
      w /= w[0];
      double denom = 0.0;
      for (int l = 0; l < r; ++l) denom += std::norm(w[l]) / ca.classes[l].size();
      const double d2 = n / denom;
      const double d = std::round(std::sqrt(d2));
      if (d < 1 || std::abs(d * d - d2) > 1e-6) {
        ok = false;
        break;
      }
      std::vector<Cplx> chi(r);
      for (int l = 0; l < r; ++l) chi[l] = d * w[l] / static_cast<double>(ca.classes[l].size());
      table.push_back(std::move(chi));
    }
    if (ok) return table;
  }
  throw IrrepError("class-algebra diagonalization did not separate the characters of " + g.name());
}

inline double wrapped_arg(Cplx z) {
  double a = std::arg(z);
  if (a < 0) a += 2 * std::numbers::pi;
  if (a > 2 * std::numbers::pi - 5e-7) a = 0.0;
  return a;
}

/// Sort key: (dim, then per class rounded |χ| and arg χ in [0, 2π)).
inline std::vector<std::int64_t> irrep_sort_key(int dim, const std::vector<Cplx>& chi) {
  std::vector<std::int64_t> key{dim};
  for (Cplx z : chi) {
    key.push_back(std::llround(std::abs(z) * 1e6));
    key.push_back(std::abs(z) < 1e-9 ? 0 : std::llround(wrapped_arg(z) * 1e6));
  }
  return key;
}

/// One irreducible copy inside the isotypic block of the left regular representation.
inline std::vector<CMatrix> isolate_irrep(const FiniteGroup& g, const std::vector<Cplx>& chi_by_elem,
                                          int d, int block_index, std::mt19937_64& rng) {
  const int n = g.order();
  CMatrix proj = CMatrix::Zero(n, n);
  for (Elem a = 0; a < n; ++a)
    for (Elem x = 0; x < n; ++x) proj(g.mul(a, x), x) += std::conj(chi_by_elem[a]);
  proj *= static_cast<double>(d) / n;

  Eigen::SelfAdjointEigenSolver<CMatrix> pe(proj);
  std::vector<int> keep;
  for (int k = 0; k < n; ++k)
    if (pe.eigenvalues()[k] > 0.5) keep.push_back(k);
  if (static_cast<int>(keep.size()) != d * d)
    throw IrrepError("isotypic block " + std::to_string(block_index) + " of " + g.name() + " has rank " +
                     std::to_string(keep.size()) + ", expected " + std::to_string(d * d));
  CMatrix basis(n, d * d);
  for (int k = 0; k < d * d; ++k) basis.col(k) = pe.eigenvectors().col(keep[k]);

  std::normal_distribution<double> normal;
  for (int attempt = 0; attempt < 64; ++attempt) {
    // Random Hermitian element of the right-regular action, which commutes with the left action.
    CMatrix h = CMatrix::Zero(n, n);
    for (Elem a = 0; a < n; ++a) {
      const Cplx z(normal(rng), normal(rng));
      for (Elem x = 0; x < n; ++x) h(g.mul(x, g.inv(a)), x) += z;
    }
    h = (h + h.adjoint()).eval();
    CMatrix hr = basis.adjoint() * h * basis;
    hr = (0.5 * (hr + hr.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> he(hr);
    const auto& ev = he.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    if (ev[d - 1] - ev[0] > 1e-8 * scale) continue;
    if (d < d * d && ev[d] - ev[d - 1] < 1e-6 * scale) continue;

    CMatrix u = basis * he.eigenvectors().leftCols(d);
    std::vector<CMatrix> mats(n);
    double worst = 0.0;
    for (Elem a = 0; a < n; ++a) {
      CMatrix left = CMatrix::Zero(n, n);
      for (Elem x = 0; x < n; ++x) left(g.mul(a, x), x) = 1.0;
      mats[a] = u.adjoint() * left * u;
      worst = std::max(worst, max_abs(left * u - u * mats[a]));
    }
    if (worst > 1e-9)
      throw IrrepError("isotypic block " + std::to_string(block_index) + " of " + g.name() +
                       ": extracted subspace is not invariant (residual " + std::to_string(worst) + ")");
    return mats;
  }
  throw IrrepError("isotypic block " + std::to_string(block_index) + " of " + g.name() +
                   ": could not split the multiplicity space");
}

}  // namespace detail

/// Complete list of unitary irreps of `g`, sorted with the trivial irrep first.
inline std::vector<UnitaryIrrep> irreps(const FiniteGroup& g, std::uint64_t seed = 0) {
  if (g.order() > kMaxGroupOrder) throw std::invalid_argument("irreps: group order exceeds 24");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto ca = detail::class_algebra(g);
  auto table = detail::character_table(g, ca, rng);

  struct Entry {
    std::vector<std::int64_t> key;
    int dim;
    std::vector<Cplx> chi;
  };
  std::vector<Entry> entries;
  for (auto& chi : table) {
    const int d = static_cast<int>(std::lround(chi[0].real()));
    entries.push_back({detail::irrep_sort_key(d, chi), d, chi});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });

  std::vector<UnitaryIrrep> out;
  for (int b = 0; b < static_cast<int>(entries.size()); ++b) {
    std::vector<Cplx> chi_by_elem(g.order());
    for (Elem x = 0; x < g.order(); ++x) chi_by_elem[x] = entries[b].chi[ca.class_of[x]];
    UnitaryIrrep r;
    r.dim = entries[b].dim;
    r.mats = detail::isolate_irrep(g, chi_by_elem, r.dim, b, rng);
    r.elements.resize(g.order());
    std::iota(r.elements.begin(), r.elements.end(), 0);
    r.local = r.elements;
    out.push_back(std::move(r));
  }
  return out;
}

/// Irreps of a subgroup, with matrices indexed by parent elements.
inline std::vector<UnitaryIrrep> irreps(const Subgroup& h, std::uint64_t seed = 0) {
  FiniteGroup local = h.as_group(h.parent().name() + "-sub");
  auto reps = irreps(local, seed);
  for (auto& r : reps) {
    r.elements = h.members();
    r.local = h.local_map();
  }
  return reps;
}

}  // namespace qdouble

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

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qdouble/group.hpp"
#include "qdouble/lattice.hpp"
#include "qdouble/local_operator.hpp"
#include "qdouble/state_vector.hpp"

namespace qdouble {

/// Group and lattice bundled; all lattice operators are built from this.
class LatticeModel {
 public:
  LatticeModel(GroupPtr group, TorusLattice lattice) : group_(std::move(group)), lattice_(lattice) {}

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const TorusLattice& lattice() const { return lattice_; }
  int base() const { return group_->order(); }
  int num_edges() const { return lattice_.num_edges(); }

  /// Throws ResourceError if a full register does not fit.
  std::uint64_t register_size() const { return checked_register_size(base(), num_edges()); }

  StateVector zero_state() const { return StateVector(base(), num_edges()); }

  /// A^g_v: out-edges x ↦ g x, in-edges x ↦ x g^{-1}.
  LocalOperator star(int v, Elem g) const {
    const FiniteGroup& G = *group_;
    auto st = lattice_.star(v);
    std::vector<int> support;
    for (const auto& oe : st) support.push_back(oe.edge);
    std::sort(support.begin(), support.end());
    std::array<int, 4> slot{};
    std::array<bool, 4> out{};
    for (int k = 0; k < 4; ++k) {
      slot[k] = static_cast<int>(std::find(support.begin(), support.end(), st[k].edge) - support.begin());
      out[k] = st[k].forward;
    }
    const Elem gi = G.inv(g);
    return LocalOperator::monomial(base(), support, [&](std::vector<int>& d) {
      for (int k = 0; k < 4; ++k) d[slot[k]] = out[k] ? G.mul(g, d[slot[k]]) : G.mul(d[slot[k]], gi);
      return Cplx(1.0);
    });
  }
  LocalOperator star(const Site& s, Elem g) const { return star(s.vertex, g); }

  /// Flux of a configuration around the site's face, read counter-clockwise from its vertex.
  template <class Digits>
  Elem flux(const std::array<int, 4>& slot, const std::array<bool, 4>& fwd, const Digits& d) const {
    const FiniteGroup& G = *group_;
    Elem prod = G.identity();
    for (int k = 0; k < 4; ++k) prod = G.mul(prod, fwd[k] ? d[slot[k]] : G.inv(d[slot[k]]));
    return prod;
  }

  /// B^h_s: projector onto configurations whose counter-clockwise product from v equals h.
  LocalOperator plaquette(const Site& s, Elem h) const {
    auto b = lattice_.boundary_from(s);
    std::vector<int> support;
    for (const auto& oe : b) support.push_back(oe.edge);
    std::sort(support.begin(), support.end());
    std::array<int, 4> slot{};
    std::array<bool, 4> fwd{};
    for (int k = 0; k < 4; ++k) {
      slot[k] = static_cast<int>(std::find(support.begin(), support.end(), b[k].edge) - support.begin());
      fwd[k] = b[k].forward;
    }
    return LocalOperator::monomial(base(), support, [&](std::vector<int>& d) {
      return flux(slot, fwd, d) == h ? Cplx(1.0) : Cplx(0.0);
    });
  }

  /// A_v = |G|^{-1} Σ_g A^g_v.
  LocalOperator star_projector(int v) const {
    LocalOperator sum = star(v, 0);
    for (Elem g = 1; g < base(); ++g) sum += star(v, g);
    return Cplx(1.0 / base()) * sum;
  }

  /// B_f = B^e_s for any site s at face f.
  LocalOperator plaquette_projector(int f) const { return plaquette(lattice_.face_sites(f)[0], 0); }

 private:
  GroupPtr group_;
  TorusLattice lattice_;
};

// Full-register operations decoding every configuration directly; these serve as the
// reference path that LocalOperator application is checked against.

inline StateVector apply_star(const LatticeModel& m, const Site& s, Elem g, const StateVector& psi) {
  const FiniteGroup& G = m.group();
  const int n = m.base();
  auto st = m.lattice().star(s.vertex);
  std::array<std::uint64_t, 4> stride{};
  for (int k = 0; k < 4; ++k) stride[k] = LocalOperator::local_dim(n, st[k].edge);
  StateVector out = m.zero_state();
  const Elem gi = G.inv(g);
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    if (psi[i] == Cplx(0)) continue;
    std::uint64_t j = i;
    for (int k = 0; k < 4; ++k) {
      const int x = static_cast<int>((i / stride[k]) % n);
      const int y = st[k].forward ? G.mul(g, x) : G.mul(x, gi);
      j = j - x * stride[k] + y * stride[k];
    }
    out[j] += psi[i];
  }
  return out;
}

inline StateVector apply_plaquette(const LatticeModel& m, const Site& s, Elem h, const StateVector& psi) {
  const FiniteGroup& G = m.group();
  const int n = m.base();
  auto b = m.lattice().boundary_from(s);
  StateVector out = m.zero_state();
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    Elem prod = G.identity();
    for (int k = 0; k < 4; ++k) {
      const int x = static_cast<int>((i / LocalOperator::local_dim(n, b[k].edge)) % n);
      prod = G.mul(prod, b[k].forward ? x : G.inv(x));
    }
    if (prod == h) out[i] = psi[i];
  }
  return out;
}

/// A_s then B_s at one site.
inline StateVector apply_projectors(const LatticeModel& m, const Site& s, const StateVector& psi) {
  StateVector a = m.zero_state();
  for (Elem g = 0; g < m.base(); ++g) a += apply_star(m, s, g, psi);
  a *= 1.0 / m.base();
  return apply_plaquette(m, s, 0, a);
}

/// H = −Σ_v A_v − Σ_f B_f.
inline StateVector hamiltonian_apply(const LatticeModel& m, const StateVector& psi) {
  StateVector out = m.zero_state();
  for (int v = 0; v < m.lattice().num_vertices(); ++v) out -= m.star_projector(v).apply(psi);
  for (int f = 0; f < m.lattice().num_faces(); ++f) out -= m.plaquette_projector(f).apply(psi);
  return out;
}

/// Π_v A_v Π_f B_f, the projector onto the joint +1 eigenspace.
inline StateVector ground_projector_apply(const LatticeModel& m, const StateVector& psi) {
  StateVector cur = psi;
  for (int f = 0; f < m.lattice().num_faces(); ++f) cur = m.plaquette_projector(f).apply(cur);
  for (int v = 0; v < m.lattice().num_vertices(); ++v) cur = m.star_projector(v).apply(cur);
  return cur;
}

/// Π_v A_v applied to the all-identity configuration, normalized.
inline StateVector ground_state(const LatticeModel& m) {
  m.register_size();
  StateVector cur = StateVector::basis(m.base(), m.num_edges(), 0);
  for (int v = 0; v < m.lattice().num_vertices(); ++v) cur = m.star_projector(v).apply(cur);
  if (cur.norm() < 1e-12) throw std::logic_error("ground_state: projection of the trivial configuration vanished");
  cur.normalize();
  return cur;
}

/// Rank of the ground projector, from Gram matrices of projected random states.
inline int ground_space_dim(const LatticeModel& m, std::uint64_t seed = 0) {
  m.register_size();
  std::vector<StateVector> projected;
  int rank = 0;
  for (int target = 4;; target *= 2) {
    while (static_cast<int>(projected.size()) < target)
      projected.push_back(ground_projector_apply(
          m, StateVector::random(m.base(), m.num_edges(), seed * 1000003 + projected.size())));
    const int k = static_cast<int>(projected.size());
    CMatrix gram(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b <= a; ++b) {
        gram(a, b) = projected[a].inner(projected[b]);
        gram(b, a) = std::conj(gram(a, b));
      }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
    const double top = std::max(es.eigenvalues().maxCoeff(), 1e-300);
    rank = 0;
    for (int a = 0; a < k; ++a) rank += es.eigenvalues()[a] > 1e-9 * top;
    if (rank < k) return rank;
  }
}

/// Shifts every edge of a state by (dx, dy).
inline StateVector translate(const LatticeModel& m, const StateVector& psi, int dx, int dy) {
  const int n = m.base();
  const int ne = m.num_edges();
  StateVector out = m.zero_state();
  std::vector<std::uint64_t> dst_stride(ne);
  for (int e = 0; e < ne; ++e) dst_stride[e] = LocalOperator::local_dim(n, m.lattice().translate_edge(e, dx, dy));
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    std::uint64_t rem = i, j = 0;
    for (int e = 0; e < ne; ++e) {
      j += (rem % n) * dst_stride[e];
      rem /= n;
    }
    out[j] = psi[i];
  }
  return out;
}

}  // namespace qdouble

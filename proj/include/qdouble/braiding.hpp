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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdouble/multiplet.hpp"
#include "qdouble/quantum_double.hpp"
#include "qdouble/state_vector.hpp"

namespace qdouble {

/// Two ribbons crossing at a pair of edges: (2,1)→up and (1,2)→right on a torus of side ≥ 4.
inline std::pair<Ribbon, Ribbon> crossing_ribbons(const TorusLattice& lat) {
  if (lat.lx() < 4 || lat.ly() < 4) throw std::invalid_argument("crossing ribbons need a torus of at least 4x4");
  Ribbon vertical = Ribbon::from_steps(lat, Site{lat.vertex(2, 1), lat.face(2, 1)}, "DUDU");
  Ribbon horizontal = Ribbon::from_steps(lat, Site{lat.vertex(1, 2), lat.face(1, 1)}, "DUDU");
  return {vertical, horizontal};
}

namespace detail {

inline bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    if (std::binary_search(b.begin(), b.end(), x)) return true;
  return false;
}

/// λ with x = λ y, or throws if x and y are not proportional.
inline Cplx proportionality(const LocalOperator& x, const LocalOperator& y) {
  auto u = LocalOperator::merged_support(x, y);
  SparseC xm = x.extend(u).matrix(), ym = y.extend(u).matrix();
  const Cplx num = ym.conjugate().cwiseProduct(xm).sum();
  const double den = ym.squaredNorm();
  if (den == 0.0) throw std::logic_error("proportionality: reference operator vanishes");
  const Cplx lambda = num / den;
  SparseC diff = xm - lambda * ym;
  double worst = 0.0;
  for (int c = 0; c < diff.outerSize(); ++c)
    for (SparseC::InnerIterator it(diff, c); it; ++it) worst = std::max(worst, std::abs(it.value()));
  if (worst > 1e-10) throw std::logic_error("ribbon operators do not commute up to a phase");
  return lambda;
}

}  // namespace detail

/// Full monodromy of abelian labels a on ξ1 and b on ξ2, read off F_a F_b = λ F_b F_a as conj(λ).
inline Cplx lattice_monodromy(const LatticeModel& m, const QuantumDouble& qd, int a, int b, const Ribbon& xi1,
                              const Ribbon& xi2) {
  if (qd.irrep(a).dim != 1 || qd.irrep(b).dim != 1)
    throw std::invalid_argument("lattice_monodromy needs abelian (one-dimensional) labels");
  const bool cross = detail::intersects(xi1.edges_of(Triangle::Kind::Direct), xi2.edges_of(Triangle::Kind::Dual)) &&
                     detail::intersects(xi1.edges_of(Triangle::Kind::Dual), xi2.edges_of(Triangle::Kind::Direct));
  if (!cross) throw std::invalid_argument("ribbons do not cross; the monodromy phase is undefined");
  const LocalOperator f1 = multiplet(m, qd, xi1, a)(0, 0);
  const LocalOperator f2 = multiplet(m, qd, xi2, b)(0, 0);
  return std::conj(detail::proportionality(f1 * f2, f2 * f1));
}

/// Orthonormal basis of Hom(ι, ρ^{⊗n}) inside V_ρ^{⊗n}; tensor index has the first factor most significant.
struct FusionSpace {
  int label = 0;
  int n = 0;
  int local_dim = 1;
  CMatrix basis;

  int dim() const { return static_cast<int>(basis.cols()); }
};

inline constexpr std::uint64_t kMaxFusionVectorSize = std::uint64_t{1} << 20;

/// Multiplicity of the vacuum in ρ^{⊗n}, from iterated character convolution.
inline int vacuum_multiplicity(const QuantumDouble& qd, int a, int n) {
  const FiniteGroup& g = qd.group();
  const int order = g.order();
  std::vector<Cplx> cur(order * order, 0.0), chi(order * order);
  for (Elem x = 0; x < order; ++x) cur[0 * order + x] = 1.0;  // vacuum: δ_{h,e}
  for (Elem h = 0; h < order; ++h)
    for (Elem x = 0; x < order; ++x) chi[h * order + x] = qd.irrep(a).character(h, x);
  for (int k = 0; k < n; ++k) {
    std::vector<Cplx> next(order * order, 0.0);
    for (Elem x = 0; x < order; ++x)
      for (Elem h1 = 0; h1 < order; ++h1)
        for (Elem h2 = 0; h2 < order; ++h2) next[g.mul(h1, h2) * order + x] += cur[h1 * order + x] * chi[h2 * order + x];
    cur = std::move(next);
  }
  Cplx s = 0;
  for (Elem x = 0; x < order; ++x) s += cur[0 * order + x];
  return static_cast<int>(std::lround((s / static_cast<double>(order)).real()));
}

namespace detail {

inline std::uint64_t tensor_size(int d, int n) {
  std::uint64_t s = 1;
  for (int k = 0; k < n; ++k) {
    s *= static_cast<std::uint64_t>(d);
    if (s > kMaxFusionVectorSize)
      throw ResourceError("fusion space vector exceeds 2^20 entries", static_cast<double>(s), kMaxFusionVectorSize);
  }
  return s;
}

/// (1/|G|) Σ_g Π_{total flux e} A(g)^{⊗n} applied to a vector.
inline CVector invariant_projection(const QuantumDouble& qd, int a, int n, const CVector& v) {
  const FiniteGroup& g = qd.group();
  const DoubleIrrep& rep = qd.irrep(a);
  const int d = rep.dim;
  const std::uint64_t size = v.size();
  CVector out = CVector::Zero(size);
  CVector cur, nxt;
  for (Elem x = 0; x < g.order(); ++x) {
    cur = v;
    // Apply A(x) to each tensor factor in turn.
    std::uint64_t stride = 1;
    for (int k = n - 1; k >= 0; --k) {
      nxt = CVector::Zero(size);
      const CMatrix& m = rep.act[x];
      for (std::uint64_t i = 0; i < size; ++i) {
        if (cur[i] == Cplx(0)) continue;
        const int digit = static_cast<int>((i / stride) % d);
        const std::uint64_t base_i = i - digit * stride;
        for (int r = 0; r < d; ++r)
          if (m(r, digit) != Cplx(0)) nxt[base_i + r * stride] += m(r, digit) * cur[i];
      }
      cur.swap(nxt);
      stride *= d;
    }
    out += cur;
  }
  out /= static_cast<double>(g.order());
  // Keep total flux e.
  for (std::uint64_t i = 0; i < size; ++i) {
    Elem f = g.identity();
    std::uint64_t p = size;
    for (int k = 0; k < n; ++k) {
      p /= d;
      f = g.mul(f, rep.flux[(i / p) % d]);
    }
    if (f != g.identity()) out[i] = 0;
  }
  return out;
}

}  // namespace detail

/// Deterministic Gram–Schmidt over projected basis vectors e_0, e_1, ... until the rank is reached.
inline FusionSpace fusion_space(const QuantumDouble& qd, int a, int n) {
  if (n < 0) throw std::invalid_argument("fusion_space needs n >= 0");
  const int d = qd.irrep(a).dim;
  const std::uint64_t size = detail::tensor_size(d, n);
  const int expected = vacuum_multiplicity(qd, a, n);
  FusionSpace fs;
  fs.label = a;
  fs.n = n;
  fs.local_dim = d;
  fs.basis = CMatrix::Zero(size, 0);
  std::vector<CVector> cols;
  for (std::uint64_t j = 0; j < size && static_cast<int>(cols.size()) < expected; ++j) {
    CVector e = CVector::Zero(size);
    e[j] = 1.0;
    CVector v = detail::invariant_projection(qd, a, n, e);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& c : cols) v -= c.dot(v) * c;
    const double nv = v.norm();
    if (nv > 1e-8) cols.push_back(v / nv);
  }
  if (static_cast<int>(cols.size()) != expected)
    throw std::logic_error("fusion_space: found " + std::to_string(cols.size()) + " invariant vectors, expected " +
                           std::to_string(expected));
  fs.basis.resize(size, expected);
  for (int k = 0; k < expected; ++k) fs.basis.col(k) = cols[k];
  // Idempotence on the span: the projector must fix every basis vector.
  for (int k = 0; k < expected; ++k)
    if ((detail::invariant_projection(qd, a, n, fs.basis.col(k)) - fs.basis.col(k)).norm() > 1e-10)
      throw std::logic_error("fusion_space: averaging projector is not idempotent on its range");
  return fs;
}

/// Max deviation from Δ^n(δ_h ⊗ g) b = δ_{h,e} b over the basis.
inline double fusion_space_invariance_residual(const QuantumDouble& qd, const FusionSpace& fs) {
  double worst = 0.0;
  for (int k = 0; k < fs.dim(); ++k) {
    const CVector b = fs.basis.col(k);
    worst = std::max(worst, (detail::invariant_projection(qd, fs.label, fs.n, b) - b).cwiseAbs().maxCoeff());
  }
  if (fs.dim() > 0)
    worst = std::max(worst, max_abs(fs.basis.adjoint() * fs.basis - CMatrix::Identity(fs.dim(), fs.dim())));
  return worst;
}

/// Image of (I ⊗ … ⊗ ε_{ρ,ρ} ⊗ … ⊗ I) on factors i, i+1 (1-based i) in the fusion-space basis.
inline CMatrix braid_generator(const QuantumDouble& qd, const FusionSpace& fs, int i) {
  if (i < 1 || i >= fs.n) throw std::invalid_argument("braid generator index must lie in 1..n-1");
  const CMatrix eps = r_braiding(qd, fs.label, fs.label);
  const int d = fs.local_dim;
  const std::uint64_t size = fs.basis.rows();
  std::uint64_t low = 1;  // stride of factor i (0-based index i), the right member of the pair
  for (int k = i + 1; k < fs.n; ++k) low *= d;
  const std::uint64_t high = low * d;  // stride of factor i-1
  CMatrix image = CMatrix::Zero(size, fs.dim());
  for (int c = 0; c < fs.dim(); ++c)
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      const Cplx v = fs.basis(idx, c);
      if (v == Cplx(0)) continue;
      const int x = static_cast<int>((idx / high) % d), y = static_cast<int>((idx / low) % d);
      const std::uint64_t rest = idx - x * high - y * low;
      const int in = x * d + y;
      for (int out = 0; out < d * d; ++out) {
        const Cplx w = eps(out, in);
        if (w == Cplx(0)) continue;
        image(rest + (out / d) * high + (out % d) * low, c) += w * v;
      }
    }
  CMatrix m = fs.basis.adjoint() * image;
  const double leak = max_abs(fs.basis * m - image);
  if (leak > 1e-8)
    throw std::logic_error("braid generator leaves the fusion space, residual " + std::to_string(leak));
  return m;
}

struct BraidRep {
  FusionSpace space;
  std::vector<CMatrix> generators;  // π(b_1) … π(b_{n-1})

  double unitarity_residual() const {
    double w = 0.0;
    for (const auto& g : generators) w = std::max(w, qdouble::unitarity_residual(g));
    return w;
  }
  double braid_relation_residual() const {
    double w = 0.0;
    for (std::size_t k = 0; k + 1 < generators.size(); ++k) {
      const auto &a = generators[k], &b = generators[k + 1];
      w = std::max(w, max_abs(a * b * a - b * a * b));
    }
    return w;
  }
  double far_commutation_residual() const {
    double w = 0.0;
    for (std::size_t j = 0; j < generators.size(); ++j)
      for (std::size_t k = j + 2; k < generators.size(); ++k)
        w = std::max(w, max_abs(generators[j] * generators[k] - generators[k] * generators[j]));
    return w;
  }
};

inline BraidRep braid_rep(const QuantumDouble& qd, int a, int n) {
  BraidRep rep{fusion_space(qd, a, n), {}};
  if (rep.space.dim() == 0) return rep;
  for (int i = 1; i < n; ++i) rep.generators.push_back(braid_generator(qd, rep.space, i));
  return rep;
}

}  // namespace qdouble

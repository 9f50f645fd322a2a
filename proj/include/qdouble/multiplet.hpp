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

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdouble/quantum_double.hpp"
#include "qdouble/ribbon.hpp"

namespace qdouble {

/// Raised when a truncated ribbon does not clear the support of an observable.
class ClearanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// F^{IJ}_ξ for one anyon label, I = i·dim(ρ) + j over class elements i and irrep rows j.
struct Multiplet {
  int label = 0;
  int n = 0;
  std::vector<LocalOperator> ops;

  const LocalOperator& operator()(int i, int j) const { return ops[i * n + j]; }
};

namespace detail {

inline void require_same_group(const LatticeModel& m, const QuantumDouble& qd) {
  if (m.group().table() != qd.group().table())
    throw std::invalid_argument("lattice model and quantum double use different groups");
}

}  // namespace detail

/// F^{IJ} = Σ_{g ∈ Z(r)} conj(ρ_{jj'}(g)) F^{c̄_i, q_i g q̄_{i'}} with I = (i, j), J = (i', j').
inline Multiplet multiplet(const LatticeModel& m, const QuantumDouble& qd, const Ribbon& r, int label) {
  detail::require_same_group(m, qd);
  const FiniteGroup& G = m.group();
  const ConjugacyClass& cls = qd.conj_class(label);
  const UnitaryIrrep& rho = qd.rho(label);
  const int d = rho.dim;
  Multiplet out;
  out.label = label;
  out.n = cls.size() * d;
  std::map<std::pair<Elem, Elem>, LocalOperator> cache;
  auto f = [&](Elem h, Elem g) -> const LocalOperator& {
    auto it = cache.find({h, g});
    if (it == cache.end()) it = cache.emplace(std::make_pair(h, g), ribbon_operator(m, r, h, g)).first;
    return it->second;
  };
  for (int i = 0; i < cls.size(); ++i)
    for (int j = 0; j < d; ++j)
      for (int ip = 0; ip < cls.size(); ++ip)
        for (int jp = 0; jp < d; ++jp) {
          LocalOperator sum(m.base(), Cplx(0));
          for (Elem g : rho.elements) {
            const Cplx c = std::conj(rho.at(g)(j, jp));
            if (std::abs(c) < 1e-15) continue;
            sum += c * f(G.inv(cls.elements[i]), G.mul(cls.transversal[i], g, G.inv(cls.transversal[ip])));
          }
          out.ops.push_back(std::move(sum));
        }
  return out;
}

/// Residuals of Σ_I (F^{IJ})* F^{IK} = δ_JK and Σ_J F^{IJ} (F^{KJ})* = δ_IK.
inline std::pair<double, double> completeness_residuals(const Multiplet& mu, int base) {
  const LocalOperator one(base);
  const LocalOperator zero(base, Cplx(0));
  double first = 0.0, second = 0.0;
  for (int a = 0; a < mu.n; ++a)
    for (int b = 0; b < mu.n; ++b) {
      LocalOperator s1 = zero, s2 = zero;
      for (int c = 0; c < mu.n; ++c) {
        s1 += mu(c, a).adjoint() * mu(c, b);
        s2 += mu(a, c) * mu(b, c).adjoint();
      }
      first = std::max(first, distance(s1, a == b ? one : zero));
      second = std::max(second, distance(s2, a == b ? one : zero));
    }
  return {first, second};
}

/// max_{I,J} ‖F^{IJ}_{ξ1ξ2} − Σ_K F^{IK}_{ξ1} F^{KJ}_{ξ2}‖.
inline double multiplet_decomposition_residual(const Multiplet& whole, const Multiplet& a, const Multiplet& b) {
  double worst = 0.0;
  for (int i = 0; i < whole.n; ++i)
    for (int j = 0; j < whole.n; ++j) {
      LocalOperator s = a(i, 0) * b(0, j);
      for (int k = 1; k < whole.n; ++k) s += a(i, k) * b(k, j);
      worst = std::max(worst, distance(whole(i, j), s));
    }
  return worst;
}

/// Matrix-valued map A ↦ [χ_IJ(A)] from a ribbon truncated after N triangles.
class Amplimorphism {
 public:
  Amplimorphism(const LatticeModel& m, const QuantumDouble& qd, int label, const Ribbon& full, std::size_t n)
      : base_(m.base()), truncated_(full.prefix(m.lattice(), n)), mu_(multiplet(m, qd, truncated_, label)) {
    for (std::size_t k = n; k < full.size(); ++k) tail_.push_back(full.triangles()[k].edge);
    std::sort(tail_.begin(), tail_.end());
  }

  int n() const { return mu_.n; }
  const Ribbon& ribbon() const { return truncated_; }
  const Multiplet& multiplet_ops() const { return mu_; }

  /// χ_IJ(A) = Σ_K F^{IK} A (F^{JK})*, entries in row-major order.
  std::vector<LocalOperator> apply(const LocalOperator& a) const {
    if (a.overlaps(tail_))
      throw ClearanceError("observable support meets the ribbon beyond the truncation point; increase N");
    std::vector<LocalOperator> out;
    for (int i = 0; i < mu_.n; ++i)
      for (int j = 0; j < mu_.n; ++j) {
        LocalOperator s(base_, Cplx(0));
        for (int k = 0; k < mu_.n; ++k) s += mu_(i, k) * a * mu_(j, k).adjoint();
        out.push_back(std::move(s));
      }
    return out;
  }

 private:
  int base_;
  Ribbon truncated_;
  Multiplet mu_;
  std::vector<int> tail_;
};

inline Amplimorphism amplimorphism(const LatticeModel& m, const QuantumDouble& qd, int label, const Ribbon& full,
                                   std::size_t n) {
  return Amplimorphism(m, qd, label, full, n);
}

inline std::vector<LocalOperator> amplimorphism_apply(const Amplimorphism& chi, const LocalOperator& a) {
  return chi.apply(a);
}

/// Largest entry deviation between two operator matrices of equal shape.
inline double matrix_distance(const std::vector<LocalOperator>& a, const std::vector<LocalOperator>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("matrix_distance: shape mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, distance(a[k], b[k]));
  return worst;
}

/// Σ_K x_IK y_KJ for n × n matrices of operators.
inline std::vector<LocalOperator> matrix_product(const std::vector<LocalOperator>& x,
                                                 const std::vector<LocalOperator>& y, int n, int base) {
  std::vector<LocalOperator> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      LocalOperator s(base, Cplx(0));
      for (int k = 0; k < n; ++k) s += x[i * n + k] * y[k * n + j];
      out.push_back(std::move(s));
    }
  return out;
}

/// Entrywise adjoint with transposition.
inline std::vector<LocalOperator> matrix_adjoint(const std::vector<LocalOperator>& x, int n) {
  std::vector<LocalOperator> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.push_back(x[j * n + i].adjoint());
  return out;
}

/// V with V_IJ = F^{IJ} on the extension ribbon ξ̂.
inline Multiplet transport_unitary(const LatticeModel& m, const QuantumDouble& qd, int label, const Ribbon& extension) {
  Multiplet v = multiplet(m, qd, extension, label);
  auto [r1, r2] = completeness_residuals(v, m.base());
  if (std::max(r1, r2) > 1e-10)
    throw std::logic_error("transport operator is not unitary, residual " + std::to_string(std::max(r1, r2)));
  return v;
}

/// max_{I,J} ‖(V χ(A) V*)_IJ − χ̂_IJ(A)‖.
inline double transport_residual(const Multiplet& v, const std::vector<LocalOperator>& chi,
                                 const std::vector<LocalOperator>& chi_hat, int base) {
  auto left = matrix_product(v.ops, chi, v.n, base);
  auto full = matrix_product(left, matrix_adjoint(v.ops, v.n), v.n, base);
  return matrix_distance(full, chi_hat);
}

/// α(A) = F A F* for an abelian label on a truncated ribbon.
inline LocalOperator charged_automorphism(const Amplimorphism& chi, const LocalOperator& a) {
  if (chi.n() != 1) throw std::invalid_argument("charged_automorphism needs a one-dimensional label");
  return chi.apply(a)[0];
}

/// Loop projectors K_(C,ρ) = (dim ρ/|Z|) Σ_i Σ_{n ∈ Z(r)} conj(χ_ρ(n)) F^{q_i n q̄_i, c_i}, one per label.
inline std::vector<LocalOperator> charge_projectors(const LatticeModel& m, const QuantumDouble& qd, const Ribbon& loop) {
  detail::require_same_group(m, qd);
  if (!loop.is_closed()) throw std::invalid_argument("charge measurement needs a closed ribbon");
  const FiniteGroup& G = m.group();
  std::vector<LocalOperator> out;
  for (int a = 0; a < qd.num_anyons(); ++a) {
    const ConjugacyClass& cls = qd.conj_class(a);
    const UnitaryIrrep& rho = qd.rho(a);
    LocalOperator sum(m.base(), Cplx(0));
    for (int i = 0; i < cls.size(); ++i)
      for (Elem n : rho.elements) {
        const Cplx c = std::conj(rho.character(n));
        if (std::abs(c) < 1e-15) continue;
        const Elem q = cls.transversal[i];
        sum += c * ribbon_operator(m, loop, G.mul(q, n, G.inv(q)), cls.elements[i]);
      }
    out.push_back(Cplx(static_cast<double>(rho.dim) / rho.order()) * sum);
  }
  return out;
}

/// ⟨ψ, K_a ψ⟩ for every label a.
inline std::vector<double> charge_measurement(const LatticeModel& m, const QuantumDouble& qd, const Ribbon& loop,
                                              const StateVector& psi) {
  std::vector<double> out;
  for (const auto& k : charge_projectors(m, qd, loop)) out.push_back(psi.inner(k.apply(psi)).real());
  return out;
}

}  // namespace qdouble

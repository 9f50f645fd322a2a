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
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "qdouble/group.hpp"
#include "qdouble/irreps.hpp"
#include "qdouble/linalg.hpp"

namespace qdouble {

/// Irreducible D(G) sector, addressed by (class index, centralizer-irrep index).
struct AnyonLabel {
  int class_index = 0;
  int irrep_index = 0;
  std::string name;
};

/// Explicit D(G) irrep on span{|c_i⟩ ⊗ |v_j⟩}, basis index I = i·dim(ρ) + j.
///
/// `act[g]` is the action of 1 ⊗ g and `flux[I]` = c_i, so that
/// (δ_h ⊗ g) acts as P_h · act[g] with P_h the projector onto flux h.
struct DoubleIrrep {
  AnyonLabel label;
  int dim = 0;
  int class_size = 0;
  int irrep_dim = 0;
  std::vector<Elem> flux;
  std::vector<CMatrix> act;

  /// Matrix of δ_h ⊗ g.
  CMatrix action(Elem h, Elem g) const {
    CMatrix m = act[g];
    for (int r = 0; r < dim; ++r)
      if (flux[r] != h) m.row(r).setZero();
    return m;
  }

  Cplx character(Elem h, Elem g) const {
    Cplx s = 0;
    for (int r = 0; r < dim; ++r)
      if (flux[r] == h) s += act[g](r, r);
    return s;
  }
};

class QuantumDouble {
 public:
  explicit QuantumDouble(GroupPtr group, std::uint64_t seed = 0) : group_(std::move(group)) {
    const FiniteGroup& g = *group_;
    classes_ = conjugacy_classes(g);
    for (const auto& c : classes_) {
      centralizers_.push_back(centralizer(group_, c.representative));
      centralizer_irreps_.push_back(irreps(centralizers_.back(), seed));
    }
    for (int c = 0; c < static_cast<int>(classes_.size()); ++c)
      for (int k = 0; k < static_cast<int>(centralizer_irreps_[c].size()); ++k) {
        AnyonLabel a{c, k, label_name(c, k)};
        irreps_.push_back(build(a));
        labels_.push_back(std::move(a));
      }
  }

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  const std::vector<Subgroup>& centralizers() const { return centralizers_; }
  const std::vector<std::vector<UnitaryIrrep>>& centralizer_irreps() const { return centralizer_irreps_; }
  const std::vector<AnyonLabel>& anyons() const { return labels_; }
  int num_anyons() const { return static_cast<int>(labels_.size()); }
  const DoubleIrrep& irrep(int a) const { return irreps_.at(a); }
  const UnitaryIrrep& rho(int a) const {
    return centralizer_irreps_[labels_[a].class_index][labels_[a].irrep_index];
  }
  const ConjugacyClass& conj_class(int a) const { return classes_[labels_[a].class_index]; }

  std::vector<int> dims() const {
    std::vector<int> d;
    for (const auto& r : irreps_) d.push_back(r.dim);
    return d;
  }

  int index_of(int class_index, int irrep_index) const {
    for (int a = 0; a < num_anyons(); ++a)
      if (labels_[a].class_index == class_index && labels_[a].irrep_index == irrep_index) return a;
    return -1;
  }

  /// Resolves a class by display name, representative name, or index.
  int find_class(const std::string& key) const {
    for (const auto& c : classes_)
      if (c.name == key || group_->element_name(c.representative) == key) return c.index;
    try {
      int i = detail::parse_int(key, "class");
      if (i >= 0 && i < static_cast<int>(classes_.size())) return i;
    } catch (const std::invalid_argument&) {
    }
    std::string known;
    for (const auto& c : classes_) known += (known.empty() ? "" : ", ") + c.name;
    throw std::invalid_argument("unknown conjugacy class '" + key + "' (known: " + known + ")");
  }

  /// Parses `vacuum`, `charge[:i]`, `flux[:class]`, `dyon[:class[:i]]`.
  int parse_label(const std::string& text) const {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t p; (p = text.find(':', start)) != std::string::npos; start = p + 1)
      parts.push_back(text.substr(start, p - start));
    parts.push_back(text.substr(start));
    const std::string& kind = parts[0];
    auto irrep_at = [&](int c, const std::string& s) {
      int k = detail::parse_int(s, "irrep index");
      if (k < 0 || k >= static_cast<int>(centralizer_irreps_[c].size()))
        throw std::invalid_argument("irrep index " + s + " out of range for class " + classes_[c].name);
      return k;
    };
    auto unique_class = [&]() {
      if (classes_.size() != 2)
        throw std::invalid_argument("'" + kind + "' is ambiguous: give the class explicitly");
      return 1;
    };
    auto unique_irrep = [&](int c) {
      if (centralizer_irreps_[c].size() != 2)
        throw std::invalid_argument("'" + kind + "' is ambiguous: give the irrep index explicitly");
      return 1;
    };
    if (kind == "vacuum" && parts.size() == 1) return 0;
    if (kind == "charge" && parts.size() <= 2) {
      int k = parts.size() == 2 ? irrep_at(0, parts[1]) : unique_irrep(0);
      return index_of(0, k);
    }
    if (kind == "flux" && parts.size() <= 2) {
      int c = parts.size() == 2 ? find_class(parts[1]) : unique_class();
      return index_of(c, 0);
    }
    if (kind == "dyon" && parts.size() <= 3) {
      int c = parts.size() >= 2 ? find_class(parts[1]) : unique_class();
      int k = parts.size() == 3 ? irrep_at(c, parts[2]) : unique_irrep(c);
      return index_of(c, k);
    }
    throw std::invalid_argument("bad anyon label '" + text +
                                "' (expected vacuum, charge:<i>, flux:<class>, dyon:<class>:<i>)");
  }

 private:
  std::string label_name(int c, int k) const {
    if (c == 0) return k == 0 ? "vacuum" : "charge:" + std::to_string(k);
    if (k == 0) return "flux:" + classes_[c].name;
    return "dyon:" + classes_[c].name + ":" + std::to_string(k);
  }

  DoubleIrrep build(const AnyonLabel& a) const {
    const FiniteGroup& g = *group_;
    const ConjugacyClass& cls = classes_[a.class_index];
    const UnitaryIrrep& r = centralizer_irreps_[a.class_index][a.irrep_index];
    DoubleIrrep out;
    out.label = a;
    out.class_size = cls.size();
    out.irrep_dim = r.dim;
    out.dim = out.class_size * out.irrep_dim;
    for (int i = 0; i < cls.size(); ++i)
      for (int j = 0; j < r.dim; ++j) out.flux.push_back(cls.elements[i]);
    out.act.assign(g.order(), CMatrix::Zero(out.dim, out.dim));
    for (Elem x = 0; x < g.order(); ++x) {
      for (int i = 0; i < cls.size(); ++i) {
        const int ip = cls.position(g.conj(x, cls.elements[i]));
        const Elem n = g.mul(g.inv(cls.transversal[ip]), x, cls.transversal[i]);
        if (!r.contains(n))
          throw std::logic_error("double_irrep: q_i'^-1 g q_i = " + g.element_name(n) +
                                 " is not in the centralizer of " + g.element_name(cls.representative));
        out.act[x].block(ip * r.dim, i * r.dim, r.dim, r.dim) = r.at(n);
      }
    }
    return out;
  }

  GroupPtr group_;
  std::vector<ConjugacyClass> classes_;
  std::vector<Subgroup> centralizers_;
  std::vector<std::vector<UnitaryIrrep>> centralizer_irreps_;
  std::vector<AnyonLabel> labels_;
  std::vector<DoubleIrrep> irreps_;
};

inline const std::vector<AnyonLabel>& enumerate_anyons(const QuantumDouble& qd) { return qd.anyons(); }

inline const DoubleIrrep& double_irrep(const QuantumDouble& qd, int a) { return qd.irrep(a); }

/// Fusion multiplicities N[i][j][k].
struct FusionTable {
  std::vector<std::string> labels;
  std::vector<std::vector<std::vector<int>>> N;

  int size() const { return static_cast<int>(labels.size()); }
  int operator()(int i, int j, int k) const { return N[i][j][k]; }
};

/// Multiplicity of each irrep in V_i ⊗ V_j from character inner products.
inline FusionTable fusion_table(const QuantumDouble& qd) {
  const FiniteGroup& g = qd.group();
  const int n = qd.num_anyons();
  const int order = g.order();
  std::vector<std::vector<Cplx>> chi(n, std::vector<Cplx>(order * order));
  for (int a = 0; a < n; ++a)
    for (Elem h = 0; h < order; ++h)
      for (Elem x = 0; x < order; ++x) chi[a][h * order + x] = qd.irrep(a).character(h, x);

  FusionTable ft;
  for (const auto& l : qd.anyons()) ft.labels.push_back(l.name);
  ft.N.assign(n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
  std::vector<Cplx> prod(order * order);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::fill(prod.begin(), prod.end(), Cplx(0));
      for (Elem x = 0; x < order; ++x)
        for (Elem h1 = 0; h1 < order; ++h1) {
          const Cplx ci = chi[i][h1 * order + x];
          if (ci == Cplx(0)) continue;
          for (Elem h2 = 0; h2 < order; ++h2) prod[g.mul(h1, h2) * order + x] += ci * chi[j][h2 * order + x];
        }
      for (int k = 0; k < n; ++k) {
        Cplx s = 0;
        for (int t = 0; t < order * order; ++t) s += std::conj(chi[k][t]) * prod[t];
        s /= static_cast<double>(order);
        const double r = std::round(s.real());
        if (std::abs(s - r) > 1e-6)
          throw std::logic_error("fusion multiplicity N[" + ft.labels[i] + "," + ft.labels[j] + "," +
                                 ft.labels[k] + "] is not an integer: " + std::to_string(s.real()));
        ft.N[i][j][k] = static_cast<int>(r);
      }
    }
  return ft;
}

/// Index of the dual label ā, the unique b with N_ab^0 = 1.
inline int dual_label(const FusionTable& ft, int a) {
  for (int b = 0; b < ft.size(); ++b)
    if (ft(a, b, 0) == 1) return b;
  throw std::logic_error("no dual label for " + ft.labels[a]);
}

/// Largest deviation of ε from the intertwiner property over all δ_h ⊗ g.
inline double intertwiner_residual(const QuantumDouble& qd, int a, int b, const CMatrix& eps) {
  const DoubleIrrep& va = qd.irrep(a);
  const DoubleIrrep& vb = qd.irrep(b);
  const FiniteGroup& g = qd.group();
  double worst = 0.0;
  for (Elem x = 0; x < g.order(); ++x)
    worst = std::max(worst, max_abs(eps * kron(va.act[x], vb.act[x]) - kron(vb.act[x], va.act[x]) * eps));
  // Flux projectors: ε must map total flux h on V_a⊗V_b to total flux h on V_b⊗V_a.
  for (int r = 0; r < eps.rows(); ++r) {
    const Elem fr = g.mul(vb.flux[r / va.dim], va.flux[r % va.dim]);
    for (int c = 0; c < eps.cols(); ++c) {
      const Elem fc = g.mul(va.flux[c / vb.dim], vb.flux[c % vb.dim]);
      if (fr != fc) worst = std::max(worst, std::abs(eps(r, c)));
    }
  }
  return worst;
}

/// ε_{a,b}: V_a ⊗ V_b → V_b ⊗ V_a, swap ∘ R with R = Σ_h (δ_h ⊗ e) ⊗ (1 ⊗ h).
inline CMatrix r_braiding(const QuantumDouble& qd, int a, int b, bool verify = true) {
  const DoubleIrrep& va = qd.irrep(a);
  const DoubleIrrep& vb = qd.irrep(b);
  CMatrix eps = CMatrix::Zero(va.dim * vb.dim, va.dim * vb.dim);
  for (int x = 0; x < va.dim; ++x) {
    const CMatrix& m = vb.act[va.flux[x]];
    for (int y = 0; y < vb.dim; ++y)
      for (int yp = 0; yp < vb.dim; ++yp) eps(yp * va.dim + x, x * vb.dim + y) = m(yp, y);
  }
  if (verify) {
    const double res = intertwiner_residual(qd, a, b, eps);
    if (res > 1e-8)
      throw std::logic_error("r_braiding(" + va.label.name + ", " + vb.label.name +
                             ") is not an intertwiner, residual " + std::to_string(res));
  }
  return eps;
}

/// ε_{b,a} ε_{a,b} on V_a ⊗ V_b.
inline CMatrix monodromy(const QuantumDouble& qd, int a, int b) {
  return r_braiding(qd, b, a) * r_braiding(qd, a, b);
}

struct SMatrix {
  CMatrix raw;         // tr(ε_{i,j} ε_{j,i})
  CMatrix normalized;  // raw / D
  double D = 1.0;
};

struct TMatrix {
  std::vector<Cplx> theta;

  CMatrix matrix() const {
    CMatrix t = CMatrix::Zero(theta.size(), theta.size());
    for (std::size_t a = 0; a < theta.size(); ++a) t(a, a) = theta[a];
    return t;
  }
};

inline SMatrix s_matrix(const QuantumDouble& qd) {
  const int n = qd.num_anyons();
  SMatrix s;
  s.D = qd.group().order();
  s.raw = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.raw(i, j) = (r_braiding(qd, i, j) * r_braiding(qd, j, i)).trace();
  s.normalized = s.raw / s.D;
  return s;
}

inline TMatrix t_matrix(const QuantumDouble& qd) {
  TMatrix t;
  for (int a = 0; a < qd.num_anyons(); ++a) {
    const ConjugacyClass& c = qd.conj_class(a);
    const UnitaryIrrep& r = qd.rho(a);
    const Cplx theta = r.character(c.representative) / static_cast<double>(r.dim);
    if (std::abs(std::abs(theta) - 1.0) > 1e-10)
      throw std::logic_error("twist of " + qd.anyons()[a].name + " is not a phase");
    t.theta.push_back(theta);
  }
  return t;
}

struct VerlindeReport {
  double residual = 0.0;          // N_ij^k − Σ_r S_ir S_jr S̄_kr / S_0r
  double printed_residual = 0.0;  // same with S_ij S_jr S̄_kr / S_0r², kept for reference
};

inline VerlindeReport verlinde_check(const SMatrix& s, const FusionTable& ft) {
  const CMatrix& S = s.normalized;
  const int n = ft.size();
  VerlindeReport rep;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Cplx std_sum = 0, printed_sum = 0;
        for (int r = 0; r < n; ++r) {
          std_sum += S(i, r) * S(j, r) * std::conj(S(k, r)) / S(0, r);
          printed_sum += S(i, j) * S(j, r) * std::conj(S(k, r)) / (S(0, r) * S(0, r));
        }
        rep.residual = std::max(rep.residual, std::abs(Cplx(ft(i, j, k)) - std_sum));
        rep.printed_residual = std::max(rep.printed_residual, std::abs(Cplx(ft(i, j, k)) - printed_sum));
      }
  return rep;
}

struct ModularityReport {
  bool modular = false;
  double condition_number = 0.0;
  double unitarity_residual = 0.0;
  std::vector<int> transparent;     // nontrivial labels braiding trivially with every label considered
  double st_residual = 0.0;         // (S T)^3 ∝ S^2
  double st_inverse_residual = 0.0; // (S T^-1)^3 ∝ S^2
};

namespace detail {

inline double projective_residual(const CMatrix& lhs, const CMatrix& rhs) {
  const Cplx num = (rhs.adjoint() * lhs).trace();
  const double den = rhs.squaredNorm();
  if (den < 1e-300) return max_abs(lhs);
  const Cplx p = num / den;
  return max_abs(lhs - p * rhs) + std::abs(std::abs(p) - 1.0);
}

}  // namespace detail

/// Invertibility, unitarity and transparent-label diagnostics, optionally on a label subset.
inline ModularityReport modularity_check(const QuantumDouble& qd, const SMatrix& s, const TMatrix& t,
                                         std::optional<std::vector<int>> subset = std::nullopt,
                                         double tol = 1e-8) {
  std::vector<int> labels;
  if (subset) {
    labels = *subset;
  } else {
    for (int a = 0; a < qd.num_anyons(); ++a) labels.push_back(a);
  }
  const int m = static_cast<int>(labels.size());
  CMatrix S(m, m), T = CMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    T(i, i) = t.theta[labels[i]];
    for (int j = 0; j < m; ++j) S(i, j) = s.normalized(labels[i], labels[j]);
  }
  ModularityReport rep;
  Eigen::JacobiSVD<CMatrix> svd(S);
  const auto& sv = svd.singularValues();
  rep.condition_number = sv[m - 1] > 0 ? sv[0] / sv[m - 1] : std::numeric_limits<double>::infinity();
  rep.unitarity_residual = unitarity_residual(S);
  for (int i = 0; i < m; ++i) {
    if (labels[i] == 0) continue;
    bool trivial = true;
    for (int j = 0; j < m && trivial; ++j) {
      CMatrix mono = monodromy(qd, labels[i], labels[j]);
      trivial = max_abs(mono - CMatrix::Identity(mono.rows(), mono.cols())) < tol;
    }
    if (trivial) rep.transparent.push_back(labels[i]);
  }
  CMatrix st = S * T, sti = S * T.adjoint();
  rep.st_residual = detail::projective_residual(st * st * st, S * S);
  rep.st_inverse_residual = detail::projective_residual(sti * sti * sti, S * S);
  rep.modular = std::isfinite(rep.condition_number) && rep.condition_number < 1e10 && rep.transparent.empty() &&
                rep.unitarity_residual < tol;
  return rep;
}

}  // namespace qdouble

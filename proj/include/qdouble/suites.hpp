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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qdouble/multiplet.hpp"
#include "qdouble/quantum_double.hpp"

namespace qdouble {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;

  bool pass() const { return std::isfinite(residual) && residual <= tolerance; }
};

class VerificationReport {
 public:
  explicit VerificationReport(std::string title = {}) : title_(std::move(title)) {}

  /// Runs `fn`, which returns a residual, and records it with its wall time.
  template <class Fn>
  const CheckResult& run(const std::string& name, double tol, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    const double r = fn();
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    checks_.push_back({name, r, tol, dt});
    return checks_.back();
  }

  void add(CheckResult c) { checks_.push_back(std::move(c)); }
  void merge(const VerificationReport& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  }

  const std::string& title() const { return title_; }
  const std::vector<CheckResult>& checks() const { return checks_; }
  bool pass() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const CheckResult& c) { return c.pass(); });
  }
  double max_residual() const {
    double w = 0.0;
    for (const auto& c : checks_) w = std::max(w, c.residual);
    return w;
  }
  double seconds() const {
    double s = 0.0;
    for (const auto& c : checks_) s += c.seconds;
    return s;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }

  std::string format() const {
    std::string out;
    char line[256];
    if (!title_.empty()) out += title_ + "\n";
    for (const auto& c : checks_) {
      std::snprintf(line, sizeof line, "  %-4s %-34s residual %.3e  tol %.1e  %7.3fs\n", c.pass() ? "ok" : "FAIL",
                    c.name.c_str(), c.residual, c.tolerance, c.seconds);
      out += line;
    }
    std::snprintf(line, sizeof line, "%s: %zu checks, max residual %.3e, %.2fs\n", pass() ? "PASS" : "FAIL",
                  checks_.size(), max_residual(), seconds());
    out += line;
    return out;
  }

 private:
  std::string title_;
  std::vector<CheckResult> checks_;
};

/// Compares operator products exactly on their joint support when it is small, otherwise on a
/// seeded random unit state of the full register.
class RelationChecker {
 public:
  using Product = std::vector<const LocalOperator*>;

  static constexpr std::uint64_t kDefaultExactLimit = 300000;

  RelationChecker(const LatticeModel& m, std::uint64_t seed, std::uint64_t exact_limit = kDefaultExactLimit)
      : m_(m), seed_(seed), exact_limit_(exact_limit) {}

  /// Residual of lhs = rhs; factors are listed left to right as in the written product.
  double residual(const Product& lhs, const Product& rhs) {
    std::vector<int> u;
    for (const auto* p : {&lhs, &rhs})
      for (const LocalOperator* op : *p) u.insert(u.end(), op->support().begin(), op->support().end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    if (LocalOperator::local_dim(m_.base(), u.size()) <= exact_limit_ || !register_fits())
      return distance(multiply(lhs), multiply(rhs));
    const StateVector& psi = state();
    return apply(lhs, psi).distance(apply(rhs, psi));
  }

  const LocalOperator& zero() const { return zero_; }
  const LocalOperator& one() const { return one_; }

 private:
  bool register_fits() const {
    try {
      m_.register_size();
      return true;
    } catch (const ResourceError&) {
      return false;
    }
  }
  const StateVector& state() {
    if (!psi_) psi_ = StateVector::random(m_.base(), m_.num_edges(), seed_);
    return *psi_;
  }
  LocalOperator multiply(const Product& p) const {
    LocalOperator out = one_;
    for (const LocalOperator* op : p) out = out * *op;
    return out;
  }
  static StateVector apply(const Product& p, const StateVector& psi) {
    StateVector cur = psi;
    for (auto it = p.rbegin(); it != p.rend(); ++it) cur = (*it)->apply(cur);
    return cur;
  }

  const LatticeModel& m_;
  std::uint64_t seed_;
  std::uint64_t exact_limit_;
  LocalOperator zero_{m_.base(), Cplx(0)};
  LocalOperator one_{m_.base()};
  std::optional<StateVector> psi_;
};

/// All F^{h,g} on one ribbon, built once.
class RibbonFamily {
 public:
  RibbonFamily(const LatticeModel& m, Ribbon r) : order_(m.base()), ribbon_(std::move(r)) {
    for (Elem h = 0; h < order_; ++h)
      for (Elem g = 0; g < order_; ++g) ops_.push_back(ribbon_operator(m, ribbon_, h, g));
  }
  const LocalOperator& operator()(Elem h, Elem g) const { return ops_[h * order_ + g]; }
  const Ribbon& ribbon() const { return ribbon_; }

 private:
  int order_;
  Ribbon ribbon_;
  std::vector<LocalOperator> ops_;
};

struct SuiteOptions {
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::uint64_t exact_limit = RelationChecker::kDefaultExactLimit;
};

/// Site at the vertex (1,1) with the face above and to the right of it.
inline Site reference_site(const TorusLattice& lat) { return Site{lat.vertex(1, 1), lat.face(1, 1)}; }

/// Faces the dual triangles of a ribbon move into, excluding the final face.
inline std::set<int> crossed_faces(const TorusLattice& lat, const Ribbon& r) {
  std::set<int> out;
  int f = r.start().face;
  for (const auto& t : r.triangles())
    if (t.kind == Triangle::Kind::Dual) {
      f = lat.other_face(t.edge, f);
      out.insert(f);
    }
  out.erase(r.end().face);
  return out;
}

/// Ribbons used by the relation suite; longer ones only for small groups.
inline std::vector<Ribbon> suite_ribbons(const LatticeModel& m) {
  std::vector<std::string> steps{"DU", "UD", "DUD", "UDU", "DUUD"};
  if (m.base() <= 4) steps.push_back("UDUDUD");
  std::vector<Ribbon> out;
  for (const auto& s : steps) {
    try {
      out.push_back(Ribbon::from_steps(m.lattice(), reference_site(m.lattice()), s));
    } catch (const std::invalid_argument&) {
      // Ribbon would revisit an edge on this torus.
    }
  }
  return out;
}

inline void check_star_plaquette(const LatticeModel& m, RelationChecker& rc, VerificationReport& rep, double tol) {
  const FiniteGroup& G = m.group();
  const auto& lat = m.lattice();
  const int n = G.order();
  std::vector<LocalOperator> stars;
  for (int v = 0; v < lat.num_vertices(); ++v)
    for (Elem g = 0; g < n; ++g) stars.push_back(m.star(v, g));
  auto star = [&](int v, Elem g) -> const LocalOperator& { return stars[v * n + g]; };

  rep.run("algebra/star-product", tol, [&] {
    double w = 0.0;
    for (int v = 0; v < lat.num_vertices(); ++v)
      for (Elem g = 0; g < n; ++g)
        for (Elem h = 0; h < n; ++h) w = std::max(w, rc.residual({&star(v, g), &star(v, h)}, {&star(v, G.mul(g, h))}));
    return w;
  });
  rep.run("algebra/star-adjoint", tol, [&] {
    double w = 0.0;
    for (int v = 0; v < lat.num_vertices(); ++v)
      for (Elem g = 0; g < n; ++g) w = std::max(w, distance(star(v, g).adjoint(), star(v, G.inv(g))));
    return w;
  });
  std::vector<std::vector<LocalOperator>> plaq;
  for (const Site& s : lat.sites()) {
    plaq.emplace_back();
    for (Elem h = 0; h < n; ++h) plaq.back().push_back(m.plaquette(s, h));
  }
  const auto sites = lat.sites();
  rep.run("algebra/plaquette-product", tol, [&] {
    double w = 0.0;
    for (const auto& b : plaq)
      for (Elem g = 0; g < n; ++g)
        for (Elem h = 0; h < n; ++h) w = std::max(w, rc.residual({&b[g], &b[h]}, {g == h ? &b[h] : &rc.zero()}));
    return w;
  });
  rep.run("algebra/plaquette-resolution", tol, [&] {
    double w = 0.0;
    for (const auto& b : plaq) {
      LocalOperator sum(m.base(), Cplx(0));
      for (Elem h = 0; h < n; ++h) sum += b[h];
      w = std::max(w, distance(sum, rc.one()));
    }
    return w;
  });
  rep.run("algebra/star-plaquette", tol, [&] {
    double w = 0.0;
    for (std::size_t k = 0; k < sites.size(); ++k)
      for (Elem g = 0; g < n; ++g)
        for (Elem h = 0; h < n; ++h) {
          const LocalOperator& a = star(sites[k].vertex, g);
          w = std::max(w, rc.residual({&a, &plaq[k][h]}, {&plaq[k][G.conj(g, h)], &a}));
        }
    return w;
  });

  std::vector<LocalOperator> av, bf;
  for (int v = 0; v < lat.num_vertices(); ++v) av.push_back(m.star_projector(v));
  for (int f = 0; f < lat.num_faces(); ++f) bf.push_back(m.plaquette_projector(f));
  rep.run("projectors/idempotent", tol, [&] {
    double w = 0.0;
    for (const auto* set : {&av, &bf})
      for (const auto& p : *set) {
        w = std::max(w, distance(p * p, p));
        w = std::max(w, distance(p.adjoint(), p));
      }
    return w;
  });
  rep.run("projectors/commute", tol, [&] {
    double w = 0.0;
    std::vector<const LocalOperator*> all;
    for (const auto& p : av) all.push_back(&p);
    for (const auto& p : bf) all.push_back(&p);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        if (all[i]->overlaps(all[j]->support())) w = std::max(w, rc.residual({all[i], all[j]}, {all[j], all[i]}));
    return w;
  });
}

/// Local application against the direct full-register path, and commutation of disjointly supported operators.
inline void check_locality(const LatticeModel& m, VerificationReport& rep, double tol, std::uint64_t seed) {
  const auto& lat = m.lattice();
  const int n = m.base();
  const StateVector psi = StateVector::random(n, m.num_edges(), seed ^ 0x5eedULL);
  rep.run("locality/apply", tol, [&] {
    double w = 0.0;
    for (const Site& s : lat.sites()) {
      const Elem g = static_cast<Elem>((s.vertex + s.face + 1) % n);
      const Elem h = static_cast<Elem>((s.vertex + 2 * s.face) % n);
      w = std::max(w, m.star(s, g).apply(psi).distance(apply_star(m, s, g, psi)));
      w = std::max(w, m.plaquette(s, h).apply(psi).distance(apply_plaquette(m, s, h, psi)));
    }
    return w;
  });
  rep.run("locality/disjoint-commute", tol, [&] {
    std::mt19937_64 rng(seed + 17);
    std::normal_distribution<double> normal;
    auto random_op = [&](std::vector<int> support) {
      const auto d = static_cast<int>(LocalOperator::local_dim(n, support.size()));
      CMatrix dense(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) dense(r, c) = Cplx(normal(rng), normal(rng));
      return LocalOperator(n, std::move(support), SparseC(dense.sparseView()));
    };
    double w = 0.0;
    const int ne = m.num_edges();
    for (int trial = 0; trial < 4; ++trial) {
      const int a = static_cast<int>(rng() % ne);
      int b = static_cast<int>(rng() % ne);
      while (b == a) b = static_cast<int>(rng() % ne);
      auto x = random_op({a}), y = random_op({b});
      w = std::max(w, x.apply(y.apply(psi)).distance(y.apply(x.apply(psi))));
    }
    // A star and a plaquette whose supports miss each other, when the torus has room for one.
    for (int v = 0; v < lat.num_vertices(); ++v)
      for (int f = 0; f < lat.num_faces(); ++f) {
        auto a = m.star(v, static_cast<Elem>(n - 1));
        auto b = m.plaquette(lat.face_sites(f)[0], static_cast<Elem>(1 % n));
        if (a.overlaps(b.support())) continue;
        w = std::max(w, a.apply(b.apply(psi)).distance(b.apply(a.apply(psi))));
        v = lat.num_vertices();
        break;
      }
    return w;
  });
}

/// The three defining relations and the recursion, on one ribbon.
inline void check_ribbon_relations(const LatticeModel& m, RelationChecker& rc, const RibbonFamily& F,
                                   VerificationReport& rep, double tol) {
  const FiniteGroup& G = m.group();
  const int n = G.order();
  const std::string tag = "[" + F.ribbon().steps() + "]";
  rep.run("ribbon/product " + tag, tol, [&] {
    double w = 0.0;
    for (Elem h1 = 0; h1 < n; ++h1)
      for (Elem g1 = 0; g1 < n; ++g1)
        for (Elem h2 = 0; h2 < n; ++h2)
          for (Elem g2 = 0; g2 < n; ++g2)
            w = std::max(w, rc.residual({&F(h1, g1), &F(h2, g2)}, {g1 == g2 ? &F(G.mul(h1, h2), g1) : &rc.zero()}));
    return w;
  });
  rep.run("ribbon/adjoint " + tag, tol, [&] {
    double w = 0.0;
    for (Elem h = 0; h < n; ++h)
      for (Elem g = 0; g < n; ++g) w = std::max(w, distance(F(h, g).adjoint(), F(G.inv(h), g)));
    return w;
  });
  rep.run("ribbon/resolution " + tag, tol, [&] {
    LocalOperator sum(m.base(), Cplx(0));
    for (Elem g = 0; g < n; ++g) sum += F(G.identity(), g);
    return distance(sum, rc.one());
  });
  rep.run("ribbon/recursion " + tag, tol, [&] {
    double w = 0.0;
    const auto& lat = m.lattice();
    const Ribbon& r = F.ribbon();
    for (std::size_t k = 1; k < r.size(); ++k) {
      const Ribbon a = r.prefix(lat, k), b = r.suffix(lat, k);
      for (Elem h = 0; h < n; ++h)
        for (Elem g = 0; g < n; ++g) w = std::max(w, distance(F(h, g), ribbon_operator_recursive(m, a, b, h, g)));
    }
    return w;
  });
}

/// Endpoint relations at s1 and s2 and commutation with stars and plaquettes elsewhere.
///
/// Away from the endpoints every star commutes with F^{h,g}, and so does every plaquette whose face
/// the ribbon does not cross. On a crossed face only B^e = B_f commutes; the flux-resolved B^k are
/// conjugated there, and the check is restricted accordingly.
inline void check_endpoints(const LatticeModel& m, RelationChecker& rc, const RibbonFamily& F, VerificationReport& rep,
                            double tol) {
  const FiniteGroup& G = m.group();
  const auto& lat = m.lattice();
  const int n = G.order();
  const Ribbon& r = F.ribbon();
  const std::string tag = "[" + r.steps() + "]";
  const Site s1 = r.start(), s2 = r.end();
  std::vector<LocalOperator> a1, b1, a2, b2;
  for (Elem k = 0; k < n; ++k) {
    a1.push_back(m.star(s1, k));
    b1.push_back(m.plaquette(s1, k));
    a2.push_back(m.star(s2, k));
    b2.push_back(m.plaquette(s2, k));
  }
  rep.run("start/star " + tag, tol, [&] {
    double w = 0.0;
    for (Elem k = 0; k < n; ++k)
      for (Elem h = 0; h < n; ++h)
        for (Elem g = 0; g < n; ++g)
          w = std::max(w, rc.residual({&a1[k], &F(h, g)}, {&F(G.conj(k, h), G.mul(k, g)), &a1[k]}));
    return w;
  });
  rep.run("start/plaquette " + tag, tol, [&] {
    double w = 0.0;
    for (Elem k = 0; k < n; ++k)
      for (Elem h = 0; h < n; ++h)
        for (Elem g = 0; g < n; ++g) w = std::max(w, rc.residual({&b1[k], &F(h, g)}, {&F(h, g), &b1[G.mul(k, h)]}));
    return w;
  });
  rep.run("end/star " + tag, tol, [&] {
    double w = 0.0;
    for (Elem k = 0; k < n; ++k)
      for (Elem h = 0; h < n; ++h)
        for (Elem g = 0; g < n; ++g)
          w = std::max(w, rc.residual({&a2[k], &F(h, g)}, {&F(h, G.mul(g, G.inv(k))), &a2[k]}));
    return w;
  });
  rep.run("end/plaquette " + tag, tol, [&] {
    double w = 0.0;
    for (Elem k = 0; k < n; ++k)
      for (Elem h = 0; h < n; ++h)
        for (Elem g = 0; g < n; ++g) {
          const Elem kk = G.mul(G.mul(G.inv(g), G.inv(h)), G.mul(g, k));
          w = std::max(w, rc.residual({&b2[k], &F(h, g)}, {&F(h, g), &b2[kk]}));
        }
    return w;
  });

  const auto edges = r.edges();
  rep.run("interior/star " + tag, tol, [&] {
    double w = 0.0;
    for (int v = 0; v < lat.num_vertices(); ++v) {
      if (v == s1.vertex || v == s2.vertex) continue;
      for (Elem k = 0; k < n; ++k) {
        const LocalOperator a = m.star(v, k);
        if (!a.overlaps(edges)) continue;
        for (Elem h = 0; h < n; ++h)
          for (Elem g = 0; g < n; ++g) w = std::max(w, rc.residual({&a, &F(h, g)}, {&F(h, g), &a}));
      }
    }
    return w;
  });
  const auto crossed = crossed_faces(lat, r);
  rep.run("interior/plaquette " + tag, tol, [&] {
    double w = 0.0;
    for (int f = 0; f < lat.num_faces(); ++f) {
      if (f == s1.face || f == s2.face) continue;
      const bool on_path = crossed.count(f) > 0;
      for (const Site& s : lat.face_sites(f))
        for (Elem k = 0; k < (on_path ? 1 : n); ++k) {
          const LocalOperator b = m.plaquette(s, k);
          if (!b.overlaps(edges)) continue;
          for (Elem h = 0; h < n; ++h)
            for (Elem g = 0; g < n; ++g) w = std::max(w, rc.residual({&b, &F(h, g)}, {&F(h, g), &b}));
        }
    }
    return w;
  });
}

/// Completeness of every label's multiplet on `r`, and the decomposition over each split of `r`.
inline void check_multiplets(const LatticeModel& m, const QuantumDouble& qd, const Ribbon& r, VerificationReport& rep,
                             double tol) {
  const auto& lat = m.lattice();
  const std::string tag = "[" + r.steps() + "]";
  std::vector<Multiplet> whole;
  for (int a = 0; a < qd.num_anyons(); ++a) whole.push_back(multiplet(m, qd, r, a));
  rep.run("multiplet/completeness " + tag, tol, [&] {
    double w = 0.0;
    for (const auto& mu : whole) {
      auto [x, y] = completeness_residuals(mu, m.base());
      w = std::max({w, x, y});
    }
    return w;
  });
  rep.run("multiplet/decomposition " + tag, tol, [&] {
    double w = 0.0;
    for (std::size_t k = 1; k < r.size(); ++k) {
      const Ribbon a = r.prefix(lat, k), b = r.suffix(lat, k);
      for (int l = 0; l < qd.num_anyons(); ++l)
        w = std::max(w, multiplet_decomposition_residual(whole[l], multiplet(m, qd, a, l), multiplet(m, qd, b, l)));
    }
    return w;
  });
}

/// Full relation suite on a torus: star/plaquette algebra, locality, ribbon relations, endpoints, multiplets.
inline VerificationReport lattice_suite(const LatticeModel& m, const QuantumDouble& qd, const SuiteOptions& opt = {}) {
  detail::require_same_group(m, qd);
  m.register_size();
  VerificationReport rep("lattice relations, " + m.group().name() + " on " + std::to_string(m.lattice().lx()) + "x" +
                         std::to_string(m.lattice().ly()));
  RelationChecker rc(m, opt.seed, opt.exact_limit);
  check_star_plaquette(m, rc, rep, opt.tol);
  check_locality(m, rep, opt.tol, opt.seed);
  for (const Ribbon& r : suite_ribbons(m)) {
    RibbonFamily F(m, r);
    check_ribbon_relations(m, rc, F, rep, opt.tol);
    if (!r.is_closed() && !(r.start().vertex == r.end().vertex) && !(r.start().face == r.end().face))
      check_endpoints(m, rc, F, rep, opt.tol);
  }
  check_multiplets(m, qd, Ribbon::from_steps(m.lattice(), reference_site(m.lattice()), "DUUD"), rep, opt.tol);
  return rep;
}

/// Largest deviation of ⟨A_v⟩, ⟨B_f⟩ from 1 in a state.
inline double stabilizer_residual(const LatticeModel& m, const StateVector& psi) {
  double w = 0.0;
  for (int v = 0; v < m.lattice().num_vertices(); ++v)
    w = std::max(w, std::abs(psi.inner(m.star_projector(v).apply(psi)) - Cplx(1.0)));
  for (int f = 0; f < m.lattice().num_faces(); ++f)
    w = std::max(w, std::abs(psi.inner(m.plaquette_projector(f).apply(psi)) - Cplx(1.0)));
  return w;
}

/// max_{h,g} ‖F^{h,g}_{ξ1} ψ − F^{h,g}_{ξ2} ψ‖.
inline double path_difference(const LatticeModel& m, const Ribbon& a, const Ribbon& b, const StateVector& psi) {
  if (!(a.start() == b.start()) || !(a.end() == b.end()))
    throw std::invalid_argument("path independence needs ribbons with equal endpoints");
  double w = 0.0;
  for (Elem h = 0; h < m.base(); ++h)
    for (Elem g = 0; g < m.base(); ++g)
      w = std::max(w, ribbon_operator(m, a, h, g).apply(psi).distance(ribbon_operator(m, b, h, g).apply(psi)));
  return w;
}

/// Ground-state checks: stabilizer expectations, energy, translation invariance, path independence.
inline VerificationReport ground_suite(const LatticeModel& m, double tol = 1e-12) {
  const auto& lat = m.lattice();
  VerificationReport rep("ground state, " + m.group().name() + " on " + std::to_string(lat.lx()) + "x" +
                         std::to_string(lat.ly()));
  const StateVector psi0 = ground_state(m);
  rep.run("ground/stabilizers", tol, [&] { return stabilizer_residual(m, psi0); });
  rep.run("ground/energy", tol, [&] {
    StateVector h = hamiltonian_apply(m, psi0);
    StateVector target = psi0;
    target *= -static_cast<double>(lat.num_vertices() + lat.num_faces());
    return h.distance(target);
  });
  rep.run("ground/translation", tol, [&] {
    double w = 0.0;
    for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}}) {
      const StateVector t = translate(m, psi0, dx, dy);
      w = std::max(w, 1.0 - std::abs(psi0.inner(t)));
    }
    return w;
  });
  rep.run("ground/path-independence", tol, [&] {
    const Site s = reference_site(lat);
    return path_difference(m, Ribbon::from_steps(lat, s, "DUUD"), Ribbon::from_steps(lat, s, "UDDU"), psi0);
  });
  return rep;
}


/// Dense random operator on the given edges.
inline LocalOperator random_observable(int base, std::vector<int> support, std::mt19937_64& rng) {
  std::sort(support.begin(), support.end());
  std::normal_distribution<double> normal;
  const auto d = static_cast<int>(LocalOperator::local_dim(base, support.size()));
  CMatrix dense(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) dense(r, c) = Cplx(normal(rng), normal(rng));
  return LocalOperator(base, std::move(support), SparseC(dense.sparseView()));
}

/// Amplimorphism and transport checks for one label.
///
/// `full` is ξ̂ξ with ξ̂ its first triangle. χ lives on ξ truncated after `n` triangles, χ̂ on
/// ξ̂ξ truncated after n + 1. Observables sit on 1 or 2 edges near the truncated ribbon and clear its tail.
inline VerificationReport amplimorphism_suite(const LatticeModel& m, const QuantumDouble& qd, int label,
                                              const Ribbon& full, std::size_t n, int count = 20,
                                              std::uint64_t seed = 0, double tol = 1e-10) {
  const auto& lat = m.lattice();
  if (full.size() < n + 3) throw std::invalid_argument("amplimorphism suite needs a ribbon longer than n + 2");
  VerificationReport rep("amplimorphism, " + qd.anyons()[label].name + ", N = " + std::to_string(n));
  const Ribbon xi = full.suffix(lat, 1);
  const Amplimorphism chi(m, qd, label, xi, n), chi_next(m, qd, label, xi, n + 1), chi_hat(m, qd, label, full, n + 1);
  const int dim = chi.n();
  const int base = m.base();

  const auto ribbon_edges = full.edges();
  const auto prefix_edges = chi.ribbon().edges();
  std::vector<int> tail;
  for (std::size_t k = n; k < xi.size(); ++k) tail.push_back(xi.triangles()[k].edge);
  std::sort(tail.begin(), tail.end());
  auto in = [](const std::vector<int>& v, int e) { return std::binary_search(v.begin(), v.end(), e); };
  std::vector<int> near;
  for (int e : prefix_edges)
    for (int v : {lat.source(e), lat.target(e)})
      for (const auto& oe : lat.star(v))
        if (!in(tail, oe.edge)) near.push_back(oe.edge);
  std::sort(near.begin(), near.end());
  near.erase(std::unique(near.begin(), near.end()), near.end());
  std::vector<int> away;
  for (int e = 0; e < lat.num_edges(); ++e)
    if (!in(ribbon_edges, e)) away.push_back(e);

  std::mt19937_64 rng(seed ^ 0xa3f1ULL);
  auto pick = [&](const std::vector<int>& pool) {
    std::vector<int> s{pool[rng() % pool.size()]};
    if (rng() % 2) {
      const int e = pool[rng() % pool.size()];
      if (e != s[0]) s.push_back(e);
    }
    return s;
  };
  // Observables come in pairs on a shared support, which keeps products local; even pairs touch the ribbon.
  std::vector<LocalOperator> obs;
  std::vector<int> s;
  for (int k = 0; k < count; ++k) {
    if (k % 2 == 0) {
      s = pick(near);
      if (k % 4 == 0) s[0] = prefix_edges[rng() % prefix_edges.size()];
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    obs.push_back(random_observable(base, s, rng));
  }

  auto diag = [&](const LocalOperator& a) {
    std::vector<LocalOperator> out;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out.push_back(i == j ? a : LocalOperator(base, Cplx(0)));
    return out;
  };
  std::vector<std::vector<LocalOperator>> images;
  for (const auto& a : obs) images.push_back(chi.apply(a));

  rep.run("ampli/clearance", 0.0, [&] {
    try {
      chi.apply(random_observable(base, {tail.front()}, rng));
    } catch (const ClearanceError&) {
      return 0.0;
    }
    return 1.0;
  });
  rep.run("ampli/unit", tol, [&] { return matrix_distance(chi.apply(LocalOperator(base)), diag(LocalOperator(base))); });
  rep.run("ampli/localization", tol, [&] {
    double w = 0.0;
    for (int k = 0; k < count; ++k) {
      auto a = random_observable(base, pick(away), rng);
      w = std::max(w, matrix_distance(chi.apply(a), diag(a)));
    }
    return w;
  });
  rep.run("ampli/multiplicative", tol, [&] {
    double w = 0.0;
    for (int k = 0; k + 1 < count; k += 2)
      w = std::max(w, matrix_distance(chi.apply(obs[k] * obs[k + 1]), matrix_product(images[k], images[k + 1], dim, base)));
    return w;
  });
  rep.run("ampli/adjoint", tol, [&] {
    double w = 0.0;
    for (int k = 0; k < count; ++k)
      w = std::max(w, matrix_distance(chi.apply(obs[k].adjoint()), matrix_adjoint(images[k], dim)));
    return w;
  });
  rep.run("ampli/stabilization", 1e-14, [&] {
    double w = 0.0;
    for (int k = 0; k < count; ++k) w = std::max(w, matrix_distance(chi_next.apply(obs[k]), images[k]));
    return w;
  });
  std::optional<Multiplet> v;
  rep.run("transport/unitary", tol, [&] {
    auto [a, b] = completeness_residuals(multiplet(m, qd, full.prefix(lat, 1), label), base);
    v = transport_unitary(m, qd, label, full.prefix(lat, 1));
    return std::max(a, b);
  });
  rep.run("transport/intertwining", tol, [&] {
    double w = 0.0;
    for (int k = 0; k < count; ++k) w = std::max(w, transport_residual(*v, images[k], chi_hat.apply(obs[k]), base));
    return w;
  });
  return rep;
}

}  // namespace qdouble

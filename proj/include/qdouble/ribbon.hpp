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
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdouble/lattice.hpp"
#include "qdouble/lattice_ops.hpp"
#include "qdouble/local_operator.hpp"

namespace qdouble {

/// One step of a ribbon. At site (v, f) the step uses the last edge of f counter-clockwise
/// from v. A direct step moves v along that edge; a dual step moves f across it.
/// `flag` records whether the edge points away from the vertex the step starts at.
struct Triangle {
  enum class Kind { Direct, Dual };
  Kind kind = Kind::Direct;
  int edge = 0;
  bool flag = true;

  bool operator==(const Triangle&) const = default;
};

class Ribbon {
 public:
  Ribbon() = default;

  /// Empty ribbon sitting at `s`.
  Ribbon(const TorusLattice& lat, Site s) : start_(s), end_(s) { lat.require_site(s); }

  /// Builds a ribbon from a string of steps, `D` for direct and `U` for dual.
  static Ribbon from_steps(const TorusLattice& lat, Site start, std::string_view steps) {
    Ribbon r(lat, start);
    for (char c : steps) {
      if (c == 'D' || c == 'd') {
        r.push(lat, Triangle::Kind::Direct);
      } else if (c == 'U' || c == 'u') {
        r.push(lat, Triangle::Kind::Dual);
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        throw std::invalid_argument(std::string("unknown ribbon step '") + c + "'");
      }
    }
    return r;
  }

  /// Parses `D|U <edge> <flag>` records; the start site is recovered from the first record.
  static Ribbon parse(const TorusLattice& lat, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<Triangle> recs;
    std::string kind;
    while (in >> kind) {
      Triangle t;
      int flag = 0;
      if (!(in >> t.edge >> flag)) throw std::invalid_argument("truncated ribbon record");
      if (kind == "D") {
        t.kind = Triangle::Kind::Direct;
      } else if (kind == "U") {
        t.kind = Triangle::Kind::Dual;
      } else {
        throw std::invalid_argument("ribbon record kind must be D or U, got '" + kind + "'");
      }
      if (t.edge < 0 || t.edge >= lat.num_edges()) throw std::invalid_argument("ribbon edge out of range");
      t.flag = flag != 0;
      recs.push_back(t);
    }
    if (recs.empty()) throw std::invalid_argument("cannot recover the start site of an empty ribbon");
    const int v = recs[0].flag ? lat.source(recs[0].edge) : lat.target(recs[0].edge);
    Site start{-1, -1};
    for (int f : lat.edge_faces(recs[0].edge)) {
      Site s{v, f};
      if (lat.is_site(s) && lat.boundary_from(s)[3].edge == recs[0].edge) start = s;
    }
    if (start.vertex < 0) throw std::invalid_argument("first ribbon record does not match any site");
    Ribbon r(lat, start);
    for (std::size_t k = 0; k < recs.size(); ++k) {
      r.push(lat, recs[k].kind);
      if (!(r.tri_.back() == recs[k]))
        throw std::invalid_argument("ribbon record " + std::to_string(k) + " does not continue the path");
    }
    return r;
  }

  std::string serialize() const {
    std::string out;
    for (const auto& t : tri_)
      out += std::string(t.kind == Triangle::Kind::Direct ? "D " : "U ") + std::to_string(t.edge) + " " +
             (t.flag ? "1" : "0") + "\n";
    return out;
  }

  void push(const TorusLattice& lat, Triangle::Kind kind) {
    const int e = lat.boundary_from(end_)[3].edge;
    for (const auto& t : tri_)
      if (t.edge == e) throw std::invalid_argument("ribbon revisits edge " + lat.edge_name(e));
    tri_.push_back({kind, e, lat.source(e) == end_.vertex});
    if (kind == Triangle::Kind::Direct) {
      end_.vertex = lat.other_end(e, end_.vertex);
    } else {
      end_.face = lat.other_face(e, end_.face);
    }
  }

  /// ξ1 ξ2, defined when end(ξ1) = start(ξ2) and the edge sets are disjoint.
  static Ribbon concat(const TorusLattice& lat, const Ribbon& a, const Ribbon& b) {
    if (!(a.end_ == b.start_)) throw std::invalid_argument("concat: ribbons do not meet");
    Ribbon r = a;
    for (const auto& t : b.tri_) r.push(lat, t.kind);
    return r;
  }

  /// First n triangles.
  Ribbon prefix(const TorusLattice& lat, std::size_t n) const {
    Ribbon r(lat, start_);
    for (std::size_t k = 0; k < n && k < tri_.size(); ++k) r.push(lat, tri_[k].kind);
    return r;
  }

  /// Triangles from index n on, starting at the site reached after n steps.
  Ribbon suffix(const TorusLattice& lat, std::size_t n) const {
    Ribbon r(lat, prefix(lat, n).end_);
    for (std::size_t k = n; k < tri_.size(); ++k) r.push(lat, tri_[k].kind);
    return r;
  }

  const Site& start() const { return start_; }
  const Site& end() const { return end_; }
  const std::vector<Triangle>& triangles() const { return tri_; }
  std::size_t size() const { return tri_.size(); }
  bool empty() const { return tri_.empty(); }
  bool is_closed() const { return !tri_.empty() && start_ == end_; }

  std::vector<int> edges() const {
    std::vector<int> e;
    for (const auto& t : tri_) e.push_back(t.edge);
    std::sort(e.begin(), e.end());
    return e;
  }

  std::vector<int> edges_of(Triangle::Kind kind) const {
    std::vector<int> e;
    for (const auto& t : tri_)
      if (t.kind == kind) e.push_back(t.edge);
    std::sort(e.begin(), e.end());
    return e;
  }

  std::string steps() const {
    std::string s;
    for (const auto& t : tri_) s += t.kind == Triangle::Kind::Direct ? 'D' : 'U';
    return s;
  }

 private:
  Site start_{};
  Site end_{};
  std::vector<Triangle> tri_;
};

/// F^{h,g}_ξ. Walking the ribbon, a direct triangle with value k (inverted against its
/// orientation) updates h ↦ k^{-1} h k and g ↦ k^{-1} g; a dual triangle multiplies its edge
/// by the current h (on the left when the edge leaves the step's vertex, else by h^{-1} on
/// the right). The result survives only if g has been used up, i.e. g equals the direct product.
inline LocalOperator ribbon_operator(const LatticeModel& m, const Ribbon& r, Elem h, Elem g) {
  const FiniteGroup& G = m.group();
  if (r.empty()) return LocalOperator(m.base(), g == G.identity() ? Cplx(1.0) : Cplx(0.0));
  const auto support = r.edges();
  std::vector<int> slot;
  for (const auto& t : r.triangles())
    slot.push_back(static_cast<int>(std::lower_bound(support.begin(), support.end(), t.edge) - support.begin()));
  const auto& tri = r.triangles();
  return LocalOperator::monomial(m.base(), support, [&](std::vector<int>& d) {
    Elem hc = h, gc = g;
    for (std::size_t k = 0; k < tri.size(); ++k) {
      int& x = d[slot[k]];
      if (tri[k].kind == Triangle::Kind::Direct) {
        const Elem kk = tri[k].flag ? x : G.inv(x);
        const Elem ki = G.inv(kk);
        hc = G.mul(ki, hc, kk);
        gc = G.mul(ki, gc);
      } else {
        x = tri[k].flag ? G.mul(hc, x) : G.mul(x, G.inv(hc));
      }
    }
    return gc == G.identity() ? Cplx(1.0) : Cplx(0.0);
  });
}

/// Σ_k F^{h,k}_{ξ1} F^{k^{-1} h k, k^{-1} g}_{ξ2}.
inline LocalOperator ribbon_operator_recursive(const LatticeModel& m, const Ribbon& a, const Ribbon& b, Elem h,
                                               Elem g) {
  const FiniteGroup& G = m.group();
  if (!(a.end() == b.start())) throw std::invalid_argument("recursion: ribbons do not meet");
  LocalOperator sum(m.base(), Cplx(0));
  for (Elem k = 0; k < G.order(); ++k) {
    const Elem ki = G.inv(k);
    sum += ribbon_operator(m, a, h, k) * ribbon_operator(m, b, G.mul(ki, h, k), G.mul(ki, g));
  }
  return sum;
}

/// Finds a closed ribbon with the given numbers of direct and dual steps, by depth-first search.
inline Ribbon find_closed_ribbon(const TorusLattice& lat, Site start, int direct, int dual) {
  Ribbon found;
  bool ok = false;
  auto dfs = [&](auto&& self, const Ribbon& cur, int d, int u) -> void {
    if (ok) return;
    if (d == 0 && u == 0) {
      if (cur.is_closed()) {
        found = cur;
        ok = true;
      }
      return;
    }
    for (auto kind : {Triangle::Kind::Direct, Triangle::Kind::Dual}) {
      if ((kind == Triangle::Kind::Direct ? d : u) == 0) continue;
      Ribbon next = cur;
      try {
        next.push(lat, kind);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (next.end() == start && !(d + u == 1)) continue;
      self(self, next, d - (kind == Triangle::Kind::Direct), u - (kind == Triangle::Kind::Dual));
    }
  };
  dfs(dfs, Ribbon(lat, start), direct, dual);
  if (!ok) throw std::invalid_argument("no closed ribbon with the requested step counts");
  return found;
}

}  // namespace qdouble

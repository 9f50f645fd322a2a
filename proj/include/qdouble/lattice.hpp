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

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdouble {

/// Edge traversal inside a face or star: `forward` is true when walked along the edge orientation.
struct OrientedEdge {
  int edge = 0;
  bool forward = true;
};

/// A vertex together with one of the faces touching it.
struct Site {
  int vertex = 0;
  int face = 0;
  bool operator==(const Site&) const = default;
};

/// Periodic Lx × Ly square lattice.
///
/// Vertex (x, y) has index y·Lx + x. Edge 2(y·Lx + x) points right from (x, y) and
/// edge 2(y·Lx + x) + 1 points up from (x, y). Face (x, y) has lower-left corner (x, y).
class TorusLattice {
 public:
  TorusLattice(int lx, int ly) : lx_(lx), ly_(ly) {
    if (lx < 2 || ly < 2) throw std::invalid_argument("torus needs Lx, Ly >= 2");
  }

  int lx() const { return lx_; }
  int ly() const { return ly_; }
  int num_vertices() const { return lx_ * ly_; }
  int num_faces() const { return lx_ * ly_; }
  int num_edges() const { return 2 * lx_ * ly_; }

  int vertex(int x, int y) const { return wrap_y(y) * lx_ + wrap_x(x); }
  int face(int x, int y) const { return vertex(x, y); }
  int h_edge(int x, int y) const { return 2 * vertex(x, y); }
  int v_edge(int x, int y) const { return 2 * vertex(x, y) + 1; }
  int x_of(int vertex_or_face) const { return vertex_or_face % lx_; }
  int y_of(int vertex_or_face) const { return vertex_or_face / lx_; }

  bool is_horizontal(int e) const { return e % 2 == 0; }
  int source(int e) const { return e / 2; }
  int target(int e) const {
    const int v = e / 2;
    return is_horizontal(e) ? vertex(x_of(v) + 1, y_of(v)) : vertex(x_of(v), y_of(v) + 1);
  }
  int other_end(int e, int v) const { return source(e) == v ? target(e) : source(e); }

  /// The two faces bordering an edge: the one above/right of it first.
  std::array<int, 2> edge_faces(int e) const {
    const int v = e / 2;
    const int x = x_of(v), y = y_of(v);
    if (is_horizontal(e)) return {face(x, y), face(x, y - 1)};
    return {face(x, y), face(x - 1, y)};
  }
  int other_face(int e, int f) const {
    auto fs = edge_faces(e);
    return fs[0] == f ? fs[1] : fs[0];
  }

  /// Corners counter-clockwise from the lower-left: LL, LR, UR, UL.
  std::array<int, 4> face_corners(int f) const {
    const int x = x_of(f), y = y_of(f);
    return {vertex(x, y), vertex(x + 1, y), vertex(x + 1, y + 1), vertex(x, y + 1)};
  }

  /// Boundary counter-clockwise from the lower-left corner: bottom, right, top, left.
  std::array<OrientedEdge, 4> face_boundary(int f) const {
    const int x = x_of(f), y = y_of(f);
    return {OrientedEdge{h_edge(x, y), true}, OrientedEdge{v_edge(x + 1, y), true},
            OrientedEdge{h_edge(x, y + 1), false}, OrientedEdge{v_edge(x, y), false}};
  }

  int corner_position(const Site& s) const {
    auto c = face_corners(s.face);
    for (int k = 0; k < 4; ++k)
      if (c[k] == s.vertex) return k;
    return -1;
  }

  bool is_site(const Site& s) const {
    return s.vertex >= 0 && s.vertex < num_vertices() && s.face >= 0 && s.face < num_faces() &&
           corner_position(s) >= 0;
  }

  void require_site(const Site& s) const {
    if (!is_site(s))
      throw std::invalid_argument("(" + std::to_string(s.vertex) + ", " + std::to_string(s.face) +
                                  ") is not a site: vertex is not a corner of the face");
  }

  /// Face boundary counter-clockwise starting at the site's vertex.
  std::array<OrientedEdge, 4> boundary_from(const Site& s) const {
    require_site(s);
    const int k = corner_position(s);
    auto b = face_boundary(s.face);
    return {b[k], b[(k + 1) % 4], b[(k + 2) % 4], b[(k + 3) % 4]};
  }

  /// The four edges at a vertex; `forward` marks edges pointing away from it.
  std::array<OrientedEdge, 4> star(int v) const {
    const int x = x_of(v), y = y_of(v);
    return {OrientedEdge{h_edge(x, y), true}, OrientedEdge{v_edge(x, y), true},
            OrientedEdge{h_edge(x - 1, y), false}, OrientedEdge{v_edge(x, y - 1), false}};
  }

  /// All four sites at a face, in corner order.
  std::array<Site, 4> face_sites(int f) const {
    auto c = face_corners(f);
    return {Site{c[0], f}, Site{c[1], f}, Site{c[2], f}, Site{c[3], f}};
  }

  std::vector<Site> sites() const {
    std::vector<Site> out;
    for (int f = 0; f < num_faces(); ++f)
      for (const Site& s : face_sites(f)) out.push_back(s);
    return out;
  }

  /// Image of an edge under translation by (dx, dy).
  int translate_edge(int e, int dx, int dy) const {
    const int v = e / 2;
    const int w = vertex(x_of(v) + dx, y_of(v) + dy);
    return 2 * w + (e % 2);
  }

  std::string edge_name(int e) const {
    const int v = e / 2;
    return std::string(is_horizontal(e) ? "h(" : "v(") + std::to_string(x_of(v)) + "," +
           std::to_string(y_of(v)) + ")";
  }

 private:
  int wrap_x(int x) const { return ((x % lx_) + lx_) % lx_; }
  int wrap_y(int y) const { return ((y % ly_) + ly_) % ly_; }

  int lx_, ly_;
};

}  // namespace qdouble

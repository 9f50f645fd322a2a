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

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "qdouble/quantum_double.hpp"
#include "qdouble/suites.hpp"

namespace {

using namespace qdouble;

LatticeModel model(const std::string& g, int lx, int ly) { return LatticeModel(build_group(g), TorusLattice(lx, ly)); }

// Number of gauge orbits of flat connections: each orbit spans one ground state.
int gauge_orbit_oracle(const LatticeModel& m) {
  const FiniteGroup& G = m.group();
  const auto& lat = m.lattice();
  const std::uint64_t size = m.register_size();
  const int n = G.order(), ne = m.num_edges();
  std::vector<std::uint64_t> stride(ne, 1);
  for (int e = 1; e < ne; ++e) stride[e] = stride[e - 1] * n;
  auto digit = [&](std::uint64_t i, int e) { return static_cast<Elem>((i / stride[e]) % n); };
  std::vector<char> flat(size, 1);
  for (std::uint64_t i = 0; i < size; ++i)
    for (int f = 0; f < lat.num_faces() && flat[i]; ++f) {
      Elem p = G.identity();
      for (const auto& oe : lat.face_boundary(f)) p = G.mul(p, oe.forward ? digit(i, oe.edge) : G.inv(digit(i, oe.edge)));
      flat[i] = p == G.identity();
    }
  std::vector<std::uint64_t> parent(size);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint64_t i = 0; i < size; ++i) {
    if (!flat[i]) continue;
    for (int v = 0; v < lat.num_vertices(); ++v)
      for (Elem g = 1; g < n; ++g) {
        std::uint64_t j = i;
        for (const auto& oe : lat.star(v)) {
          const Elem x = digit(j, oe.edge);
          const Elem y = oe.forward ? G.mul(g, x) : G.mul(x, G.inv(g));
          j = j - x * stride[oe.edge] + y * stride[oe.edge];
        }
        parent[find(i)] = find(j);
      }
  }
  int orbits = 0;
  for (std::uint64_t i = 0; i < size; ++i) orbits += flat[i] && find(i) == i;
  return orbits;
}

TEST(Torus, Bookkeeping) {
  TorusLattice lat(3, 4);
  EXPECT_EQ(lat.num_vertices(), 12);
  EXPECT_EQ(lat.num_faces(), 12);
  EXPECT_EQ(lat.num_edges(), 24);
  std::vector<int> in_stars(lat.num_edges()), in_faces(lat.num_edges()), sources(lat.num_edges()),
      targets(lat.num_edges());
  for (int v = 0; v < lat.num_vertices(); ++v)
    for (const auto& oe : lat.star(v)) {
      ++in_stars[oe.edge];
      EXPECT_EQ(oe.forward ? lat.source(oe.edge) : lat.target(oe.edge), v);
    }
  for (int f = 0; f < lat.num_faces(); ++f)
    for (const auto& oe : lat.face_boundary(f)) ++in_faces[oe.edge];
  for (int e = 0; e < lat.num_edges(); ++e) {
    EXPECT_EQ(in_stars[e], 2);
    EXPECT_EQ(in_faces[e], 2);
    auto ef = lat.edge_faces(e);
    EXPECT_NE(ef[0], ef[1]);
  }
  EXPECT_EQ(lat.sites().size(), 48u);
}

TEST(Torus, FaceBoundaryIsClosedLoop) {
  TorusLattice lat(3, 3);
  for (const Site& s : lat.sites()) {
    int v = s.vertex;
    for (const auto& oe : lat.boundary_from(s)) {
      ASSERT_EQ(oe.forward ? lat.source(oe.edge) : lat.target(oe.edge), v);
      v = lat.other_end(oe.edge, v);
    }
    EXPECT_EQ(v, s.vertex);
  }
  EXPECT_THROW(lat.require_site(Site{lat.vertex(0, 0), lat.face(1, 1)}), std::invalid_argument);
  EXPECT_THROW(TorusLattice(1, 3), std::invalid_argument);
}

TEST(Star, IdentityAndProducts) {
  auto m = model("S3", 2, 2);
  const FiniteGroup& G = m.group();
  const auto psi = StateVector::random(6, 8, 3);
  const Site s{m.lattice().vertex(1, 0), m.lattice().face(1, 0)};
  EXPECT_LT(apply_star(m, s, 0, psi).distance(psi), 1e-15);
  for (Elem g = 0; g < 6; ++g)
    for (Elem h = 0; h < 6; ++h)
      EXPECT_LT(apply_star(m, s, g, apply_star(m, s, h, psi)).distance(apply_star(m, s, G.mul(g, h), psi)), 1e-14);
  // ⟨φ, A^g ψ⟩ = ⟨A^{g^-1} φ, ψ⟩.
  const auto phi = StateVector::random(6, 8, 4);
  for (Elem g = 0; g < 6; ++g)
    EXPECT_LT(std::abs(phi.inner(apply_star(m, s, g, psi)) - apply_star(m, s, G.inv(g), phi).inner(psi)), 1e-14);
}

TEST(Plaquette, ResolutionAndOrthogonality) {
  auto m = model("S3", 2, 2);
  const FiniteGroup& G = m.group();
  const auto psi = StateVector::random(6, 8, 5);
  const Site s{m.lattice().vertex(0, 1), m.lattice().face(0, 0)};
  ASSERT_TRUE(m.lattice().is_site(s));
  StateVector sum = m.zero_state();
  for (Elem h = 0; h < 6; ++h) sum += apply_plaquette(m, s, h, psi);
  EXPECT_LT(sum.distance(psi), 1e-14);
  for (Elem g = 0; g < 6; ++g)
    for (Elem h = 0; h < 6; ++h) {
      auto two = apply_plaquette(m, s, g, apply_plaquette(m, s, h, psi));
      EXPECT_LT(two.distance(g == h ? apply_plaquette(m, s, h, psi) : m.zero_state()), 1e-15);
      auto lhs = apply_star(m, s, g, apply_plaquette(m, s, h, psi));
      auto rhs = apply_plaquette(m, s, G.conj(g, h), apply_star(m, s, g, psi));
      EXPECT_LT(lhs.distance(rhs), 1e-14);
    }
}

TEST(Projectors, IdempotentAndCommuting) {
  auto m = model("Z3", 2, 2);
  const auto psi = StateVector::random(3, 8, 6);
  for (const Site& s : m.lattice().sites()) {
    const auto once = apply_projectors(m, s, psi);
    EXPECT_LT(apply_projectors(m, s, once).distance(once), 1e-14);
    // [A_s, B_s] = 0 at the same site.
    StateVector ba = m.zero_state(), ab = m.zero_state();
    for (Elem g = 0; g < 3; ++g) ab += apply_star(m, s, g, apply_plaquette(m, s, 0, psi));
    ba = apply_projectors(m, s, psi);
    ab *= 1.0 / 3;
    EXPECT_LT(ab.distance(ba), 1e-14);
  }
}

TEST(LocalOperator, MatchesDirectApplication) {
  auto m = model("Z2", 3, 3);
  const auto psi = StateVector::random(2, 18, 9);
  for (const Site& s : m.lattice().sites()) {
    EXPECT_LT(m.star(s, 1).apply(psi).distance(apply_star(m, s, 1, psi)), 1e-15);
    EXPECT_LT(m.plaquette(s, 1).apply(psi).distance(apply_plaquette(m, s, 1, psi)), 1e-15);
  }
}

TEST(LocalOperator, ExtendAndAlgebra) {
  const int base = 3;
  auto x = LocalOperator::monomial(base, {2}, [](std::vector<int>& d) {
    d[0] = (d[0] + 1) % 3;
    return Cplx(1.0);
  });
  auto y = LocalOperator::monomial(base, {5}, [](std::vector<int>& d) { return Cplx(d[0] == 0 ? 2.0 : 1.0); });
  const auto psi = StateVector::random(base, 6, 2);
  EXPECT_LT((x * y).apply(psi).distance(x.apply(y.apply(psi))), 1e-14);
  EXPECT_LT(distance(x * y, y * x), 1e-15);
  EXPECT_LT(distance((x * x * x), LocalOperator(base)), 1e-15);
  EXPECT_LT(distance((x + y).adjoint(), x.adjoint() + y.adjoint()), 1e-15);
  EXPECT_EQ(x.extend({1, 2, 4}).dim(), 27u);
  EXPECT_THROW(x.extend({1, 4}), std::invalid_argument);
  EXPECT_THROW(LocalOperator(base, {3, 1}, SparseC(9, 9)), std::invalid_argument);
}

TEST(Hamiltonian, SelfAdjointAndGroundEnergy) {
  for (auto [g, l] : {std::pair{"Z2", 3}, std::pair{"S3", 2}}) {
    auto m = model(g, l, l);
    const auto phi = StateVector::random(m.base(), m.num_edges(), 1);
    const auto psi = StateVector::random(m.base(), m.num_edges(), 2);
    EXPECT_LT(std::abs(phi.inner(hamiltonian_apply(m, psi)) - hamiltonian_apply(m, phi).inner(psi)), 1e-12);
    const auto psi0 = ground_state(m);
    StateVector target = psi0;
    target *= -2.0 * l * l;
    EXPECT_LT(hamiltonian_apply(m, psi0).distance(target), 1e-12) << g;
  }
}

TEST(GroundState, StabilizersAndTranslation) {
  for (auto [g, l] : {std::pair{"Z2", 2}, std::pair{"Z2", 3}, std::pair{"S3", 2}}) {
    auto m = model(g, l, l);
    const auto psi0 = ground_state(m);
    EXPECT_NEAR(psi0.norm(), 1.0, 1e-14);
    EXPECT_LT(stabilizer_residual(m, psi0), 1e-12) << g << " " << l;
    for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}})
      EXPECT_NEAR(std::abs(psi0.inner(translate(m, psi0, dx, dy))), 1.0, 1e-12);
  }
}

TEST(GroundState, TranslationMovesExcitations) {
  auto m = model("Z2", 3, 3);
  auto psi = ground_state(m);
  auto flip = LocalOperator::monomial(2, {0}, [](std::vector<int>& d) {
    d[0] ^= 1;
    return Cplx(1.0);
  });
  psi = flip.apply(psi);
  EXPECT_LT(std::abs(psi.inner(translate(m, psi, 1, 0))), 0.5);
}

TEST(GroundSpace, DimensionMatchesGaugeOrbits) {
  struct Case {
    const char* g;
    int l;
    int expected;
  };
  for (auto c : {Case{"Z2", 2, 4}, Case{"Z2", 3, 4}, Case{"Z3", 2, 9}, Case{"S3", 2, 8}}) {
    auto m = model(c.g, c.l, c.l);
    const int oracle = gauge_orbit_oracle(m);
    EXPECT_EQ(oracle, c.expected) << c.g;
    EXPECT_EQ(ground_space_dim(m, 11), oracle) << c.g << " " << c.l;
    EXPECT_EQ(QuantumDouble(m.group_ptr()).num_anyons(), oracle);
  }
}

TEST(Guard, RefusesLargeRegisters) {
  auto m = model("S4", 3, 3);
  try {
    m.register_size();
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_GT(e.required(), 1e20);
    EXPECT_EQ(e.limit(), kMaxConfigurations);
  }
  EXPECT_THROW(ground_state(m), ResourceError);
  EXPECT_THROW(StateVector(2, 27), ResourceError);
  EXPECT_NO_THROW(StateVector(2, 26));
}

TEST(StateVector, DumpFormat) {
  auto psi = StateVector::random(2, 3, 1);
  const auto path = (std::filesystem::temp_directory_path() / "qdouble_dump_test.bin").string();
  psi.dump(path);
  std::ifstream in(path, std::ios::binary);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  ASSERT_EQ(bytes.size(), 8u + 8u * 8u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 8), "QDBLSTV1");
  float re = 0;
  std::memcpy(&re, bytes.data() + 8, 4);
  EXPECT_NEAR(re, psi[0].real(), 1e-6);
  std::filesystem::remove(path);
}

TEST(Locality, DisjointSupportsCommute) {
  auto m = model("S3", 2, 2);
  const auto psi = StateVector::random(6, 8, 21);
  const auto& lat = m.lattice();
  // A^g at vertex (0,0) and a ribbon operator on edges away from it.
  auto a = m.star(lat.vertex(0, 0), 3);
  auto b = LocalOperator::monomial(6, {lat.h_edge(1, 1)}, [](std::vector<int>& d) {
    d[0] = (d[0] + 1) % 6;
    return Cplx(0.0, 1.0);
  });
  ASSERT_FALSE(a.overlaps(b.support()));
  EXPECT_LT(a.apply(b.apply(psi)).distance(b.apply(a.apply(psi))), 1e-12);
}

TEST(Locality, ExpectationAwayFromExcitation) {
  // ⟨A⟩ for A supported away from a local excitation is unchanged.
  auto m = model("Z2", 3, 3);
  const auto psi0 = ground_state(m);
  const auto& lat = m.lattice();
  auto kick = LocalOperator::monomial(2, {lat.h_edge(0, 0)}, [](std::vector<int>& d) {
    d[0] ^= 1;
    return Cplx(1.0);
  });
  const auto excited = kick.apply(psi0);
  for (int v = 0; v < lat.num_vertices(); ++v) {
    auto a = m.star_projector(v);
    if (a.overlaps(kick.support())) continue;
    EXPECT_NEAR(std::abs(psi0.inner(a.apply(psi0)) - excited.inner(a.apply(excited))), 0.0, 1e-12);
  }
  for (int f = 0; f < lat.num_faces(); ++f) {
    auto b = m.plaquette_projector(f);
    const double e0 = psi0.inner(b.apply(psi0)).real(), e1 = excited.inner(b.apply(excited)).real();
    if (b.overlaps(kick.support())) {
      EXPECT_NEAR(e1, 0.0, 1e-12);
    } else {
      EXPECT_NEAR(e0, e1, 1e-12);
    }
  }
}

TEST(Suite, StarPlaquetteAlgebraZ2) {
  auto m = model("Z2", 3, 3);
  VerificationReport rep;
  RelationChecker rc(m, 0);
  check_star_plaquette(m, rc, rep, 1e-14);
  check_locality(m, rep, 1e-12, 0);
  EXPECT_TRUE(rep.pass()) << rep.format();
  EXPECT_GE(rep.checks().size(), 9u);
}

TEST(Suite, RandomStateFallbackAgreesWithExact) {
  auto m = model("Z3", 2, 2);
  RelationChecker exact(m, 1), sampled(m, 1, 1);
  auto a = m.star(0, 1), b = m.plaquette(m.lattice().sites()[0], 2);
  EXPECT_EQ(exact.residual({&a, &b}, {&b, &a}) > 1e-6, sampled.residual({&a, &b}, {&b, &a}) > 1e-6);
  auto c = m.star(0, 2);
  EXPECT_LT(sampled.residual({&a, &a}, {&c}), 1e-14);
}

}  // namespace

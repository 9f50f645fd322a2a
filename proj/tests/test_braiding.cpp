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

#include "qdouble/qdouble.hpp"

namespace {

using namespace qdouble;

// (1/|G|) Σ_g χ(g)^n: multiplicity of the trivial irrep in ρ^{⊗n} for a pure charge.
double chargeon_oracle(const QuantumDouble& qd, int a, int n) {
  const UnitaryIrrep& rho = qd.rho(a);
  Cplx s = 0.0;
  for (Elem g : rho.elements) s += std::pow(rho.character(g), n);
  return (s / static_cast<double>(rho.order())).real();
}

TEST(LatticeMonodromy, Z2AllPairs) {
  LatticeModel m(build_group("Z2"), TorusLattice(4, 4));
  QuantumDouble qd(m.group_ptr());
  const auto [v, h] = crossing_ribbons(m.lattice());
  const int e = qd.parse_label("charge:1"), mg = qd.index_of(1, 0), vac = qd.parse_label("vacuum");
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Cplx lam = lattice_monodromy(m, qd, a, b, v, h);
      EXPECT_LT(std::abs(lam - monodromy(qd, a, b)(0, 0)), 1e-12) << a << " " << b;
      EXPECT_LT(std::abs(std::abs(lam) - 1.0), 1e-12);
    }
  EXPECT_NEAR(lattice_monodromy(m, qd, e, mg, v, h).real(), -1.0, 1e-12);
  EXPECT_NEAR(lattice_monodromy(m, qd, vac, mg, v, h).real(), 1.0, 1e-12);
}

TEST(LatticeMonodromy, Z3MatchesAlgebraAndS) {
  LatticeModel m(build_group("Z3"), TorusLattice(4, 4));
  QuantumDouble qd(m.group_ptr());
  const SMatrix s = s_matrix(qd);
  const auto [v, h] = crossing_ribbons(m.lattice());
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      const Cplx lam = lattice_monodromy(m, qd, a, b, v, h);
      EXPECT_LT(std::abs(lam - monodromy(qd, a, b)(0, 0)), 1e-10) << a << " " << b;
      EXPECT_LT(std::abs(lam / 3.0 - s.normalized(a, b)), 1e-10);
      // Exchanging the ribbons conjugates the phase.
      EXPECT_LT(std::abs(lattice_monodromy(m, qd, a, b, h, v) - std::conj(lam)), 1e-10);
    }
}

TEST(LatticeMonodromy, RejectsBadInput) {
  LatticeModel m(build_group("Z2"), TorusLattice(4, 4));
  QuantumDouble qd(m.group_ptr());
  const auto [v, h] = crossing_ribbons(m.lattice());
  const Ribbon apart = Ribbon::from_steps(m.lattice(), Site{m.lattice().vertex(0, 0), m.lattice().face(3, 3)}, "DU");
  EXPECT_THROW(lattice_monodromy(m, qd, 1, 2, v, apart), std::invalid_argument);
  EXPECT_THROW(crossing_ribbons(TorusLattice(3, 4)), std::invalid_argument);
  LatticeModel s3(build_group("S3"), TorusLattice(4, 4));
  QuantumDouble qs(s3.group_ptr());
  const auto [v3, h3] = crossing_ribbons(s3.lattice());
  EXPECT_THROW(lattice_monodromy(s3, qs, qs.parse_label("charge:2"), 0, v3, h3), std::invalid_argument);
}

TEST(FusionSpace, ChargeonDimensionsMatchCharacterOracle) {
  for (const char* g : {"Z2", "Z3", "S3", "D4", "Q8"}) {
    QuantumDouble qd(build_group(g));
    for (int a = 0; a < qd.num_anyons(); ++a) {
      if (qd.anyons()[a].class_index != 0) continue;
      for (int n = 0; n <= 4; ++n) {
        const double want = chargeon_oracle(qd, a, n);
        EXPECT_NEAR(vacuum_multiplicity(qd, a, n), want, 1e-9) << g << " " << a << " " << n;
        EXPECT_EQ(fusion_space(qd, a, n).dim(), std::lround(want)) << g << " " << a << " " << n;
      }
    }
  }
}

TEST(FusionSpace, S3Dimensions) {
  QuantumDouble qd(build_group("S3"));
  const int rho = qd.parse_label("charge:2");
  const std::vector<int> want = {1, 0, 1, 1, 3};
  for (int n = 0; n < 5; ++n) EXPECT_EQ(fusion_space(qd, rho, n).dim(), want[n]) << n;
  const int flux = qd.parse_label("flux:transposition");
  for (int n = 0; n <= 4; ++n) {
    const FusionSpace fs = fusion_space(qd, flux, n);
    EXPECT_EQ(fs.dim(), vacuum_multiplicity(qd, flux, n));
    if (fs.dim() == 0) continue;
    EXPECT_LT(fusion_space_invariance_residual(qd, fs), 1e-10);
    EXPECT_LT(max_abs(fs.basis.adjoint() * fs.basis - CMatrix::Identity(fs.dim(), fs.dim())), 1e-10);
  }
  EXPECT_EQ(fusion_space(qd, flux, 4).dim(), 5);
}

TEST(FusionSpace, Z2Parity) {
  QuantumDouble qd(build_group("Z2"));
  for (int a = 1; a < 4; ++a)
    for (int n = 0; n <= 6; ++n) EXPECT_EQ(fusion_space(qd, a, n).dim(), n % 2 == 0 ? 1 : 0);
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(fusion_space(qd, 0, n).dim(), 1);
}

TEST(FusionSpace, RefusesHugeTensorPowers) {
  QuantumDouble qd(build_group("S3"));
  const int flux = qd.parse_label("flux:transposition");
  EXPECT_GT(vacuum_multiplicity(qd, flux, 14), 0);
  EXPECT_THROW(fusion_space(qd, flux, 14), ResourceError);
  EXPECT_THROW(fusion_space(qd, flux, -1), std::invalid_argument);
}

TEST(BraidRep, S3FluxFourStrands) {
  QuantumDouble qd(build_group("S3"));
  const BraidRep rep = braid_rep(qd, qd.parse_label("flux:transposition"), 4);
  ASSERT_EQ(rep.generators.size(), 3u);
  EXPECT_LT(rep.unitarity_residual(), 1e-9);
  EXPECT_LT(rep.braid_relation_residual(), 1e-9);
  EXPECT_LT(rep.far_commutation_residual(), 1e-9);
  // Nonabelian: the generators do not all commute.
  EXPECT_GT(max_abs(rep.generators[0] * rep.generators[1] - rep.generators[1] * rep.generators[0]), 1e-3);
}

TEST(BraidRep, AllS3LabelsThreeAndFourStrands) {
  QuantumDouble qd(build_group("S3"));
  for (int a = 0; a < qd.num_anyons(); ++a)
    for (int n : {3, 4}) {
      const BraidRep rep = braid_rep(qd, a, n);
      EXPECT_EQ(rep.space.dim(), vacuum_multiplicity(qd, a, n));
      if (rep.space.dim() == 0) continue;
      EXPECT_LT(std::max({rep.unitarity_residual(), rep.braid_relation_residual(), rep.far_commutation_residual()}),
                1e-9)
          << qd.anyons()[a].name << " " << n;
    }
}

TEST(BraidRep, TwoAbelianStrandsGiveTheTwist) {
  for (const char* g : {"Z2", "Z3"}) {
    QuantumDouble qd(build_group(g));
    const TMatrix t = t_matrix(qd);
    for (int a = 0; a < qd.num_anyons(); ++a) {
      const BraidRep rep = braid_rep(qd, a, 2);
      if (rep.space.dim() == 0) continue;
      ASSERT_EQ(rep.generators[0].rows(), 1);
      EXPECT_LT(std::abs(rep.generators[0](0, 0) - t.theta[a]), 1e-10) << g << " " << a;
    }
  }
  QuantumDouble z2(build_group("Z2"));
  EXPECT_NEAR(braid_rep(z2, z2.index_of(1, 1), 2).generators[0](0, 0).real(), -1.0, 1e-12);
}

TEST(BraidRep, EmptySpaceHasNoGenerators) {
  QuantumDouble qd(build_group("Z2"));
  const BraidRep rep = braid_rep(qd, qd.parse_label("charge:1"), 3);
  EXPECT_EQ(rep.space.dim(), 0);
  EXPECT_TRUE(rep.generators.empty());
  const BraidRep one = braid_rep(qd, qd.parse_label("charge:1"), 0);
  EXPECT_EQ(one.space.dim(), 1);
  EXPECT_THROW(braid_generator(qd, braid_rep(qd, 1, 2).space, 2), std::invalid_argument);
}

TEST(ChargeMeasurement, LoopsDetectEndpointCharge) {
  LatticeModel m(build_group("Z2"), TorusLattice(3, 3));
  QuantumDouble qd(m.group_ptr());
  const auto& lat = m.lattice();
  const Site s = reference_site(lat);
  const Ribbon around_vertex = Ribbon::from_steps(lat, s, "UUUU");
  const Ribbon around_face = Ribbon::from_steps(lat, s, "DDDD");
  const auto psi0 = ground_state(m);
  const int vac = qd.parse_label("vacuum"), e = qd.parse_label("charge:1"), mg = qd.index_of(1, 0);

  auto check = [&](const Ribbon& loop, const StateVector& psi, int expect) {
    const auto p = charge_measurement(m, qd, loop, psi);
    double sum = 0.0;
    for (double x : p) sum += x;
    EXPECT_NEAR(sum, 1.0, 1e-10);
    EXPECT_NEAR(p[expect], 1.0, 1e-10) << loop.steps() << " expected " << qd.anyons()[expect].name;
  };
  check(around_vertex, psi0, vac);
  check(around_face, psi0, vac);

  const Ribbon to_vertex = Ribbon::from_steps(lat, s, "DUDU");
  check(around_vertex, multiplet(m, qd, to_vertex, e)(0, 0).apply(psi0), e);
  check(around_face, multiplet(m, qd, to_vertex, mg)(0, 0).apply(psi0), mg);

  const Ribbon far = Ribbon::from_steps(lat, Site{lat.vertex(2, 2), lat.face(2, 2)}, "DU");
  ASSERT_NE(far.start().vertex, s.vertex);
  ASSERT_NE(far.end().vertex, s.vertex);
  check(around_vertex, multiplet(m, qd, far, e)(0, 0).apply(psi0), vac);

  EXPECT_THROW(charge_measurement(m, qd, to_vertex, psi0), std::invalid_argument);
}

TEST(ChargeMeasurement, ProjectorsResolveIdentityS3) {
  LatticeModel m(build_group("S3"), TorusLattice(2, 2));
  QuantumDouble qd(m.group_ptr());
  const Ribbon loop = Ribbon::from_steps(m.lattice(), reference_site(m.lattice()), "UUUU");
  const auto k = charge_projectors(m, qd, loop);
  ASSERT_EQ(static_cast<int>(k.size()), qd.num_anyons());
  LocalOperator sum(6, Cplx(0));
  for (const auto& p : k) {
    sum += p;
    EXPECT_LT(distance(p * p, p), 1e-10);
    EXPECT_LT(distance(p.adjoint(), p), 1e-10);
  }
  EXPECT_LT(distance(sum, LocalOperator(6)), 1e-10);
  EXPECT_LT(distance(k[1] * k[2], LocalOperator(6, Cplx(0))), 1e-10);
}

}  // namespace

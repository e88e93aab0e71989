// Copyright 2026 the conegap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "conegap/witness.hpp"
#include "oracles.hpp"

using namespace conegap;

namespace {

void check_witness(const VRep& cone, const WitnessResult& w) {
  CHECK(member_ph(dual_convert(cone), w.tuple));
  CHECK(verify_sep(cone, w.tuple, w.certificate));
}

}  // namespace

TEST_SUITE_BEGIN("witness");

TEST_CASE("base_witness is the pinned tuple and a polyhedral member") {
  const MatTuple a = base_witness();
  CHECK(a.entries[0] == Sym2::diag(Rat(1), Rat(-1)));
  CHECK(a.entries[1] == Sym2::offdiag(Rat(1)));
  CHECK(a.entries[2] == Sym2::identity());
  CHECK(member_ph(dual_convert(oracles::square_cone()), a));
  CHECK(eval_functional({Rat(0), Rat(1), Rat(1)}, a) == Sym2{Rat(1), Rat(1), Rat(1)});
}

TEST_CASE("find_nonsimplex_feature classifies the stock cones") {
  CHECK(find_nonsimplex_feature(oracles::orthant(4)).kind ==
        NonsimplexFeature::Kind::Simplex);
  CHECK(find_nonsimplex_feature(oracles::square_cone()).kind ==
        NonsimplexFeature::Kind::Base3);

  // Every facet of the cube cone is a square cone.
  const NonsimplexFeature cube = find_nonsimplex_feature(oracles::cube_cone_d4());
  CHECK(cube.kind == NonsimplexFeature::Kind::Facet);

  // The cross-polytope cone is simplicial, so a vertex figure must carry the
  // recursion.
  const NonsimplexFeature cross = find_nonsimplex_feature(oracles::cross_polytope_cone(4));
  CHECK(cross.kind == NonsimplexFeature::Kind::VertexFigure);
}

TEST_CASE("lift_facet lifts a square-cone witness through the cube cone") {
  const VRep cube = extreme_rays(oracles::cube_cone_d4());
  const NonsimplexFeature feature = find_nonsimplex_feature(cube);
  REQUIRE(feature.kind == NonsimplexFeature::Kind::Facet);
  const auto [iso, positioned] = position_facet(cube, feature.index);

  VRep facet{3, {}};
  for (const auto& g : positioned.generators)
    if (g[0].is_zero()) facet.generators.emplace_back(g.begin() + 1, g.end());
  const WitnessResult sub = construct_witness(facet);

  const WitnessResult lifted = lift_facet(positioned, sub);
  CHECK(lifted.tuple.entries[0] == Sym2::zero());
  CHECK(verify_sep(positioned, lifted.tuple, lifted.certificate));

  // Pull back and verify against the original cone.
  const LinearIso back = iso.inverse();
  check_witness(cube, WitnessResult{transform_tuple(back, lifted.tuple),
                                    transform_certificate(back, lifted.certificate),
                                    {}});
}

TEST_CASE("lift_facet grows the shift with adversarial generators") {
  // Positioned by hand: the facet cone in {x1 = 0} is the square cone, and
  // one generator sits far below the facet hyperplane.
  VRep positioned{4, {}};
  for (const auto& g : oracles::square_cone().generators) {
    RatVector lifted{Rat(0)};
    lifted.insert(lifted.end(), g.begin(), g.end());
    positioned.generators.push_back(std::move(lifted));
  }
  positioned.generators.push_back({Rat(-1000), Rat(500), Rat(-400), Rat(3)});

  const WitnessResult sub = construct_witness(oracles::square_cone());
  const WitnessResult lifted = lift_facet(positioned, sub);
  CHECK(verify_sep(positioned, lifted.tuple, lifted.certificate));
  // The first certificate block is -mu I with mu large enough for the far
  // generator; check it is strictly negative at all.
  CHECK(lifted.certificate.blocks[0].a11.sign() < 0);
}

TEST_CASE("lift_facet rejects bad preconditions") {
  VRep positioned{4, {}};
  for (const auto& g : oracles::square_cone().generators) {
    RatVector lifted{Rat(1)};  // wrong side of the hyperplane
    lifted.insert(lifted.end(), g.begin(), g.end());
    positioned.generators.push_back(std::move(lifted));
  }
  const WitnessResult sub = construct_witness(oracles::square_cone());
  CHECK_THROWS_AS(lift_facet(positioned, sub), PreconditionViolated);

  // A zeroed-out sub-certificate can never verify on the facet.
  WitnessResult broken = sub;
  for (auto& b : broken.certificate.blocks) b = Sym2::zero();
  VRep ok_positioned{4, {}};
  for (const auto& g : oracles::square_cone().generators) {
    RatVector lifted{Rat(0)};
    lifted.insert(lifted.end(), g.begin(), g.end());
    ok_positioned.generators.push_back(std::move(lifted));
  }
  ok_positioned.generators.push_back({Rat(-1), Rat(0), Rat(0), Rat(1)});
  CHECK_THROWS_AS(lift_facet(ok_positioned, broken), PreconditionViolated);
}

TEST_CASE("lift_vertex_figure through the octahedron cone") {
  // Every vertex figure of the cross-polytope cone in dimension 4 is a
  // square cone.
  const VRep cross = extreme_rays(oracles::cross_polytope_cone(4));
  const NonsimplexFeature feature = find_nonsimplex_feature(cross);
  REQUIRE(feature.kind == NonsimplexFeature::Kind::VertexFigure);
  const VertexFigure vf = position_vertex_figure(cross, feature.index);

  const WitnessResult sub = construct_witness(VRep{3, vf.figure_generators});
  const WitnessResult lifted = lift_vertex_figure(vf.positioned, sub);

  CHECK(lifted.tuple.entries[0] == Sym2::zero());
  // Objective is unchanged by the lift: the first tuple entry is zero.
  Rat lifted_obj, sub_obj;
  for (size_t j = 0; j < lifted.certificate.blocks.size(); ++j)
    lifted_obj += trace_inner(lifted.certificate.blocks[j], lifted.tuple.entries[j]);
  for (size_t j = 0; j < sub.certificate.blocks.size(); ++j)
    sub_obj += trace_inner(sub.certificate.blocks[j], sub.tuple.entries[j]);
  CHECK(lifted_obj == sub_obj);

  // The apex constraint telescopes to the zero matrix exactly.
  size_t apex = 0;
  while (vf.positioned.generators[apex][0] != Rat(-1)) ++apex;
  Sym2 apex_sum;
  for (int j = 0; j < 4; ++j)
    apex_sum += vf.positioned.generators[apex][j] * lifted.certificate.blocks[j];
  CHECK(apex_sum.is_zero());

  CHECK(verify_sep(vf.positioned, lifted.tuple, lifted.certificate));
  const LinearIso back = vf.iso.inverse();
  check_witness(cross, WitnessResult{transform_tuple(back, lifted.tuple),
                                     transform_certificate(back, lifted.certificate),
                                     {}});
}

TEST_CASE("construct_witness on the square cone returns the pinned tuple") {
  const WitnessResult w = construct_witness(oracles::square_cone());
  CHECK(w.tuple == base_witness());
  check_witness(oracles::square_cone(), w);
  REQUIRE(w.trail.size() == 1);
  CHECK(w.trail[0].kind == RecursionStep::Kind::Base3);
}

TEST_CASE("construct_witness through the base-3 normalization") {
  const VRep pentagon = oracles::kgon_cone(5);
  const WitnessResult w = construct_witness(pentagon);
  check_witness(pentagon, w);
}

TEST_CASE("construct_witness recursions") {
  const VRep cube = oracles::cube_cone_d4();
  const WitnessResult wc = construct_witness(cube);
  check_witness(cube, wc);
  CHECK(wc.trail.size() == 2);  // one lift plus the base case

  const VRep cross5 = oracles::cross_polytope_cone(5);
  const WitnessResult wx = construct_witness(cross5);
  check_witness(cross5, wx);
  CHECK(wx.trail.size() == 3);
}

TEST_CASE("construct_witness rejects simplex and degenerate cones") {
  CHECK_THROWS_AS(construct_witness(oracles::orthant(4)), SimplexCone);
  CHECK_THROWS_AS(construct_witness(VRep{2, {{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}}}),
                  DegenerateCone);
}

TEST_CASE("simplex cones decompose 100 random polyhedral members") {
  oracles::Rng rng(81);
  int decomposed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const RatMatrix t = oracles::random_invertible(rng, d);
    const LinearIso iso{t, inverse(t)};
    const VRep simplex = transform(iso, oracles::orthant(d));
    MatTuple a;
    for (int j = 0; j < d; ++j) a.entries.push_back(oracles::random_psd(rng));
    const MatTuple moved = transform_tuple(iso, a);
    const PtDecomposition dec = simplex_decompose(simplex, moved);
    CHECK(verify_pt(simplex, moved, dec));
    ++decomposed;
  }
  CHECK(decomposed == 100);
}

TEST_SUITE_END();

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

#include <cmath>

#include "conegap/solver.hpp"
#include "conegap/witness.hpp"
#include "oracles.hpp"

using namespace conegap;

namespace {

MatTuple section_tuple(const Rat& x, const Rat& y) {
  MatTuple t;
  t.entries = {Sym2::diag(x, Rat(-1)), Sym2::offdiag(y), Sym2::identity()};
  return t;
}

double frob(const Sym2d& s) {
  return std::sqrt(s.a11 * s.a11 + 2.0 * s.a12 * s.a12 + s.a22 * s.a22);
}

Sym2d sub(const Sym2d& a, const Sym2d& b) {
  return {a.a11 - b.a11, a.a12 - b.a12, a.a22 - b.a22};
}

}  // namespace

TEST_SUITE_BEGIN("solver");

TEST_CASE("project_psd2 closed form") {
  const Sym2d clamped = project_psd2({1.0, 0.0, -1.0});
  CHECK(clamped.a11 == 1.0);
  CHECK(clamped.a22 == 0.0);

  const Sym2d fixed = project_psd2({2.0, 0.5, 1.0});
  CHECK(fixed.a11 == 2.0);
  CHECK(fixed.a12 == 0.5);

  const Sym2d half = project_psd2({0.0, 1.0, 0.0});
  CHECK(half.a11 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half.a12 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half.a22 == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("project_psd2 is idempotent and nonexpansive") {
  oracles::Rng rng(71);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const Sym2d x{dist(rng), dist(rng), dist(rng)};
    const Sym2d y{dist(rng), dist(rng), dist(rng)};
    const Sym2d px = project_psd2(x);
    const Sym2d ppx = project_psd2(px);
    CHECK(frob(sub(px, ppx)) <= 1e-12);
    CHECK(frob(sub(project_psd2(x), project_psd2(y))) <= frob(sub(x, y)) + 1e-12);
  }
}

TEST_CASE("project_affine lands on the equality set") {
  oracles::Rng rng(72);
  const VRep square = oracles::square_cone();
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Sym2> blocks;
    MatTuple target;
    target.entries.assign(3, Sym2::zero());
    for (int i = 0; i < 4; ++i) {
      blocks.push_back(oracles::random_psd(rng));
      for (int j = 0; j < 3; ++j)
        target.entries[j] += square.generators[i][j] * blocks[i];
    }
    FeasProblem problem = make_problem(square, target, {});
    // A feasible stack projects to itself.
    std::vector<Sym2d> feasible;
    for (const auto& b : blocks) feasible.push_back(to_approx(b));
    const std::vector<Sym2d> same = project_affine(feasible, problem);
    for (size_t i = 0; i < feasible.size(); ++i)
      CHECK(frob(sub(same[i], feasible[i])) <= 1e-9);
    // A random stack projects onto the set: residual vanishes.
    std::vector<Sym2d> noisy(4);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (auto& b : noisy) b = {dist(rng), dist(rng), dist(rng)};
    AffineProjector proj(problem);
    proj.project(noisy);
    CHECK(proj.equality_residual(noisy) <= 1e-12);
  }
}

TEST_CASE("project_affine with a single generator touches only its span") {
  // One generator e1: the equalities constrain the first tuple entry alone,
  // so the projection adjusts that coordinate and leaves the rest to the
  // least-squares hull report.
  VRep ray{2, {{Rat(1), Rat(0)}}};
  MatTuple target;
  target.entries = {Sym2::identity(), Sym2::zero()};
  FeasProblem problem = make_problem(ray, target, {});
  AffineProjector proj(problem);
  CHECK(proj.rank_deficient());  // one generator cannot span Q^2
  std::vector<Sym2d> blocks{{5.0, -3.0, 2.0}};
  proj.project(blocks);
  CHECK(blocks[0].a11 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(blocks[0].a12 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(blocks[0].a22 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("decide_pt on the stock square-cone instances") {
  const VRep square = oracles::square_cone();

  FeasProblem inside = make_problem(square, section_tuple(Rat(0), Rat(0)), {});
  CHECK(decide_pt(inside).status == FeasStatus::Feasible);

  MatTuple ones;
  ones.entries = {Sym2::identity(), Sym2::identity(), Sym2::identity()};
  CHECK(decide_pt(make_problem(square, ones, {})).status == FeasStatus::Feasible);

  // The base witness is firmly outside the polytopal extension.
  FeasProblem witness = make_problem(square, base_witness(), {});
  const SolveOutcome out = decide_pt(witness);
  CHECK(out.status == FeasStatus::Infeasible);
  CHECK(out.margin >= -1e-6);

  // x + 2 y^2 = 0.9 + 0.18 > 1.
  FeasProblem beyond = make_problem(square, section_tuple(Rat(9, 10), Rat(3, 10)), {});
  CHECK(decide_pt(beyond).status == FeasStatus::Infeasible);
}

TEST_CASE("certify produces exact artifacts from solver outcomes") {
  const VRep square = oracles::square_cone();

  // Infeasible side on the base witness.
  const MatTuple witness = base_witness();
  SolveOutcome out = decide_pt(make_problem(square, witness, {}));
  REQUIRE(out.status == FeasStatus::Infeasible);
  const auto cert = certify(square, witness, out, 1000);
  REQUIRE(std::holds_alternative<SepCertificate>(cert));
  CHECK(verify_sep(square, witness, std::get<SepCertificate>(cert)));

  // Feasible side on the symmetric center point.
  MatTuple center;
  center.entries = {Sym2::zero(), Sym2::zero(), Sym2::identity()};
  SolveOutcome fout = decide_pt(make_problem(square, center, {}));
  REQUIRE(fout.status == FeasStatus::Feasible);
  const auto dec = certify(square, center, fout, 1000);
  REQUIRE(std::holds_alternative<PtDecomposition>(dec));
  const PtDecomposition& blocks = std::get<PtDecomposition>(dec);
  CHECK(verify_pt(square, center, blocks));
  const Sym2 quarter = Rat(1, 4) * Sym2::identity();
  for (const auto& b : blocks.blocks) CHECK(b == quarter);

  CHECK_THROWS_AS(certify(square, center, SolveOutcome{}, 1000), std::invalid_argument);
}

TEST_CASE("boundary section point still certifies feasible") {
  const VRep square = oracles::square_cone();
  const MatTuple boundary = section_tuple(Rat(1), Rat(0));
  const PtDecision decision = decide_and_certify(square, boundary);
  REQUIRE(decision.status == FeasStatus::Feasible);
  CHECK(verify_pt(square, boundary, *decision.decomposition));
}

TEST_CASE("strictly feasible targets certify at one million denominators") {
  oracles::Rng rng(73);
  const VRep square = oracles::square_cone();
  int successes = 0;
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    // Blocks with eigenvalues >= 0.1 by construction.
    MatTuple target;
    target.entries.assign(3, Sym2::zero());
    for (int i = 0; i < 4; ++i) {
      Sym2 p = oracles::random_psd(rng, 2, 3) + Rat(1, 10) * Sym2::identity();
      for (int j = 0; j < 3; ++j) target.entries[j] += square.generators[i][j] * p;
    }
    SolverOptions opts;
    opts.max_den_schedule = {1000, 1000000};
    const PtDecision decision = decide_and_certify(square, target, opts);
    if (decision.status == FeasStatus::Feasible &&
        verify_pt(square, target, *decision.decomposition))
      ++successes;
  }
  CHECK(successes >= (trials * 99) / 100);
}

TEST_CASE("decide_and_certify certifies thin-margin non-members") {
  const VRep square = oracles::square_cone();
  // x + 2 y^2 = 1.0098: outside by about 1e-2, where certificates have huge
  // norm relative to their objective.
  const PtDecision decision =
      decide_and_certify(square, section_tuple(Rat(36, 100), Rat(-57, 100)));
  REQUIRE(decision.status == FeasStatus::Infeasible);
  CHECK(verify_sep(square, section_tuple(Rat(36, 100), Rat(-57, 100)),
                   *decision.certificate));
}

TEST_CASE("decide_and_certify is sound on random mixed instances") {
  oracles::Rng rng(74);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 3 + static_cast<int>(rng() % 2);
    const VRep v = oracles::random_proper_cone(rng, d, d + 2, false);
    const MatTuple a = oracles::random_tuple(rng, d, 2, 2);
    const PtDecision decision = decide_and_certify(v, a);
    if (decision.status == FeasStatus::Feasible) {
      CHECK(verify_pt(v, a, *decision.decomposition));
    } else if (decision.status == FeasStatus::Infeasible) {
      CHECK(verify_sep(v, a, *decision.certificate));
    }
  }
}

TEST_SUITE_END();

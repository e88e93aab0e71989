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

#pragma once

#include <vector>

#include "conegap/solver.hpp"

namespace conegap {

class SimplexCone : public ConeError {
 public:
  SimplexCone()
      : ConeError("simplex cone: the level-2 polytopal and polyhedral extensions coincide, "
                  "so no separating witness exists") {}
};

class FeatureSearchFailed : public ConeError {
 public:
  FeatureSearchFailed()
      : ConeError("non-simplex cone with neither a non-simplex facet nor a non-simplex "
                  "vertex figure") {}
};

class PreconditionViolated : public ConeError {
 public:
  explicit PreconditionViolated(const std::string& what) : ConeError(what) {}
};

struct RecursionStep {
  enum class Kind { Base3, FacetLift, VertexFigureLift };
  Kind kind = Kind::Base3;
  size_t index = 0;  // facet or ray index in the canonical enumeration
  LinearIso iso;     // positioning (or normalizing) map used at this level
};

// A tuple in the polyhedral-but-not-polytopal gap of a cone, with the exact
// certificate and the recursion trail that produced it.
struct WitnessResult {
  MatTuple tuple;
  SepCertificate certificate;
  std::vector<RecursionStep> trail;
};

// The tuple (diag(1,-1), [[0,1],[1,0]], I) pinned to the standard square cone
// position; the seed of every witness construction.
MatTuple base_witness();

struct NonsimplexFeature {
  enum class Kind { Simplex, Base3, Facet, VertexFigure };
  Kind kind = Kind::Simplex;
  size_t index = 0;
};

// Dichotomy driving the recursion: a proper non-simplex cone of dimension
// >= 4 has a non-simplex facet or a non-simplex vertex figure. Facets are
// preferred, ties break by canonical index.
NonsimplexFeature find_nonsimplex_feature(const VRep& v);

// Lift a witness of the facet cone F = {x1 = 0} to the positioned cone in
// {x1 <= 0} by prepending a zero tuple entry and the -mu*I certificate block.
WitnessResult lift_facet(const VRep& positioned, const WitnessResult& sub);

// Lift a witness of the vertex figure (apex ray at x1 = -1, other generators
// at x1 = +1) by prepending a zero tuple entry; the first certificate block
// makes the apex constraint cancel to the zero matrix exactly.
WitnessResult lift_vertex_figure(const VRep& positioned, const WitnessResult& sub);

// Full pipeline: base-case normalization in dimension 3 with a solver-derived
// exact certificate, facet / vertex-figure recursion above. The result is
// verified exactly against the original cone before returning.
WitnessResult construct_witness(const VRep& v, const SolverOptions& opts = {});

}  // namespace conegap

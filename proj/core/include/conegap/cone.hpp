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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conegap/linalg.hpp"

namespace conegap {

class ConeError : public std::runtime_error {
 public:
  explicit ConeError(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateCone : public ConeError {
 public:
  explicit DegenerateCone(const std::string& what = "cone is not full-dimensional or not pointed")
      : ConeError(what) {}
};

class EmptyFacet : public ConeError {
 public:
  EmptyFacet() : ConeError("no generator vanishes on the chosen facet functional") {}
};

class NoSeparatingFunctional : public ConeError {
 public:
  NoSeparatingFunctional()
      : ConeError("no strictly separating functional: ray is not extreme or cone degenerate") {}
};

class NormalizationFailed : public ConeError {
 public:
  explicit NormalizationFailed(const std::string& what) : ConeError(what) {}
};

// Generator representation: cc{v_1,...,v_n} in Q^dim. Generators are nonzero
// and the list is nonempty.
struct VRep {
  int dim = 0;
  std::vector<RatVector> generators;
};

// Facet-functional representation: {x : f.x >= 0 for every functional f}.
struct HRep {
  int dim = 0;
  std::vector<RatVector> functionals;
};

// Invertible change of coordinates with its exact inverse.
struct LinearIso {
  RatMatrix t;
  RatMatrix t_inv;

  LinearIso inverse() const { return {t_inv, t}; }
  static LinearIso identity(int n) { return {RatMatrix::identity(n), RatMatrix::identity(n)}; }
};

struct ConeAnalysis {
  VRep extreme_rays;
  HRep facets;
  bool proper = false;
  bool simplex = false;
};

void validate(const VRep& v);
void validate(const HRep& h);

// Minkowski-Weyl conversion, exact and irredundant. Rays come out as
// primitive integer vectors (direction preserved), functionals as primitive
// integer vectors signed nonnegative on the cone; both lists sorted
// lexicographically. Non-strict calls accept degenerate cones: lineality
// turns into +-generator pairs, a flat cone into +-functional pairs.
HRep dual_convert(const VRep& v, bool strict = false);
VRep dual_convert(const HRep& h, bool strict = false);

// Minimal generating subset, canonically scaled and sorted; every kept ray is
// not a nonnegative combination of the other kept rays.
VRep extreme_rays(const VRep& v);

ConeAnalysis analyze(const VRep& v);

// Generators of v lying on the facet h.functionals[facet_index].
VRep facet_generators(const VRep& v, const HRep& h, size_t facet_index);

// Coordinates in which the chosen facet spans {x1 = 0} and the cone sits in
// {x1 <= 0}: first output coordinate is -f(x), the rest complete a rational
// basis. Facet indices refer to dual_convert(extreme_rays(v)).
std::pair<LinearIso, VRep> position_facet(const VRep& v, size_t facet_index);

struct VertexFigure {
  LinearIso iso;
  VRep positioned;                          // chosen ray at x1 = -1, others at x1 = +1
  std::vector<RatVector> figure_generators; // midpoints, projected to the last dim-1 coords
};

VertexFigure position_vertex_figure(const VRep& v, size_t ray_index);

// For a proper non-simplex cone in Q^3: a linear isomorphism taking four
// cyclically consecutive extreme rays to (1,-1,1), (-1,-1,1), (-1,1,1),
// (1,1,1), with every remaining ray scaled to third coordinate 1 landing in
// (1,oo) x (-1,1) x {1}. All window choices are tried and verified exactly;
// among the valid ones the map closest to the identity wins.
std::pair<LinearIso, VRep> normalize_base3(const VRep& v);

VRep transform(const LinearIso& iso, const VRep& v);
HRep transform(const LinearIso& iso, const HRep& h);

}  // namespace conegap

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

#include <iosfwd>

#include "conegap/solver.hpp"

namespace conegap {

// Affine 2-plane in tuple space, sampled on a grid: point (x, y) maps to
// base + x*dir_x + y*dir_y.
struct SectionSpec {
  MatTuple base;
  MatTuple dir_x;
  MatTuple dir_y;
  int grid = 81;
  Rat x_lo{-6, 5}, x_hi{6, 5};
  Rat y_lo{-6, 5}, y_hi{6, 5};
};

// The plane {(diag(x,-1), offdiag(y), I)} through the standard square-cone
// witness, grid 81 over [-1.2, 1.2]^2.
SectionSpec default_square_section();

struct SectionPoint {
  Rat x, y;
  bool ph = false;
  FeasStatus pt = FeasStatus::Undecided;
  std::optional<PtDecomposition> decomposition;
  std::optional<SepCertificate> certificate;
};

struct SectionResult {
  SectionSpec spec;
  std::vector<SectionPoint> points;  // row-major: y ascending, then x ascending
};

// Classifies every grid point: exact polyhedral membership, then the solver
// plus exact certification on the polytopal side. Undecided stays Undecided.
SectionResult compute_section(const VRep& cone, const SectionSpec& spec,
                              const SolverOptions& opts = {});

// Byte-deterministic CSV with columns x, y, ph, pt.
void write_section_csv(std::ostream& os, const SectionResult& result);

// Cell rendering of the CSV: red for ph-only points, blue for the polytopal
// region, gray for undecided.
void write_section_svg(std::ostream& os, const SectionResult& result);

}  // namespace conegap

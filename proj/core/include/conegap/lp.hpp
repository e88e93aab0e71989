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

#include <optional>
#include <vector>

#include "conegap/linalg.hpp"

namespace conegap {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat objective;
  RatVector x;
};

// Exact two-phase primal simplex with Bland's rule on the standard form
//   minimize c.x  subject to  A x = b,  x >= 0.
// Deterministic and termination-safe; all arithmetic rational.
LpResult lp_solve(const RatMatrix& a, const RatVector& b, const RatVector& c);

// Is target a nonnegative combination of the given generators?
bool in_conic_hull(const std::vector<RatVector>& gens, const RatVector& target);

// A set of nonzero generators spans a pointed cone iff no nontrivial
// nonnegative combination of them vanishes.
bool generators_pointed(const std::vector<RatVector>& gens);

// Exact functional phi with phi(gens[apex]) = -1 and phi(g) >= margin > 0 for
// every other generator, found by maximizing the minimum margin clamped to 1.
// Empty when no strictly separating functional exists (the chosen generator
// is not an extreme ray, or the cone is degenerate).
std::optional<RatVector> apex_separating_functional(const std::vector<RatVector>& gens,
                                                    size_t apex);

}  // namespace conegap

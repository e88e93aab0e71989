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

#include <random>

#include "conegap/cone.hpp"
#include "conegap/nc.hpp"

// Test-only reference implementations, deliberately independent of the
// library's production paths (no double description, no simplex LP).
namespace conegap::oracles {

// Fourier-Motzkin elimination of the combination multipliers from
// {x = sum_i lambda_i v_i, lambda >= 0}, followed by the facet-rank filter
// (a valid inequality supports a facet iff its zero set among the
// generators has rank dim-1). Returns the canonical facet set.
std::vector<RatVector> fm_facets(const VRep& v);

// Caratheodory-style redundancy test: target lies in the conic hull iff it is
// a nonnegative combination of at most dim linearly independent generators,
// checked by enumerating subsets and solving exactly.
bool bf_in_conic_hull(const std::vector<RatVector>& gens, const RatVector& target);

// Floating-point eigenvalue sign check with tolerance.
bool float_psd_check(const Sym2& s, double tol = 1e-9);

// Best rational approximation with denominator <= max_den by brute force
// over every denominator; only sensible for small max_den.
Rat best_rational_brute(double x, long max_den);

// --- random data ---------------------------------------------------------

using Rng = std::mt19937_64;

Rat random_rat(Rng& rng, long lo, long hi, long max_den = 1);
RatVector random_vector(Rng& rng, int dim, long lo, long hi, long max_den = 1);
RatMatrix random_invertible(Rng& rng, int dim, long entry_bound = 3);
Sym2 random_psd(Rng& rng, long bound = 3, long max_den = 4);
Sym2 random_sym2(Rng& rng, long bound, long max_den);
MatTuple random_tuple(Rng& rng, int dim, long bound, long max_den);

// Cone over a cross-section point cloud (last coordinate 1): always pointed.
VRep random_pointed_cone(Rng& rng, int dim, int n_gens);

// Random proper cone, resampled until full-dimensional; optionally filtered
// to non-simplex.
VRep random_proper_cone(Rng& rng, int dim, int n_gens, bool require_nonsimplex);

// Cone over a regular k-gon with coordinates rationalized at the given
// denominator bound.
VRep kgon_cone(int k, long max_den = 1000);

VRep cube_cone_d4();
VRep prism_cone_d5();
VRep cross_polytope_cone(int dim);
VRep orthant(int dim);
VRep square_cone();

}  // namespace conegap::oracles

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

#include "conegap/cone.hpp"
#include "conegap/sym2.hpp"

namespace conegap {

class DimensionMismatch : public std::runtime_error {
 public:
  DimensionMismatch() : std::runtime_error("dimension mismatch") {}
};

class NotSimplex : public ConeError {
 public:
  NotSimplex() : ConeError("cone is not a simplex cone") {}
};

class NotMember : public ConeError {
 public:
  NotMember() : ConeError("tuple is not a member of the polyhedral extension") {}
};

// d-tuple of real symmetric 2x2 matrices: one point of the level-2
// non-commutative space attached to a cone in Q^d.
struct MatTuple {
  std::vector<Sym2> entries;

  int dim() const { return static_cast<int>(entries.size()); }
  friend bool operator==(const MatTuple& a, const MatTuple& b) = default;
};

// PSD blocks P_i aligned with a generator list; proves membership in the
// polytopal extension via sum_i P_i (x) v_i.
struct PtDecomposition {
  std::vector<Sym2> blocks;
};

// Dual blocks B_j; proves non-membership: the functional X -> sum_j <B_j,X_j>
// is nonnegative on every P (x) v_i with P PSD yet negative at the tuple.
struct SepCertificate {
  std::vector<Sym2> blocks;
};

// sum_j ell_j * A_j, exact.
Sym2 eval_functional(const RatVector& ell, const MatTuple& a);

// Level-2 polyhedral membership: every facet functional evaluates PSD.
bool member_ph(const HRep& h, const MatTuple& a);

// Exact check that dec reproduces a entrywise with PSD blocks.
bool verify_pt(const VRep& v, const MatTuple& a, const PtDecomposition& dec);

// Exact check of a separation certificate: sum_j (v_i)_j B_j PSD for every
// generator and <B, A> < 0 in the trace inner product.
bool verify_sep(const VRep& v, const MatTuple& a, const SepCertificate& cert);

// Entry j of the result is sum_k T_jk A_k; membership is equivariant under
// this action paired with the cone transform.
MatTuple transform_tuple(const LinearIso& iso, const MatTuple& a);

// Certificates transform by the inverse-transpose action, so that
// verify_sep(T.V, T.A, transform_certificate(T, cert)) == verify_sep(V, A, cert).
SepCertificate transform_certificate(const LinearIso& iso, const SepCertificate& cert);

// For a simplex cone, the unique decomposition P_i = ell_i(A) along the dual
// basis of the generators. Throws NotSimplex / NotMember.
PtDecomposition simplex_decompose(const VRep& v, const MatTuple& a);

}  // namespace conegap

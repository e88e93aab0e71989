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

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "conegap/rational.hpp"

namespace conegap {

using RatVector = std::vector<Rat>;

Rat dot(const RatVector& a, const RatVector& b);
RatVector vec_add(const RatVector& a, const RatVector& b);
RatVector vec_sub(const RatVector& a, const RatVector& b);
RatVector vec_scale(const Rat& s, const RatVector& a);
bool vec_is_zero(const RatVector& a);

// Strict lexicographic order on entries; the tie-break used everywhere a
// deterministic enumeration order is required.
bool lex_less(const RatVector& a, const RatVector& b);

// Positive rescaling to coprime integer entries. Direction is preserved; for
// rays this is the canonical representative, for functionals the caller fixes
// the sign separately.
RatVector scaled_primitive(const RatVector& v);

class SingularMatrix : public std::runtime_error {
 public:
  SingularMatrix() : std::runtime_error("matrix is singular") {}
};

struct RatMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> data;

  RatMatrix() = default;
  RatMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

  Rat& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  const Rat& at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

  static RatMatrix identity(int n);
  static RatMatrix from_rows(const std::vector<RatVector>& rows);

  RatVector row(int r) const;
  RatVector col(int c) const;
  RatMatrix transpose() const;

  RatVector apply(const RatVector& x) const;           // this * x
  RatMatrix mul(const RatMatrix& other) const;

  bool operator==(const RatMatrix& other) const = default;
};

enum class SolveStatus { Unique, NoSolution, Underdetermined };

// Exact description of the affine solution set of M x = b.
struct LinearSolution {
  SolveStatus status = SolveStatus::NoSolution;
  RatVector particular;             // valid unless NoSolution
  std::vector<RatVector> kernel;    // basis; nonempty iff Underdetermined
};

// Fraction-free (Bareiss) elimination after clearing row denominators; pivot
// choice is the largest absolute entry of the integer working matrix.
LinearSolution solve_rational(const RatMatrix& m, const RatVector& b);

int rank(const RatMatrix& m);
std::vector<RatVector> kernel_basis(const RatMatrix& m);
RatMatrix inverse(const RatMatrix& m);  // throws SingularMatrix

}  // namespace conegap

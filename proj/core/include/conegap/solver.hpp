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

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "conegap/nc.hpp"

namespace conegap {

class CertificationFailed : public std::runtime_error {
 public:
  enum class Side { Primal, Dual };
  explicit CertificationFailed(Side side)
      : std::runtime_error(side == Side::Primal
                               ? "certification failed on the primal (decomposition) side"
                               : "certification failed on the dual (certificate) side"),
        side(side) {}
  Side side;
};

// Approximate feasibility instance for sum_i P_i (x) v_i = target, P_i PSD.
struct FeasProblem {
  std::vector<std::vector<double>> generators;  // n vectors of length d
  std::vector<Sym2d> target;                    // d entries
  double tolerance = 1e-9;
  long iter_max = 200000;
};

enum class FeasStatus { Feasible, Infeasible, Undecided };

struct SolveOutcome {
  FeasStatus status = FeasStatus::Undecided;
  std::vector<Sym2d> primal;  // candidate blocks when Feasible
  std::vector<Sym2d> dual;    // candidate certificate blocks when Infeasible
  double residual = 0.0;      // equality residual of the last affine iterate
  double margin = 0.0;        // per side: worst block / constraint eigenvalue
  bool rank_deficient = false;
  long cycles = 0;
  double tolerance = 1e-9;    // echo of the tolerance the run used
};

// Nearest PSD matrix in Frobenius norm (closed-form 2x2 eigenvalue clamp).
Sym2d project_psd2(const Sym2d& s);

// Euclidean projection onto the affine set {sum_i P_i (x) v_i = target}. The
// Gram factorization of the generator matrix is computed once and reused; a
// rank-deficient Gram matrix degrades to the least-squares affine hull.
class AffineProjector {
 public:
  explicit AffineProjector(const FeasProblem& problem);
  ~AffineProjector();
  AffineProjector(AffineProjector&&) noexcept;
  AffineProjector& operator=(AffineProjector&&) noexcept;

  void project(std::vector<Sym2d>& blocks) const;
  double equality_residual(const std::vector<Sym2d>& blocks) const;
  bool rank_deficient() const;

  // Least-squares pull of a block-space gap vector through the adjoint of the
  // equality system; the negation is the dual certificate estimate.
  std::vector<Sym2d> dual_from_gap(const std::vector<Sym2d>& gap) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<Sym2d> project_affine(std::vector<Sym2d> blocks, const FeasProblem& problem);

// Dykstra-corrected alternating projections between the affine set and the
// product of PSD cones. Feasible when the affine iterate is PSD up to the
// tolerance; Infeasible when the per-cycle displacement stabilizes at a norm
// well above it; Undecided on iteration exhaustion.
SolveOutcome decide_pt(const FeasProblem& problem);

// Exact certification of a solver outcome. The feasible side rationalizes,
// repairs back onto the rational affine set and insists on exact PSD blocks;
// the infeasible side rationalizes the dual and insists verify_sep passes.
// Throws CertificationFailed to signal a retry with tighter tolerance or a
// larger denominator bound.
std::variant<PtDecomposition, SepCertificate> certify(const VRep& v, const MatTuple& a,
                                                      const SolveOutcome& outcome,
                                                      long max_den);

struct SolverOptions {
  double tolerance = 1e-9;
  long iter_max = 200000;
  std::vector<long> max_den_schedule{1000, 1000000, 1000000000};
};

struct PtDecision {
  FeasStatus status = FeasStatus::Undecided;
  std::optional<PtDecomposition> decomposition;
  std::optional<SepCertificate> certificate;
  SolveOutcome outcome;
};

FeasProblem make_problem(const VRep& v, const MatTuple& a, const SolverOptions& opts = {});

// decide_pt plus the certification ladder: escalate the denominator bound,
// then retry once with a tighter tolerance. Undecided when nothing certifies.
PtDecision decide_and_certify(const VRep& v, const MatTuple& a, const SolverOptions& opts = {});

}  // namespace conegap

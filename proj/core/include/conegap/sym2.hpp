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

#include "conegap/rational.hpp"

namespace conegap {

// Real symmetric 2x2 matrix over exact rationals; symmetry is structural
// (three stored entries, a21 implied).
struct Sym2 {
  Rat a11, a12, a22;

  static Sym2 zero() { return {}; }
  static Sym2 identity() { return {Rat(1), Rat(0), Rat(1)}; }
  static Sym2 diag(const Rat& x, const Rat& y) { return {x, Rat(0), y}; }
  static Sym2 offdiag(const Rat& x) { return {Rat(0), x, Rat(0)}; }

  bool is_zero() const { return a11.is_zero() && a12.is_zero() && a22.is_zero(); }
  Rat trace() const { return a11 + a22; }
  Rat det() const { return a11 * a22 - a12 * a12; }

  Sym2& operator+=(const Sym2& o) { a11 += o.a11; a12 += o.a12; a22 += o.a22; return *this; }
  Sym2& operator-=(const Sym2& o) { a11 -= o.a11; a12 -= o.a12; a22 -= o.a22; return *this; }
  friend Sym2 operator+(Sym2 a, const Sym2& b) { return a += b; }
  friend Sym2 operator-(Sym2 a, const Sym2& b) { return a -= b; }
  friend Sym2 operator*(const Rat& s, const Sym2& m) { return {s * m.a11, s * m.a12, s * m.a22}; }
  friend Sym2 operator-(const Sym2& m) { return {-m.a11, -m.a12, -m.a22}; }
  friend bool operator==(const Sym2& a, const Sym2& b) = default;
};

// Exact PSD test: nonnegative diagonal and nonnegative determinant.
bool psd2_check(const Sym2& s);

// mu = max(0, -a11, -a22) + |a12|. A sufficient rational shift: mu*I + s is
// always PSD. Deliberately not the tight lambda_min bound, which is irrational.
Rat psd_shift_bound(const Sym2& s);

// Smallest exact rational upper bound theta (up to sqrt rounding) such that
// s + theta*scale*I is PSD; requires scale > 0.
Rat min_psd_shift(const Sym2& s, const Rat& scale);

// Trace inner product on Sym2: <X,Y> = x11*y11 + 2*x12*y12 + x22*y22. The
// off-diagonal counts twice; verification and solver share this convention.
Rat trace_inner(const Sym2& x, const Sym2& y);

// Approximate counterpart used inside the numerical feasibility solver.
struct Sym2d {
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;
};

Sym2d to_approx(const Sym2& s);
Sym2 rationalize(const Sym2d& s, long max_den);

}  // namespace conegap

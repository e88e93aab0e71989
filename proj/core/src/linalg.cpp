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

#include "conegap/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace conegap {

Rat dot(const RatVector& a, const RatVector& b) {
  assert(a.size() == b.size());
  Rat s;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVector vec_add(const RatVector& a, const RatVector& b) {
  assert(a.size() == b.size());
  RatVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVector vec_sub(const RatVector& a, const RatVector& b) {
  assert(a.size() == b.size());
  RatVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVector vec_scale(const Rat& s, const RatVector& a) {
  RatVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

bool vec_is_zero(const RatVector& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x.is_zero(); });
}

bool lex_less(const RatVector& a, const RatVector& b) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

RatVector scaled_primitive(const RatVector& v) {
  mpz_class den_lcm = 1;
  for (const Rat& x : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.den().get_mpz_t());
  mpz_class num_gcd = 0;
  std::vector<mpz_class> scaled(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    scaled[i] = v[i].num() * (den_lcm / v[i].den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled[i].get_mpz_t());
  }
  RatVector out(v.size());
  if (num_gcd == 0) {
    for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(0);
    return out;
  }
  for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(mpz_class(scaled[i] / num_gcd));
  return out;
}

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
  if (rows.empty()) return RatMatrix(0, 0);
  RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows; ++r) {
    assert(rows[r].size() == static_cast<size_t>(m.cols));
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

RatVector RatMatrix::row(int r) const {
  RatVector v(cols);
  for (int c = 0; c < cols; ++c) v[c] = at(r, c);
  return v;
}

RatVector RatMatrix::col(int c) const {
  RatVector v(rows);
  for (int r = 0; r < rows; ++r) v[r] = at(r, c);
  return v;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols, rows);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
  return t;
}

RatVector RatMatrix::apply(const RatVector& x) const {
  assert(static_cast<int>(x.size()) == cols);
  RatVector y(rows);
  for (int r = 0; r < rows; ++r) {
    Rat s;
    for (int c = 0; c < cols; ++c) s += at(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

RatMatrix RatMatrix::mul(const RatMatrix& other) const {
  assert(cols == other.rows);
  RatMatrix out(rows, other.cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < other.cols; ++c) {
      Rat s;
      for (int k = 0; k < cols; ++k) s += at(r, k) * other.at(k, c);
      out.at(r, c) = s;
    }
  return out;
}

namespace {

// Integer working form of [M | b] (or M alone): each row rescaled by the lcm
// of its denominators. Row scaling leaves the solution set unchanged.
struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<mpz_class> data;

  mpz_class& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  const mpz_class& at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

  static IntMat from(const RatMatrix& m, const RatVector* rhs) {
    IntMat im;
    im.rows = m.rows;
    im.cols = m.cols + (rhs ? 1 : 0);
    im.data.assign(static_cast<size_t>(im.rows) * im.cols, mpz_class(0));
    for (int r = 0; r < m.rows; ++r) {
      mpz_class den_lcm = 1;
      for (int c = 0; c < m.cols; ++c)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), m.at(r, c).den().get_mpz_t());
      if (rhs)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), (*rhs)[r].den().get_mpz_t());
      for (int c = 0; c < m.cols; ++c)
        im.at(r, c) = m.at(r, c).num() * (den_lcm / m.at(r, c).den());
      if (rhs) im.at(r, m.cols) = (*rhs)[r].num() * (den_lcm / (*rhs)[r].den());
    }
    return im;
  }

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int c = 0; c < cols; ++c) std::swap(at(a, c), at(b, c));
  }
};

struct Echelon {
  IntMat m;
  std::vector<int> pivot_cols;  // pivot of row i sits in pivot_cols[i]
};

// Bareiss fraction-free elimination restricted to the first limit_cols
// columns (trailing columns are carried along, e.g. an augmented rhs).
Echelon echelon_bareiss(IntMat m, int limit_cols) {
  Echelon e;
  mpz_class prev = 1;
  int row = 0;
  for (int col = 0; col < limit_cols && row < m.rows; ++col) {
    int best = -1;
    for (int i = row; i < m.rows; ++i) {
      if (sgn(m.at(i, col)) == 0) continue;
      if (best < 0 || mpz_cmpabs(m.at(i, col).get_mpz_t(), m.at(best, col).get_mpz_t()) > 0)
        best = i;
    }
    if (best < 0) continue;
    m.swap_rows(row, best);
    for (int i = row + 1; i < m.rows; ++i) {
      for (int j = col + 1; j < m.cols; ++j) {
        mpz_class t = m.at(i, j) * m.at(row, col) - m.at(i, col) * m.at(row, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m.at(i, col) = 0;
    }
    prev = m.at(row, col);
    e.pivot_cols.push_back(col);
    ++row;
  }
  e.m = std::move(m);
  return e;
}

// Back substitution on the echelon form: pivot variables solved in rationals,
// free variables fixed by the caller.
RatVector back_substitute(const Echelon& e, int n_vars, const RatVector& rhs_row_values,
                          const RatVector& free_values) {
  RatVector x(free_values);
  const int pr = static_cast<int>(e.pivot_cols.size());
  for (int i = pr - 1; i >= 0; --i) {
    const int pc = e.pivot_cols[i];
    Rat s = rhs_row_values[i];
    for (int j = pc + 1; j < n_vars; ++j) s -= Rat(e.m.at(i, j)) * x[j];
    x[pc] = s / Rat(e.m.at(i, pc));
  }
  return x;
}

}  // namespace

LinearSolution solve_rational(const RatMatrix& m, const RatVector& b) {
  if (static_cast<int>(b.size()) != m.rows)
    throw std::invalid_argument("solve_rational: dimension mismatch");
  const int n = m.cols;
  Echelon e = echelon_bareiss(IntMat::from(m, &b), n);
  const int pr = static_cast<int>(e.pivot_cols.size());

  // Rows below the pivot rows have an all-zero coefficient part.
  for (int i = pr; i < e.m.rows; ++i)
    if (sgn(e.m.at(i, n)) != 0) return LinearSolution{SolveStatus::NoSolution, {}, {}};

  RatVector rhs(pr);
  for (int i = 0; i < pr; ++i) rhs[i] = Rat(e.m.at(i, n));

  LinearSolution sol;
  sol.particular = back_substitute(e, n, rhs, RatVector(n, Rat(0)));
  if (pr == n) {
    sol.status = SolveStatus::Unique;
    return sol;
  }
  sol.status = SolveStatus::Underdetermined;
  std::vector<bool> is_pivot(n, false);
  for (int pc : e.pivot_cols) is_pivot[pc] = true;
  const RatVector zero_rhs(pr, Rat(0));
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector free_values(n, Rat(0));
    free_values[f] = Rat(1);
    sol.kernel.push_back(back_substitute(e, n, zero_rhs, free_values));
  }
  return sol;
}

int rank(const RatMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  Echelon e = echelon_bareiss(IntMat::from(m, nullptr), m.cols);
  return static_cast<int>(e.pivot_cols.size());
}

std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  LinearSolution s = solve_rational(m, RatVector(m.rows, Rat(0)));
  return s.kernel;
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows != m.cols) throw SingularMatrix();
  RatMatrix inv(m.rows, m.cols);
  for (int c = 0; c < m.cols; ++c) {
    RatVector unit(m.rows, Rat(0));
    unit[c] = Rat(1);
    LinearSolution s = solve_rational(m, unit);
    if (s.status != SolveStatus::Unique) throw SingularMatrix();
    for (int r = 0; r < m.rows; ++r) inv.at(r, c) = s.particular[r];
  }
  return inv;
}

}  // namespace conegap

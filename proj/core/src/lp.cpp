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

#include "conegap/lp.hpp"

#include <cassert>

namespace conegap {

namespace {

// Dense simplex tableau. Rows 0..m-1 hold the constraints with the basis
// columns reduced to identity; row m is the reduced-cost row with -z in the
// rhs position.
class Tableau {
 public:
  Tableau(int m, int cols) : m_(m), cols_(cols), t_((m + 1) * (cols + 1)), basis_(m) {}

  Rat& at(int r, int c) { return t_[static_cast<size_t>(r) * (cols_ + 1) + c]; }
  const Rat& at(int r, int c) const { return t_[static_cast<size_t>(r) * (cols_ + 1) + c]; }
  Rat& rhs(int r) { return at(r, cols_); }
  Rat& cost(int c) { return at(m_, c); }

  int rows() const { return m_; }
  int cols() const { return cols_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(int prow, int pcol) {
    const Rat p = at(prow, pcol);
    assert(!p.is_zero());
    for (int c = 0; c <= cols_; ++c) at(prow, c) /= p;
    for (int r = 0; r <= m_; ++r) {
      if (r == prow) continue;
      const Rat f = at(r, pcol);
      if (f.is_zero()) continue;
      for (int c = 0; c <= cols_; ++c) at(r, c) -= f * at(prow, c);
    }
    basis_[prow] = pcol;
  }

  // Dantzig pricing while the objective moves, with a permanent switch to
  // Bland's rule after a run of degenerate pivots so cycling cannot occur.
  // Returns Optimal or Unbounded.
  LpStatus run(const std::vector<bool>& usable) {
    bool bland = false;
    int stalled = 0;
    while (true) {
      int enter = -1;
      if (bland) {
        for (int c = 0; c < cols_; ++c) {
          if (usable[c] && cost(c).sign() < 0) { enter = c; break; }
        }
      } else {
        for (int c = 0; c < cols_; ++c) {
          if (!usable[c] || cost(c).sign() >= 0) continue;
          if (enter < 0 || cost(c) < cost(enter)) enter = c;
        }
      }
      if (enter < 0) return LpStatus::Optimal;
      int leave = -1;
      Rat best_ratio;
      for (int r = 0; r < m_; ++r) {
        if (at(r, enter).sign() <= 0) continue;
        Rat ratio = rhs(r) / at(r, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      if (!bland) {
        stalled = best_ratio.is_zero() ? stalled + 1 : 0;
        if (stalled > 40) bland = true;
      }
      pivot(leave, enter);
    }
  }

  void drop_row(int r) {
    t_.erase(t_.begin() + static_cast<size_t>(r) * (cols_ + 1),
             t_.begin() + static_cast<size_t>(r + 1) * (cols_ + 1));
    basis_.erase(basis_.begin() + r);
    --m_;
  }

 private:
  int m_;
  int cols_;
  std::vector<Rat> t_;
  std::vector<int> basis_;
};

}  // namespace

LpResult lp_solve(const RatMatrix& a, const RatVector& b, const RatVector& c) {
  const int m = a.rows;
  const int n = a.cols;
  assert(static_cast<int>(b.size()) == m);
  assert(static_cast<int>(c.size()) == n);

  // Phase 1 tableau with one artificial per row; rows flipped so b >= 0.
  Tableau t(m, n + m);
  for (int r = 0; r < m; ++r) {
    const bool flip = b[r].sign() < 0;
    for (int j = 0; j < n; ++j) t.at(r, j) = flip ? -a.at(r, j) : a.at(r, j);
    t.rhs(r) = flip ? -b[r] : b[r];
    t.at(r, n + r) = Rat(1);
    t.basis()[r] = n + r;
  }
  // Reduced costs for min(sum of artificials): zero on the artificial basis,
  // minus the column sum elsewhere; rhs = -sum(b).
  for (int j = 0; j < n; ++j) {
    Rat s;
    for (int r = 0; r < m; ++r) s += t.at(r, j);
    t.cost(j) = -s;
  }
  {
    Rat s;
    for (int r = 0; r < m; ++r) s += t.rhs(r);
    t.rhs(m) = -s;
  }

  std::vector<bool> usable(n + m, true);
  LpStatus s1 = t.run(usable);
  assert(s1 == LpStatus::Optimal);  // phase-1 objective is bounded below by 0
  (void)s1;
  if ((-t.rhs(t.rows())).sign() > 0) return {LpStatus::Infeasible, Rat(0), {}};

  // Drive remaining artificials out of the basis; rows that cannot pivot are
  // redundant constraints and get dropped.
  for (int r = t.rows() - 1; r >= 0; --r) {
    if (t.basis()[r] < n) continue;
    int pcol = -1;
    for (int j = 0; j < n; ++j) {
      if (!t.at(r, j).is_zero()) { pcol = j; break; }
    }
    if (pcol >= 0) {
      t.pivot(r, pcol);
    } else {
      t.drop_row(r);
    }
  }

  // Phase 2: swap in the real objective and re-reduce over the basis.
  for (int j = 0; j < n + m; ++j) t.cost(j) = (j < n) ? c[j] : Rat(0);
  t.rhs(t.rows()) = Rat(0);
  for (int r = 0; r < t.rows(); ++r) {
    const Rat f = t.cost(t.basis()[r]);
    if (f.is_zero()) continue;
    for (int j = 0; j <= n + m; ++j) t.at(t.rows(), j) -= f * t.at(r, j);
  }
  for (int j = n; j < n + m; ++j) usable[j] = false;

  LpStatus s2 = t.run(usable);
  if (s2 == LpStatus::Unbounded) return {LpStatus::Unbounded, Rat(0), {}};

  LpResult res;
  res.status = LpStatus::Optimal;
  res.x.assign(n, Rat(0));
  for (int r = 0; r < t.rows(); ++r) {
    if (t.basis()[r] < n) res.x[t.basis()[r]] = t.rhs(r);
  }
  res.objective = -t.rhs(t.rows());
  return res;
}

bool in_conic_hull(const std::vector<RatVector>& gens, const RatVector& target) {
  if (gens.empty()) return vec_is_zero(target);
  const int d = static_cast<int>(target.size());
  const int n = static_cast<int>(gens.size());
  RatMatrix a(d, n);
  for (int j = 0; j < n; ++j) {
    assert(gens[j].size() == target.size());
    for (int i = 0; i < d; ++i) a.at(i, j) = gens[j][i];
  }
  return lp_solve(a, target, RatVector(n, Rat(0))).status == LpStatus::Optimal;
}

bool generators_pointed(const std::vector<RatVector>& gens) {
  if (gens.empty()) return true;
  const int d = static_cast<int>(gens[0].size());
  const int n = static_cast<int>(gens.size());
  RatMatrix a(d + 1, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < d; ++i) a.at(i, j) = gens[j][i];
    a.at(d, j) = Rat(1);
  }
  RatVector b(d + 1, Rat(0));
  b[d] = Rat(1);
  return lp_solve(a, b, RatVector(n, Rat(0))).status == LpStatus::Infeasible;
}

std::optional<RatVector> apex_separating_functional(const std::vector<RatVector>& gens,
                                                    size_t apex) {
  assert(apex < gens.size());
  const int d = static_cast<int>(gens[apex].size());
  const int n = static_cast<int>(gens.size());
  // Variables: u(d), w(d) with phi = u - w; tp, tm with t = tp - tm;
  // slacks s_i for phi(g_i) >= t; r for t <= 1.
  const int n_slack = n - 1;
  const int vars = 2 * d + 2 + n_slack + 1;
  const int iu = 0, iw = d, itp = 2 * d, itm = 2 * d + 1, is0 = 2 * d + 2;
  const int ir = is0 + n_slack;

  const int m = 1 + n_slack + 1;
  RatMatrix a(m, vars);
  RatVector b(m, Rat(0));

  for (int k = 0; k < d; ++k) {
    a.at(0, iu + k) = gens[apex][k];
    a.at(0, iw + k) = -gens[apex][k];
  }
  b[0] = Rat(-1);

  int row = 1;
  for (int i = 0; i < n; ++i) {
    if (static_cast<size_t>(i) == apex) continue;
    for (int k = 0; k < d; ++k) {
      a.at(row, iu + k) = gens[i][k];
      a.at(row, iw + k) = -gens[i][k];
    }
    a.at(row, itp) = Rat(-1);
    a.at(row, itm) = Rat(1);
    a.at(row, is0 + (row - 1)) = Rat(-1);
    ++row;
  }
  a.at(row, itp) = Rat(1);
  a.at(row, itm) = Rat(-1);
  a.at(row, ir) = Rat(1);
  b[row] = Rat(1);

  RatVector c(vars, Rat(0));
  c[itp] = Rat(-1);
  c[itm] = Rat(1);

  LpResult res = lp_solve(a, b, c);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  const Rat margin = -res.objective;
  if (margin.sign() <= 0) return std::nullopt;
  RatVector phi(d);
  for (int k = 0; k < d; ++k) phi[k] = res.x[iu + k] - res.x[iw + k];
  return phi;
}

}  // namespace conegap

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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace conegap::oracles {

namespace {

struct FmRow {
  RatVector coeffs;  // over [lambda(n), x(d)]
  bool equality;
  uint64_t ancestors = 0;  // original inequality indices feeding this row
};

RatVector canon_row(const RatVector& v, bool equality) {
  RatVector c = scaled_primitive(v);
  if (equality) {
    for (const auto& e : c) {
      if (e.is_zero()) continue;
      if (e.sign() < 0) c = vec_scale(Rat(-1), c);
      break;
    }
  }
  return c;
}

int popcount64(uint64_t x) { return __builtin_popcountll(x); }

// Identical rows keep the smallest lineage so the ancestor bound prunes as
// little as possible later.
void dedupe(std::vector<FmRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const FmRow& a, const FmRow& b) {
    if (a.equality != b.equality) return a.equality;
    if (a.coeffs != b.coeffs) return lex_less(a.coeffs, b.coeffs);
    return popcount64(a.ancestors) < popcount64(b.ancestors);
  });
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const FmRow& a, const FmRow& b) {
                           return a.equality == b.equality && a.coeffs == b.coeffs;
                         }),
             rows.end());
}

}  // namespace

std::vector<RatVector> fm_facets(const VRep& v) {
  const int d = v.dim;
  const int n = static_cast<int>(v.generators.size());
  const int vars = n + d;

  std::vector<FmRow> rows;
  for (int j = 0; j < d; ++j) {  // x_j - sum_i lambda_i (v_i)_j = 0
    RatVector r(vars, Rat(0));
    for (int i = 0; i < n; ++i) r[i] = -v.generators[i][j];
    r[n + j] = Rat(1);
    rows.push_back({canon_row(r, true), true});
  }
  for (int i = 0; i < n; ++i) {  // lambda_i >= 0
    RatVector r(vars, Rat(0));
    r[i] = Rat(1);
    rows.push_back({std::move(r), false, uint64_t{1} << i});
  }

  int fm_steps = 0;
  for (int elim = 0; elim < n; ++elim) {
    // Prefer a Gaussian pivot on an equality containing the variable.
    int eq_pivot = -1;
    for (size_t k = 0; k < rows.size(); ++k) {
      if (rows[k].equality && !rows[k].coeffs[elim].is_zero()) {
        eq_pivot = static_cast<int>(k);
        break;
      }
    }
    std::vector<FmRow> next;
    if (eq_pivot >= 0) {
      const FmRow pivot = rows[eq_pivot];
      const Rat& p = pivot.coeffs[elim];
      for (size_t k = 0; k < rows.size(); ++k) {
        if (static_cast<int>(k) == eq_pivot) continue;
        FmRow row = rows[k];
        const Rat& c = row.coeffs[elim];
        if (!c.is_zero()) {
          row.coeffs = vec_sub(row.coeffs, vec_scale(c / p, pivot.coeffs));
        }
        if (!vec_is_zero(row.coeffs)) {
          row.coeffs = canon_row(row.coeffs, row.equality);
          next.push_back(std::move(row));
        }
      }
    } else {
      // Imbert's acceleration: after k eliminations a nonredundant derived
      // inequality has at most k+1 ancestors among the original ones.
      ++fm_steps;
      std::vector<const FmRow*> pos, neg, zero;
      for (const auto& row : rows) {
        const int s = row.coeffs[elim].sign();
        if (s > 0) pos.push_back(&row);
        else if (s < 0) neg.push_back(&row);
        else zero.push_back(&row);
      }
      for (const FmRow* z : zero) next.push_back(*z);
      for (const FmRow* p : pos) {
        for (const FmRow* q : neg) {
          const uint64_t lineage = p->ancestors | q->ancestors;
          if (popcount64(lineage) > fm_steps + 1) continue;
          RatVector comb = vec_add(vec_scale(-q->coeffs[elim], p->coeffs),
                                   vec_scale(p->coeffs[elim], q->coeffs));
          if (vec_is_zero(comb)) continue;
          next.push_back({canon_row(comb, false), false, lineage});
        }
      }
    }
    rows = std::move(next);
    dedupe(rows);
  }

  // Rows now mention only x; project the inequalities and keep the
  // facet-supporting ones (zero set of rank dim-1 among the generators).
  std::set<std::vector<std::string>> seen;
  std::vector<RatVector> facets;
  for (const auto& row : rows) {
    if (row.equality) continue;
    RatVector f(row.coeffs.begin() + n, row.coeffs.end());
    if (vec_is_zero(f)) continue;
    f = scaled_primitive(f);
    std::vector<RatVector> on_facet;
    bool valid = true;
    for (const auto& g : v.generators) {
      const Rat val = dot(f, g);
      if (val.sign() < 0) { valid = false; break; }
      if (val.is_zero()) on_facet.push_back(g);
    }
    if (!valid) continue;
    RatMatrix zero_set(static_cast<int>(on_facet.size()), d);
    for (size_t r = 0; r < on_facet.size(); ++r)
      for (int c = 0; c < d; ++c) zero_set.at(static_cast<int>(r), c) = on_facet[r][c];
    if (rank(zero_set) != d - 1) continue;
    std::vector<std::string> key;
    for (const auto& e : f) key.push_back(e.str());
    if (seen.insert(key).second) facets.push_back(std::move(f));
  }
  std::sort(facets.begin(), facets.end(), lex_less);
  return facets;
}

namespace {

bool subset_combination(const std::vector<RatVector>& gens, const RatVector& target,
                        std::vector<int>& pick, size_t next, size_t remaining) {
  if (remaining == 0) {
    RatMatrix m(static_cast<int>(target.size()), static_cast<int>(pick.size()));
    for (size_t c = 0; c < pick.size(); ++c)
      for (size_t r = 0; r < target.size(); ++r)
        m.at(static_cast<int>(r), static_cast<int>(c)) = gens[pick[c]][r];
    LinearSolution sol = solve_rational(m, target);
    if (sol.status != SolveStatus::Unique) return false;
    for (const auto& lam : sol.particular)
      if (lam.sign() < 0) return false;
    return true;
  }
  for (size_t i = next; i + remaining <= gens.size(); ++i) {
    pick.push_back(static_cast<int>(i));
    if (subset_combination(gens, target, pick, i + 1, remaining - 1)) return true;
    pick.pop_back();
  }
  return false;
}

}  // namespace

bool bf_in_conic_hull(const std::vector<RatVector>& gens, const RatVector& target) {
  if (vec_is_zero(target)) return true;
  const size_t d = target.size();
  for (size_t k = 1; k <= std::min(d, gens.size()); ++k) {
    std::vector<int> pick;
    if (subset_combination(gens, target, pick, 0, k)) return true;
  }
  return false;
}

bool float_psd_check(const Sym2& s, double tol) {
  const double a = s.a11.to_double(), b = s.a12.to_double(), c = s.a22.to_double();
  const double lo = 0.5 * (a + c - std::hypot(a - c, 2.0 * b));
  return lo >= -tol;
}

Rat best_rational_brute(double x, long max_den) {
  const Rat exact = Rat::from_double(x);
  Rat best(0);
  Rat best_err = (exact - best).abs();
  for (long q = 1; q <= max_den; ++q) {
    mpz_class p_mid;
    mpz_fdiv_q(p_mid.get_mpz_t(), mpz_class(exact.num() * q).get_mpz_t(),
               exact.den().get_mpz_t());
    for (mpz_class p = p_mid - 1; p <= p_mid + 1; ++p) {
      const Rat cand(p, mpz_class(q));
      const Rat err = (exact - cand).abs();
      if (err < best_err || (err == best_err && cand.den() < best.den())) {
        best = cand;
        best_err = err;
      }
    }
  }
  return best;
}

Rat random_rat(Rng& rng, long lo, long hi, long max_den) {
  std::uniform_int_distribution<long> num(lo, hi);
  std::uniform_int_distribution<long> den(1, max_den);
  return Rat(num(rng), den(rng));
}

RatVector random_vector(Rng& rng, int dim, long lo, long hi, long max_den) {
  RatVector v(dim);
  for (auto& e : v) e = random_rat(rng, lo, hi, max_den);
  return v;
}

RatMatrix random_invertible(Rng& rng, int dim, long entry_bound) {
  while (true) {
    RatMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        m.at(r, c) = random_rat(rng, -entry_bound, entry_bound, 1);
    if (rank(m) == dim) return m;
  }
}

Sym2 random_sym2(Rng& rng, long bound, long max_den) {
  return {random_rat(rng, -bound, bound, max_den), random_rat(rng, -bound, bound, max_den),
          random_rat(rng, -bound, bound, max_den)};
}

Sym2 random_psd(Rng& rng, long bound, long max_den) {
  // Gram matrix of two random vectors: PSD by construction.
  const Rat u1 = random_rat(rng, -bound, bound, max_den);
  const Rat u2 = random_rat(rng, -bound, bound, max_den);
  const Rat w1 = random_rat(rng, -bound, bound, max_den);
  const Rat w2 = random_rat(rng, -bound, bound, max_den);
  return {u1 * u1 + w1 * w1, u1 * u2 + w1 * w2, u2 * u2 + w2 * w2};
}

MatTuple random_tuple(Rng& rng, int dim, long bound, long max_den) {
  MatTuple t;
  t.entries.reserve(dim);
  for (int j = 0; j < dim; ++j) t.entries.push_back(random_sym2(rng, bound, max_den));
  return t;
}

VRep random_pointed_cone(Rng& rng, int dim, int n_gens) {
  VRep v{dim, {}};
  for (int i = 0; i < n_gens; ++i) {
    RatVector g = random_vector(rng, dim - 1, -4, 4, 2);
    g.push_back(Rat(1));
    v.generators.push_back(std::move(g));
  }
  return v;
}

VRep random_proper_cone(Rng& rng, int dim, int n_gens, bool require_nonsimplex) {
  while (true) {
    VRep v = random_pointed_cone(rng, dim, n_gens);
    ConeAnalysis info = analyze(v);
    if (!info.proper) continue;
    if (require_nonsimplex && info.simplex) continue;
    return v;
  }
}

VRep kgon_cone(int k, long max_den) {
  VRep v{3, {}};
  for (int i = 0; i < k; ++i) {
    const double angle = 2.0 * M_PI * i / k;
    v.generators.push_back({rationalize(std::cos(angle), max_den),
                            rationalize(std::sin(angle), max_den), Rat(1)});
  }
  return v;
}

VRep cube_cone_d4() {
  VRep v{4, {}};
  for (int s = 0; s < 8; ++s)
    v.generators.push_back(
        {Rat(s & 1 ? 1 : -1), Rat(s & 2 ? 1 : -1), Rat(s & 4 ? 1 : -1), Rat(1)});
  return v;
}

VRep prism_cone_d5() {
  VRep v{5, {}};
  for (int s = 0; s < 8; ++s)
    for (long t : {0L, 1L})
      v.generators.push_back({Rat(s & 1 ? 1 : -1), Rat(s & 2 ? 1 : -1), Rat(s & 4 ? 1 : -1),
                              Rat(t), Rat(1)});
  return v;
}

VRep cross_polytope_cone(int dim) {
  VRep v{dim, {}};
  for (int j = 0; j < dim - 1; ++j) {
    for (long s : {1L, -1L}) {
      RatVector g(dim, Rat(0));
      g[j] = Rat(s);
      g[dim - 1] = Rat(1);
      v.generators.push_back(std::move(g));
    }
  }
  return v;
}

VRep orthant(int dim) {
  VRep v{dim, {}};
  for (int j = 0; j < dim; ++j) {
    RatVector g(dim, Rat(0));
    g[j] = Rat(1);
    v.generators.push_back(std::move(g));
  }
  return v;
}

VRep square_cone() {
  return VRep{3,
              {{Rat(1), Rat(-1), Rat(1)},
               {Rat(-1), Rat(-1), Rat(1)},
               {Rat(-1), Rat(1), Rat(1)},
               {Rat(1), Rat(1), Rat(1)}}};
}

}  // namespace conegap::oracles

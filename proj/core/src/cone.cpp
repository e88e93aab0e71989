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

#include "conegap/cone.hpp"

#include <algorithm>
#include <cassert>

#include "conegap/lp.hpp"

namespace conegap {

namespace {

RatMatrix rows_matrix(const std::vector<RatVector>& rows, int cols) {
  RatMatrix m(static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  return m;
}

std::vector<RatVector> canon_sorted_unique(std::vector<RatVector> vs) {
  for (auto& v : vs) v = scaled_primitive(v);
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// ---------------------------------------------------------------------------
// Double description: extreme rays of {x : row.x >= 0 for every row}.
//
// Start from a simplicial subcone given by d independent rows, then insert
// the remaining halfspaces one at a time (lexicographic order). Surviving
// rays keep their side, and each adjacent (positive, negative) pair spawns
// the combination lying on the new hyperplane. Adjacency is the exact rank
// test: the rows active on both rays span a (d-2)-dimensional space.
// Requires rank(rows) == d, i.e. a pointed cone; full-dimensionality is not
// needed.
// ---------------------------------------------------------------------------

struct DdRay {
  RatVector r;
  std::vector<bool> active;  // per processed row
};

std::vector<RatVector> dd_extreme_rays(const std::vector<RatVector>& input_rows, int d) {
  std::vector<RatVector> rows = canon_sorted_unique(input_rows);

  // Greedy independent subset for the initial basis.
  std::vector<int> basis_idx;
  std::vector<RatVector> basis_rows;
  for (int i = 0; i < static_cast<int>(rows.size()) && static_cast<int>(basis_idx.size()) < d;
       ++i) {
    basis_rows.push_back(rows[i]);
    if (rank(rows_matrix(basis_rows, d)) == static_cast<int>(basis_idx.size()) + 1) {
      basis_idx.push_back(i);
    } else {
      basis_rows.pop_back();
    }
  }
  if (static_cast<int>(basis_idx.size()) < d)
    throw DegenerateCone("double description requires a pointed cone");

  std::vector<int> order = basis_idx;
  for (int i = 0; i < static_cast<int>(rows.size()); ++i)
    if (std::find(basis_idx.begin(), basis_idx.end(), i) == basis_idx.end()) order.push_back(i);

  RatMatrix b_inv = inverse(rows_matrix(basis_rows, d));
  std::vector<DdRay> rays;
  for (int j = 0; j < d; ++j) {
    DdRay ray;
    ray.r = scaled_primitive(b_inv.col(j));
    ray.active.reserve(order.size());
    for (int k = 0; k < d; ++k) ray.active.push_back(k != j);
    rays.push_back(std::move(ray));
  }

  for (size_t step = d; step < order.size(); ++step) {
    const RatVector& cut = rows[order[step]];
    std::vector<Rat> side(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) side[i] = dot(cut, rays[i].r);

    std::vector<DdRay> next;
    for (size_t i = 0; i < rays.size(); ++i) {
      if (side[i].sign() >= 0) {
        DdRay kept = rays[i];
        kept.active.push_back(side[i].is_zero());
        next.push_back(std::move(kept));
      }
    }

    for (size_t p = 0; p < rays.size(); ++p) {
      if (side[p].sign() <= 0) continue;
      for (size_t q = 0; q < rays.size(); ++q) {
        if (side[q].sign() >= 0) continue;
        // Common active rows among the ones processed so far.
        std::vector<RatVector> common;
        for (size_t k = 0; k < step; ++k)
          if (rays[p].active[k] && rays[q].active[k]) common.push_back(rows[order[k]]);
        if (static_cast<int>(common.size()) < d - 2) continue;
        if (rank(rows_matrix(common, d)) != d - 2) continue;

        DdRay born;
        born.r = scaled_primitive(
            vec_add(vec_scale(side[p], rays[q].r), vec_scale(-side[q], rays[p].r)));
        born.active.reserve(step + 1);
        for (size_t k = 0; k < step; ++k)
          born.active.push_back(dot(rows[order[k]], born.r).is_zero());
        born.active.push_back(true);
        next.push_back(std::move(born));
      }
    }
    rays = std::move(next);
    if (rays.empty()) break;  // the cone collapsed to {0}
  }

  std::vector<RatVector> out;
  out.reserve(rays.size());
  for (auto& ray : rays) out.push_back(std::move(ray.r));
  return canon_sorted_unique(out);
}

// Coordinates of each vector in the column space of w (full column rank),
// via the normal equations, exactly.
RatVector span_coordinates(const RatMatrix& w, const RatMatrix& wtw, const RatVector& x) {
  LinearSolution s = solve_rational(wtw, w.transpose().apply(x));
  assert(s.status == SolveStatus::Unique);
  return s.particular;
}

}  // namespace

void validate(const VRep& v) {
  if (v.dim < 1) throw ConeError("VRep: dimension must be >= 1");
  if (v.generators.empty()) throw ConeError("VRep: empty generator list");
  for (const auto& g : v.generators) {
    if (static_cast<int>(g.size()) != v.dim) throw ConeError("VRep: generator of wrong length");
    if (vec_is_zero(g)) throw ConeError("VRep: zero generator");
  }
}

void validate(const HRep& h) {
  if (h.dim < 1) throw ConeError("HRep: dimension must be >= 1");
  for (const auto& f : h.functionals) {
    if (static_cast<int>(f.size()) != h.dim) throw ConeError("HRep: functional of wrong length");
    if (vec_is_zero(f)) throw ConeError("HRep: zero functional");
  }
}

HRep dual_convert(const VRep& v, bool strict) {
  validate(v);
  const int d = v.dim;
  const int r = rank(rows_matrix(v.generators, d));

  if (strict && (r < d || !generators_pointed(canon_sorted_unique(v.generators))))
    throw DegenerateCone();

  if (r == d) {
    return HRep{d, dd_extreme_rays(v.generators, d)};
  }

  // Flat cone: facets inside its span plus +-pairs cutting out the span.
  std::vector<RatVector> span_basis;
  for (const auto& g : v.generators) {
    span_basis.push_back(g);
    if (rank(rows_matrix(span_basis, d)) != static_cast<int>(span_basis.size()))
      span_basis.pop_back();
  }
  RatMatrix w = rows_matrix(span_basis, d).transpose();  // d x r
  RatMatrix wtw = w.transpose().mul(w);

  std::vector<RatVector> inner_rows;
  for (const auto& g : v.generators) inner_rows.push_back(span_coordinates(w, wtw, g));

  std::vector<RatVector> functionals;
  if (r >= 1) {
    for (const auto& f : dd_extreme_rays(inner_rows, r)) {
      LinearSolution s = solve_rational(wtw, f);
      assert(s.status == SolveStatus::Unique);
      functionals.push_back(w.apply(s.particular));
    }
  }
  for (const auto& u : kernel_basis(rows_matrix(v.generators, d))) {
    functionals.push_back(u);
    functionals.push_back(vec_scale(Rat(-1), u));
  }
  return HRep{d, canon_sorted_unique(functionals)};
}

VRep dual_convert(const HRep& h, bool strict) {
  validate(h);
  const int d = h.dim;
  const int r = h.functionals.empty() ? 0 : rank(rows_matrix(h.functionals, d));

  if (strict) {
    if (r < d) throw DegenerateCone();  // lineality => not pointed
    // Full-dimensional iff some x has margin >= 1 on every functional.
    const int n = static_cast<int>(h.functionals.size());
    RatMatrix a(n, 2 * d + n);
    RatVector b(n, Rat(1));
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < d; ++k) {
        a.at(i, k) = h.functionals[i][k];
        a.at(i, d + k) = -h.functionals[i][k];
      }
      a.at(i, 2 * d + i) = Rat(-1);
    }
    if (lp_solve(a, b, RatVector(2 * d + n, Rat(0))).status != LpStatus::Optimal)
      throw DegenerateCone();
  }

  std::vector<RatVector> gens;
  if (r == d) {
    gens = dd_extreme_rays(h.functionals, d);
  } else {
    std::vector<RatVector> span_basis;
    for (const auto& f : h.functionals) {
      span_basis.push_back(f);
      if (rank(rows_matrix(span_basis, d)) != static_cast<int>(span_basis.size()))
        span_basis.pop_back();
    }
    if (r >= 1) {
      RatMatrix w = rows_matrix(span_basis, d).transpose();  // d x r
      std::vector<RatVector> inner_rows;
      for (const auto& f : h.functionals) inner_rows.push_back(w.transpose().apply(f));
      for (const auto& z : dd_extreme_rays(inner_rows, r)) gens.push_back(w.apply(z));
    }
    for (const auto& u : kernel_basis(rows_matrix(h.functionals, d))) {
      gens.push_back(u);
      gens.push_back(vec_scale(Rat(-1), u));
    }
    if (h.functionals.empty()) {
      gens.clear();
      for (int k = 0; k < d; ++k) {
        RatVector e(d, Rat(0));
        e[k] = Rat(1);
        gens.push_back(e);
        gens.push_back(vec_scale(Rat(-1), e));
      }
    }
  }
  gens = canon_sorted_unique(gens);
  if (gens.empty()) throw DegenerateCone("cone is {0}: it has no generator representation");
  return VRep{d, gens};
}

VRep extreme_rays(const VRep& v) {
  validate(v);
  std::vector<RatVector> gens = canon_sorted_unique(v.generators);
  size_t i = 0;
  while (i < gens.size() && gens.size() > 1) {
    std::vector<RatVector> others;
    others.reserve(gens.size() - 1);
    for (size_t j = 0; j < gens.size(); ++j)
      if (j != i) others.push_back(gens[j]);
    if (in_conic_hull(others, gens[i])) {
      gens.erase(gens.begin() + i);
    } else {
      ++i;
    }
  }
  return VRep{v.dim, gens};
}

ConeAnalysis analyze(const VRep& v) {
  validate(v);
  ConeAnalysis out;
  out.extreme_rays = extreme_rays(v);
  out.facets = dual_convert(v, false);
  const int r = rank(rows_matrix(out.extreme_rays.generators, v.dim));
  const bool pointed = generators_pointed(out.extreme_rays.generators);
  out.proper = (r == v.dim) && pointed;
  out.simplex = out.proper && out.extreme_rays.generators.size() == static_cast<size_t>(v.dim);
  return out;
}

VRep facet_generators(const VRep& v, const HRep& h, size_t facet_index) {
  validate(v);
  validate(h);
  if (facet_index >= h.functionals.size()) throw ConeError("facet index out of range");
  const RatVector& f = h.functionals[facet_index];
  VRep out{v.dim, {}};
  for (const auto& g : v.generators)
    if (dot(f, g).is_zero()) out.generators.push_back(g);
  if (out.generators.empty()) throw EmptyFacet();
  return out;
}

namespace {

// First row given; remaining rows drawn greedily from the standard basis to
// complete an invertible matrix.
RatMatrix complete_basis(const RatVector& first_row, int d) {
  std::vector<RatVector> rows{first_row};
  for (int j = 0; j < d && static_cast<int>(rows.size()) < d; ++j) {
    RatVector e(d, Rat(0));
    e[j] = Rat(1);
    rows.push_back(e);
    if (rank(rows_matrix(rows, d)) != static_cast<int>(rows.size())) rows.pop_back();
  }
  assert(static_cast<int>(rows.size()) == d);
  return rows_matrix(rows, d);
}

}  // namespace

std::pair<LinearIso, VRep> position_facet(const VRep& v, size_t facet_index) {
  ConeAnalysis info = analyze(v);
  if (!info.proper) throw DegenerateCone();
  if (facet_index >= info.facets.functionals.size())
    throw ConeError("facet index out of range");
  const RatVector& f = info.facets.functionals[facet_index];

  RatMatrix t = complete_basis(vec_scale(Rat(-1), f), v.dim);
  LinearIso iso{t, inverse(t)};
  VRep positioned{v.dim, {}};
  bool some_on_facet = false;
  for (const auto& g : v.generators) {
    RatVector img = t.apply(g);
    if (img[0].sign() > 0) throw DegenerateCone("generator outside the facet halfspace");
    some_on_facet |= img[0].is_zero();
    positioned.generators.push_back(std::move(img));
  }
  if (!some_on_facet) throw EmptyFacet();
  return {std::move(iso), std::move(positioned)};
}

VertexFigure position_vertex_figure(const VRep& v, size_t ray_index) {
  validate(v);
  if (ray_index >= v.generators.size()) throw ConeError("ray index out of range");

  auto phi = apex_separating_functional(v.generators, ray_index);
  if (!phi) throw NoSeparatingFunctional();

  RatMatrix t = complete_basis(*phi, v.dim);
  LinearIso iso{t, inverse(t)};

  VertexFigure out;
  out.iso = std::move(iso);
  out.positioned.dim = v.dim;
  for (size_t i = 0; i < v.generators.size(); ++i) {
    const Rat value = dot(*phi, v.generators[i]);
    RatVector scaled =
        (i == ray_index) ? v.generators[i] : vec_scale(Rat(1) / value, v.generators[i]);
    RatVector img = t.apply(scaled);
    if (img[0] != ((i == ray_index) ? Rat(-1) : Rat(1)))
      throw ConeError("position_vertex_figure: positioning postcondition failed");
    out.positioned.generators.push_back(std::move(img));
  }
  const RatVector& apex = out.positioned.generators[ray_index];
  const Rat half(1, 2);
  for (size_t i = 0; i < out.positioned.generators.size(); ++i) {
    if (i == ray_index) continue;
    RatVector mid = vec_scale(half, vec_add(apex, out.positioned.generators[i]));
    if (!mid[0].is_zero())
      throw ConeError("position_vertex_figure: midpoint left the figure hyperplane");
    out.figure_generators.emplace_back(mid.begin() + 1, mid.end());
  }
  return out;
}

namespace {

const RatVector kSquare1{Rat(1), Rat(-1), Rat(1)};
const RatVector kSquare2{Rat(-1), Rat(-1), Rat(1)};
const RatVector kSquare3{Rat(-1), Rat(1), Rat(1)};
const RatVector kSquare4{Rat(1), Rat(1), Rat(1)};

struct PlanePoint {
  Rat x, y;
  size_t ray;
};

int half_plane(const PlanePoint& p) {
  if (p.y.sign() > 0 || (p.y.is_zero() && p.x.sign() > 0)) return 0;
  return 1;
}

// Counterclockwise angular order around the origin, exact.
bool angular_less(const PlanePoint& a, const PlanePoint& b) {
  const int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb;
  const Rat cross = a.x * b.y - a.y * b.x;
  if (!cross.is_zero()) return cross.sign() > 0;
  return a.ray < b.ray;
}

int nonidentity_entries(const RatMatrix& m) {
  int count = 0;
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      if (m.at(r, c) != (r == c ? Rat(1) : Rat(0))) ++count;
  return count;
}

bool matrix_lex_less(const RatMatrix& a, const RatMatrix& b) {
  return lex_less(a.data, b.data);
}

}  // namespace

std::pair<LinearIso, VRep> normalize_base3(const VRep& v) {
  if (v.dim != 3) throw ConeError("normalize_base3: dimension must be 3");
  ConeAnalysis info = analyze(v);
  if (!info.proper) throw DegenerateCone();
  const auto& rays = info.extreme_rays.generators;
  const size_t k = rays.size();
  if (k < 4) throw NormalizationFailed("cone is a simplex cone");

  // Cyclic order of the rays in a rational cross-section plane. The sum of
  // all facet functionals is strictly positive on the cone, so it cuts one.
  RatVector interior(v.dim, Rat(0));
  for (const auto& f : info.facets.functionals) interior = vec_add(interior, f);
  std::vector<RatVector> section(k);
  RatVector centroid(v.dim, Rat(0));
  for (size_t i = 0; i < k; ++i) {
    const Rat s = dot(interior, rays[i]);
    if (s.sign() <= 0) throw DegenerateCone("cross-section functional not positive on a ray");
    section[i] = vec_scale(Rat(1) / s, rays[i]);
    centroid = vec_add(centroid, section[i]);
  }
  centroid = vec_scale(Rat(1, static_cast<long>(k)), centroid);

  std::vector<RatVector> plane_basis = kernel_basis(rows_matrix({interior}, v.dim));
  assert(plane_basis.size() == 2);
  RatMatrix pb = rows_matrix(plane_basis, v.dim).transpose();  // 3 x 2
  RatMatrix pbt_pb = pb.transpose().mul(pb);

  std::vector<PlanePoint> points;
  for (size_t i = 0; i < k; ++i) {
    LinearSolution s =
        solve_rational(pbt_pb, pb.transpose().apply(vec_sub(section[i], centroid)));
    assert(s.status == SolveStatus::Unique);
    points.push_back({s.particular[0], s.particular[1], i});
  }
  std::sort(points.begin(), points.end(), angular_less);

  const RatVector gamma{Rat(1), Rat(-1), Rat(1)};  // (1,1,1) in the corner basis
  RatMatrix corners(3, 3);
  for (int i = 0; i < 3; ++i) {
    corners.at(i, 0) = kSquare1[i];
    corners.at(i, 1) = kSquare2[i];
    corners.at(i, 2) = kSquare3[i];
  }

  bool found = false;
  RatMatrix best_t;
  VRep best_rep;

  for (size_t start = 0; start < k; ++start) {
    for (int dir : {+1, -1}) {
      size_t frame[4];
      for (int j = 0; j < 4; ++j) {
        int pos = (static_cast<int>(start) + dir * j) % static_cast<int>(k);
        if (pos < 0) pos += static_cast<int>(k);
        frame[j] = points[static_cast<size_t>(pos)].ray;
      }
      // Projective frame map: solve r4 = B beta in the basis of r1..r3 and
      // rescale columns so the four rays land on the four corners.
      RatMatrix basis(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) basis.at(i, j) = rays[frame[j]][i];
      RatMatrix basis_inv;
      try {
        basis_inv = inverse(basis);
      } catch (const SingularMatrix&) {
        continue;
      }
      RatVector beta = basis_inv.apply(rays[frame[3]]);
      bool ok = true;
      RatVector alpha(3);
      for (int i = 0; i < 3; ++i) {
        if (beta[i].is_zero() || (gamma[i] / beta[i]).sign() <= 0) { ok = false; break; }
        alpha[i] = gamma[i] / beta[i];
      }
      if (!ok) continue;
      RatMatrix scaled(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scaled.at(i, j) = corners.at(i, j) * alpha[j];
      RatMatrix t = scaled.mul(basis_inv);

      // Exact verification of the frame images and the extras region.
      const RatVector corner_list[4] = {kSquare1, kSquare2, kSquare3, kSquare4};
      for (int j = 0; j < 4 && ok; ++j)
        ok = scaled_primitive(t.apply(rays[frame[j]])) == corner_list[j];
      std::vector<RatVector> extras;
      for (size_t i = 0; i < k && ok; ++i) {
        if (i == frame[0] || i == frame[1] || i == frame[2] || i == frame[3]) continue;
        RatVector img = t.apply(rays[i]);
        if (img[2].sign() <= 0) { ok = false; break; }
        RatVector unit{img[0] / img[2], img[1] / img[2], Rat(1)};
        if (!(unit[0] > Rat(1) && unit[1] > Rat(-1) && unit[1] < Rat(1))) { ok = false; break; }
        extras.push_back(std::move(unit));
      }
      if (!ok) continue;

      std::sort(extras.begin(), extras.end(), lex_less);
      VRep rep{3, {kSquare1, kSquare2, kSquare3, kSquare4}};
      for (auto& e : extras) rep.generators.push_back(std::move(e));

      if (!found || nonidentity_entries(t) < nonidentity_entries(best_t) ||
          (nonidentity_entries(t) == nonidentity_entries(best_t) &&
           matrix_lex_less(t, best_t))) {
        found = true;
        best_t = std::move(t);
        best_rep = std::move(rep);
      }
    }
  }
  if (!found)
    throw NormalizationFailed("no window of four consecutive extreme rays admits the square frame");
  return {LinearIso{best_t, inverse(best_t)}, std::move(best_rep)};
}

VRep transform(const LinearIso& iso, const VRep& v) {
  VRep out{v.dim, {}};
  out.generators.reserve(v.generators.size());
  for (const auto& g : v.generators) out.generators.push_back(iso.t.apply(g));
  return out;
}

HRep transform(const LinearIso& iso, const HRep& h) {
  HRep out{h.dim, {}};
  RatMatrix action = iso.t_inv.transpose();
  out.functionals.reserve(h.functionals.size());
  for (const auto& f : h.functionals) out.functionals.push_back(action.apply(f));
  return out;
}

}  // namespace conegap

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

#include "conegap/witness.hpp"

#include <algorithm>

namespace conegap {

MatTuple base_witness() {
  MatTuple a;
  a.entries = {Sym2::diag(Rat(1), Rat(-1)), Sym2::offdiag(Rat(1)), Sym2::identity()};
  return a;
}

NonsimplexFeature find_nonsimplex_feature(const VRep& v) {
  ConeAnalysis info = analyze(v);
  if (!info.proper) throw DegenerateCone();
  if (info.simplex) return {NonsimplexFeature::Kind::Simplex, 0};
  if (v.dim == 3) return {NonsimplexFeature::Kind::Base3, 0};

  const VRep& ext = info.extreme_rays;
  // A facet of a proper cone is generated by the extreme rays lying on it,
  // so the facet cone is a simplex exactly when that count is dim-1.
  for (size_t fi = 0; fi < info.facets.functionals.size(); ++fi) {
    VRep fg = facet_generators(ext, info.facets, fi);
    if (fg.generators.size() != static_cast<size_t>(v.dim - 1))
      return {NonsimplexFeature::Kind::Facet, fi};
  }
  for (size_t ri = 0; ri < ext.generators.size(); ++ri) {
    VertexFigure vf = position_vertex_figure(ext, ri);
    VRep figure{v.dim - 1, vf.figure_generators};
    if (extreme_rays(figure).generators.size() != static_cast<size_t>(v.dim - 1))
      return {NonsimplexFeature::Kind::VertexFigure, ri};
  }
  throw FeatureSearchFailed();
}

namespace {

Sym2 combine(const std::vector<Sym2>& blocks, const RatVector& coeffs, size_t offset) {
  Sym2 s;
  for (size_t k = 0; k < blocks.size(); ++k) s += coeffs[offset + k] * blocks[k];
  return s;
}

VRep facet_subcone(const VRep& positioned) {
  VRep sub{positioned.dim - 1, {}};
  for (const auto& g : positioned.generators) {
    if (g[0].is_zero()) sub.generators.emplace_back(g.begin() + 1, g.end());
  }
  return sub;
}

}  // namespace

WitnessResult lift_facet(const VRep& positioned, const WitnessResult& sub) {
  validate(positioned);
  const int d = positioned.dim;
  if (sub.tuple.dim() != d - 1 || static_cast<int>(sub.certificate.blocks.size()) != d - 1)
    throw PreconditionViolated("facet lift: sub-witness has the wrong dimension");

  bool has_outside = false;
  for (const auto& g : positioned.generators) {
    if (g[0].sign() > 0)
      throw PreconditionViolated("facet lift: generator outside {x1 <= 0}");
    has_outside |= g[0].sign() < 0;
  }
  VRep sub_cone = facet_subcone(positioned);
  if (sub_cone.generators.empty())
    throw PreconditionViolated("facet lift: no generator on {x1 = 0}");
  if (!has_outside)
    throw PreconditionViolated("facet lift: cone lies inside its own facet");
  if (!verify_sep(sub_cone, sub.tuple, sub.certificate))
    throw PreconditionViolated("facet lift: sub-certificate does not verify on the facet");

  WitnessResult out;
  out.tuple.entries.reserve(d);
  out.tuple.entries.push_back(Sym2::zero());
  out.tuple.entries.insert(out.tuple.entries.end(), sub.tuple.entries.begin(),
                           sub.tuple.entries.end());

  // Off-facet generators pick up (-g1)*mu*I; mu dominates every needed shift.
  Rat mu(0);
  for (const auto& g : positioned.generators) {
    if (g[0].sign() >= 0) continue;
    Sym2 s = combine(sub.certificate.blocks, g, 1);
    mu = std::max(mu, psd_shift_bound(s) / (-g[0]));
  }
  out.certificate.blocks.reserve(d);
  out.certificate.blocks.push_back((-mu) * Sym2::identity());
  out.certificate.blocks.insert(out.certificate.blocks.end(), sub.certificate.blocks.begin(),
                                sub.certificate.blocks.end());
  out.trail = sub.trail;

  if (!verify_sep(positioned, out.tuple, out.certificate))
    throw std::logic_error("facet lift produced an invalid certificate");
  return out;
}

WitnessResult lift_vertex_figure(const VRep& positioned, const WitnessResult& sub) {
  validate(positioned);
  const int d = positioned.dim;
  if (sub.tuple.dim() != d - 1 || static_cast<int>(sub.certificate.blocks.size()) != d - 1)
    throw PreconditionViolated("vertex-figure lift: sub-witness has the wrong dimension");

  size_t apex = positioned.generators.size();
  for (size_t i = 0; i < positioned.generators.size(); ++i) {
    const Rat& first = positioned.generators[i][0];
    if (first == Rat(-1)) {
      if (apex != positioned.generators.size())
        throw PreconditionViolated("vertex-figure lift: more than one apex generator");
      apex = i;
    } else if (first != Rat(1)) {
      throw PreconditionViolated("vertex-figure lift: generator not scaled to x1 = +-1");
    }
  }
  if (apex == positioned.generators.size())
    throw PreconditionViolated("vertex-figure lift: no generator with x1 = -1");

  const RatVector& apex_ray = positioned.generators[apex];
  VRep figure{d - 1, {}};
  const Rat half(1, 2);
  for (size_t i = 0; i < positioned.generators.size(); ++i) {
    if (i == apex) continue;
    RatVector mid = vec_scale(half, vec_add(apex_ray, positioned.generators[i]));
    figure.generators.emplace_back(mid.begin() + 1, mid.end());
  }
  if (!verify_sep(figure, sub.tuple, sub.certificate))
    throw PreconditionViolated(
        "vertex-figure lift: sub-certificate does not verify on the vertex figure");

  WitnessResult out;
  out.tuple.entries.reserve(d);
  out.tuple.entries.push_back(Sym2::zero());
  out.tuple.entries.insert(out.tuple.entries.end(), sub.tuple.entries.begin(),
                           sub.tuple.entries.end());

  // First block = sum_j (apex)_j B_j over the trailing coordinates: the apex
  // constraint telescopes to the zero matrix, every other constraint equals
  // twice the corresponding vertex-figure constraint.
  out.certificate.blocks.reserve(d);
  out.certificate.blocks.push_back(combine(sub.certificate.blocks, apex_ray, 1));
  out.certificate.blocks.insert(out.certificate.blocks.end(), sub.certificate.blocks.begin(),
                                sub.certificate.blocks.end());
  out.trail = sub.trail;

  if (!verify_sep(positioned, out.tuple, out.certificate))
    throw std::logic_error("vertex-figure lift produced an invalid certificate");
  return out;
}

namespace {

WitnessResult construct_recursive(const VRep& cone, const SolverOptions& opts) {
  NonsimplexFeature feature = find_nonsimplex_feature(cone);
  switch (feature.kind) {
    case NonsimplexFeature::Kind::Simplex:
      throw SimplexCone();

    case NonsimplexFeature::Kind::Base3: {
      auto [iso, normalized] = normalize_base3(cone);
      MatTuple seed = base_witness();
      PtDecision decision = decide_and_certify(normalized, seed, opts);
      if (decision.status != FeasStatus::Infeasible || !decision.certificate)
        throw CertificationFailed(CertificationFailed::Side::Dual);
      WitnessResult result;
      LinearIso back = iso.inverse();
      result.tuple = transform_tuple(back, seed);
      result.certificate = transform_certificate(back, *decision.certificate);
      result.trail = {{RecursionStep::Kind::Base3, 0, iso}};
      return result;
    }

    case NonsimplexFeature::Kind::Facet: {
      auto [iso, positioned] = position_facet(cone, feature.index);
      WitnessResult sub = construct_recursive(extreme_rays(facet_subcone(positioned)), opts);
      WitnessResult lifted = lift_facet(positioned, sub);
      LinearIso back = iso.inverse();
      WitnessResult result;
      result.tuple = transform_tuple(back, lifted.tuple);
      result.certificate = transform_certificate(back, lifted.certificate);
      result.trail = {{RecursionStep::Kind::FacetLift, feature.index, iso}};
      result.trail.insert(result.trail.end(), lifted.trail.begin(), lifted.trail.end());
      return result;
    }

    case NonsimplexFeature::Kind::VertexFigure: {
      VertexFigure vf = position_vertex_figure(cone, feature.index);
      WitnessResult sub =
          construct_recursive(extreme_rays(VRep{cone.dim - 1, vf.figure_generators}), opts);
      WitnessResult lifted = lift_vertex_figure(vf.positioned, sub);
      LinearIso back = vf.iso.inverse();
      WitnessResult result;
      result.tuple = transform_tuple(back, lifted.tuple);
      result.certificate = transform_certificate(back, lifted.certificate);
      result.trail = {{RecursionStep::Kind::VertexFigureLift, feature.index, vf.iso}};
      result.trail.insert(result.trail.end(), lifted.trail.begin(), lifted.trail.end());
      return result;
    }
  }
  throw FeatureSearchFailed();
}

}  // namespace

WitnessResult construct_witness(const VRep& v, const SolverOptions& opts) {
  validate(v);
  ConeAnalysis info = analyze(v);
  if (!info.proper) throw DegenerateCone();
  if (info.simplex) throw SimplexCone();

  WitnessResult result = construct_recursive(info.extreme_rays, opts);

  if (!member_ph(info.facets, result.tuple) ||
      !verify_sep(v, result.tuple, result.certificate))
    throw std::logic_error("witness failed its final exact verification");
  return result;
}

}  // namespace conegap

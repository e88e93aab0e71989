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

#include "conegap/section.hpp"

#include <ostream>

namespace conegap {

SectionSpec default_square_section() {
  SectionSpec spec;
  spec.base.entries = {Sym2::diag(Rat(0), Rat(-1)), Sym2::zero(), Sym2::identity()};
  spec.dir_x.entries = {Sym2::diag(Rat(1), Rat(0)), Sym2::zero(), Sym2::zero()};
  spec.dir_y.entries = {Sym2::zero(), Sym2::offdiag(Rat(1)), Sym2::zero()};
  return spec;
}

namespace {

RatVector flatten(const MatTuple& t) {
  RatVector v;
  v.reserve(t.entries.size() * 3);
  for (const auto& e : t.entries) {
    v.push_back(e.a11);
    v.push_back(e.a12);
    v.push_back(e.a22);
  }
  return v;
}

void validate_spec(const VRep& cone, const SectionSpec& spec) {
  if (spec.grid < 2) throw ConeError("section: grid must be >= 2");
  if (spec.base.dim() != cone.dim || spec.dir_x.dim() != cone.dim ||
      spec.dir_y.dim() != cone.dim)
    throw DimensionMismatch();
  if (!(spec.x_lo < spec.x_hi) || !(spec.y_lo < spec.y_hi))
    throw ConeError("section: empty range");
  RatMatrix dirs = RatMatrix::from_rows({flatten(spec.dir_x), flatten(spec.dir_y)});
  if (rank(dirs) != 2) throw ConeError("section: directions must be linearly independent");
}

// Exact decimal when the denominator divides a power of ten, "p/q" otherwise.
std::string coordinate_string(const Rat& r) {
  mpz_class den = r.den();
  int twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return r.str();
  const int k = std::max(twos, fives);
  mpz_class scale = 1;
  for (int i = 0; i < k; ++i) scale *= 10;
  mpz_class scaled = r.num() * (scale / r.den());
  const bool negative = sgn(scaled) < 0;
  mpz_class mag = abs(scaled);
  std::string digits = mag.get_str();
  if (k == 0) return (negative ? "-" : "") + digits;
  while (static_cast<int>(digits.size()) <= k) digits.insert(digits.begin(), '0');
  digits.insert(digits.end() - k, '.');
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  return (negative ? "-" : "") + digits;
}

MatTuple point_tuple(const SectionSpec& spec, const Rat& x, const Rat& y) {
  MatTuple t;
  t.entries.reserve(spec.base.entries.size());
  for (size_t j = 0; j < spec.base.entries.size(); ++j)
    t.entries.push_back(spec.base.entries[j] + x * spec.dir_x.entries[j] +
                        y * spec.dir_y.entries[j]);
  return t;
}

}  // namespace

SectionResult compute_section(const VRep& cone, const SectionSpec& spec,
                              const SolverOptions& opts) {
  validate(cone);
  validate_spec(cone, spec);

  const HRep facets = dual_convert(cone, false);
  const Rat x_step = (spec.x_hi - spec.x_lo) / Rat(spec.grid - 1);
  const Rat y_step = (spec.y_hi - spec.y_lo) / Rat(spec.grid - 1);

  SectionResult result;
  result.spec = spec;
  result.points.reserve(static_cast<size_t>(spec.grid) * spec.grid);

  for (int iy = 0; iy < spec.grid; ++iy) {
    const Rat y = spec.y_lo + Rat(iy) * y_step;
    for (int ix = 0; ix < spec.grid; ++ix) {
      const Rat x = spec.x_lo + Rat(ix) * x_step;
      SectionPoint pt;
      pt.x = x;
      pt.y = y;
      const MatTuple tuple = point_tuple(spec, x, y);
      pt.ph = member_ph(facets, tuple);
      PtDecision decision = decide_and_certify(cone, tuple, opts);
      pt.pt = decision.status;
      pt.decomposition = std::move(decision.decomposition);
      pt.certificate = std::move(decision.certificate);
      result.points.push_back(std::move(pt));
    }
  }
  return result;
}

namespace {

const char* pt_label(FeasStatus s) {
  switch (s) {
    case FeasStatus::Feasible: return "member";
    case FeasStatus::Infeasible: return "nonmember";
    case FeasStatus::Undecided: return "undecided";
  }
  return "undecided";
}

}  // namespace

void write_section_csv(std::ostream& os, const SectionResult& result) {
  os << "x,y,ph,pt\n";
  for (const auto& p : result.points) {
    os << coordinate_string(p.x) << ',' << coordinate_string(p.y) << ','
       << (p.ph ? "member" : "nonmember") << ',' << pt_label(p.pt) << '\n';
  }
}

void write_section_svg(std::ostream& os, const SectionResult& result) {
  const int grid = result.spec.grid;
  const double size = 640.0;
  const double margin = 40.0;
  const double cell = (size - 2 * margin) / grid;

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << " " << size << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (int iy = 0; iy < grid; ++iy) {
    for (int ix = 0; ix < grid; ++ix) {
      const SectionPoint& p = result.points[static_cast<size_t>(iy) * grid + ix];
      const char* fill = nullptr;
      if (p.pt == FeasStatus::Feasible) fill = "#4878cf";        // polytopal region
      else if (p.ph && p.pt == FeasStatus::Infeasible) fill = "#d65454";  // gap region
      else if (p.pt == FeasStatus::Undecided) fill = "#b0b0b0";
      if (!fill) continue;
      const double px = margin + ix * cell;
      const double py = margin + (grid - 1 - iy) * cell;  // y axis points up
      os << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell << "\" height=\""
         << cell << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << (size - 2 * margin)
     << "\" height=\"" << (size - 2 * margin)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n"
     << "</svg>\n";
}

}  // namespace conegap

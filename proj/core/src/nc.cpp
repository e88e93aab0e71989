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

#include "conegap/nc.hpp"

namespace conegap {

Sym2 eval_functional(const RatVector& ell, const MatTuple& a) {
  if (ell.size() != a.entries.size()) throw DimensionMismatch();
  Sym2 s;
  for (size_t j = 0; j < ell.size(); ++j) s += ell[j] * a.entries[j];
  return s;
}

bool member_ph(const HRep& h, const MatTuple& a) {
  if (h.dim != a.dim()) throw DimensionMismatch();
  for (const auto& f : h.functionals)
    if (!psd2_check(eval_functional(f, a))) return false;
  return true;
}

bool verify_pt(const VRep& v, const MatTuple& a, const PtDecomposition& dec) {
  if (v.dim != a.dim() || v.generators.size() != dec.blocks.size())
    throw DimensionMismatch();
  for (const auto& p : dec.blocks)
    if (!psd2_check(p)) return false;
  for (int j = 0; j < v.dim; ++j) {
    Sym2 s;
    for (size_t i = 0; i < dec.blocks.size(); ++i) s += v.generators[i][j] * dec.blocks[i];
    if (!(s == a.entries[j])) return false;
  }
  return true;
}

bool verify_sep(const VRep& v, const MatTuple& a, const SepCertificate& cert) {
  if (v.dim != a.dim() || static_cast<int>(cert.blocks.size()) != v.dim)
    throw DimensionMismatch();
  for (const auto& g : v.generators) {
    Sym2 s;
    for (int j = 0; j < v.dim; ++j) s += g[j] * cert.blocks[j];
    if (!psd2_check(s)) return false;
  }
  Rat objective;
  for (int j = 0; j < v.dim; ++j) objective += trace_inner(cert.blocks[j], a.entries[j]);
  return objective.sign() < 0;
}

MatTuple transform_tuple(const LinearIso& iso, const MatTuple& a) {
  if (iso.t.cols != a.dim()) throw DimensionMismatch();
  MatTuple out;
  out.entries.resize(a.entries.size());
  for (int j = 0; j < iso.t.rows; ++j) {
    Sym2 s;
    for (int k = 0; k < iso.t.cols; ++k) s += iso.t.at(j, k) * a.entries[k];
    out.entries[j] = s;
  }
  return out;
}

SepCertificate transform_certificate(const LinearIso& iso, const SepCertificate& cert) {
  if (iso.t.cols != static_cast<int>(cert.blocks.size())) throw DimensionMismatch();
  SepCertificate out;
  out.blocks.resize(cert.blocks.size());
  for (int j = 0; j < iso.t_inv.cols; ++j) {
    Sym2 s;
    for (int k = 0; k < iso.t_inv.rows; ++k) s += iso.t_inv.at(k, j) * cert.blocks[k];
    out.blocks[j] = s;
  }
  return out;
}

PtDecomposition simplex_decompose(const VRep& v, const MatTuple& a) {
  validate(v);
  if (v.dim != a.dim()) throw DimensionMismatch();
  if (v.generators.size() != static_cast<size_t>(v.dim)) throw NotSimplex();

  RatMatrix gen_cols(v.dim, v.dim);
  for (int j = 0; j < v.dim; ++j)
    for (int i = 0; i < v.dim; ++i) gen_cols.at(i, j) = v.generators[j][i];
  RatMatrix dual_basis;
  try {
    dual_basis = inverse(gen_cols);  // row i is the functional with l_i(v_j) = delta_ij
  } catch (const SingularMatrix&) {
    throw NotSimplex();
  }

  PtDecomposition dec;
  dec.blocks.reserve(v.dim);
  for (int i = 0; i < v.dim; ++i) {
    Sym2 p = eval_functional(dual_basis.row(i), a);
    if (!psd2_check(p)) throw NotMember();
    dec.blocks.push_back(std::move(p));
  }
  return dec;
}

}  // namespace conegap

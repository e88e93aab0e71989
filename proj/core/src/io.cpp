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

#include "conegap/io.hpp"

#include <fstream>

#include <json.hpp>

namespace conegap {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("cannot parse '" + path + "': " + e.what());
  }
  return j;
}

void store_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

Rat rat_from_json(const json& j) {
  try {
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
  throw IoError("rational values must be strings like \"p/q\" or integers");
}

json rat_to_json(const Rat& r) { return r.str(); }

RatVector vector_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw IoError("vector of wrong shape");
  RatVector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rat_from_json(j[i]);
  return v;
}

json vector_to_json(const RatVector& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(rat_to_json(x));
  return j;
}

Sym2 sym2_from_json(const json& j) {
  if (!j.is_object() || !j.contains("a11") || !j.contains("a12") || !j.contains("a22"))
    throw IoError("matrix entries must be objects with a11, a12, a22");
  return {rat_from_json(j["a11"]), rat_from_json(j["a12"]), rat_from_json(j["a22"])};
}

json sym2_to_json(const Sym2& s) {
  return json{{"a11", rat_to_json(s.a11)}, {"a12", rat_to_json(s.a12)},
              {"a22", rat_to_json(s.a22)}};
}

int dim_from_json(const json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw IoError("missing integer field 'dim'");
  const int dim = j["dim"].get<int>();
  if (dim < 1) throw IoError("'dim' must be >= 1");
  return dim;
}

MatTuple tuple_from_json(const json& j) {
  const int dim = dim_from_json(j);
  if (!j.contains("entries") || !j["entries"].is_array() ||
      static_cast<int>(j["entries"].size()) != dim)
    throw IoError("tuple file needs 'entries' with one matrix per dimension");
  MatTuple t;
  for (const auto& e : j["entries"]) t.entries.push_back(sym2_from_json(e));
  return t;
}

json tuple_to_json(int dim, const MatTuple& t) {
  json entries = json::array();
  for (const auto& e : t.entries) entries.push_back(sym2_to_json(e));
  return json{{"dim", dim}, {"entries", entries}};
}

std::vector<Sym2> blocks_from_json(const json& j) {
  if (!j.is_array()) throw IoError("'blocks' must be an array");
  std::vector<Sym2> blocks;
  for (const auto& b : j) blocks.push_back(sym2_from_json(b));
  return blocks;
}

json blocks_to_json(const std::vector<Sym2>& blocks) {
  json j = json::array();
  for (const auto& b : blocks) j.push_back(sym2_to_json(b));
  return j;
}

json iso_to_json(const LinearIso& iso) {
  json t = json::array(), t_inv = json::array();
  for (int r = 0; r < iso.t.rows; ++r) t.push_back(vector_to_json(iso.t.row(r)));
  for (int r = 0; r < iso.t_inv.rows; ++r) t_inv.push_back(vector_to_json(iso.t_inv.row(r)));
  return json{{"t", t}, {"t_inv", t_inv}};
}

LinearIso iso_from_json(const json& j) {
  if (!j.is_object() || !j.contains("t") || !j.contains("t_inv"))
    throw IoError("iso must carry 't' and 't_inv'");
  auto matrix_from = [](const json& rows) {
    if (!rows.is_array() || rows.empty()) throw IoError("iso matrix must be nonempty");
    const int n = static_cast<int>(rows.size());
    RatMatrix m(n, static_cast<int>(rows[0].size()));
    for (int r = 0; r < n; ++r) {
      RatVector row = vector_from_json(rows[r], m.cols);
      for (int c = 0; c < m.cols; ++c) m.at(r, c) = row[c];
    }
    return m;
  };
  return {matrix_from(j["t"]), matrix_from(j["t_inv"])};
}

const char* step_name(RecursionStep::Kind kind) {
  switch (kind) {
    case RecursionStep::Kind::Base3: return "base3";
    case RecursionStep::Kind::FacetLift: return "facet_lift";
    case RecursionStep::Kind::VertexFigureLift: return "vertex_figure_lift";
  }
  return "base3";
}

}  // namespace

ConeFile read_cone_file(const std::string& path) {
  json j = load_json(path);
  ConeFile cone;
  cone.dim = dim_from_json(j);
  if (j.contains("generators")) {
    if (!j["generators"].is_array() || j["generators"].empty())
      throw IoError("'generators' must be a nonempty array");
    VRep v{cone.dim, {}};
    for (const auto& g : j["generators"]) v.generators.push_back(vector_from_json(g, cone.dim));
    try {
      validate(v);
    } catch (const ConeError& e) {
      throw IoError(e.what());
    }
    cone.vrep = std::move(v);
  }
  if (j.contains("functionals")) {
    if (!j["functionals"].is_array()) throw IoError("'functionals' must be an array");
    HRep h{cone.dim, {}};
    for (const auto& f : j["functionals"]) h.functionals.push_back(vector_from_json(f, cone.dim));
    try {
      validate(h);
    } catch (const ConeError& e) {
      throw IoError(e.what());
    }
    cone.hrep = std::move(h);
  }
  if (!cone.vrep && !cone.hrep)
    throw IoError("cone file needs 'generators' or 'functionals'");
  return cone;
}

void write_cone_file(const std::string& path, const ConeFile& cone) {
  json j{{"dim", cone.dim}};
  if (cone.vrep) {
    json gens = json::array();
    for (const auto& g : cone.vrep->generators) gens.push_back(vector_to_json(g));
    j["generators"] = gens;
  }
  if (cone.hrep) {
    json fns = json::array();
    for (const auto& f : cone.hrep->functionals) fns.push_back(vector_to_json(f));
    j["functionals"] = fns;
  }
  store_json(path, j);
}

MatTuple read_tuple_file(const std::string& path) { return tuple_from_json(load_json(path)); }

void write_tuple_file(const std::string& path, const MatTuple& tuple) {
  store_json(path, tuple_to_json(tuple.dim(), tuple));
}

ArtifactFile read_artifact_file(const std::string& path) {
  json j = load_json(path);
  if (!j.contains("kind") || !j["kind"].is_string())
    throw IoError("artifact file needs a 'kind' tag");
  const std::string kind = j["kind"].get<std::string>();
  ArtifactFile art;
  art.dim = dim_from_json(j);
  if (!j.contains("tuple")) throw IoError("artifact file needs the 'tuple' it refers to");
  art.tuple = tuple_from_json(j["tuple"]);

  if (kind == "pt_decomposition") {
    art.kind = ArtifactKind::PtDecomposition;
    if (!j.contains("blocks")) throw IoError("decomposition needs 'blocks'");
    art.decomposition.blocks = blocks_from_json(j["blocks"]);
  } else if (kind == "sep_certificate") {
    art.kind = ArtifactKind::SepCertificate;
    if (!j.contains("blocks")) throw IoError("certificate needs 'blocks'");
    art.certificate.blocks = blocks_from_json(j["blocks"]);
  } else if (kind == "witness") {
    art.kind = ArtifactKind::Witness;
    if (!j.contains("certificate") || !j["certificate"].contains("blocks"))
      throw IoError("witness needs a 'certificate' with 'blocks'");
    art.certificate.blocks = blocks_from_json(j["certificate"]["blocks"]);
    if (j.contains("trail")) {
      for (const auto& s : j["trail"]) {
        RecursionStep step;
        const std::string name = s.value("step", "");
        if (name == "base3") step.kind = RecursionStep::Kind::Base3;
        else if (name == "facet_lift") step.kind = RecursionStep::Kind::FacetLift;
        else if (name == "vertex_figure_lift") step.kind = RecursionStep::Kind::VertexFigureLift;
        else throw IoError("unknown trail step '" + name + "'");
        step.index = s.value("index", 0u);
        if (s.contains("iso")) step.iso = iso_from_json(s["iso"]);
        art.trail.push_back(std::move(step));
      }
    }
  } else {
    throw IoError("unknown artifact kind '" + kind + "'");
  }
  return art;
}

void write_decomposition_file(const std::string& path, int dim, const MatTuple& tuple,
                              const PtDecomposition& dec) {
  store_json(path, json{{"kind", "pt_decomposition"},
                        {"dim", dim},
                        {"tuple", tuple_to_json(dim, tuple)},
                        {"blocks", blocks_to_json(dec.blocks)}});
}

void write_certificate_file(const std::string& path, int dim, const MatTuple& tuple,
                            const SepCertificate& cert) {
  store_json(path, json{{"kind", "sep_certificate"},
                        {"dim", dim},
                        {"tuple", tuple_to_json(dim, tuple)},
                        {"blocks", blocks_to_json(cert.blocks)}});
}

void write_witness_file(const std::string& path, int dim, const WitnessResult& witness) {
  json trail = json::array();
  for (const auto& step : witness.trail) {
    trail.push_back(json{{"step", step_name(step.kind)},
                         {"index", step.index},
                         {"iso", iso_to_json(step.iso)}});
  }
  store_json(path, json{{"kind", "witness"},
                        {"dim", dim},
                        {"tuple", tuple_to_json(dim, witness.tuple)},
                        {"certificate",
                         json{{"kind", "sep_certificate"},
                              {"dim", dim},
                              {"blocks", blocks_to_json(witness.certificate.blocks)}}},
                        {"trail", trail}});
}

}  // namespace conegap

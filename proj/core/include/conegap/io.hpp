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

#include <optional>
#include <string>

#include "conegap/witness.hpp"

namespace conegap {

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Cone document: {"dim": d, "generators": [[rat,...],...], "functionals":
// [[rat,...],...]} with at least one of the two lists present. Rationals are
// strings "p/q" (or "p" when q = 1).
struct ConeFile {
  int dim = 0;
  std::optional<VRep> vrep;
  std::optional<HRep> hrep;
};

ConeFile read_cone_file(const std::string& path);
void write_cone_file(const std::string& path, const ConeFile& cone);

// Tuple document: {"dim": d, "entries": [{"a11":...,"a12":...,"a22":...},...]}.
MatTuple read_tuple_file(const std::string& path);
void write_tuple_file(const std::string& path, const MatTuple& tuple);

// Proof artifacts carry the tuple they talk about so `verify` is
// self-contained: decomposition blocks align with the cone file's generator
// list, certificate blocks with the coordinates.
enum class ArtifactKind { PtDecomposition, SepCertificate, Witness };

struct ArtifactFile {
  ArtifactKind kind = ArtifactKind::Witness;
  int dim = 0;
  MatTuple tuple;
  PtDecomposition decomposition;   // kind == PtDecomposition
  SepCertificate certificate;      // kind == SepCertificate or Witness
  std::vector<RecursionStep> trail;  // kind == Witness
};

ArtifactFile read_artifact_file(const std::string& path);
void write_decomposition_file(const std::string& path, int dim, const MatTuple& tuple,
                              const PtDecomposition& dec);
void write_certificate_file(const std::string& path, int dim, const MatTuple& tuple,
                            const SepCertificate& cert);
void write_witness_file(const std::string& path, int dim, const WitnessResult& witness);

}  // namespace conegap

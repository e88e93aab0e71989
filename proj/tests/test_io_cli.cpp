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

#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "conegap/io.hpp"
#include "oracles.hpp"

using namespace conegap;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CONEGAP_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[512];
  while (fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("conegap_tests_" + std::to_string(getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string write_square_cone() {
  const fs::path p = scratch_dir() / "square.json";
  ConeFile cone;
  cone.dim = 3;
  cone.vrep = oracles::square_cone();
  write_cone_file(p.string(), cone);
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE_BEGIN("io_cli");

TEST_CASE("cone files round-trip") {
  const fs::path p = scratch_dir() / "roundtrip_cone.json";
  ConeFile cone;
  cone.dim = 3;
  cone.vrep = oracles::kgon_cone(5);
  cone.hrep = dual_convert(*cone.vrep);
  write_cone_file(p.string(), cone);
  const ConeFile back = read_cone_file(p.string());
  CHECK(back.dim == 3);
  REQUIRE(back.vrep.has_value());
  REQUIRE(back.hrep.has_value());
  CHECK(back.vrep->generators == cone.vrep->generators);
  CHECK(back.hrep->functionals == cone.hrep->functionals);
}

TEST_CASE("tuple and artifact files round-trip") {
  oracles::Rng rng(91);
  const fs::path tp = scratch_dir() / "tuple.json";
  const MatTuple tuple = oracles::random_tuple(rng, 3, 5, 7);
  write_tuple_file(tp.string(), tuple);
  CHECK(read_tuple_file(tp.string()) == tuple);

  const WitnessResult w = construct_witness(oracles::square_cone());
  const fs::path wp = scratch_dir() / "witness.json";
  write_witness_file(wp.string(), 3, w);
  const ArtifactFile art = read_artifact_file(wp.string());
  CHECK(art.kind == ArtifactKind::Witness);
  CHECK(art.tuple == w.tuple);
  CHECK(art.certificate.blocks == w.certificate.blocks);
  REQUIRE(art.trail.size() == 1);
  CHECK(art.trail[0].iso.t == w.trail[0].iso.t);

  const fs::path cp = scratch_dir() / "cert.json";
  write_certificate_file(cp.string(), 3, w.tuple, w.certificate);
  const ArtifactFile cert = read_artifact_file(cp.string());
  CHECK(cert.kind == ArtifactKind::SepCertificate);
  CHECK(cert.certificate.blocks == w.certificate.blocks);
}

TEST_CASE("malformed files raise IoError") {
  const fs::path p = scratch_dir() / "broken.json";
  std::ofstream(p) << "{\"dim\": 3}";
  CHECK_THROWS_AS(read_cone_file(p.string()), IoError);
  std::ofstream(p) << "{\"dim\": 0, \"generators\": [[\"1\"]]}";
  CHECK_THROWS_AS(read_cone_file(p.string()), IoError);
  std::ofstream(p) << "not json";
  CHECK_THROWS_AS(read_cone_file(p.string()), IoError);
  CHECK_THROWS_AS(read_cone_file((scratch_dir() / "missing.json").string()), IoError);
}

TEST_CASE("cli: analyze") {
  const RunResult r = run_cli("analyze " + write_square_cone());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "dim=3 rays=4 facets=4 proper=true simplex=false\n");

  const RunResult bad = run_cli("analyze " + (scratch_dir() / "missing.json").string());
  CHECK(bad.exit_code == 2);
}

TEST_CASE("cli: analyze flags an improper cone") {
  const fs::path p = scratch_dir() / "line.json";
  ConeFile cone;
  cone.dim = 2;
  cone.vrep = VRep{2, {{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}}};
  write_cone_file(p.string(), cone);
  const RunResult r = run_cli("analyze " + p.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("proper=false") != std::string::npos);
}

TEST_CASE("cli: convert writes both representations") {
  const fs::path out = scratch_dir() / "square_both.json";
  const RunResult r = run_cli("convert " + write_square_cone() + " -o " + out.string());
  CHECK(r.exit_code == 0);
  const ConeFile cone = read_cone_file(out.string());
  REQUIRE(cone.hrep.has_value());
  CHECK(cone.hrep->functionals.size() == 4);
}

TEST_CASE("cli: witness, check and verify round-trip on the square cone") {
  const std::string cone = write_square_cone();
  const fs::path wpath = scratch_dir() / "square_witness.json";
  const RunResult w = run_cli("witness " + cone + " -o " + wpath.string());
  CHECK(w.exit_code == 0);

  const RunResult v = run_cli("verify " + cone + " " + wpath.string());
  CHECK(v.exit_code == 0);

  // The emitted tuple doubles as a check input: ph member, pt non-member.
  const ArtifactFile art = read_artifact_file(wpath.string());
  const fs::path tpath = scratch_dir() / "square_tuple.json";
  write_tuple_file(tpath.string(), art.tuple);
  CHECK(run_cli("check ph " + cone + " " + tpath.string()).exit_code == 0);

  const fs::path cpath = scratch_dir() / "square_cert.json";
  const RunResult pt = run_cli("check pt " + cone + " " + tpath.string() + " -o " +
                               cpath.string());
  CHECK(pt.exit_code == 1);
  CHECK(pt.out == "nonmember\n");
  CHECK(run_cli("verify " + cone + " " + cpath.string()).exit_code == 0);
}

TEST_CASE("cli: witness on a simplex cone exits 3") {
  const fs::path p = scratch_dir() / "orthant.json";
  ConeFile cone;
  cone.dim = 3;
  cone.vrep = oracles::orthant(3);
  write_cone_file(p.string(), cone);
  const RunResult r = run_cli("witness " + p.string() + " -o /dev/null");
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("simplex") != std::string::npos);
}

TEST_CASE("cli: verify flags a tampered certificate") {
  const std::string cone = write_square_cone();
  const WitnessResult w = construct_witness(oracles::square_cone());
  WitnessResult tampered = w;
  tampered.certificate.blocks[0].a12 = -tampered.certificate.blocks[0].a12 + Rat(1, 3);
  const fs::path p = scratch_dir() / "tampered.json";
  write_witness_file(p.string(), 3, tampered);
  const RunResult r = run_cli("verify " + cone + " " + p.string());
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("verify_sep") != std::string::npos);
}

TEST_CASE("cli: verify rejects a decomposition with a non-PSD block") {
  const std::string cone = write_square_cone();
  MatTuple tuple;
  tuple.entries = {Sym2::zero(), Sym2::zero(), Rat(4) * Sym2::identity()};
  PtDecomposition dec{{Sym2::identity(), Sym2::identity(), Sym2::identity(),
                       Sym2::identity()}};
  // Break one block: the sum still matches, PSD does not.
  dec.blocks[0] = Sym2::diag(Rat(2), Rat(-1));
  dec.blocks[3] = Sym2::diag(Rat(0), Rat(3));
  const fs::path p = scratch_dir() / "bad_dec.json";
  write_decomposition_file(p.string(), 3, tuple, dec);
  const RunResult r = run_cli("verify " + cone + " " + p.string());
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("verify_pt") != std::string::npos);
}

TEST_CASE("cli: section produces deterministic CSV and well-formed SVG") {
  const std::string cone = write_square_cone();
  const fs::path c1 = scratch_dir() / "sec1.csv";
  const fs::path c2 = scratch_dir() / "sec2.csv";
  CHECK(run_cli("section " + cone + " --grid 7 -o " + c1.string()).exit_code == 0);
  CHECK(run_cli("section " + cone + " --grid 7 -o " + c2.string()).exit_code == 0);
  const std::string body = slurp(c1.string());
  CHECK(body == slurp(c2.string()));
  CHECK(body.substr(0, 12) == "x,y,ph,pt\n-1");
  CHECK(std::count(body.begin(), body.end(), '\n') == 1 + 49);

  const fs::path svg = scratch_dir() / "sec.svg";
  CHECK(run_cli("section " + cone + " --grid 7 --format svg -o " + svg.string()).exit_code ==
        0);
  CHECK(slurp(svg.string()).find("<svg") != std::string::npos);
}

TEST_CASE("cli: check reports undecided nowhere on a coarse interior grid") {
  // Exit code 5 is reserved for undecided; the stock points must decide.
  const std::string cone = write_square_cone();
  const fs::path tpath = scratch_dir() / "interior.json";
  MatTuple center;
  center.entries = {Sym2::diag(Rat(0), Rat(-1)), Sym2::zero(), Sym2::identity()};
  write_tuple_file(tpath.string(), center);
  const RunResult r = run_cli("check pt " + cone + " " + tpath.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "member\n");
}

TEST_CASE("cli: dimension mismatch exits 2") {
  const std::string cone = write_square_cone();
  const fs::path tpath = scratch_dir() / "wrongdim.json";
  MatTuple t;
  t.entries = {Sym2::identity(), Sym2::identity()};
  write_tuple_file(tpath.string(), t);
  CHECK(run_cli("check ph " + cone + " " + tpath.string()).exit_code == 2);
}

TEST_SUITE_END();

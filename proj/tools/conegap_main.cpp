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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "conegap/io.hpp"
#include "conegap/section.hpp"

namespace {

using namespace conegap;

// Exit codes shared by every subcommand.
constexpr int kOk = 0;           // also: member / verification passed
constexpr int kNonMember = 1;    // also: verification failed
constexpr int kInputError = 2;
constexpr int kSimplexCone = 3;
constexpr int kCertificationFailed = 4;
constexpr int kUndecided = 5;

struct GlobalOptions {
  double tolerance = 1e-9;
  long iter_max = 200000;
  long max_den = 1000000000;
  long seed = 0;  // reserved for randomized test harnesses; commands are deterministic
};

SolverOptions solver_options(const GlobalOptions& g) {
  SolverOptions opts;
  opts.tolerance = g.tolerance;
  opts.iter_max = g.iter_max;
  opts.max_den_schedule.clear();
  for (long den : {1000L, 1000000L, 1000000000L})
    if (den < g.max_den) opts.max_den_schedule.push_back(den);
  opts.max_den_schedule.push_back(g.max_den);
  return opts;
}

// Accepts "p/q", integers, and plain decimals like "-1.2" (parsed exactly).
Rat parse_coordinate(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rat::parse(text);
  std::string digits = text;
  digits.erase(digits.begin() + static_cast<long>(dot));
  const size_t frac_digits = text.size() - dot - 1;
  if (frac_digits == 0 || digits.find_first_of("./") != std::string::npos)
    throw IoError("cannot parse coordinate '" + text + "'");
  mpz_class scale = 1;
  for (size_t i = 0; i < frac_digits; ++i) scale *= 10;
  Rat num = Rat::parse(digits);
  return num / Rat(scale);
}

VRep require_generators(const ConeFile& cone) {
  if (cone.vrep) return *cone.vrep;
  return dual_convert(*cone.hrep, false);
}

HRep require_functionals(const ConeFile& cone) {
  if (cone.hrep) return *cone.hrep;
  return dual_convert(*cone.vrep, false);
}

int cmd_analyze(const std::string& cone_path) {
  ConeFile cone = read_cone_file(cone_path);
  ConeAnalysis info = analyze(require_generators(cone));
  std::cout << "dim=" << cone.dim << " rays=" << info.extreme_rays.generators.size()
            << " facets=" << info.facets.functionals.size() << " proper="
            << (info.proper ? "true" : "false") << " simplex="
            << (info.simplex ? "true" : "false") << "\n";
  return kOk;
}

int cmd_convert(const std::string& cone_path, const std::string& out_path, bool strict) {
  ConeFile cone = read_cone_file(cone_path);
  if (cone.vrep) {
    cone.hrep = dual_convert(*cone.vrep, strict);
  } else {
    cone.vrep = dual_convert(*cone.hrep, strict);
  }
  if (out_path.empty()) {
    std::cout << "dim=" << cone.dim << " generators=" << cone.vrep->generators.size()
              << " functionals=" << cone.hrep->functionals.size() << "\n";
    for (const auto& g : cone.vrep->generators) {
      std::cout << "g:";
      for (const auto& x : g) std::cout << ' ' << x;
      std::cout << "\n";
    }
    for (const auto& f : cone.hrep->functionals) {
      std::cout << "f:";
      for (const auto& x : f) std::cout << ' ' << x;
      std::cout << "\n";
    }
  } else {
    write_cone_file(out_path, cone);
    std::cout << "wrote " << out_path << "\n";
  }
  return kOk;
}

int cmd_witness(const std::string& cone_path, const std::string& out_path,
                const GlobalOptions& g) {
  ConeFile cone = read_cone_file(cone_path);
  VRep v = require_generators(cone);
  WitnessResult witness;
  try {
    witness = construct_witness(v, solver_options(g));
  } catch (const SimplexCone& e) {
    std::cout << e.what() << "\n";
    return kSimplexCone;
  }
  write_witness_file(out_path, cone.dim, witness);
  std::cout << "wrote " << out_path << " (recursion depth " << witness.trail.size() << ")\n";
  return kOk;
}

int cmd_check(const std::string& mode, const std::string& cone_path,
              const std::string& tuple_path, const std::string& out_path,
              const GlobalOptions& g) {
  ConeFile cone = read_cone_file(cone_path);
  MatTuple tuple = read_tuple_file(tuple_path);
  if (tuple.dim() != cone.dim) throw DimensionMismatch();

  if (mode == "ph") {
    const bool member = member_ph(require_functionals(cone), tuple);
    std::cout << (member ? "member" : "nonmember") << "\n";
    return member ? kOk : kNonMember;
  }

  VRep v = require_generators(cone);
  PtDecision decision = decide_and_certify(v, tuple, solver_options(g));
  switch (decision.status) {
    case FeasStatus::Feasible:
      std::cout << "member\n";
      if (!out_path.empty())
        write_decomposition_file(out_path, cone.dim, tuple, *decision.decomposition);
      return kOk;
    case FeasStatus::Infeasible:
      std::cout << "nonmember\n";
      if (!out_path.empty())
        write_certificate_file(out_path, cone.dim, tuple, *decision.certificate);
      return kNonMember;
    case FeasStatus::Undecided:
      break;
  }
  std::cout << "undecided (cycles=" << decision.outcome.cycles
            << " residual=" << decision.outcome.residual
            << " margin=" << decision.outcome.margin << ")\n";
  return kUndecided;
}

int cmd_verify(const std::string& cone_path, const std::string& artifact_path) {
  ConeFile cone = read_cone_file(cone_path);
  ArtifactFile art = read_artifact_file(artifact_path);
  if (art.dim != cone.dim) throw DimensionMismatch();

  switch (art.kind) {
    case ArtifactKind::PtDecomposition: {
      if (!cone.vrep)
        throw IoError("decomposition blocks align with generators; cone file has none");
      if (!verify_pt(*cone.vrep, art.tuple, art.decomposition)) {
        std::cout << "FAIL: verify_pt (blocks not PSD or sum does not match the tuple)\n";
        return kNonMember;
      }
      std::cout << "pt_decomposition: exact check passed\n";
      return kOk;
    }
    case ArtifactKind::SepCertificate: {
      VRep v = require_generators(cone);
      if (!verify_sep(v, art.tuple, art.certificate)) {
        std::cout << "FAIL: verify_sep (constraint not PSD or objective not negative)\n";
        return kNonMember;
      }
      std::cout << "sep_certificate: exact check passed\n";
      return kOk;
    }
    case ArtifactKind::Witness: {
      VRep v = require_generators(cone);
      HRep h = require_functionals(cone);
      if (!member_ph(h, art.tuple)) {
        std::cout << "FAIL: member_ph (a facet functional evaluates non-PSD)\n";
        return kNonMember;
      }
      if (!verify_sep(v, art.tuple, art.certificate)) {
        std::cout << "FAIL: verify_sep (constraint not PSD or objective not negative)\n";
        return kNonMember;
      }
      std::cout << "witness: member_ph and verify_sep passed exactly\n";
      return kOk;
    }
  }
  throw IoError("unreachable artifact kind");
}

int cmd_section(const std::string& cone_path, const std::string& out_path,
                const std::string& format, int grid, const std::string& x_lo,
                const std::string& x_hi, const std::string& y_lo, const std::string& y_hi,
                const GlobalOptions& g) {
  ConeFile cone = read_cone_file(cone_path);
  VRep v = require_generators(cone);
  if (cone.dim != 3)
    throw IoError("the default section plane lives over 3-dimensional cones");

  SectionSpec spec = default_square_section();
  spec.grid = grid;
  spec.x_lo = parse_coordinate(x_lo);
  spec.x_hi = parse_coordinate(x_hi);
  spec.y_lo = parse_coordinate(y_lo);
  spec.y_hi = parse_coordinate(y_hi);

  SectionResult result = compute_section(v, spec, solver_options(g));

  std::ostringstream body;
  if (format == "svg") {
    write_section_svg(body, result);
  } else {
    write_section_csv(body, result);
  }
  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write '" + out_path + "'");
    out << body.str();
    std::cout << "wrote " << out_path << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact level-2 membership, witnesses and certificates for the two "
               "non-commutative extensions of polyhedral cones"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--tolerance", global.tolerance, "numerical solver tolerance")
      ->capture_default_str();
  app.add_option("--iter-max", global.iter_max, "solver iteration budget")
      ->capture_default_str();
  app.add_option("--max-den", global.max_den,
                 "largest denominator bound for certificate rounding")
      ->capture_default_str();
  app.add_option("--seed", global.seed, "seed for randomized test harnesses (unused here)");

  std::string cone_path, tuple_path, artifact_path, out_path, mode;
  bool strict = false;
  std::string format = "csv";
  int grid = 81;
  std::string x_lo = "-1.2", x_hi = "1.2", y_lo = "-1.2", y_hi = "1.2";

  auto* analyze_cmd = app.add_subcommand("analyze", "report rays, facets, properness");
  analyze_cmd->add_option("cone", cone_path, "cone file")->required();

  auto* convert_cmd = app.add_subcommand("convert", "Minkowski-Weyl conversion");
  convert_cmd->add_option("cone", cone_path, "cone file")->required();
  convert_cmd->add_option("-o,--out", out_path, "output cone file");
  convert_cmd->add_flag("--strict", strict, "reject degenerate cones");

  auto* witness_cmd =
      app.add_subcommand("witness", "construct a verified tuple separating the two extensions");
  witness_cmd->add_option("cone", cone_path, "cone file")->required();
  witness_cmd->add_option("-o,--out", out_path, "output witness file")->required();

  auto* check_cmd = app.add_subcommand("check", "membership of a tuple (mode: ph | pt)");
  check_cmd->add_option("mode", mode, "ph or pt")->required()
      ->check(CLI::IsMember({"ph", "pt"}));
  check_cmd->add_option("cone", cone_path, "cone file")->required();
  check_cmd->add_option("tuple", tuple_path, "tuple file")->required();
  check_cmd->add_option("-o,--out", out_path, "write the certificate / decomposition here");

  auto* verify_cmd = app.add_subcommand("verify", "re-run the exact checks on an artifact");
  verify_cmd->add_option("cone", cone_path, "cone file")->required();
  verify_cmd->add_option("artifact", artifact_path, "witness / certificate / decomposition file")
      ->required();

  auto* section_cmd =
      app.add_subcommand("section", "classify an affine 2-plane of tuple space on a grid");
  section_cmd->add_option("cone", cone_path, "cone file")->required();
  section_cmd->add_option("-o,--out", out_path, "output file (stdout otherwise)");
  section_cmd->add_option("--format", format, "csv or svg")
      ->check(CLI::IsMember({"csv", "svg"}))->capture_default_str();
  section_cmd->add_option("--grid", grid, "grid points per axis")->capture_default_str();
  section_cmd->add_option("--x-lo", x_lo)->capture_default_str();
  section_cmd->add_option("--x-hi", x_hi)->capture_default_str();
  section_cmd->add_option("--y-lo", y_lo)->capture_default_str();
  section_cmd->add_option("--y-hi", y_hi)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze_cmd)) return cmd_analyze(cone_path);
    if (app.got_subcommand(convert_cmd)) return cmd_convert(cone_path, out_path, strict);
    if (app.got_subcommand(witness_cmd)) return cmd_witness(cone_path, out_path, global);
    if (app.got_subcommand(check_cmd))
      return cmd_check(mode, cone_path, tuple_path, out_path, global);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(cone_path, artifact_path);
    if (app.got_subcommand(section_cmd))
      return cmd_section(cone_path, out_path, format, grid, x_lo, x_hi, y_lo, y_hi, global);
  } catch (const CertificationFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCertificationFailed;
  } catch (const SimplexCone& e) {
    std::cout << e.what() << "\n";
    return kSimplexCone;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ConeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

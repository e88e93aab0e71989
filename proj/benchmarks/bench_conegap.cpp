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

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "conegap/solver.hpp"
#include "conegap/witness.hpp"

namespace {

using namespace conegap;

VRep square_cone() {
  return VRep{3,
              {{Rat(1), Rat(-1), Rat(1)},
               {Rat(-1), Rat(-1), Rat(1)},
               {Rat(-1), Rat(1), Rat(1)},
               {Rat(1), Rat(1), Rat(1)}}};
}

VRep kgon_cone(int k) {
  VRep v{3, {}};
  for (int i = 0; i < k; ++i) {
    const double angle = 2.0 * M_PI * i / k;
    v.generators.push_back(
        {rationalize(std::cos(angle), 1000), rationalize(std::sin(angle), 1000), Rat(1)});
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

void BM_Psd2Check(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<Sym2> samples;
  for (int i = 0; i < 256; ++i) {
    auto r = [&] { return Rat(static_cast<long>(rng() % 41) - 20, 1 + rng() % 7); };
    samples.push_back({r(), r(), r()});
  }
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psd2_check(samples[i++ & 255]));
  }
}
BENCHMARK(BM_Psd2Check);

void BM_Rationalize(benchmark::State& state) {
  const long max_den = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rationalize(3.14159265358979, max_den));
  }
}
BENCHMARK(BM_Rationalize)->Arg(1000)->Arg(1000000000);

void BM_SolveRational(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  RatMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.at(r, c) = Rat(static_cast<long>(rng() % 19) - 9);
  RatVector b(n);
  for (auto& e : b) e = Rat(static_cast<long>(rng() % 19) - 9, 1 + rng() % 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_rational(m, b));
  }
}
BENCHMARK(BM_SolveRational)->Arg(4)->Arg(8)->Arg(16);

void BM_DualConvertKgon(benchmark::State& state) {
  const VRep v = kgon_cone(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dual_convert(v));
  }
}
BENCHMARK(BM_DualConvertKgon)->Arg(4)->Arg(8)->Arg(16);

void BM_DualConvertCube4(benchmark::State& state) {
  const VRep v = cube_cone_d4();
  for (auto _ : state) {
    benchmark::DoNotOptimize(dual_convert(v));
  }
}
BENCHMARK(BM_DualConvertCube4);

void BM_MemberPh(benchmark::State& state) {
  const HRep h = dual_convert(square_cone());
  const MatTuple a = base_witness();
  for (auto _ : state) {
    benchmark::DoNotOptimize(member_ph(h, a));
  }
}
BENCHMARK(BM_MemberPh);

void BM_DecideAndCertify_Interior(benchmark::State& state) {
  const VRep v = square_cone();
  MatTuple t;
  t.entries = {Sym2::diag(Rat(1, 2), Rat(-1)), Sym2::offdiag(Rat(1, 4)), Sym2::identity()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide_and_certify(v, t));
  }
}
BENCHMARK(BM_DecideAndCertify_Interior)->Unit(benchmark::kMicrosecond);

void BM_DecideAndCertify_Witness(benchmark::State& state) {
  const VRep v = square_cone();
  const MatTuple t = base_witness();
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide_and_certify(v, t));
  }
}
BENCHMARK(BM_DecideAndCertify_Witness)->Unit(benchmark::kMicrosecond);

void BM_ConstructWitness_Square(benchmark::State& state) {
  const VRep v = square_cone();
  for (auto _ : state) {
    benchmark::DoNotOptimize(construct_witness(v));
  }
}
BENCHMARK(BM_ConstructWitness_Square)->Unit(benchmark::kMicrosecond);

void BM_ConstructWitness_Cube4(benchmark::State& state) {
  const VRep v = cube_cone_d4();
  for (auto _ : state) {
    benchmark::DoNotOptimize(construct_witness(v));
  }
}
BENCHMARK(BM_ConstructWitness_Cube4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

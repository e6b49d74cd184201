// Copyright 2026 The loccdetect developers
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

#include "locc/bellspace.hpp"
#include "locc/discretize.hpp"
#include "locc/families.hpp"
#include "locc/groups.hpp"
#include "locc/hypotests.hpp"
#include "locc/protosim.hpp"
#include "locc/verify.hpp"

using namespace locc;

namespace {

void BM_HaarSu2(benchmark::State& state) {
  CounterRng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(groups::haar_su2(rng));
}
BENCHMARK(BM_HaarSu2);

void BM_HaarSu4(benchmark::State& state) {
  CounterRng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(groups::haar_su(4, rng));
}
BENCHMARK(BM_HaarSu4);

void BM_BuildTV(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tests::build_tV());
}
BENCHMARK(BM_BuildTV);

void BM_OctahedralTwirl(benchmark::State& state) {
  Matrix corr = Matrix::Zero(4, 4);
  corr(0, 0) = 1;
  corr(3, 3) = 1;
  const Operator in(single_pair(2), corr);
  const auto action = groups::Action::u_pair(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        twirl(in, action, {groups::TwirlScheme::Octahedral}));
}
BENCHMARK(BM_OctahedralTwirl);

void BM_ExactTwirl16(benchmark::State& state) {
  CounterRng rng(2);
  Matrix raw(16, 16);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      raw(i, j) = Complex(rng.gaussian(), rng.gaussian());
  raw = (0.5 * (raw + raw.adjoint())).eval();
  const Operator in(sample_pairs(2, 2), raw);
  const auto action = groups::Action::v();
  // warm the commutant cache so the loop measures the projection only
  benchmark::DoNotOptimize(twirl(in, action, {groups::TwirlScheme::Exact}));
  for (auto _ : state)
    benchmark::DoNotOptimize(twirl(in, action, {groups::TwirlScheme::Exact}));
}
BENCHMARK(BM_ExactTwirl16);

void BM_BetaDirectTV(benchmark::State& state) {
  CounterRng rng(3);
  const auto tv = tests::build_tV();
  const DensityMatrix sigma = families::random_single_pair(rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(tests::error_report(tv, sigma));
}
BENCHMARK(BM_BetaDirectTV);

void BM_SubspaceTraces(benchmark::State& state) {
  CounterRng rng(4);
  const DensityMatrix sigma = families::random_single_pair(rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(bell::subspace_traces(sigma));
}
BENCHMARK(BM_SubspaceTraces);

void BM_SimulateSixState(benchmark::State& state) {
  const auto real = discretize::discretize_tu();
  const DensityMatrix sigma = families::isotropic(0.8);
  const long shots = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(protosim::simulate(real, sigma, shots, 7));
  state.SetItemsProcessed(state.iterations() * shots);
}
BENCHMARK(BM_SimulateSixState)->Arg(1000)->Arg(100000);

void BM_SimulateSwapping(benchmark::State& state) {
  const DensityMatrix sigma = families::isotropic(0.8);
  const long shots = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(protosim::simulate_swapping(sigma, shots, 7));
  state.SetItemsProcessed(state.iterations() * shots);
}
BENCHMARK(BM_SimulateSwapping)->Arg(1000)->Arg(10000);

void BM_WeightLp(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify::weight_lp());
}
BENCHMARK(BM_WeightLp);

}  // namespace

BENCHMARK_MAIN();

// bench_main.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an 'AS IS' BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "ntwfsm/ntwfsm.hpp"

namespace {

using namespace ntwfsm;

Machine dense_machine(int states, int arity, unsigned seed) {
  std::mt19937 rng(seed);
  const std::vector<Symbol> alphabet = {"a", "b"};
  MachineBuilder b(arity, SemiringId::kTropical);
  b.add_states(states);
  b.set_initial(0, 0);
  b.set_final(static_cast<StateId>(states - 1), 0);
  for (int q = 0; q < states; ++q) {
    for (int d = 0; d < 3; ++d) {
      LabelTuple label(arity);
      for (int t = 0; t < arity; ++t) {
        if (rng() % 3 != 0) label[t] = alphabet[rng() % 2];
      }
      b.add_transition(static_cast<StateId>(q),
                       static_cast<StateId>(rng() % states),
                       static_cast<Weight>(rng() % 5), std::move(label));
    }
  }
  return b.build();
}

void BM_EnumerateTuples(benchmark::State& state) {
  Machine m = dense_machine(5, 2, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_tuples(m, 8, 10000000));
  }
}
BENCHMARK(BM_EnumerateTuples);

void BM_AutoIntersect(benchmark::State& state) {
  Machine m = dense_machine(static_cast<int>(state.range(0)), 2, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(auto_intersect(m, 1, 2));
  }
}
BENCHMARK(BM_AutoIntersect)->Arg(4)->Arg(8)->Arg(16);

void BM_JoinDirect(benchmark::State& state) {
  Machine a = dense_machine(6, 2, 13);
  Machine b = dense_machine(6, 2, 17);
  const JoinSpec spec{{{2, 1}}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(join_direct(a, spec, b));
  }
}
BENCHMARK(BM_JoinDirect);

void BM_Align(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(align({"kitten", "sitting"}));
  }
}
BENCHMARK(BM_Align);

void BM_ParseSerialize(benchmark::State& state) {
  const std::string text = serialize(dense_machine(32, 3, 19));
  for (auto _ : state) {
    benchmark::DoNotOptimize(serialize(parse(text)));
  }
}
BENCHMARK(BM_ParseSerialize);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "kolmo/bdm.hpp"
#include "kolmo/distribution.hpp"
#include "kolmo/enumerate.hpp"
#include "kolmo/machine.hpp"
#include "kolmo/randomness.hpp"

namespace {

const kolmo::MachineSpec kTwoState{2, 2};

kolmo::FrequencyTable table22() {
  static const kolmo::FrequencyTable table =
      kolmo::enumerate_outputs({.space = kTwoState, .cutoff = 1000});
  return table;
}

void BM_RunFromBlank(benchmark::State& state) {
  // The slowest (2,2) halter: 6 steps, output 1111.
  using kolmo::Move;
  const kolmo::Machine machine{kTwoState,
                               {{1, Move::Right, 2},
                                {1, Move::Left, 2},
                                {1, Move::Left, 1},
                                {1, Move::Right, kolmo::kHaltState}}};
  kolmo::BlankTapeRunner runner;
  std::string output;
  std::uint32_t steps = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(runner.run_into(machine, 1000, output, steps));
  }
}
BENCHMARK(BM_RunFromBlank);

void BM_DecodeIndex(benchmark::State& state) {
  const kolmo::MachineSpec spec{3, 2};
  std::uint64_t index = 0;
  kolmo::Machine machine{spec, std::vector<kolmo::Transition>(6)};
  for (auto _ : state) {
    machine = kolmo::decode_index(spec, index);
    benchmark::DoNotOptimize(machine);
    index = (index + 2654435761u) % 16777216u;
  }
}
BENCHMARK(BM_DecodeIndex);

void BM_EnumerateTwoState(benchmark::State& state) {
  for (auto _ : state) {
    auto table = kolmo::enumerate_outputs({.space = kTwoState, .cutoff = 1000});
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_EnumerateTwoState)->Unit(benchmark::kMillisecond);

void BM_EnumerateTwoStateReduced(benchmark::State& state) {
  for (auto _ : state) {
    auto table = kolmo::enumerate_outputs(
        {.space = kTwoState, .cutoff = 1000, .symmetry_reduction = true});
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_EnumerateTwoStateReduced)->Unit(benchmark::kMillisecond);

void BM_IndexPermutation(benchmark::State& state) {
  const kolmo::IndexPermutation permutation(16777216, 7);
  std::uint64_t position = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(permutation(position));
    position = (position + 1) % 16777216;
  }
}
BENCHMARK(BM_IndexPermutation);

void BM_Bdm1d(benchmark::State& state) {
  const kolmo::ComplexityTable table = kolmo::to_complexity(table22());
  std::mt19937_64 rng(11);
  std::string s;
  for (int i = 0; i < 4096; ++i) s.push_back(rng() & 1 ? '1' : '0');
  const kolmo::DecompositionSpec spec{.block_size = 4, .overlap = 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kolmo::bdm_1d(s, table, spec));
  }
}
BENCHMARK(BM_Bdm1d);

void BM_PosteriorRandom(benchmark::State& state) {
  const kolmo::ComplexityTable table = kolmo::to_complexity(table22());
  for (auto _ : state) {
    benchmark::DoNotOptimize(kolmo::posterior_random("0110", table, 0.5));
  }
}
BENCHMARK(BM_PosteriorRandom);

}  // namespace

BENCHMARK_MAIN();

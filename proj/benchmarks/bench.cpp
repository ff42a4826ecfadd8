// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "relent/experiments.hpp"

namespace {

using namespace relent;

void BM_SymmetrizeAmplitudes(benchmark::State& state) {
  const int num_particles = static_cast<int>(state.range(0));
  const int local_dim = 4;
  std::mt19937_64 rng(1);
  const ComplexVector input =
      random_unit_vector(static_cast<int>(checked_power(local_dim, num_particles)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(symmetrize_amplitudes(
        input, local_dim, num_particles, Statistics::Boson));
  }
}
BENCHMARK(BM_SymmetrizeAmplitudes)->DenseRange(2, 5);

void BM_HaarUnitary(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(haar_unitary(dim, rng));
  }
}
BENCHMARK(BM_HaarUnitary)->Arg(4)->Arg(6)->Arg(16);

void BM_MeasurableSpaceConstruction(benchmark::State& state) {
  const MeasurementSetup setup = rotated_fermion_setup(0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MeasurableSpace(setup));
  }
}
BENCHMARK(BM_MeasurableSpaceConstruction);

void BM_BosonSpaceConstruction(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const ComplexMatrix u = haar_unitary(6, rng);
  const std::vector<ComplexMatrix> spans = {ComplexMatrix(u.leftCols(3)),
                                            ComplexMatrix(u.rightCols(3))};
  const MeasurementSetup setup = validate_setup(
      validate_partition({{0}, {1}}, 2),
      validate_orthogonal_structure(spans, 6), Statistics::Boson);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MeasurableSpace(setup));
  }
}
BENCHMARK(BM_BosonSpaceConstruction);

void BM_Decompose(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const ComplexMatrix u = haar_unitary(6, rng);
  const std::vector<ComplexMatrix> spans = {ComplexMatrix(u.leftCols(3)),
                                            ComplexMatrix(u.rightCols(3))};
  const MeasurableSpace space(validate_setup(
      validate_partition({{0}, {1}}, 2),
      validate_orthogonal_structure(spans, 6), Statistics::Boson));
  const ProvisionalState diagonal = boson_diagonal_state();
  for (auto _ : state) {
    benchmark::DoNotOptimize(space.decompose(diagonal));
  }
}
BENCHMARK(BM_Decompose);

void BM_SeparabilityVerdict(benchmark::State& state) {
  const ProvisionalState pair = fermion_pair_state();
  const MeasurementSetup setup = rotated_fermion_setup(0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(separability_verdict(pair, setup));
  }
}
BENCHMARK(BM_SeparabilityVerdict);

void BM_CloudSample(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(boson_cloud(1, seed++));
  }
}
BENCHMARK(BM_CloudSample);

}  // namespace

BENCHMARK_MAIN();

// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#include "relent/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace relent {

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  // SplitMix64 finalizer over a golden-ratio walk; decorrelates adjacent
  // indices so each sample gets an independent generator.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(derive_stream(seed, index));
}

ComplexVector random_unit_vector(int dim, std::mt19937_64& rng) {
  if (dim < 1) throw validation_error("random_unit_vector: dim must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(dim);
  double norm = 0.0;
  do {
    for (int k = 0; k < dim; ++k) v[k] = Complex(gauss(rng), gauss(rng));
    norm = v.norm();
  } while (norm < 1e-6);
  return v / norm;
}

MeasurementSetup random_setup(int local_dim, int num_particles,
                              Statistics statistics, std::mt19937_64& rng) {
  if (statistics == Statistics::Fermion && local_dim < num_particles) {
    throw validation_error(
        "random_setup: fermions require local_dim >= num_particles");
  }
  const int max_blocks = std::min(num_particles, local_dim);
  std::uniform_int_distribution<int> block_count(1, max_blocks);
  const int s = block_count(rng);

  std::vector<std::vector<int>> blocks(s);
  std::uniform_int_distribution<int> pick_block(0, s - 1);
  bool all_filled = false;
  while (!all_filled) {
    for (auto& b : blocks) b.clear();
    for (int p = 0; p < num_particles; ++p) {
      blocks[pick_block(rng)].push_back(p);
    }
    all_filled = std::none_of(blocks.begin(), blocks.end(),
                              [](const auto& b) { return b.empty(); });
  }
  Partition partition = validate_partition(std::move(blocks), num_particles);

  // Feasible subspace dimensions: at least the block size for fermions, at
  // least 1 for bosons, leaving room for the remaining blocks. Whatever is
  // left over becomes the complement.
  std::vector<int> min_dims(s);
  int min_total = 0;
  for (int i = 0; i < s; ++i) {
    min_dims[i] = statistics == Statistics::Fermion ? partition.block_size(i) : 1;
    min_total += min_dims[i];
  }
  std::vector<int> dims(s);
  int used = 0;
  int remaining_min = min_total;
  for (int i = 0; i < s; ++i) {
    remaining_min -= min_dims[i];
    std::uniform_int_distribution<int> dim_dist(
        min_dims[i], local_dim - used - remaining_min);
    dims[i] = dim_dist(rng);
    used += dims[i];
  }

  const ComplexMatrix unitary = haar_unitary(local_dim, rng);
  std::vector<ComplexMatrix> spans(s);
  int offset = 0;
  for (int i = 0; i < s; ++i) {
    spans[i] = unitary.middleCols(offset, dims[i]);
    offset += dims[i];
  }
  OrthogonalStructure structure =
      validate_orthogonal_structure(spans, local_dim);
  return validate_setup(std::move(partition), std::move(structure), statistics);
}

ProvisionalState fermion_pair_state() {
  const int indices[] = {0, 2};
  ProvisionalState pair = symmetrize(basis_state(4, indices), Statistics::Fermion);
  pair.amplitudes /= pair.amplitudes.norm();
  return pair;
}

MeasurementSetup rotated_fermion_setup(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const int n = 4;
  ComplexVector v1 = ComplexVector::Zero(n), v2 = ComplexVector::Zero(n),
                w1 = ComplexVector::Zero(n), w2 = ComplexVector::Zero(n);
  v1[0] = c;
  v1[3] = s;
  v2[1] = c;
  v2[2] = -s;
  w1[1] = s;
  w1[2] = c;
  w2[0] = -s;
  w2[3] = c;
  Partition partition = validate_partition({{0}, {1}}, 2);
  const std::vector<std::vector<ComplexVector>> spans = {{v1, v2}, {w1, w2}};
  OrthogonalStructure structure = validate_orthogonal_structure(spans, n);
  return validate_setup(std::move(partition), std::move(structure),
                        Statistics::Fermion);
}

double fermion_closed_form(double theta) {
  const double t = std::tan(theta);
  const double t2 = t * t;
  const double denom = t2 + 1.0 / t2;
  const double value = 4.0 / (denom * denom);
  // At multiples of pi/2 one of the terms overflows; the limit value is 0.
  return std::isfinite(value) ? value : 0.0;
}

std::vector<double> default_theta_grid() {
  std::vector<double> grid(721);
  for (int k = 0; k <= 720; ++k) {
    grid[k] = static_cast<double>(k) * std::numbers::pi / 720.0;
  }
  return grid;
}

std::vector<SweepRow> fermion_sweep(std::span<const double> grid) {
  const ProvisionalState pair = fermion_pair_state();
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double theta : grid) {
    const MeasurementSetup setup = rotated_fermion_setup(theta);
    const EntanglementReport report = separability_verdict(pair, setup);
    SweepRow row;
    row.theta = theta;
    row.weight = report.weight;
    row.concurrence = report.squared_concurrence.value_or(0.0);
    row.closed_form = fermion_closed_form(theta);
    row.residual = std::abs(row.concurrence - row.closed_form);
    rows.push_back(row);
  }
  return rows;
}

ProvisionalState boson_diagonal_state() {
  const int n = 6;
  ComplexVector amp = ComplexVector::Zero(n * n);
  for (int i = 0; i < n; ++i) {
    amp[i * n + i] = 1.0 / std::sqrt(static_cast<double>(n));
  }
  return make_provisional_state(n, 2, std::move(amp));
}

CloudResult boson_cloud(long long samples, std::uint64_t seed) {
  if (samples < 1) {
    throw validation_error("boson_cloud: sample count must be >= 1");
  }
  const ProvisionalState diagonal = boson_diagonal_state();
  const int n = diagonal.local_dim;

  CloudResult result;
  result.samples = samples;
  result.seed = seed;
  result.rows.reserve(samples);
  for (long long id = 0; id < samples; ++id) {
    const std::uint64_t stream = derive_stream(seed, static_cast<std::uint64_t>(id));
    std::mt19937_64 rng(stream);
    const ComplexMatrix unitary = haar_unitary(n, rng);
    OrthogonalStructure structure = validate_orthogonal_structure(
        {ComplexMatrix(unitary.leftCols(3)), ComplexMatrix(unitary.rightCols(3))}, n);
    const MeasurementSetup setup =
        validate_setup(validate_partition({{0}, {1}}, 2), std::move(structure),
                       Statistics::Boson);
    const MeasurableSpace space(setup);
    const DecompositionResult split = space.decompose(diagonal);
    if (split.weight < kZeroWeightThreshold) {
      ++result.skipped;
      continue;
    }
    ProvisionalState observable = split.observable;
    observable.amplitudes /= std::sqrt(split.weight);
    const MesState mes = space.inverse(observable);
    const int cut[] = {0};
    const SchmidtResult schmidt = schmidt_coefficients(mes, cut);

    CloudRow row;
    row.sample_id = id;
    // coefficients come out descending; the row stores them ascending.
    row.lambda1 = schmidt.coefficients[2];
    row.lambda2 = schmidt.coefficients[1];
    row.lambda3 = schmidt.coefficients[0];
    row.weight = split.weight;
    row.stream = stream;
    result.rows.push_back(row);
  }
  return result;
}

IidScanReport iid_scan(int num_particles, int local_dim, long long trials,
                       long long setups_per_trial, std::uint64_t seed) {
  if (trials < 1 || setups_per_trial < 1) {
    throw validation_error("iid_scan: trials and setups per trial must be >= 1");
  }
  checked_power(local_dim, num_particles);
  IidScanReport report;
  report.trials = trials;
  report.setups_per_trial = setups_per_trial;
  for (long long trial = 0; trial < trials; ++trial) {
    const std::uint64_t stream = derive_stream(seed, static_cast<std::uint64_t>(trial));
    std::mt19937_64 rng(stream);
    const ComplexVector factor = random_unit_vector(local_dim, rng);
    ComplexVector amplitudes = factor;
    for (int k = 1; k < num_particles; ++k) {
      amplitudes = tensor_product(amplitudes, factor);
    }
    const ProvisionalState state =
        make_provisional_state(local_dim, num_particles, std::move(amplitudes));
    for (long long j = 0; j < setups_per_trial; ++j) {
      const MeasurementSetup setup =
          random_setup(local_dim, num_particles, Statistics::Boson, rng);
      const EntanglementReport verdict = separability_verdict(state, setup);
      ++report.cases;
      switch (verdict.verdict) {
        case Verdict::FilteredOut:
          ++report.filtered_cases;
          break;
        case Verdict::Separable:
          ++report.separable_cases;
          for (const auto& [block, schmidt] : verdict.schmidt) {
            if (schmidt.coefficients.size() > 1) {
              report.max_second_schmidt = std::max(
                  report.max_second_schmidt, schmidt.coefficients[1]);
            }
          }
          break;
        case Verdict::Entangled:
          report.violations.push_back(ScanViolation{trial, j, stream});
          break;
      }
    }
  }
  return report;
}

ConverseScanReport converse_scan(const ProvisionalState& psi, long long trials,
                                 std::uint64_t seed) {
  if (trials < 1) {
    throw validation_error("converse_scan: trial budget must be >= 1");
  }
  if (psi.num_particles != 2) {
    throw validation_error("converse_scan: defined for two-particle states");
  }
  if (psi.local_dim < 4) {
    throw validation_error("converse_scan: requires local dimension >= 4");
  }
  if (std::abs(psi.amplitudes.norm() - 1.0) > kDefaultTol) {
    throw validation_error("converse_scan: state must be normalized");
  }
  if (symmetrization_defect(psi, Statistics::Boson) > kDefaultTol) {
    throw validation_error("converse_scan: state must be symmetric");
  }
  const int n = psi.local_dim;

  ConverseScanReport report;
  for (long long trial = 0; trial < trials; ++trial) {
    const std::uint64_t stream = derive_stream(seed, static_cast<std::uint64_t>(trial));
    std::mt19937_64 rng(stream);
    std::uniform_int_distribution<int> first_dim(1, n - 1);
    const int d1 = first_dim(rng);
    std::uniform_int_distribution<int> second_dim(1, n - d1);
    const int d2 = second_dim(rng);
    const ComplexMatrix unitary = haar_unitary(n, rng);
    OrthogonalStructure structure = validate_orthogonal_structure(
        {ComplexMatrix(unitary.leftCols(d1)),
         ComplexMatrix(unitary.middleCols(d1, d2))},
        n);
    MeasurementSetup setup =
        validate_setup(validate_partition({{0}, {1}}, 2), std::move(structure),
                       Statistics::Boson);
    const EntanglementReport verdict = separability_verdict(psi, setup);
    report.trials_used = trial + 1;
    if (verdict.verdict == Verdict::Entangled) {
      report.witness_found = true;
      report.witness = std::move(setup);
      report.witness_concurrence = verdict.squared_concurrence.value_or(0.0);
      report.stream = stream;
      return report;
    }
  }
  return report;
}

}  // namespace relent

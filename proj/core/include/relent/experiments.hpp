// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relent/entanglement.hpp"

namespace relent {

// Deterministic per-sample substream derivation (SplitMix64 finalizer on
// seed and index). Samples are independent of execution order, so runs
// with the same seed produce identical output.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index);
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index);

// Gaussian-induced uniform random unit vector in C^dim.
ComplexVector random_unit_vector(int dim, std::mt19937_64& rng);

// Random setup: uniformly sized partition, Haar-derived orthogonal
// structure with feasible subspace dimensions (dim V_i >= |block_i| for
// fermions) and possibly non-trivial complement.
MeasurementSetup random_setup(int local_dim, int num_particles,
                              Statistics statistics, std::mt19937_64& rng);

// --- Two-fermion rotated-subspace family -------------------------------
//
// Antisymmetric pair (|e0 e2> - |e2 e0>)/sqrt(2) in C^4, analyzed against
// one-particle blocks whose subspaces rotate with an angle theta:
//   V_1 = span{cos t e0 + sin t e3, cos t e1 - sin t e2}
//   V_2 = span{sin t e1 + cos t e2, -sin t e0 + cos t e3}.
// The squared concurrence of the measurable part follows the closed form
// 4 / (tan^2 t + cot^2 t)^2.

ProvisionalState fermion_pair_state();
MeasurementSetup rotated_fermion_setup(double theta);
double fermion_closed_form(double theta);

// theta_k = k * pi / 720 for k = 0..720.
std::vector<double> default_theta_grid();

struct SweepRow {
  double theta = 0.0;
  double weight = 0.0;
  double concurrence = 0.0;
  double closed_form = 0.0;
  double residual = 0.0;
};

std::vector<SweepRow> fermion_sweep(std::span<const double> grid);

// --- Two-boson random-subspace cloud ------------------------------------
//
// Diagonal pair sum_i |e_i e_i> / sqrt(6) in C^6, analyzed against
// one-particle blocks carved from a Haar unitary: V_1 = first three
// columns, V_2 = last three. Each sample records the ascending Schmidt
// coefficients of the renormalized measurable part.

ProvisionalState boson_diagonal_state();

struct CloudRow {
  long long sample_id = 0;
  double lambda1 = 0.0;  // ascending: lambda1 <= lambda2 <= lambda3
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double weight = 0.0;
  std::uint64_t stream = 0;
};

struct CloudResult {
  std::vector<CloudRow> rows;
  long long skipped = 0;  // zero-weight draws; rows.size() + skipped = samples
  long long samples = 0;
  std::uint64_t seed = 0;
};

CloudResult boson_cloud(long long samples, std::uint64_t seed);

// --- Monte Carlo scans ---------------------------------------------------

struct ScanViolation {
  long long trial = 0;
  long long setup_index = 0;
  std::uint64_t stream = 0;
};

// Draws i.i.d. boson states phi^(x N) and random setups; every
// nonzero-weight case must come out separable.
struct IidScanReport {
  long long trials = 0;
  long long setups_per_trial = 0;
  long long cases = 0;
  long long separable_cases = 0;
  long long filtered_cases = 0;
  double max_second_schmidt = 0.0;
  std::vector<ScanViolation> violations;
};

IidScanReport iid_scan(int num_particles, int local_dim, long long trials,
                       long long setups_per_trial, std::uint64_t seed);

// Searches random two-block setups for one whose verdict is entangled.
// Intended for normalized two-boson states with local_dim >= 4: states
// that are not i.i.d. are expected to yield a witness.
struct ConverseScanReport {
  bool witness_found = false;
  long long trials_used = 0;
  std::optional<MeasurementSetup> witness;
  double witness_concurrence = 0.0;
  std::uint64_t stream = 0;
};

ConverseScanReport converse_scan(const ProvisionalState& psi, long long trials,
                                 std::uint64_t seed);

}  // namespace relent

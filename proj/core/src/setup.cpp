// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#include "relent/setup.hpp"

#include <algorithm>
#include <cmath>

#include "relent/tensor.hpp"

namespace relent {

Partition validate_partition(std::vector<std::vector<int>> blocks,
                             int num_particles) {
  if (num_particles < 1) {
    throw validation_error("partition: particle count must be >= 1");
  }
  if (blocks.empty()) {
    throw validation_error("partition: at least one block is required");
  }
  std::vector<int> owner(num_particles, -1);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].empty()) {
      throw validation_error("partition: block " + std::to_string(i) +
                             " is empty");
    }
    std::sort(blocks[i].begin(), blocks[i].end());
    for (int p : blocks[i]) {
      if (p < 0 || p >= num_particles) {
        throw validation_error("partition: block " + std::to_string(i) +
                               " references particle " + std::to_string(p) +
                               ", valid labels are 0.." +
                               std::to_string(num_particles - 1));
      }
      if (owner[p] != -1) {
        throw validation_error("partition: particle " + std::to_string(p) +
                               " appears in blocks " +
                               std::to_string(owner[p]) + " and " +
                               std::to_string(i));
      }
      owner[p] = static_cast<int>(i);
    }
  }
  for (int p = 0; p < num_particles; ++p) {
    if (owner[p] == -1) {
      throw validation_error("partition: particle " + std::to_string(p) +
                             " is not covered by any block");
    }
  }
  return Partition{std::move(blocks), num_particles};
}

OrthogonalStructure validate_orthogonal_structure(
    const std::vector<std::vector<ComplexVector>>& spanning_sets,
    int ambient_dim, double tol) {
  if (ambient_dim < 2) {
    throw validation_error("orthogonal structure: ambient dimension must be >= 2");
  }
  if (spanning_sets.empty()) {
    throw validation_error("orthogonal structure: at least one subspace is required");
  }
  OrthogonalStructure out;
  out.ambient_dim = ambient_dim;
  int total = 0;
  for (std::size_t i = 0; i < spanning_sets.size(); ++i) {
    if (spanning_sets[i].empty()) {
      throw validation_error("subspaces[" + std::to_string(i) +
                             "]: empty spanning set");
    }
    for (const ComplexVector& v : spanning_sets[i]) {
      if (v.size() != ambient_dim) {
        throw validation_error("subspaces[" + std::to_string(i) +
                               "]: vector length " + std::to_string(v.size()) +
                               " does not match ambient dimension " +
                               std::to_string(ambient_dim));
      }
      if (v.norm() <= tol) {
        throw validation_error("subspaces[" + std::to_string(i) +
                               "]: contains a (near-)zero vector");
      }
    }
    std::vector<ComplexVector> basis = orthonormalize(spanning_sets[i], tol);
    ComplexMatrix mat(ambient_dim, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      mat.col(static_cast<Eigen::Index>(j)) = basis[j];
    }
    total += static_cast<int>(basis.size());
    out.subspaces.push_back(std::move(mat));
  }
  if (total > ambient_dim) {
    throw validation_error("orthogonal structure: subspace dimensions sum to " +
                           std::to_string(total) + " > ambient dimension " +
                           std::to_string(ambient_dim));
  }
  for (std::size_t i = 0; i < out.subspaces.size(); ++i) {
    for (std::size_t j = i + 1; j < out.subspaces.size(); ++j) {
      const double overlap =
          (out.subspaces[i].adjoint() * out.subspaces[j]).cwiseAbs().maxCoeff();
      if (overlap > tol) {
        throw validation_error(
            "orthogonal structure: subspaces " + std::to_string(i) + " and " +
            std::to_string(j) + " overlap (max |<v_i|v_j>| = " +
            std::to_string(overlap) + ")");
      }
    }
  }

  // Complete the complement by filtering the canonical basis through the
  // union; deterministic given the inputs.
  std::vector<ComplexVector> accumulated;
  for (const ComplexMatrix& sub : out.subspaces) {
    for (Eigen::Index j = 0; j < sub.cols(); ++j) {
      accumulated.push_back(sub.col(j));
    }
  }
  const std::size_t occupied = accumulated.size();
  for (int k = 0; k < ambient_dim; ++k) {
    accumulated.push_back(ComplexVector::Unit(ambient_dim, k));
  }
  std::vector<ComplexVector> extended = orthonormalize(accumulated, tol);
  if (extended.size() != static_cast<std::size_t>(ambient_dim)) {
    throw validation_error("orthogonal structure: failed to complete complement basis");
  }
  out.complement.resize(ambient_dim, ambient_dim - static_cast<int>(occupied));
  for (std::size_t j = occupied; j < extended.size(); ++j) {
    out.complement.col(static_cast<Eigen::Index>(j - occupied)) = extended[j];
  }
  return out;
}

OrthogonalStructure validate_orthogonal_structure(
    const std::vector<ComplexMatrix>& spanning_sets, int ambient_dim,
    double tol) {
  std::vector<std::vector<ComplexVector>> sets;
  sets.reserve(spanning_sets.size());
  for (const ComplexMatrix& m : spanning_sets) {
    std::vector<ComplexVector> vecs;
    vecs.reserve(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) vecs.push_back(m.col(j));
    sets.push_back(std::move(vecs));
  }
  return validate_orthogonal_structure(sets, ambient_dim, tol);
}

MeasurementSetup validate_setup(Partition partition,
                                OrthogonalStructure structure,
                                Statistics statistics, double tol) {
  (void)tol;
  if (partition.num_blocks() != structure.num_subspaces()) {
    throw validation_error("setup: " + std::to_string(partition.num_blocks()) +
                           " partition blocks but " +
                           std::to_string(structure.num_subspaces()) +
                           " subspaces");
  }
  if (statistics == Statistics::Fermion) {
    for (int i = 0; i < partition.num_blocks(); ++i) {
      if (structure.subspace_dim(i) < partition.block_size(i)) {
        throw validation_error(
            "setup: block " + std::to_string(i) + " holds " +
            std::to_string(partition.block_size(i)) +
            " fermions but its subspace has dimension " +
            std::to_string(structure.subspace_dim(i)) +
            "; the antisymmetric sector is empty");
      }
    }
  }
  if (partition.num_particles > 20) {
    throw validation_error("setup: particle counts above 20 overflow the normalization factor");
  }
  long long normalization = 1;
  for (int k = 2; k <= partition.num_particles; ++k) normalization *= k;
  for (int i = 0; i < partition.num_blocks(); ++i) {
    for (int k = 2; k <= partition.block_size(i); ++k) normalization /= k;
  }
  MeasurementSetup setup;
  setup.local_dim = structure.ambient_dim;
  setup.num_particles = partition.num_particles;
  setup.partition = std::move(partition);
  setup.structure = std::move(structure);
  setup.statistics = statistics;
  setup.normalization = normalization;
  return setup;
}

}  // namespace relent

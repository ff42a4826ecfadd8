// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "relent/permutation.hpp"

namespace relent {

// Partition of particle slots {0..num_particles-1} into disjoint,
// non-empty blocks. Block order is the caller's; members are kept sorted.
struct Partition {
  std::vector<std::vector<int>> blocks;
  int num_particles = 0;

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  int block_size(int i) const { return static_cast<int>(blocks[i].size()); }
};

Partition validate_partition(std::vector<std::vector<int>> blocks,
                             int num_particles);

// Mutually orthogonal subspaces V_1..V_s of C^ambient_dim together with
// the orthogonal complement V_0 of their direct sum. Each basis is stored
// as a matrix with orthonormal columns.
struct OrthogonalStructure {
  int ambient_dim = 0;
  std::vector<ComplexMatrix> subspaces;
  ComplexMatrix complement;

  int num_subspaces() const { return static_cast<int>(subspaces.size()); }
  int subspace_dim(int i) const {
    return static_cast<int>(subspaces[i].cols());
  }
  int complement_dim() const { return static_cast<int>(complement.cols()); }
};

// Orthonormalizes each spanning set, then checks cross-block orthogonality
// and completes the complement basis. Raises validation_error naming the
// offending pair when two subspaces overlap.
OrthogonalStructure validate_orthogonal_structure(
    const std::vector<std::vector<ComplexVector>>& spanning_sets,
    int ambient_dim, double tol = kDefaultTol);
OrthogonalStructure validate_orthogonal_structure(
    const std::vector<ComplexMatrix>& spanning_sets, int ambient_dim,
    double tol = kDefaultTol);

// A partition paired with an orthogonal structure of matching length plus
// the exchange statistics. normalization holds M = N! / prod_i |block_i|!.
struct MeasurementSetup {
  Partition partition;
  OrthogonalStructure structure;
  Statistics statistics = Statistics::Boson;
  int local_dim = 0;
  int num_particles = 0;
  long long normalization = 0;

  int num_blocks() const { return partition.num_blocks(); }
  int block_size(int i) const { return partition.block_size(i); }
  int subspace_dim(int i) const { return structure.subspace_dim(i); }
};

// Cross-validates the pieces: matching lengths, and for fermions the
// feasibility requirement dim V_i >= |block_i| for every block.
MeasurementSetup validate_setup(Partition partition,
                                OrthogonalStructure structure,
                                Statistics statistics,
                                double tol = kDefaultTol);

}  // namespace relent

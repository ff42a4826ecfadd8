// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "relent/setup.hpp"
#include "relent/tensor.hpp"

namespace relent {

// Orthonormal basis of the exchange-symmetric subspace of V_i^(x m) inside
// (C^n)^(x m), where m is the size of partition block i. Columns are
// indexed by occupation: for fermions one column per strictly increasing
// m-tuple of V_i basis labels (dimension C(d, m)), for bosons one per
// non-decreasing tuple (dimension C(d+m-1, m)), in lexicographic order.
struct BlockBasis {
  int block_index = 0;
  int num_particles = 0;
  int ambient_dim = 0;
  ComplexMatrix vectors;  // n^m rows, one column per basis element

  int dim() const { return static_cast<int>(vectors.cols()); }
};

BlockBasis block_basis(const MeasurementSetup& setup, int block,
                       double tol = kDefaultTol);

// Coordinates of a vector in the measurement space: the tensor product of
// the per-block symmetric subspaces, block 0 varying slowest.
struct MesState {
  std::vector<int> block_dims;
  ComplexVector amplitudes;

  long long dimension() const { return amplitudes.size(); }
};

MesState make_mes_state(std::vector<int> block_dims, ComplexVector amplitudes);

// Splitting of a state into its component inside the measurable subspace
// and the orthogonal remainder. weight is the squared norm of observable.
struct DecompositionResult {
  ProvisionalState observable;
  double weight = 0.0;
  double complement_norm = 0.0;
};

// An observable given per block, expressed both on the measurement space
// (plain tensor product) and on the full provisional space (conjugated by
// the symmetrizer and scaled by the setup normalization M).
struct LiftedObservable {
  ComplexMatrix mes;
  ComplexMatrix provisional;
};

// Result of compressing a density matrix onto the measurable subspace.
// rho is absent when the captured weight is below kZeroWeightThreshold.
struct RhoMesResult {
  double weight = 0.0;
  std::optional<ComplexMatrix> rho;

  bool filtered() const { return !rho.has_value(); }
};

// The measurable subspace of a validated setup. Construction builds the
// per-block bases and the isometry F whose columns are the sqrt(M)-scaled
// symmetrizations of the block-basis product vectors; F is verified to
// have orthonormal columns before use.
class MeasurableSpace {
 public:
  explicit MeasurableSpace(MeasurementSetup setup, double tol = kDefaultTol);

  const MeasurementSetup& setup() const { return setup_; }
  const std::vector<BlockBasis>& block_bases() const { return bases_; }
  const std::vector<int>& block_dims() const { return dims_; }
  long long mes_dimension() const { return mes_dim_; }
  long long provisional_dimension() const { return full_dim_; }
  const ComplexMatrix& isometry() const { return isometry_; }

  // Image of measurement-space coordinates in the provisional space;
  // an isometry, so norms and inner products are preserved.
  ProvisionalState forward(const MesState& mes) const;

  // Preimage under forward. psi must lie in the measurable subspace to
  // within tol * ||psi||; the zero vector maps to zero coordinates.
  MesState inverse(const ProvisionalState& psi, double tol = kDefaultTol) const;

  // Orthogonal split psi = observable + remainder. psi must already lie in
  // the exchange sector of the setup's statistics unless auto_symmetrize
  // is set, in which case it is projected there first (no renormalization).
  DecompositionResult decompose(const ProvisionalState& psi,
                                bool auto_symmetrize = false,
                                double tol = kDefaultTol) const;

  // Orthogonal projector onto the measurable subspace, as a dense matrix
  // on the provisional space.
  ComplexMatrix projector() const;

  // Lifts one operator per block (given in block-basis coordinates) to
  // both representations. The provisional form is M * X * (x_i O_i^amb) * X
  // with O_i^amb the block operator pushed to its ambient factor space.
  LiftedObservable lift(const std::vector<ComplexMatrix>& block_ops) const;

  // Lift of a single block operator with identities elsewhere.
  LiftedObservable lift_factor(int block, const ComplexMatrix& op) const;

  // Compression w = tr(F^dagger rho F), rho_mes = F^dagger rho F / w of a
  // density matrix (self-adjoint, unit trace, positive semidefinite to
  // within tol). Filtered result when w falls below kZeroWeightThreshold.
  RhoMesResult rho_mes(const ComplexMatrix& rho, double tol = kDefaultTol) const;

 private:
  ComplexVector product_state(std::span<const int> occupancy) const;
  ComplexMatrix symmetrizer_matrix() const;

  MeasurementSetup setup_;
  std::vector<BlockBasis> bases_;
  std::vector<int> dims_;
  long long mes_dim_ = 0;
  long long full_dim_ = 0;
  // sub_index_[idx * s + b]: flat row index into block b's factor space of
  // the digits of idx at the block's (sorted) particle positions.
  std::vector<long long> sub_index_;
  ComplexMatrix isometry_;
};

// Free-function surface over MeasurableSpace for one-shot use.
long long mes_dimension(const MeasurementSetup& setup);
ProvisionalState f_forward(const MesState& mes, const MeasurementSetup& setup);
MesState f_inverse(const ProvisionalState& psi, const MeasurementSetup& setup,
                   double tol = kDefaultTol);
DecompositionResult decompose(const ProvisionalState& psi,
                              const MeasurementSetup& setup,
                              bool auto_symmetrize = false,
                              double tol = kDefaultTol);
LiftedObservable lift_observable(const std::vector<ComplexMatrix>& block_ops,
                                 const MeasurementSetup& setup);
RhoMesResult rho_mes(const ComplexMatrix& rho, const MeasurementSetup& setup,
                     double tol = kDefaultTol);

// Expectation value helpers on the two representations.
double expectation(const ProvisionalState& psi, const ComplexMatrix& op,
                   double tol = kDefaultTol);
double expectation(const MesState& mes, const ComplexMatrix& op,
                   double tol = kDefaultTol);

// Restriction B^dagger op B of an ambient single-particle operator to the
// coordinates of block i's subspace basis; requires |block_i| = 1.
ComplexMatrix single_particle_block_operator(const MeasurementSetup& setup,
                                             int block,
                                             const ComplexMatrix& ambient_op);

}  // namespace relent

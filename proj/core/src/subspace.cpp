// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#include "relent/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace relent {

namespace {

// Lexicographically ordered occupation tuples over [0, count): strictly
// increasing for fermions, non-decreasing for bosons.
std::vector<std::vector<int>> occupation_tuples(int count, int length,
                                                Statistics statistics) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(length);
  const std::function<void(int, int)> recurse = [&](int pos, int start) {
    if (pos == length) {
      out.push_back(current);
      return;
    }
    for (int v = start; v < count; ++v) {
      current[pos] = v;
      recurse(pos + 1, statistics == Statistics::Fermion ? v + 1 : v);
    }
  };
  recurse(0, 0);
  return out;
}

ComplexVector column_product(const ComplexMatrix& basis,
                             std::span<const int> combo) {
  ComplexVector out = basis.col(combo[0]);
  for (std::size_t k = 1; k < combo.size(); ++k) {
    out = tensor_product(out, basis.col(combo[k]));
  }
  return out;
}

void check_density_matrix(const ComplexMatrix& rho, double tol) {
  if (rho.rows() != rho.cols()) {
    throw validation_error("density matrix must be square");
  }
  const double hermitian_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (hermitian_defect > tol) {
    throw validation_error("density matrix is not self-adjoint (defect " +
                           std::to_string(hermitian_defect) + ")");
  }
  const double trace_defect = std::abs(rho.trace().real() - 1.0);
  if (trace_defect > tol) {
    throw validation_error("density matrix trace differs from 1 by " +
                           std::to_string(trace_defect));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho,
                                                      Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol * std::max(1.0, rho.cwiseAbs().maxCoeff())) {
    throw validation_error("density matrix has negative eigenvalue " +
                           std::to_string(min_eig));
  }
}

}  // namespace

BlockBasis block_basis(const MeasurementSetup& setup, int block, double tol) {
  if (block < 0 || block >= setup.num_blocks()) {
    throw validation_error("block_basis: block index out of range");
  }
  const ComplexMatrix& sub = setup.structure.subspaces[block];
  const int n = setup.local_dim;
  const int m = setup.block_size(block);
  const int d = static_cast<int>(sub.cols());
  const std::vector<std::vector<int>> combos =
      occupation_tuples(d, m, setup.statistics);
  if (combos.empty()) {
    throw validation_error("block_basis: block " + std::to_string(block) +
                           " has an empty exchange sector");
  }
  const long long factor_dim = checked_power(n, m);
  if (factor_dim > kDimensionCap / static_cast<long long>(combos.size())) {
    throw validation_error("block_basis: basis matrix exceeds the dimension cap");
  }

  ComplexMatrix vectors(factor_dim, static_cast<Eigen::Index>(combos.size()));
  for (std::size_t c = 0; c < combos.size(); ++c) {
    const ComplexVector product = column_product(sub, combos[c]);
    ComplexVector v =
        symmetrize_amplitudes(product, n, m, setup.statistics);
    const double norm = v.norm();
    if (norm <= tol) {
      throw validation_error("block_basis: symmetrization annihilated an occupation vector");
    }
    vectors.col(static_cast<Eigen::Index>(c)) = v / norm;
  }

  // Contract checks: orthonormality, exchange invariance, and support
  // inside the block's subspace.
  const ComplexMatrix gram = vectors.adjoint() * vectors;
  const double gram_defect =
      (gram - ComplexMatrix::Identity(gram.rows(), gram.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (gram_defect > tol) {
    throw validation_error("block_basis: constructed basis is not orthonormal (defect " +
                           std::to_string(gram_defect) + ")");
  }
  const ComplexMatrix site_projector = sub * sub.adjoint();
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    const ComplexVector col = vectors.col(c);
    const double exchange_defect =
        (symmetrize_amplitudes(col, n, m, setup.statistics) - col).norm();
    if (exchange_defect > tol) {
      throw validation_error("block_basis: basis vector leaves the exchange sector");
    }
    ComplexVector projected = col;
    for (int slot = 0; slot < m; ++slot) {
      projected = apply_site_operator(projected, n, m, slot, site_projector);
    }
    if ((projected - col).norm() > tol) {
      throw validation_error("block_basis: basis vector leaves the block subspace");
    }
  }

  BlockBasis result;
  result.block_index = block;
  result.num_particles = m;
  result.ambient_dim = n;
  result.vectors = std::move(vectors);
  return result;
}

MesState make_mes_state(std::vector<int> block_dims, ComplexVector amplitudes) {
  if (block_dims.empty()) {
    throw validation_error("mes state: at least one block is required");
  }
  const long long dim = checked_product(block_dims);
  if (amplitudes.size() != dim) {
    throw validation_error("mes state: amplitude length does not match block dimensions");
  }
  if (!amplitudes.allFinite()) {
    throw validation_error("mes state: amplitudes contain non-finite entries");
  }
  return MesState{std::move(block_dims), std::move(amplitudes)};
}

MeasurableSpace::MeasurableSpace(MeasurementSetup setup, double tol)
    : setup_(std::move(setup)) {
  const int s = setup_.num_blocks();
  const int n = setup_.local_dim;
  const int num_particles = setup_.num_particles;

  bases_.reserve(s);
  dims_.resize(s);
  for (int i = 0; i < s; ++i) {
    bases_.push_back(block_basis(setup_, i, tol));
    dims_[i] = bases_[i].dim();
  }
  mes_dim_ = checked_product(dims_);
  full_dim_ = checked_power(n, num_particles);
  if (full_dim_ > kDimensionCap / mes_dim_) {
    throw validation_error("measurable space: isometry exceeds the dimension cap");
  }

  sub_index_.resize(full_dim_ * s);
  std::vector<int> digits(num_particles);
  for (long long idx = 0; idx < full_dim_; ++idx) {
    unflatten_uniform(idx, n, digits);
    for (int b = 0; b < s; ++b) {
      long long sub = 0;
      for (int p : setup_.partition.blocks[b]) sub = sub * n + digits[p];
      sub_index_[idx * s + b] = sub;
    }
  }

  const double scale = std::sqrt(static_cast<double>(setup_.normalization));
  isometry_.resize(full_dim_, mes_dim_);
  std::vector<int> occ(s);
  for (long long col = 0; col < mes_dim_; ++col) {
    unflatten_index(col, dims_, occ);
    isometry_.col(col) =
        scale * symmetrize_amplitudes(product_state(occ), n, num_particles,
                                      setup_.statistics);
  }

  const ComplexMatrix gram = isometry_.adjoint() * isometry_;
  const double defect =
      (gram - ComplexMatrix::Identity(mes_dim_, mes_dim_)).cwiseAbs().maxCoeff();
  if (defect > tol) {
    throw validation_error(
        "measurable space: mapped block basis is not orthonormal (defect " +
        std::to_string(defect) + ")");
  }
}

ComplexVector MeasurableSpace::product_state(
    std::span<const int> occupancy) const {
  const int s = setup_.num_blocks();
  ComplexVector out(full_dim_);
  for (long long idx = 0; idx < full_dim_; ++idx) {
    Complex value(1.0, 0.0);
    for (int b = 0; b < s; ++b) {
      value *= bases_[b].vectors(sub_index_[idx * s + b], occupancy[b]);
    }
    out[idx] = value;
  }
  return out;
}

ComplexMatrix MeasurableSpace::symmetrizer_matrix() const {
  if (full_dim_ > kDimensionCap / full_dim_) {
    throw validation_error("symmetrizer matrix exceeds the dimension cap");
  }
  ComplexMatrix x(full_dim_, full_dim_);
  ComplexVector unit = ComplexVector::Zero(full_dim_);
  for (long long j = 0; j < full_dim_; ++j) {
    unit[j] = 1.0;
    x.col(j) = symmetrize_amplitudes(unit, setup_.local_dim,
                                     setup_.num_particles, setup_.statistics);
    unit[j] = 0.0;
  }
  return x;
}

ProvisionalState MeasurableSpace::forward(const MesState& mes) const {
  if (mes.block_dims != dims_) {
    throw validation_error("forward: block dimensions do not match the setup");
  }
  return ProvisionalState{setup_.local_dim, setup_.num_particles,
                          isometry_ * mes.amplitudes};
}

MesState MeasurableSpace::inverse(const ProvisionalState& psi,
                                  double tol) const {
  if (psi.local_dim != setup_.local_dim ||
      psi.num_particles != setup_.num_particles) {
    throw validation_error("inverse: state dimensions do not match the setup");
  }
  const double norm = psi.amplitudes.norm();
  ComplexVector coords = isometry_.adjoint() * psi.amplitudes;
  if (norm > 0.0) {
    const double residual = (psi.amplitudes - isometry_ * coords).norm();
    if (residual > tol * norm) {
      throw validation_error(
          "inverse: state has a component of relative norm " +
          std::to_string(residual / norm) + " outside the measurable subspace");
    }
  }
  return MesState{dims_, std::move(coords)};
}

DecompositionResult MeasurableSpace::decompose(const ProvisionalState& psi,
                                               bool auto_symmetrize,
                                               double tol) const {
  if (psi.local_dim != setup_.local_dim ||
      psi.num_particles != setup_.num_particles) {
    throw validation_error("decompose: state dimensions do not match the setup");
  }
  ComplexVector work = psi.amplitudes;
  const double norm = work.norm();
  if (norm > 0.0) {
    const ComplexVector projected = symmetrize_amplitudes(
        work, setup_.local_dim, setup_.num_particles, setup_.statistics);
    if ((projected - work).norm() > tol * std::max(1.0, norm)) {
      if (!auto_symmetrize) {
        throw validation_error(
            std::string("decompose: state is not ") +
            (setup_.statistics == Statistics::Fermion ? "antisymmetric"
                                                      : "symmetric") +
            "; pass auto_symmetrize to project it first");
      }
      work = projected;
    }
  }
  const ComplexVector coords = isometry_.adjoint() * work;
  const ComplexVector observable = isometry_ * coords;
  DecompositionResult result;
  result.observable = ProvisionalState{setup_.local_dim, setup_.num_particles,
                                       observable};
  result.weight = coords.squaredNorm();
  result.complement_norm = (work - observable).norm();
  return result;
}

ComplexMatrix MeasurableSpace::projector() const {
  if (full_dim_ > kDimensionCap / full_dim_) {
    throw validation_error("projector exceeds the dimension cap");
  }
  return isometry_ * isometry_.adjoint();
}

LiftedObservable MeasurableSpace::lift(
    const std::vector<ComplexMatrix>& block_ops) const {
  const int s = setup_.num_blocks();
  if (static_cast<int>(block_ops.size()) != s) {
    throw validation_error("lift: expected one operator per block");
  }
  for (int b = 0; b < s; ++b) {
    if (block_ops[b].rows() != dims_[b] || block_ops[b].cols() != dims_[b]) {
      throw validation_error("lift: operator for block " + std::to_string(b) +
                             " must be " + std::to_string(dims_[b]) + "x" +
                             std::to_string(dims_[b]) +
                             " in block-basis coordinates");
    }
  }

  LiftedObservable out;
  out.mes = ComplexMatrix::Identity(1, 1);
  for (int b = 0; b < s; ++b) {
    // Kronecker fold keeps block 0 slowest, matching the flat layout.
    ComplexMatrix next(out.mes.rows() * dims_[b], out.mes.cols() * dims_[b]);
    for (Eigen::Index i = 0; i < out.mes.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.mes.cols(); ++j) {
        next.block(i * dims_[b], j * dims_[b], dims_[b], dims_[b]) =
            out.mes(i, j) * block_ops[b];
      }
    }
    out.mes = std::move(next);
  }

  if (full_dim_ > kDimensionCap / full_dim_) {
    throw validation_error("lift: provisional representation exceeds the dimension cap");
  }
  std::vector<ComplexMatrix> ambient(s);
  for (int b = 0; b < s; ++b) {
    ambient[b] = bases_[b].vectors * block_ops[b] * bases_[b].vectors.adjoint();
  }
  ComplexMatrix kron(full_dim_, full_dim_);
  for (long long r = 0; r < full_dim_; ++r) {
    for (long long c = 0; c < full_dim_; ++c) {
      Complex value(1.0, 0.0);
      for (int b = 0; b < s; ++b) {
        value *= ambient[b](sub_index_[r * s + b], sub_index_[c * s + b]);
      }
      kron(r, c) = value;
    }
  }
  const ComplexMatrix x = symmetrizer_matrix();
  out.provisional =
      static_cast<double>(setup_.normalization) * (x * (kron * x));
  return out;
}

LiftedObservable MeasurableSpace::lift_factor(int block,
                                              const ComplexMatrix& op) const {
  if (block < 0 || block >= setup_.num_blocks()) {
    throw validation_error("lift_factor: block index out of range");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(setup_.num_blocks());
  for (int b = 0; b < setup_.num_blocks(); ++b) {
    ops.push_back(b == block
                      ? op
                      : ComplexMatrix::Identity(dims_[b], dims_[b]));
  }
  return lift(ops);
}

RhoMesResult MeasurableSpace::rho_mes(const ComplexMatrix& rho,
                                      double tol) const {
  if (rho.rows() != full_dim_ || rho.cols() != full_dim_) {
    throw validation_error("rho_mes: density matrix size does not match the provisional space");
  }
  check_density_matrix(rho, tol);
  ComplexMatrix compressed = isometry_.adjoint() * rho * isometry_;
  const double weight = compressed.trace().real();
  RhoMesResult result;
  result.weight = std::max(weight, 0.0);
  if (result.weight < kZeroWeightThreshold) {
    return result;
  }
  compressed /= weight;
  // Symmetrize away the rounding skew so downstream eigensolves see an
  // exactly self-adjoint matrix.
  result.rho = ((compressed + compressed.adjoint()) / 2.0).eval();
  return result;
}

long long mes_dimension(const MeasurementSetup& setup) {
  std::vector<int> dims(setup.num_blocks());
  for (int i = 0; i < setup.num_blocks(); ++i) {
    dims[i] = block_basis(setup, i).dim();
  }
  return checked_product(dims);
}

ProvisionalState f_forward(const MesState& mes, const MeasurementSetup& setup) {
  return MeasurableSpace(setup).forward(mes);
}

MesState f_inverse(const ProvisionalState& psi, const MeasurementSetup& setup,
                   double tol) {
  return MeasurableSpace(setup).inverse(psi, tol);
}

DecompositionResult decompose(const ProvisionalState& psi,
                              const MeasurementSetup& setup,
                              bool auto_symmetrize, double tol) {
  return MeasurableSpace(setup).decompose(psi, auto_symmetrize, tol);
}

LiftedObservable lift_observable(const std::vector<ComplexMatrix>& block_ops,
                                 const MeasurementSetup& setup) {
  return MeasurableSpace(setup).lift(block_ops);
}

RhoMesResult rho_mes(const ComplexMatrix& rho, const MeasurementSetup& setup,
                     double tol) {
  return MeasurableSpace(setup).rho_mes(rho, tol);
}

double expectation(const ProvisionalState& psi, const ComplexMatrix& op,
                   double tol) {
  return expectation(psi.amplitudes, op, tol);
}

double expectation(const MesState& mes, const ComplexMatrix& op, double tol) {
  return expectation(mes.amplitudes, op, tol);
}

ComplexMatrix single_particle_block_operator(const MeasurementSetup& setup,
                                             int block,
                                             const ComplexMatrix& ambient_op) {
  if (block < 0 || block >= setup.num_blocks()) {
    throw validation_error("single_particle_block_operator: block index out of range");
  }
  if (setup.block_size(block) != 1) {
    throw validation_error("single_particle_block_operator: block " +
                           std::to_string(block) + " holds " +
                           std::to_string(setup.block_size(block)) +
                           " particles, expected 1");
  }
  if (ambient_op.rows() != setup.local_dim ||
      ambient_op.cols() != setup.local_dim) {
    throw validation_error("single_particle_block_operator: operator must act on the ambient space");
  }
  const ComplexMatrix& basis = setup.structure.subspaces[block];
  return basis.adjoint() * ambient_op * basis;
}

}  // namespace relent

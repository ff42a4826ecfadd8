// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <vector>

#include "relent/common.hpp"

namespace relent {

// Schmidt decomposition of a normalized bipartite vector.
// coefficients are sorted descending and include trailing zeros up to
// min(dim_a, dim_b); the columns of left_basis and right_basis are
// orthonormal and satisfy psi = sum_k coefficients[k] * left_k (x) right_k.
struct SchmidtResult {
  RealVector coefficients;
  ComplexMatrix left_basis;
  ComplexMatrix right_basis;
};

// Kronecker product of vectors: out[i * dim(b) + j] = a[i] * b[j].
ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b);

// Reduced density matrix keeping the factors listed in keep (0-based
// positions into dims, strictly increasing). dims describes the tensor
// factorization of rho, slowest factor first.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::span<const int> dims,
                            std::span<const int> keep);

// Schmidt decomposition across the split C^dim_a (x) C^dim_b.
// psi must be normalized to within tol.
SchmidtResult svd_schmidt(const ComplexVector& psi, int dim_a, int dim_b,
                          double tol = kDefaultTol);

// Modified Gram-Schmidt with re-orthogonalization. Vectors whose residual
// after projection has norm <= tol * max(1, original norm) are dropped, so
// the result spans the same space with orthonormal elements.
std::vector<ComplexVector> orthonormalize(
    const std::vector<ComplexVector>& vectors, double tol = kDefaultTol);

// Column-wise variant; returns a matrix whose columns are orthonormal.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& vectors,
                                     double tol = kDefaultTol);

// Haar-distributed random unitary: QR of a standard complex Gaussian
// matrix with the R diagonal phases absorbed into the columns of Q.
ComplexMatrix haar_unitary(int dim, std::mt19937_64& rng);

// Orthogonal projector B * B^dagger onto the span of the columns of basis;
// the columns must already be orthonormal to within tol.
ComplexMatrix projector_onto(const ComplexMatrix& basis,
                             double tol = kDefaultTol);
ComplexMatrix projector_onto(const std::vector<ComplexVector>& basis,
                             double tol = kDefaultTol);

// Applies op to one factor of (C^local_dim)^(x num_factors):
// out = (1 (x) ... (x) op (x) ... (x) 1) v with op at position slot.
ComplexVector apply_site_operator(const ComplexVector& v, int local_dim,
                                  int num_factors, int slot,
                                  const ComplexMatrix& op);

// Real part of <psi| op |psi>. Requires op self-adjoint to within tol and
// rejects results whose imaginary part exceeds tol.
double expectation(const ComplexVector& psi, const ComplexMatrix& op,
                   double tol = kDefaultTol);

}  // namespace relent

// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#include "relent/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace relent {

long long checked_power(int base, int exponent) {
  if (base < 1 || exponent < 0) {
    throw validation_error("checked_power: base must be >= 1 and exponent >= 0");
  }
  long long result = 1;
  for (int k = 0; k < exponent; ++k) {
    if (result > kDimensionCap / base) {
      throw validation_error("dimension " + std::to_string(base) + "^" +
                             std::to_string(exponent) + " exceeds the cap of " +
                             std::to_string(kDimensionCap) + " entries");
    }
    result *= base;
  }
  return result;
}

long long checked_product(std::span<const int> dims) {
  long long result = 1;
  for (int d : dims) {
    if (d < 1) throw validation_error("checked_product: dimensions must be >= 1");
    if (result > kDimensionCap / d) {
      throw validation_error("product dimension exceeds the cap of " +
                             std::to_string(kDimensionCap) + " entries");
    }
    result *= d;
  }
  return result;
}

ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() == 0 || b.size() == 0) {
    throw validation_error("tensor_product: factors must be non-empty");
  }
  if (a.size() > kDimensionCap / b.size()) {
    throw validation_error("tensor_product: result exceeds the dimension cap");
  }
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a[i] * b;
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::span<const int> dims,
                            std::span<const int> keep) {
  const long long total = checked_product(dims);
  if (rho.rows() != total || rho.cols() != total) {
    throw validation_error("partial_trace: matrix size does not match dims");
  }
  if (keep.empty()) {
    throw validation_error("partial_trace: keep set must be non-empty");
  }
  const int num = static_cast<int>(dims.size());
  std::vector<bool> kept(num, false);
  int prev = -1;
  for (int p : keep) {
    if (p < 0 || p >= num) {
      throw validation_error("partial_trace: keep position out of range");
    }
    if (p <= prev) {
      throw validation_error("partial_trace: keep positions must be strictly increasing");
    }
    kept[p] = true;
    prev = p;
  }

  std::vector<int> keep_dims, trace_dims, keep_pos, trace_pos;
  for (int p = 0; p < num; ++p) {
    if (kept[p]) {
      keep_dims.push_back(dims[p]);
      keep_pos.push_back(p);
    } else {
      trace_dims.push_back(dims[p]);
      trace_pos.push_back(p);
    }
  }
  const long long dim_keep = checked_product(keep_dims);
  const long long dim_trace =
      trace_dims.empty() ? 1 : checked_product(trace_dims);

  std::vector<int> kr(keep_dims.size()), kc(keep_dims.size()),
      td(trace_dims.size()), full_row(num), full_col(num);
  ComplexMatrix out = ComplexMatrix::Zero(dim_keep, dim_keep);
  for (long long r = 0; r < dim_keep; ++r) {
    unflatten_index(r, keep_dims, kr);
    for (long long c = 0; c < dim_keep; ++c) {
      unflatten_index(c, keep_dims, kc);
      Complex sum = 0.0;
      for (long long t = 0; t < dim_trace; ++t) {
        unflatten_index(t, trace_dims, td);
        for (std::size_t k = 0; k < keep_pos.size(); ++k) {
          full_row[keep_pos[k]] = kr[k];
          full_col[keep_pos[k]] = kc[k];
        }
        for (std::size_t k = 0; k < trace_pos.size(); ++k) {
          full_row[trace_pos[k]] = td[k];
          full_col[trace_pos[k]] = td[k];
        }
        sum += rho(flatten_index(full_row, dims), flatten_index(full_col, dims));
      }
      out(r, c) = sum;
    }
  }
  return out;
}

SchmidtResult svd_schmidt(const ComplexVector& psi, int dim_a, int dim_b,
                          double tol) {
  if (dim_a < 1 || dim_b < 1 ||
      psi.size() != static_cast<long long>(dim_a) * dim_b) {
    throw validation_error("svd_schmidt: vector length does not match dim_a * dim_b");
  }
  if (std::abs(psi.norm() - 1.0) > tol) {
    throw validation_error("svd_schmidt: input must be normalized (norm = " +
                           std::to_string(psi.norm()) + ")");
  }
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      mat(psi.data(), dim_a, dim_b);
  Eigen::BDCSVD<ComplexMatrix> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtResult result;
  result.coefficients = svd.singularValues();
  result.left_basis = svd.matrixU();
  // psi = sum_k s_k U_k (x) conj(V_k), so the right factors are the
  // conjugated columns of V.
  result.right_basis = svd.matrixV().conjugate();
  return result;
}

std::vector<ComplexVector> orthonormalize(
    const std::vector<ComplexVector>& vectors, double tol) {
  if (vectors.empty()) {
    throw validation_error("orthonormalize: empty spanning set");
  }
  const Eigen::Index dim = vectors.front().size();
  std::vector<ComplexVector> basis;
  for (const ComplexVector& v : vectors) {
    if (v.size() != dim) {
      throw validation_error("orthonormalize: vectors have mixed dimensions");
    }
    const double original = v.norm();
    ComplexVector w = v;
    // Two projection passes keep orthogonality at machine precision even
    // for nearly dependent inputs.
    for (int pass = 0; pass < 2; ++pass) {
      for (const ComplexVector& b : basis) w -= b.dot(w) * b;
    }
    if (w.norm() > tol * std::max(1.0, original)) {
      basis.push_back(w / w.norm());
    }
  }
  return basis;
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& vectors, double tol) {
  std::vector<ComplexVector> input;
  input.reserve(vectors.cols());
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    input.push_back(vectors.col(j));
  }
  const std::vector<ComplexVector> basis = orthonormalize(input, tol);
  ComplexMatrix out(vectors.rows(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = basis[j];
  }
  return out;
}

ComplexMatrix haar_unitary(int dim, std::mt19937_64& rng) {
  if (dim < 1) throw validation_error("haar_unitary: dim must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix ginibre(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      ginibre(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the phases of the R diagonal makes the distribution exactly
  // Haar rather than QR-convention dependent.
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

ComplexMatrix projector_onto(const ComplexMatrix& basis, double tol) {
  if (basis.cols() == 0) {
    throw validation_error("projector_onto: empty basis");
  }
  const ComplexMatrix gram = basis.adjoint() * basis;
  const double defect =
      (gram - ComplexMatrix::Identity(basis.cols(), basis.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > tol) {
    throw validation_error("projector_onto: basis is not orthonormal (defect " +
                           std::to_string(defect) + ")");
  }
  return basis * basis.adjoint();
}

ComplexMatrix projector_onto(const std::vector<ComplexVector>& basis,
                             double tol) {
  if (basis.empty()) {
    throw validation_error("projector_onto: empty basis");
  }
  ComplexMatrix mat(basis.front().size(),
                    static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != mat.rows()) {
      throw validation_error("projector_onto: vectors have mixed dimensions");
    }
    mat.col(static_cast<Eigen::Index>(j)) = basis[j];
  }
  return projector_onto(mat, tol);
}

ComplexVector apply_site_operator(const ComplexVector& v, int local_dim,
                                  int num_factors, int slot,
                                  const ComplexMatrix& op) {
  const long long dim = checked_power(local_dim, num_factors);
  if (v.size() != dim) {
    throw validation_error("apply_site_operator: vector length mismatch");
  }
  if (slot < 0 || slot >= num_factors) {
    throw validation_error("apply_site_operator: slot out of range");
  }
  if (op.rows() != local_dim || op.cols() != local_dim) {
    throw validation_error("apply_site_operator: operator size mismatch");
  }
  const long long stride = checked_power(local_dim, num_factors - 1 - slot);
  const long long outer = dim / (stride * local_dim);
  ComplexVector out(dim);
  ComplexVector x(local_dim);
  for (long long o = 0; o < outer; ++o) {
    for (long long inner = 0; inner < stride; ++inner) {
      const long long base = o * local_dim * stride + inner;
      for (int j = 0; j < local_dim; ++j) x[j] = v[base + j * stride];
      const ComplexVector y = op * x;
      for (int j = 0; j < local_dim; ++j) out[base + j * stride] = y[j];
    }
  }
  return out;
}

double expectation(const ComplexVector& psi, const ComplexMatrix& op,
                   double tol) {
  if (op.rows() != op.cols() || op.rows() != psi.size()) {
    throw validation_error("expectation: operator size does not match the state");
  }
  const double hermitian_defect = (op - op.adjoint()).cwiseAbs().maxCoeff();
  if (hermitian_defect > tol) {
    throw validation_error("expectation: operator is not self-adjoint (defect " +
                           std::to_string(hermitian_defect) + ")");
  }
  const Complex value = psi.dot(op * psi);
  if (std::abs(value.imag()) > tol) {
    throw validation_error("expectation: value has imaginary part " +
                           std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace relent

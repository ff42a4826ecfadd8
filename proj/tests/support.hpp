// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>

#include "relent/entanglement.hpp"
#include "relent/experiments.hpp"

namespace relent::test {

inline double max_abs(const ComplexMatrix& m) {
  return m.cwiseAbs().maxCoeff();
}

inline ComplexVector random_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(dim);
  for (int k = 0; k < dim; ++k) v[k] = Complex(gauss(rng), gauss(rng));
  return v;
}

inline ComplexVector random_unit(int dim, std::mt19937_64& rng) {
  ComplexVector v = random_vector(dim, rng);
  return v / v.norm();
}

inline ComplexMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  ComplexMatrix g(dim, dim);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return (g + g.adjoint()) / 2.0;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Distinct per-process scratch paths so parallel test runs don't collide.
inline std::string temp_path(const std::string& name) {
  static const std::string prefix =
      (std::filesystem::temp_directory_path() /
       ("relent_test_" + std::to_string(::getpid()) + "_"))
          .string();
  return prefix + name;
}

}  // namespace relent::test

// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <stdexcept>
#include <string>

namespace relent {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Default tolerance for numerical contract checks (orthonormality,
// normalization, residuals of exact identities).
inline constexpr double kDefaultTol = 1e-10;

// Tighter tolerance for checks that hold to machine precision by
// construction: unitarity of generated matrices, projector algebra.
inline constexpr double kUnitarityTol = 1e-12;

// A squared norm below this threshold counts as exactly zero weight;
// the state is then treated as having no measurable component.
inline constexpr double kZeroWeightThreshold = 1e-24;

// A state is accepted as a product across blocks when every single-block
// reduced density matrix has purity at least 1 - kSeparabilityTol
// (equivalently, every secondary Schmidt coefficient is at most 1e-4).
inline constexpr double kSeparabilityTol = 1e-8;
inline constexpr double kSecondSchmidtTol = 1e-4;

// Dense vectors and matrices above this entry count are rejected up front
// rather than allowed to exhaust memory.
inline constexpr long long kDimensionCap = 10'000'000;

// Invalid user input or violated numerical precondition. The command-line
// driver maps this to exit code 1; any other exception maps to 2.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// base^exponent with overflow and cap guard.
long long checked_power(int base, int exponent);

// Product of dims with overflow and cap guard.
long long checked_product(std::span<const int> dims);

// Multi-index <-> flat offset in row-major order: digit 0 varies slowest.
inline long long flatten_index(std::span<const int> digits,
                               std::span<const int> dims) {
  long long flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    flat = flat * dims[k] + digits[k];
  }
  return flat;
}

inline void unflatten_index(long long flat, std::span<const int> dims,
                            std::span<int> digits_out) {
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits_out[k] = static_cast<int>(flat % dims[k]);
    flat /= dims[k];
  }
}

inline long long flatten_uniform(std::span<const int> digits, int base) {
  long long flat = 0;
  for (int digit : digits) flat = flat * base + digit;
  return flat;
}

inline void unflatten_uniform(long long flat, int base,
                              std::span<int> digits_out) {
  for (std::size_t k = digits_out.size(); k-- > 0;) {
    digits_out[k] = static_cast<int>(flat % base);
    flat /= base;
  }
}

}  // namespace relent

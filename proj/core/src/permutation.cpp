// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#include "relent/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace relent {

namespace {

constexpr int kMaxEnumeratedParticles = 10;

void check_mapping(const Permutation& sigma) {
  std::vector<bool> seen(sigma.mapping.size(), false);
  for (int v : sigma.mapping) {
    if (v < 0 || v >= sigma.size() || seen[v]) {
      throw validation_error("permutation mapping is not a bijection");
    }
    seen[v] = true;
  }
}

int parity_of(std::span<const int> mapping) {
  int inversions = 0;
  for (std::size_t i = 0; i < mapping.size(); ++i) {
    for (std::size_t j = i + 1; j < mapping.size(); ++j) {
      if (mapping[i] > mapping[j]) ++inversions;
    }
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace

const char* to_string(Statistics statistics) {
  return statistics == Statistics::Boson ? "boson" : "fermion";
}

Statistics statistics_from_string(const std::string& name) {
  if (name == "boson") return Statistics::Boson;
  if (name == "fermion") return Statistics::Fermion;
  throw validation_error("unknown statistics '" + name +
                         "' (expected \"boson\" or \"fermion\")");
}

Permutation identity_permutation(int n) {
  if (n < 1) throw validation_error("permutation size must be >= 1");
  Permutation sigma;
  sigma.mapping.resize(n);
  std::iota(sigma.mapping.begin(), sigma.mapping.end(), 0);
  return sigma;
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size()) {
    throw validation_error("compose: permutation sizes differ");
  }
  check_mapping(sigma);
  check_mapping(tau);
  Permutation out;
  out.mapping.resize(sigma.size());
  for (int k = 0; k < sigma.size(); ++k) {
    out.mapping[k] = sigma.mapping[tau.mapping[k]];
  }
  return out;
}

Permutation inverse(const Permutation& sigma) {
  check_mapping(sigma);
  Permutation out;
  out.mapping.resize(sigma.size());
  for (int k = 0; k < sigma.size(); ++k) {
    out.mapping[sigma.mapping[k]] = k;
  }
  return out;
}

std::vector<Permutation> enumerate_permutations(int n) {
  if (n < 1 || n > kMaxEnumeratedParticles) {
    throw validation_error("enumerate_permutations: size must be in [1, " +
                           std::to_string(kMaxEnumeratedParticles) + "]");
  }
  std::vector<Permutation> out;
  Permutation sigma = identity_permutation(n);
  do {
    out.push_back(sigma);
  } while (std::next_permutation(sigma.mapping.begin(), sigma.mapping.end()));
  return out;
}

int signature(const Permutation& sigma) {
  check_mapping(sigma);
  return parity_of(sigma.mapping);
}

ProvisionalState make_provisional_state(int local_dim, int num_particles,
                                        ComplexVector amplitudes) {
  if (local_dim < 2) {
    throw validation_error("local dimension must be >= 2");
  }
  if (num_particles < 1) {
    throw validation_error("particle count must be >= 1");
  }
  const long long dim = checked_power(local_dim, num_particles);
  if (amplitudes.size() != dim) {
    throw validation_error("amplitude vector has " +
                           std::to_string(amplitudes.size()) +
                           " entries, expected " + std::to_string(dim));
  }
  if (!amplitudes.allFinite()) {
    throw validation_error("amplitudes contain non-finite entries");
  }
  return ProvisionalState{local_dim, num_particles, std::move(amplitudes)};
}

ProvisionalState basis_state(int local_dim, std::span<const int> indices) {
  const int n = static_cast<int>(indices.size());
  const long long dim = checked_power(local_dim, n);
  for (int idx : indices) {
    if (idx < 0 || idx >= local_dim) {
      throw validation_error("basis index out of range");
    }
  }
  ComplexVector amp = ComplexVector::Zero(dim);
  amp[flatten_uniform(indices, local_dim)] = 1.0;
  return make_provisional_state(local_dim, n, std::move(amp));
}

ProvisionalState apply_permutation(const Permutation& sigma,
                                   const ProvisionalState& psi) {
  if (sigma.size() != psi.num_particles) {
    throw validation_error("apply_permutation: permutation size differs from particle count");
  }
  check_mapping(sigma);
  const long long dim = psi.amplitudes.size();
  const int n = psi.num_particles;
  ComplexVector out(dim);
  std::vector<int> digits(n), gathered(n);
  for (long long idx = 0; idx < dim; ++idx) {
    unflatten_uniform(idx, psi.local_dim, digits);
    for (int k = 0; k < n; ++k) gathered[k] = digits[sigma.mapping[k]];
    out[idx] = psi.amplitudes[flatten_uniform(gathered, psi.local_dim)];
  }
  return ProvisionalState{psi.local_dim, psi.num_particles, std::move(out)};
}

ComplexVector symmetrize_amplitudes(const ComplexVector& amplitudes,
                                    int local_dim, int num_particles,
                                    Statistics statistics) {
  if (num_particles < 1 || num_particles > kMaxEnumeratedParticles) {
    throw validation_error("symmetrize: particle count must be in [1, " +
                           std::to_string(kMaxEnumeratedParticles) + "]");
  }
  const long long dim = checked_power(local_dim, num_particles);
  if (amplitudes.size() != dim) {
    throw validation_error("symmetrize: amplitude length mismatch");
  }
  const int n = num_particles;
  ComplexVector out = ComplexVector::Zero(dim);
  std::vector<int> mapping(n), digits(n), gathered(n);
  std::iota(mapping.begin(), mapping.end(), 0);
  long long count = 0;
  do {
    const double sign =
        statistics == Statistics::Fermion ? parity_of(mapping) : 1.0;
    for (long long idx = 0; idx < dim; ++idx) {
      unflatten_uniform(idx, local_dim, digits);
      for (int k = 0; k < n; ++k) gathered[k] = digits[mapping[k]];
      out[idx] += sign * amplitudes[flatten_uniform(gathered, local_dim)];
    }
    ++count;
  } while (std::next_permutation(mapping.begin(), mapping.end()));
  out /= static_cast<double>(count);
  return out;
}

ProvisionalState symmetrize(const ProvisionalState& psi,
                            Statistics statistics) {
  return ProvisionalState{
      psi.local_dim, psi.num_particles,
      symmetrize_amplitudes(psi.amplitudes, psi.local_dim, psi.num_particles,
                            statistics)};
}

double symmetrization_defect(const ProvisionalState& psi,
                             Statistics statistics) {
  const ComplexVector projected = symmetrize_amplitudes(
      psi.amplitudes, psi.local_dim, psi.num_particles, statistics);
  return (projected - psi.amplitudes).norm();
}

}  // namespace relent

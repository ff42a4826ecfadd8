// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "relent/common.hpp"

namespace relent {

enum class Statistics { Boson, Fermion };

const char* to_string(Statistics statistics);
Statistics statistics_from_string(const std::string& name);

// A permutation of particle slots; mapping[k] is the image of slot k.
// Composition convention: compose(sigma, tau).mapping[k] =
// sigma.mapping[tau.mapping[k]], i.e. tau acts first.
struct Permutation {
  std::vector<int> mapping;

  int size() const { return static_cast<int>(mapping.size()); }
};

Permutation identity_permutation(int n);
Permutation compose(const Permutation& sigma, const Permutation& tau);
Permutation inverse(const Permutation& sigma);

// All permutations of {0..n-1} in lexicographic order; n <= 10.
std::vector<Permutation> enumerate_permutations(int n);

// Parity: +1 for even permutations, -1 for odd.
int signature(const Permutation& sigma);

// Pure state of num_particles distinguishable slots, each of dimension
// local_dim. amplitudes has local_dim^num_particles entries in row-major
// order with the slot-0 index varying slowest.
struct ProvisionalState {
  int local_dim = 0;
  int num_particles = 0;
  ComplexVector amplitudes;
};

// Validates dimensions (local_dim >= 2, num_particles >= 1, amplitude
// length local_dim^num_particles, finite entries).
ProvisionalState make_provisional_state(int local_dim, int num_particles,
                                        ComplexVector amplitudes);

// |e_{indices[0]}> (x) ... (x) |e_{indices[N-1]}>.
ProvisionalState basis_state(int local_dim, std::span<const int> indices);

// Moves the ket in slot k to slot sigma(k): the component of the result at
// multi-index (j_0..j_{N-1}) is the input component at (j_{sigma(0)}..).
ProvisionalState apply_permutation(const Permutation& sigma,
                                   const ProvisionalState& psi);

// Raw-buffer variant used in hot paths; amplitudes has local_dim^n entries.
ComplexVector symmetrize_amplitudes(const ComplexVector& amplitudes,
                                    int local_dim, int num_particles,
                                    Statistics statistics);

// Projects onto the symmetric (boson) or antisymmetric (fermion) sector:
// the average of all slot permutations, signed for fermions. Never
// renormalizes; the result may be zero.
ProvisionalState symmetrize(const ProvisionalState& psi,
                            Statistics statistics);

// Norm of (X - 1) psi where X is the symmetrizer for the given statistics;
// zero exactly when psi already lies in the X-sector.
double symmetrization_defect(const ProvisionalState& psi,
                             Statistics statistics);

}  // namespace relent

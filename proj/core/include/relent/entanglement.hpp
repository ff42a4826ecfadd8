// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relent/subspace.hpp"

namespace relent {

enum class Verdict { FilteredOut, Separable, Entangled };

const char* to_string(Verdict verdict);

// Outcome of the full pipeline for a pure state relative to a setup.
// schmidt maps each block index to the decomposition of that block against
// the rest (only for setups with at least two blocks). squared_concurrence
// is present only for two-block setups.
struct EntanglementReport {
  Verdict verdict = Verdict::FilteredOut;
  double weight = 0.0;
  std::map<int, SchmidtResult> schmidt;
  std::optional<double> squared_concurrence;
  std::vector<double> block_purities;
};

// Schmidt decomposition of a normalized measurement-space state across the
// bipartition (blocks in cut) vs (the rest). cut must be a non-empty
// proper subset of the block indices.
SchmidtResult schmidt_coefficients(const MesState& mes,
                                   std::span<const int> cut,
                                   double tol = kDefaultTol);

// 2 * (1 - tr rho_1^2) for a normalized two-block state; equals
// 2 * (1 - sum_k lambda_k^4) in terms of Schmidt coefficients. Ranges from
// 0 (product) to 2 * (1 - 1/d) (maximally entangled).
double squared_concurrence(const MesState& mes, double tol = kDefaultTol);

// True when every single-block reduced density matrix of the normalized
// state has purity >= 1 - tol; also returns the purities in block order.
std::pair<bool, std::vector<double>> is_product_pure(
    const MesState& mes, double tol = kSeparabilityTol);

// Full pipeline: project onto the measurable subspace, classify as
// filtered out / separable / entangled, and report Schmidt data, block
// purities and (for two blocks) the squared concurrence of the
// renormalized measurable part.
EntanglementReport separability_verdict(const ProvisionalState& psi,
                                        const MeasurableSpace& space,
                                        bool auto_symmetrize = false,
                                        double tol = kDefaultTol,
                                        double separability_tol = kSeparabilityTol);
EntanglementReport separability_verdict(const ProvisionalState& psi,
                                        const MeasurementSetup& setup,
                                        bool auto_symmetrize = false,
                                        double tol = kDefaultTol,
                                        double separability_tol = kSeparabilityTol);

// Product rule diagnostic: lhs = <psi| lift(ops) |psi>, rhs = prod_i
// <psi| lift_factor(i, ops[i]) |psi>. The two agree for states inside the
// measurable subspace that are products across blocks; the residual
// |lhs - rhs| witnesses correlation otherwise. psi must be normalized and
// lie in the measurable subspace to within tol.
struct FactorizationCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

FactorizationCheck factorization_check(const ProvisionalState& psi,
                                       const MeasurableSpace& space,
                                       const std::vector<ComplexMatrix>& block_ops,
                                       double tol = kDefaultTol);

// Partial-transpose test of a density matrix on a tensor product with
// factor dimensions dims: transposes the factors listed in cut (a
// non-empty proper subset of the positions) and reports the minimum
// eigenvalue. A negative eigenvalue (below -tol) certifies entanglement;
// non-negativity is necessary but not sufficient for separability.
struct PptEntry {
  std::vector<int> cut;
  double min_eigenvalue = 0.0;
  bool violates = false;
};

PptEntry ppt_check(const ComplexMatrix& rho, std::span<const int> dims,
                   std::span<const int> cut, double tol = kDefaultTol);

// PPT report for the compression of rho onto the measurable subspace, one
// entry per single-block cut.
struct MixedReport {
  double weight = 0.0;
  bool filtered = false;
  std::vector<PptEntry> cuts;
  std::string note;
};

MixedReport mixed_state_report(const ComplexMatrix& rho,
                               const MeasurableSpace& space,
                               double tol = kDefaultTol);

// Detects i.i.d. product form: returns phi (phase-fixed so its first
// non-negligible entry is real positive) when psi equals phi^(x N) up to a
// global phase and tol, otherwise nullopt. psi must be normalized.
std::optional<ComplexVector> is_iid(const ProvisionalState& psi,
                                    double tol = kDefaultTol);

}  // namespace relent

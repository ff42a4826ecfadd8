// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#include "relent/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace relent {

namespace {

// Reorders a multi-block vector so the cut blocks come first (ascending),
// followed by the remaining blocks (ascending). Returns the permuted
// amplitudes together with the two aggregate dimensions.
struct RegroupedState {
  ComplexVector amplitudes;
  long long dim_cut = 1;
  long long dim_rest = 1;
};

RegroupedState regroup_for_cut(const MesState& mes, std::span<const int> cut) {
  const int s = static_cast<int>(mes.block_dims.size());
  std::vector<bool> in_cut(s, false);
  int prev = -1;
  for (int b : cut) {
    if (b < 0 || b >= s) {
      throw validation_error("cut: block index out of range");
    }
    if (b <= prev) {
      throw validation_error("cut: block indices must be strictly increasing");
    }
    in_cut[b] = true;
    prev = b;
  }
  if (cut.empty() || static_cast<int>(cut.size()) == s) {
    throw validation_error("cut: must be a non-empty proper subset of the blocks");
  }

  std::vector<int> order;
  order.reserve(s);
  for (int b : cut) order.push_back(b);
  RegroupedState out;
  for (int b = 0; b < s; ++b) {
    if (in_cut[b]) {
      out.dim_cut *= mes.block_dims[b];
    } else {
      out.dim_rest *= mes.block_dims[b];
      order.push_back(b);
    }
  }

  std::vector<int> permuted_dims(s);
  for (int k = 0; k < s; ++k) permuted_dims[k] = mes.block_dims[order[k]];
  out.amplitudes.resize(mes.amplitudes.size());
  std::vector<int> digits(s), permuted(s);
  for (long long idx = 0; idx < mes.amplitudes.size(); ++idx) {
    unflatten_index(idx, mes.block_dims, digits);
    for (int k = 0; k < s; ++k) permuted[k] = digits[order[k]];
    out.amplitudes[flatten_index(permuted, permuted_dims)] =
        mes.amplitudes[idx];
  }
  return out;
}

}  // namespace

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::FilteredOut:
      return "filtered_out";
    case Verdict::Separable:
      return "separable";
    case Verdict::Entangled:
      return "entangled";
  }
  return "unknown";
}

SchmidtResult schmidt_coefficients(const MesState& mes,
                                   std::span<const int> cut, double tol) {
  if (mes.block_dims.size() < 2) {
    throw validation_error("schmidt_coefficients: need at least two blocks");
  }
  const RegroupedState regrouped = regroup_for_cut(mes, cut);
  return svd_schmidt(regrouped.amplitudes,
                     static_cast<int>(regrouped.dim_cut),
                     static_cast<int>(regrouped.dim_rest), tol);
}

double squared_concurrence(const MesState& mes, double tol) {
  if (mes.block_dims.size() != 2) {
    throw validation_error("squared_concurrence: defined for two-block states only");
  }
  const int cut[] = {0};
  const SchmidtResult schmidt = schmidt_coefficients(mes, cut, tol);
  double quartic = 0.0;
  for (Eigen::Index k = 0; k < schmidt.coefficients.size(); ++k) {
    const double lambda = schmidt.coefficients[k];
    quartic += lambda * lambda * lambda * lambda;
  }
  return 2.0 * (1.0 - quartic);
}

std::pair<bool, std::vector<double>> is_product_pure(const MesState& mes,
                                                     double tol) {
  const double norm = mes.amplitudes.norm();
  if (std::abs(norm - 1.0) > kDefaultTol) {
    throw validation_error("is_product_pure: state must be normalized");
  }
  const long long dim = mes.amplitudes.size();
  if (dim > kDimensionCap / dim) {
    throw validation_error("is_product_pure: density matrix exceeds the dimension cap");
  }
  const ComplexMatrix rho =
      mes.amplitudes * mes.amplitudes.adjoint();
  const int s = static_cast<int>(mes.block_dims.size());
  std::vector<double> purities(s);
  bool product = true;
  for (int b = 0; b < s; ++b) {
    const int keep[] = {b};
    const ComplexMatrix reduced = partial_trace(rho, mes.block_dims, keep);
    const double purity = (reduced * reduced).trace().real();
    purities[b] = purity;
    if (purity < 1.0 - tol) product = false;
  }
  return {product, purities};
}

EntanglementReport separability_verdict(const ProvisionalState& psi,
                                        const MeasurableSpace& space,
                                        bool auto_symmetrize, double tol,
                                        double separability_tol) {
  ProvisionalState work = psi;
  const double norm = work.amplitudes.norm();
  if (norm == 0.0) {
    throw validation_error("separability_verdict: zero state");
  }
  if (auto_symmetrize) {
    const double defect =
        symmetrization_defect(work, space.setup().statistics);
    if (defect > tol * norm) {
      work = symmetrize(work, space.setup().statistics);
      const double projected_norm = work.amplitudes.norm();
      if (projected_norm <= tol) {
        throw validation_error(
            "separability_verdict: symmetrization annihilated the state");
      }
      work.amplitudes /= projected_norm;
    }
  }
  if (std::abs(work.amplitudes.norm() - 1.0) > tol) {
    throw validation_error("separability_verdict: state must be normalized");
  }

  const DecompositionResult split = space.decompose(work, false, tol);
  EntanglementReport report;
  report.weight = split.weight;
  if (split.weight < kZeroWeightThreshold) {
    report.verdict = Verdict::FilteredOut;
    return report;
  }

  ProvisionalState observable = split.observable;
  observable.amplitudes /= std::sqrt(split.weight);
  const MesState mes = space.inverse(observable, tol);

  const auto [product, purities] = is_product_pure(mes, separability_tol);
  report.block_purities = purities;
  report.verdict = product ? Verdict::Separable : Verdict::Entangled;

  const int s = static_cast<int>(mes.block_dims.size());
  if (s >= 2) {
    for (int b = 0; b < s; ++b) {
      const int cut[] = {b};
      report.schmidt.emplace(b, schmidt_coefficients(mes, cut, tol));
    }
    if (s == 2) {
      report.squared_concurrence = squared_concurrence(mes, tol);
    }
  }
  return report;
}

EntanglementReport separability_verdict(const ProvisionalState& psi,
                                        const MeasurementSetup& setup,
                                        bool auto_symmetrize, double tol,
                                        double separability_tol) {
  return separability_verdict(psi, MeasurableSpace(setup, tol),
                              auto_symmetrize, tol, separability_tol);
}

FactorizationCheck factorization_check(const ProvisionalState& psi,
                                       const MeasurableSpace& space,
                                       const std::vector<ComplexMatrix>& block_ops,
                                       double tol) {
  if (std::abs(psi.amplitudes.norm() - 1.0) > tol) {
    throw validation_error("factorization_check: state must be normalized");
  }
  const DecompositionResult split = space.decompose(psi, false, tol);
  if (std::abs(split.weight - 1.0) > std::sqrt(tol)) {
    throw validation_error(
        "factorization_check: state must lie inside the measurable subspace "
        "(weight " + std::to_string(split.weight) + ")");
  }
  FactorizationCheck result;
  result.lhs = expectation(psi, space.lift(block_ops).provisional, tol);
  result.rhs = 1.0;
  for (int b = 0; b < space.setup().num_blocks(); ++b) {
    result.rhs *=
        expectation(psi, space.lift_factor(b, block_ops[b]).provisional, tol);
  }
  result.residual = std::abs(result.lhs - result.rhs);
  return result;
}

PptEntry ppt_check(const ComplexMatrix& rho, std::span<const int> dims,
                   std::span<const int> cut, double tol) {
  const long long total = checked_product(dims);
  if (rho.rows() != total || rho.cols() != total) {
    throw validation_error("ppt_check: matrix size does not match dims");
  }
  const double hermitian_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (hermitian_defect > tol) {
    throw validation_error("ppt_check: density matrix is not self-adjoint");
  }
  if (std::abs(rho.trace().real() - 1.0) > tol) {
    throw validation_error("ppt_check: density matrix must have unit trace");
  }
  {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho,
                                                        Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol) {
      throw validation_error("ppt_check: input is not positive semidefinite");
    }
  }

  const int num = static_cast<int>(dims.size());
  std::vector<bool> transpose(num, false);
  int prev = -1;
  for (int b : cut) {
    if (b < 0 || b >= num) {
      throw validation_error("ppt_check: cut position out of range");
    }
    if (b <= prev) {
      throw validation_error("ppt_check: cut positions must be strictly increasing");
    }
    transpose[b] = true;
    prev = b;
  }
  if (cut.empty() || static_cast<int>(cut.size()) == num) {
    throw validation_error(
        "ppt_check: cut must be a non-empty proper subset of the factors");
  }

  ComplexMatrix transposed(total, total);
  std::vector<int> rd(num), cd(num), tr(num), tc(num);
  for (long long r = 0; r < total; ++r) {
    unflatten_index(r, dims, rd);
    for (long long c = 0; c < total; ++c) {
      unflatten_index(c, dims, cd);
      for (int k = 0; k < num; ++k) {
        tr[k] = transpose[k] ? cd[k] : rd[k];
        tc[k] = transpose[k] ? rd[k] : cd[k];
      }
      transposed(flatten_index(tr, dims), flatten_index(tc, dims)) = rho(r, c);
    }
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(transposed,
                                                      Eigen::EigenvaluesOnly);
  PptEntry entry;
  entry.cut.assign(cut.begin(), cut.end());
  entry.min_eigenvalue = solver.eigenvalues().minCoeff();
  entry.violates = entry.min_eigenvalue < -tol;
  return entry;
}

MixedReport mixed_state_report(const ComplexMatrix& rho,
                               const MeasurableSpace& space, double tol) {
  MixedReport report;
  report.note =
      "a positive partial transpose is necessary for separability but not "
      "sufficient; only a violation is conclusive";
  const RhoMesResult compressed = space.rho_mes(rho, tol);
  report.weight = compressed.weight;
  if (compressed.filtered()) {
    report.filtered = true;
    return report;
  }
  const std::vector<int>& dims = space.block_dims();
  if (dims.size() >= 2) {
    for (int b = 0; b < static_cast<int>(dims.size()); ++b) {
      const int cut[] = {b};
      report.cuts.push_back(ppt_check(*compressed.rho, dims, cut, tol));
    }
  }
  return report;
}

std::optional<ComplexVector> is_iid(const ProvisionalState& psi, double tol) {
  if (std::abs(psi.amplitudes.norm() - 1.0) > tol) {
    throw validation_error("is_iid: state must be normalized");
  }
  const int n = psi.local_dim;
  ComplexVector factor;
  if (psi.num_particles == 1) {
    factor = psi.amplitudes;
  } else {
    const long long rest = psi.amplitudes.size() / n;
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        mat(psi.amplitudes.data(), n, rest);
    Eigen::BDCSVD<ComplexMatrix> svd(mat, Eigen::ComputeThinU);
    factor = svd.matrixU().col(0);
  }

  ComplexVector power = factor;
  for (int k = 1; k < psi.num_particles; ++k) {
    power = tensor_product(power, factor);
  }
  const Complex overlap = power.dot(psi.amplitudes);
  if ((psi.amplitudes - overlap * power).norm() > tol) {
    return std::nullopt;
  }

  // Fix the global phase so the first non-negligible entry is real
  // positive; the i.i.d. form determines the factor only up to phase.
  const double threshold = 1e-12 * factor.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < factor.size(); ++k) {
    const double mag = std::abs(factor[k]);
    if (mag > threshold) {
      factor *= std::conj(factor[k]) / mag;
      break;
    }
  }
  return factor;
}

}  // namespace relent

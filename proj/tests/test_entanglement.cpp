// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "doctest.h"
#include "relent/entanglement.hpp"
#include "relent/experiments.hpp"
#include "support.hpp"

using namespace relent;
using test::max_abs;

namespace {

// Two one-particle blocks in C^6 carved out of the columns of u.
MeasurementSetup boson_split_setup(const ComplexMatrix& u) {
  std::vector<ComplexMatrix> spans = {ComplexMatrix(u.leftCols(3)),
                                      ComplexMatrix(u.rightCols(3))};
  return validate_setup(validate_partition({{0}, {1}}, 2),
                        validate_orthogonal_structure(spans, 6),
                        Statistics::Boson);
}

// Two one-particle blocks in C^4 on the canonical coordinate split.
MeasurementSetup canonical_pair_setup(Statistics statistics) {
  std::vector<std::vector<ComplexVector>> spans(2);
  spans[0] = {ComplexVector::Unit(4, 0), ComplexVector::Unit(4, 1)};
  spans[1] = {ComplexVector::Unit(4, 2), ComplexVector::Unit(4, 3)};
  return validate_setup(validate_partition({{0}, {1}}, 2),
                        validate_orthogonal_structure(spans, 4), statistics);
}

MesState bell_mes() {
  ComplexVector amp(4);
  amp << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  return make_mes_state({2, 2}, amp);
}

ComplexVector tensor_power(const ComplexVector& phi, int count) {
  ComplexVector out = phi;
  for (int k = 1; k < count; ++k) out = tensor_product(out, phi);
  return out;
}

}  // namespace

TEST_SUITE("entanglement") {

TEST_CASE("schmidt coefficients of a product state are (1, 0, ...)") {
  std::mt19937_64 rng(211);
  const ComplexVector a = test::random_unit(2, rng);
  const ComplexVector b = test::random_unit(3, rng);
  const MesState mes = make_mes_state({2, 3}, tensor_product(a, b));
  const int cut[] = {0};
  const SchmidtResult result = schmidt_coefficients(mes, cut);
  REQUIRE(result.coefficients.size() == 2);
  CHECK(result.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(result.coefficients[1] <= 1e-12);
  CHECK(std::abs(std::abs(result.left_basis.col(0).dot(a)) - 1.0) <= 1e-10);
}

TEST_CASE("schmidt decomposition reconstructs the state") {
  std::mt19937_64 rng(223);
  const MesState mes = make_mes_state({3, 4}, test::random_unit(12, rng));
  const int cut[] = {0};
  const SchmidtResult result = schmidt_coefficients(mes, cut);
  REQUIRE(result.coefficients.size() == 3);
  ComplexVector rebuilt = ComplexVector::Zero(12);
  for (int k = 0; k < 3; ++k) {
    rebuilt += result.coefficients[k] *
               tensor_product(result.left_basis.col(k),
                              result.right_basis.col(k));
  }
  CHECK((rebuilt - mes.amplitudes).norm() <= 1e-10);
  CHECK(max_abs(ComplexMatrix(result.left_basis.adjoint() *
                              result.left_basis) -
                ComplexMatrix::Identity(3, 3)) <= 1e-12);
  CHECK(result.coefficients.squaredNorm() ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("schmidt coefficients are invariant under per-block unitaries") {
  std::mt19937_64 rng(227);
  const MesState mes = make_mes_state({3, 3}, test::random_unit(9, rng));
  const ComplexMatrix u1 = haar_unitary(3, rng);
  const ComplexMatrix u2 = haar_unitary(3, rng);
  const MesState rotated =
      make_mes_state({3, 3}, test::kron(u1, u2) * mes.amplitudes);
  const int cut[] = {0};
  const RealVector before = schmidt_coefficients(mes, cut).coefficients;
  const RealVector after = schmidt_coefficients(rotated, cut).coefficients;
  CHECK((before - after).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("three-block cuts regroup correctly") {
  ComplexVector ghz = ComplexVector::Zero(8);
  ghz[0] = ghz[7] = 1.0 / std::sqrt(2.0);
  const MesState mes = make_mes_state({2, 2, 2}, ghz);
  for (const std::vector<int>& cut :
       {std::vector<int>{0}, std::vector<int>{1}, std::vector<int>{0, 2}}) {
    const SchmidtResult result = schmidt_coefficients(mes, cut);
    REQUIRE(result.coefficients.size() == 2);
    CHECK(result.coefficients[0] ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(result.coefficients[1] ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("schmidt rejects malformed cuts and unnormalized states") {
  const MesState mes = bell_mes();
  const std::vector<int> empty;
  const int full[] = {0, 1};
  const int out_of_range[] = {2};
  const int unsorted[] = {1, 0};
  CHECK_THROWS_AS((void)schmidt_coefficients(mes, empty), validation_error);
  CHECK_THROWS_AS((void)schmidt_coefficients(mes, full), validation_error);
  CHECK_THROWS_AS((void)schmidt_coefficients(mes, out_of_range),
                  validation_error);
  CHECK_THROWS_AS((void)schmidt_coefficients(mes, unsorted), validation_error);
  MesState unnorm = bell_mes();
  unnorm.amplitudes *= 2.0;
  const int cut[] = {0};
  CHECK_THROWS_AS((void)schmidt_coefficients(unnorm, cut), validation_error);
}

TEST_CASE("squared concurrence matches the reduced-purity definition") {
  std::mt19937_64 rng(229);
  for (int rep = 0; rep < 10; ++rep) {
    const MesState mes = make_mes_state({3, 3}, test::random_unit(9, rng));
    const ComplexMatrix rho =
        mes.amplitudes * mes.amplitudes.adjoint();
    const int dims[] = {3, 3};
    const int keep[] = {0};
    const ComplexMatrix rho1 = partial_trace(rho, dims, keep);
    const double purity = rho1.squaredNorm();
    CHECK(squared_concurrence(mes) ==
          doctest::Approx(2.0 * (1.0 - purity)).epsilon(1e-10));
  }
}

TEST_CASE("squared concurrence endpoints") {
  std::mt19937_64 rng(233);
  const ComplexVector a = test::random_unit(2, rng);
  const ComplexVector b = test::random_unit(2, rng);
  const MesState product = make_mes_state({2, 2}, tensor_product(a, b));
  CHECK(squared_concurrence(product) <= 1e-12);
  CHECK(squared_concurrence(bell_mes()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  ComplexVector ghz = ComplexVector::Zero(8);
  ghz[0] = ghz[7] = 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS((void)squared_concurrence(make_mes_state({2, 2, 2}, ghz)),
                  validation_error);
}

TEST_CASE("product purity test distinguishes product and correlated states") {
  std::mt19937_64 rng(239);
  const ComplexVector a = test::random_unit(2, rng);
  const ComplexVector b = test::random_unit(3, rng);
  const auto [product_ok, product_purities] =
      is_product_pure(make_mes_state({2, 3}, tensor_product(a, b)));
  CHECK(product_ok);
  REQUIRE(product_purities.size() == 2);
  CHECK(product_purities[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(product_purities[1] == doctest::Approx(1.0).epsilon(1e-12));

  const auto [bell_ok, bell_purities] = is_product_pure(bell_mes());
  CHECK(!bell_ok);
  CHECK(bell_purities[0] == doctest::Approx(0.5).epsilon(1e-12));

  ComplexVector ghz = ComplexVector::Zero(8);
  ghz[0] = ghz[7] = 1.0 / std::sqrt(2.0);
  const auto [ghz_ok, ghz_purities] =
      is_product_pure(make_mes_state({2, 2, 2}, ghz));
  CHECK(!ghz_ok);
  REQUIRE(ghz_purities.size() == 3);
  for (double purity : ghz_purities) {
    CHECK(purity == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("verdict for the rotated fermion family at special angles") {
  const ProvisionalState pair = fermion_pair_state();

  const EntanglementReport aligned =
      separability_verdict(pair, rotated_fermion_setup(0.0));
  CHECK(aligned.verdict == Verdict::Separable);
  CHECK(aligned.weight == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(aligned.squared_concurrence.has_value());
  CHECK(*aligned.squared_concurrence <= 1e-10);

  const EntanglementReport maximal = separability_verdict(
      pair, rotated_fermion_setup(std::numbers::pi / 4));
  CHECK(maximal.verdict == Verdict::Entangled);
  CHECK(maximal.weight == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(*maximal.squared_concurrence == doctest::Approx(1.0).epsilon(1e-10));

  const double theta = std::numbers::pi / 8;
  const double c = std::cos(theta), s = std::sin(theta);
  const double weight = c * c * c * c + s * s * s * s;
  const EntanglementReport skew =
      separability_verdict(pair, rotated_fermion_setup(theta));
  CHECK(skew.verdict == Verdict::Entangled);
  CHECK(skew.weight == doctest::Approx(weight).epsilon(1e-12));
  CHECK(*skew.squared_concurrence ==
        doctest::Approx(1.0 / 9.0).epsilon(1e-10));
  REQUIRE(skew.schmidt.size() == 2);
  for (const auto& [block, schmidt] : skew.schmidt) {
    REQUIRE(schmidt.coefficients.size() == 2);
    CHECK(schmidt.coefficients[0] ==
          doctest::Approx(c * c / std::sqrt(weight)).epsilon(1e-10));
    CHECK(schmidt.coefficients[1] ==
          doctest::Approx(s * s / std::sqrt(weight)).epsilon(1e-10));
  }
  REQUIRE(skew.block_purities.size() == 2);
  CHECK(skew.block_purities[0] ==
        doctest::Approx(17.0 / 18.0).epsilon(1e-10));
  CHECK(skew.block_purities[1] ==
        doctest::Approx(17.0 / 18.0).epsilon(1e-10));
}

TEST_CASE("verdict filters states with no measurable component") {
  const MeasurementSetup aligned =
      boson_split_setup(ComplexMatrix::Identity(6, 6));
  const EntanglementReport report =
      separability_verdict(boson_diagonal_state(), aligned);
  CHECK(report.verdict == Verdict::FilteredOut);
  CHECK(report.weight <= kZeroWeightThreshold);
  CHECK(report.schmidt.empty());
  CHECK(!report.squared_concurrence.has_value());
  CHECK(std::string(to_string(report.verdict)) == "filtered_out");
}

TEST_CASE("maximally entangling boson setup reaches lambda 1/sqrt(3)") {
  ComplexMatrix u = ComplexMatrix::Zero(6, 6);
  const Complex i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < 3; ++k) {
    u(k, k) = r;
    u(k + 3, k) = i * r;
    u(k, k + 3) = i * r;
    u(k + 3, k + 3) = r;
  }
  const EntanglementReport report =
      separability_verdict(boson_diagonal_state(), boson_split_setup(u));
  CHECK(report.verdict == Verdict::Entangled);
  CHECK(report.weight == doctest::Approx(1.0).epsilon(1e-10));
  const RealVector lambda = report.schmidt.at(0).coefficients;
  REQUIRE(lambda.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(lambda[k] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
  }
  CHECK(*report.squared_concurrence == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("verdict can project raw states into the exchange sector first") {
  const int indices[] = {0, 2};
  const ProvisionalState raw = basis_state(4, indices);
  const MeasurementSetup setup = rotated_fermion_setup(std::numbers::pi / 8);
  CHECK_THROWS_AS((void)separability_verdict(raw, setup), validation_error);
  const EntanglementReport projected = separability_verdict(raw, setup, true);
  const EntanglementReport reference =
      separability_verdict(fermion_pair_state(), setup);
  CHECK(projected.verdict == reference.verdict);
  CHECK(*projected.squared_concurrence ==
        doctest::Approx(*reference.squared_concurrence).epsilon(1e-10));
  // Projection discards half of the squared norm before renormalization,
  // so the reported weight is relative to the renormalized sector state.
  CHECK(projected.weight == doctest::Approx(reference.weight).epsilon(1e-10));
}

TEST_CASE("verdict rejects zero and unnormalized input") {
  const MeasurementSetup setup = rotated_fermion_setup(0.3);
  ProvisionalState zero = fermion_pair_state();
  zero.amplitudes.setZero();
  CHECK_THROWS_AS((void)separability_verdict(zero, setup, true),
                  validation_error);
  ProvisionalState doubled = fermion_pair_state();
  doubled.amplitudes *= 2.0;
  CHECK_THROWS_AS((void)separability_verdict(doubled, setup),
                  validation_error);
}

TEST_CASE("single-block setups are trivially separable") {
  std::vector<std::vector<ComplexVector>> spans(1);
  spans[0] = {ComplexVector::Unit(4, 0), ComplexVector::Unit(4, 1),
              ComplexVector::Unit(4, 2)};
  const MeasurementSetup setup = validate_setup(
      validate_partition({{0, 1}}, 2),
      validate_orthogonal_structure(spans, 4), Statistics::Fermion);
  const EntanglementReport report =
      separability_verdict(fermion_pair_state(), setup);
  CHECK(report.verdict == Verdict::Separable);
  CHECK(report.weight == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.schmidt.empty());
  CHECK(!report.squared_concurrence.has_value());
  REQUIRE(report.block_purities.size() == 1);
  CHECK(report.block_purities[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("factorization residual vanishes for product states") {
  std::mt19937_64 rng(241);
  const MeasurableSpace space(rotated_fermion_setup(0.0));
  const ProvisionalState pair = fermion_pair_state();
  for (int rep = 0; rep < 5; ++rep) {
    const std::vector<ComplexMatrix> ops = {test::random_hermitian(2, rng),
                                            test::random_hermitian(2, rng)};
    const FactorizationCheck check = factorization_check(pair, space, ops);
    CHECK(check.residual <= 1e-10);
    CHECK(check.lhs == doctest::Approx(check.rhs).epsilon(1e-10));
  }
}

TEST_CASE("factorization residual witnesses Bell correlations") {
  const MeasurableSpace space(canonical_pair_setup(Statistics::Fermion));
  const ProvisionalState psi = space.forward(bell_mes());
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  const FactorizationCheck check =
      factorization_check(psi, space, {p0, p0});
  CHECK(check.lhs == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(check.rhs == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(check.residual == doctest::Approx(0.25).epsilon(1e-10));

  const std::vector<ComplexMatrix> identities(2,
                                              ComplexMatrix::Identity(2, 2));
  CHECK(factorization_check(psi, space, identities).residual <= 1e-12);
}

TEST_CASE("factorization check enforces its preconditions") {
  const MeasurableSpace skew(rotated_fermion_setup(std::numbers::pi / 8));
  const std::vector<ComplexMatrix> ops(2, ComplexMatrix::Identity(2, 2));
  // Weight 0.75 < 1: the state leaks outside the measurable subspace.
  CHECK_THROWS_AS(
      (void)factorization_check(fermion_pair_state(), skew, ops),
      validation_error);
  const MeasurableSpace aligned(rotated_fermion_setup(0.0));
  ProvisionalState doubled = fermion_pair_state();
  doubled.amplitudes *= 2.0;
  CHECK_THROWS_AS((void)factorization_check(doubled, aligned, ops),
                  validation_error);
  CHECK_THROWS_AS(
      (void)factorization_check(fermion_pair_state(), aligned,
                                {ComplexMatrix::Identity(2, 2)}),
      validation_error);
}

TEST_CASE("partial transpose flags the Bell state and passes mixtures") {
  const ComplexVector bell = bell_mes().amplitudes;
  const ComplexMatrix rho_bell = bell * bell.adjoint();
  const int dims[] = {2, 2};
  const int cut[] = {0};
  const PptEntry entangled = ppt_check(rho_bell, dims, cut);
  CHECK(entangled.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(entangled.violates);

  ComplexMatrix classical = ComplexMatrix::Zero(4, 4);
  classical(0, 0) = 0.5;
  classical(3, 3) = 0.5;
  const PptEntry separable = ppt_check(classical, dims, cut);
  CHECK(!separable.violates);
  CHECK(separable.min_eigenvalue >= -1e-12);

  const PptEntry mixed =
      ppt_check(ComplexMatrix::Identity(4, 4) / 4.0, dims, cut);
  CHECK(!mixed.violates);
  CHECK(mixed.min_eigenvalue == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("partial transpose spectrum is independent of the cut side") {
  std::mt19937_64 rng(251);
  ComplexMatrix rho = ComplexMatrix::Zero(6, 6);
  for (int k = 0; k < 3; ++k) {
    const ComplexVector v = test::random_unit(6, rng);
    rho += (1.0 / 3.0) * v * v.adjoint();
  }
  const int dims[] = {2, 3};
  const int left[] = {0};
  const int right[] = {1};
  CHECK(ppt_check(rho, dims, left).min_eigenvalue ==
        doctest::Approx(ppt_check(rho, dims, right).min_eigenvalue)
            .epsilon(1e-10));
}

TEST_CASE("partial transpose validates its input") {
  const int dims[] = {2, 2};
  const int cut[] = {0};
  const int full[] = {0, 1};
  const std::vector<int> empty;
  const ComplexMatrix mixed = ComplexMatrix::Identity(4, 4) / 4.0;
  CHECK_THROWS_AS((void)ppt_check(ComplexMatrix::Identity(4, 4), dims, cut),
                  validation_error);
  ComplexMatrix negative = ComplexMatrix::Zero(4, 4);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS((void)ppt_check(negative, dims, cut), validation_error);
  const int bad_dims[] = {2, 3};
  CHECK_THROWS_AS((void)ppt_check(mixed, bad_dims, cut), validation_error);
  CHECK_THROWS_AS((void)ppt_check(mixed, dims, full), validation_error);
  CHECK_THROWS_AS((void)ppt_check(mixed, dims, empty), validation_error);
}

TEST_CASE("mixed-state report for the skew fermion pair") {
  const MeasurableSpace space(rotated_fermion_setup(std::numbers::pi / 8));
  const ProvisionalState pair = fermion_pair_state();
  const ComplexMatrix rho = pair.amplitudes * pair.amplitudes.adjoint();
  const MixedReport report = mixed_state_report(rho, space);
  CHECK(!report.filtered);
  CHECK(report.weight == doctest::Approx(0.75).epsilon(1e-12));
  REQUIRE(report.cuts.size() == 2);
  for (int k = 0; k < 2; ++k) {
    REQUIRE(report.cuts[k].cut.size() == 1);
    CHECK(report.cuts[k].cut[0] == k);
    CHECK(report.cuts[k].min_eigenvalue ==
          doctest::Approx(-1.0 / 6.0).epsilon(1e-10));
    CHECK(report.cuts[k].violates);
  }
  CHECK(report.note.find("necessary") != std::string::npos);
}

TEST_CASE("mixed-state report flags filtered density matrices") {
  const MeasurableSpace space(
      boson_split_setup(ComplexMatrix::Identity(6, 6)));
  const ProvisionalState diag = boson_diagonal_state();
  const ComplexMatrix rho = diag.amplitudes * diag.amplitudes.adjoint();
  const MixedReport report = mixed_state_report(rho, space);
  CHECK(report.filtered);
  CHECK(report.weight <= kZeroWeightThreshold);
  CHECK(report.cuts.empty());
}

TEST_CASE("iid detection recovers the repeated factor") {
  std::mt19937_64 rng(257);
  const ComplexVector phi = test::random_unit(4, rng);
  const ProvisionalState psi =
      make_provisional_state(4, 3, tensor_power(phi, 3));
  const std::optional<ComplexVector> found = is_iid(psi);
  REQUIRE(found.has_value());
  CHECK(std::abs(std::abs(found->dot(phi)) - 1.0) <= 1e-10);
  const Complex overlap = tensor_power(*found, 3).dot(psi.amplitudes);
  CHECK(std::abs(std::abs(overlap) - 1.0) <= 1e-10);
}

TEST_CASE("iid detection is stable under a global phase") {
  std::mt19937_64 rng(263);
  const ComplexVector phi = test::random_unit(3, rng);
  ProvisionalState psi = make_provisional_state(3, 2, tensor_power(phi, 2));
  psi.amplitudes *= std::exp(Complex(0.0, 0.7));
  const std::optional<ComplexVector> found = is_iid(psi);
  REQUIRE(found.has_value());
  // Returned factor is phase-fixed: first non-negligible entry real
  // positive, and its tensor power matches psi up to one global phase.
  int first = 0;
  while (std::abs((*found)[first]) <= 1e-9) ++first;
  CHECK((*found)[first].imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK((*found)[first].real() > 0.0);
  const ComplexVector power = tensor_power(*found, 2);
  const Complex overlap = power.dot(psi.amplitudes);
  CHECK(std::abs(std::abs(overlap) - 1.0) <= 1e-10);
}

TEST_CASE("correlated states are not iid") {
  CHECK(!is_iid(boson_diagonal_state()).has_value());
  CHECK(!is_iid(fermion_pair_state()).has_value());
}

TEST_CASE("iid detection handles edge cases") {
  std::mt19937_64 rng(269);
  const ComplexVector phi = test::random_unit(5, rng);
  const ProvisionalState single = make_provisional_state(5, 1, phi);
  const std::optional<ComplexVector> found = is_iid(single);
  REQUIRE(found.has_value());
  CHECK(std::abs(std::abs(found->dot(phi)) - 1.0) <= 1e-12);

  ProvisionalState doubled = make_provisional_state(3, 2, tensor_power(phi.head(3).normalized(), 2));
  doubled.amplitudes *= 2.0;
  CHECK_THROWS_AS((void)is_iid(doubled), validation_error);
}

}  // TEST_SUITE

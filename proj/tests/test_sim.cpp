// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qbands/errors.hpp"
#include "qbands/lattice/hamiltonian.hpp"
#include "qbands/lattice/hubbard.hpp"
#include "qbands/ops/jordan_wigner.hpp"
#include "qbands/sim/generator.hpp"
#include "qbands/sim/statevector.hpp"
#include "test_support.hpp"

namespace qbands {
namespace {

Statevector random_state(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(Eigen::Index{1} << n);
  for (auto& a : v) a = {g(rng), g(rng)};
  Statevector s(n, v);
  s.normalize();
  return s;
}

TEST(Statevector, BasisStateAndNorm) {
  const auto s = Statevector::basis_state(3, 5);
  EXPECT_EQ(s.dimension(), 8u);
  EXPECT_EQ(s[5], cplx(1.0));
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
  EXPECT_THROW(Statevector(kMaxStatevectorQubits + 1), ResourceError);
}

TEST(Statevector, OperatorApplicationMatchesDenseMatrix) {
  const auto op = QubitOperator::from_string(4, "X0 Y1 Z3", cplx(0.3, 0.1)) +
                  QubitOperator::from_string(4, "Y2", -0.8) + QubitOperator::identity(4, 0.25);
  const auto psi = random_state(4, 11);
  const Eigen::VectorXcd ref = testing::dense_qubit(op) * psi.amplitudes();
  EXPECT_LT((apply_operator(op, psi).amplitudes() - ref).norm(), 1e-13);
  EXPECT_LT((Eigen::MatrixXcd(to_sparse(op)) - testing::dense_qubit(op)).norm(), 1e-13);
  EXPECT_LT((to_dense(op) - testing::dense_qubit(op)).norm(), 1e-13);
  EXPECT_NEAR(std::abs(expectation(op, psi) - psi.amplitudes().dot(ref)), 0.0, 1e-13);
}

TEST(Statevector, PauliRotationEqualsClosedFormExponential) {
  // exp(i a P) = cos(a) I + i sin(a) P because P^2 = I.
  const auto p = QubitOperator::from_string(3, "Y0 X1 Z2");
  const double a = 0.37;
  auto psi = random_state(3, 5);
  const Eigen::MatrixXcd u = std::cos(a) * Eigen::MatrixXcd::Identity(8, 8) +
                             cplx(0, std::sin(a)) * testing::dense_qubit(p);
  const Eigen::VectorXcd ref = u * psi.amplitudes();
  apply_pauli_rotation(psi, p.terms()[0].string, a);
  EXPECT_LT((psi.amplitudes() - ref).norm(), 1e-13);
}

TEST(Generator, ExponentialMatchesMatrixExponentialOfFermionGenerator) {
  // tau = T - T^dagger for a double excitation; its JW strings commute.
  const FermionOperator t(0.9, {cr(3), cr(2), an(0), an(1)});
  const FermionOperator tau = t - adjoint(t);
  const ExponentialGenerator gen(tau, 4);
  const auto psi0 = random_state(4, 3);
  auto psi = psi0;
  gen.apply(psi, 0.41);
  // Oracle: exp of the dense occupation-basis matrix via eigendecomposition of the Hermitian i*tau.
  const Eigen::MatrixXcd herm = cplx(0, 1) * testing::dense_fermion(tau, 4);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  const Eigen::VectorXcd phases = (-0.41 * es.eigenvalues()).unaryExpr([](double x) { return std::polar(1.0, x); });
  const Eigen::MatrixXcd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  EXPECT_LT((psi.amplitudes() - u * psi0.amplitudes()).norm(), 1e-12);
}

TEST(Generator, RejectsNonAntiHermitianGenerators) {
  EXPECT_THROW(ExponentialGenerator(FermionOperator(1.0, {cr(1), an(0)}), 2), std::invalid_argument);
}

TEST(Generator, HartreeFockStateOccupiesReferenceModes) {
  const IntegralTable t = hubbard_integrals({3, 1.0, 4.0, 2, {}});
  const auto hf = prepare_hartree_fock(t);
  // k = 0 doubly occupied: modes 0 and 1.
  EXPECT_EQ(hf[0b11], cplx(1.0));
}

TEST(Generator, EnergyGradientMatchesFiniteDifferences) {
  const IntegralTable t = hubbard_integrals({2, 1.0, 4.0, 2, default_complex_gauge(2)});
  const auto h = to_sparse(build_hamiltonian(t));
  const FermionOperator d(1.0, {cr(3), cr(2), an(0), an(1)});
  const FermionOperator s(1.0, {cr(2), an(0)});
  const ExponentialGenerator g1(d - adjoint(d), 4), g2(cplx(0, 1) * (d + adjoint(d)), 4),
      g3(s - adjoint(s), 4);
  const ExponentialGenerator* gens[] = {&g1, &g2, &g3};
  const auto ref = prepare_hartree_fock(t);
  std::vector<double> theta{0.3, -0.2, 0.15}, grad;
  const double e = energy_and_gradient(gens, theta, h, ref, &grad);
  EXPECT_NEAR(e, expectation(build_hamiltonian(t), prepare_ansatz_state(gens, theta, ref)).real(), 1e-12);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double step = 1e-5;
    auto plus = theta, minus = theta;
    plus[i] += step;
    minus[i] -= step;
    const double fd = (energy_and_gradient(gens, plus, h, ref, nullptr) -
                       energy_and_gradient(gens, minus, h, ref, nullptr)) / (2 * step);
    EXPECT_NEAR(grad[i], fd, 1e-8) << "parameter " << i;
  }
}

}  // namespace
}  // namespace qbands

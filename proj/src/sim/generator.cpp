// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/sim/generator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qbands/errors.hpp"
#include "qbands/ops/jordan_wigner.hpp"

namespace qbands {

namespace {

constexpr double kAntiHermitianTolerance = 1e-12;

}  // namespace

ExponentialGenerator::ExponentialGenerator(const FermionOperator& tau, std::size_t num_modes)
    : ExponentialGenerator(jordan_wigner(tau, num_modes)) {
  if (!equivalent(adjoint(tau), -1.0 * tau, kAntiHermitianTolerance))
    throw std::invalid_argument("generator: operator is not anti-Hermitian: " + tau.to_string());
}

ExponentialGenerator::ExponentialGenerator(const QubitOperator& tau) : image_(tau) {
  for (const auto& term : image_.terms()) {
    if (std::abs(term.coefficient.real()) > kAntiHermitianTolerance)
      throw std::invalid_argument("generator: qubit image has a Hermitian component on " + term.string.to_string());
    rotations_.push_back({term.string, term.coefficient.imag()});
  }
  for (std::size_t i = 0; i < rotations_.size(); ++i)
    for (std::size_t j = i + 1; j < rotations_.size(); ++j)
      if (!rotations_[i].string.commutes_with(rotations_[j].string))
        throw std::invalid_argument("generator: strings " + rotations_[i].string.to_string() + " and " +
                                    rotations_[j].string.to_string() +
                                    " do not commute; refusing to Trotterize");
}

void ExponentialGenerator::apply(Statevector& psi, double theta) const {
  if (theta == 0.0) return;
  for (const auto& r : rotations_) apply_pauli_rotation(psi, r.string, theta * r.weight);
}

Statevector prepare_hartree_fock(const IntegralTable& table) {
  const auto ref = hartree_fock_reference(table);
  std::uint64_t index = 0;
  for (auto m : ref.occupied_modes) index |= std::uint64_t{1} << m;
  return Statevector::basis_state(table.num_modes(), index);
}

Statevector apply_pool_exponential(const Statevector& state, const FermionOperator& tau, double theta) {
  Statevector out = state;
  ExponentialGenerator(tau, state.num_qubits()).apply(out, theta);
  return out;
}

Statevector prepare_ansatz_state(std::span<const ExponentialGenerator* const> generators,
                                 std::span<const double> thetas, const Statevector& reference) {
  if (generators.size() != thetas.size()) throw std::invalid_argument("ansatz: generator/angle count mismatch");
  Statevector psi = reference;
  for (std::size_t l = 0; l < generators.size(); ++l) generators[l]->apply(psi, thetas[l]);
  return psi;
}

double energy_and_gradient(std::span<const ExponentialGenerator* const> generators,
                           std::span<const double> thetas, const Eigen::SparseMatrix<cplx>& hamiltonian,
                           const Statevector& reference, std::vector<double>* gradient) {
  Statevector phi = prepare_ansatz_state(generators, thetas, reference);
  Statevector lambda(phi.num_qubits(), hamiltonian * phi.amplitudes());
  const double energy = phi.amplitudes().dot(lambda.amplitudes()).real();
  if (gradient == nullptr) return energy;
  gradient->assign(generators.size(), 0.0);
  // dE/dtheta_l = 2 Re <lambda_l| tau_l |phi_l>, where phi_l = U_l..U_1 ref and
  // lambda_l = U_{l+1}^dagger .. U_L^dagger H psi; both are rolled back one step at a time.
  for (std::size_t l = generators.size(); l-- > 0;) {
    const auto& g = *generators[l];
    (*gradient)[l] = 2.0 * expectation(lambda, g.qubit_image(), phi).real();
    g.apply(phi, -thetas[l]);
    g.apply(lambda, -thetas[l]);
  }
  return energy;
}

}  // namespace qbands

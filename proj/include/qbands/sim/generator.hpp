// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qbands/lattice/integral_table.hpp"
#include "qbands/ops/fermion_operator.hpp"
#include "qbands/ops/qubit_operator.hpp"
#include "qbands/sim/statevector.hpp"

namespace qbands {

/// Anti-Hermitian generator tau whose qubit image sum_j i b_j P_j consists of
/// mutually commuting strings, so exp(theta tau) = prod_j exp(i theta b_j P_j)
/// holds exactly (no Trotter error).
class ExponentialGenerator {
 public:
  ExponentialGenerator() = default;
  /// Throws std::invalid_argument when tau is not anti-Hermitian (1e-12) or
  /// when its Jordan-Wigner strings do not commute pairwise.
  ExponentialGenerator(const FermionOperator& tau, std::size_t num_modes);
  explicit ExponentialGenerator(const QubitOperator& tau);

  const QubitOperator& qubit_image() const noexcept { return image_; }
  std::size_t num_qubits() const noexcept { return image_.num_qubits(); }

  /// |psi> <- exp(theta tau)|psi>.
  void apply(Statevector& psi, double theta) const;

  /// Rotations (P_j, b_j) making up the exponential, in application order.
  struct Rotation {
    PauliString string;
    double weight;
  };
  const std::vector<Rotation>& rotations() const noexcept { return rotations_; }

 private:
  QubitOperator image_;
  std::vector<Rotation> rotations_;
};

/// Computational-basis state of the closed-shell Hartree-Fock determinant
/// (aufbau on the Fock diagonal). Throws InputError for open shells.
Statevector prepare_hartree_fock(const IntegralTable& table);

/// exp(theta tau)|state> for an anti-Hermitian, commuting-image tau.
Statevector apply_pool_exponential(const Statevector& state, const FermionOperator& tau, double theta);

/// |psi(theta)> = U_L ... U_1 |reference>, U_l = exp(theta_l tau_l).
Statevector prepare_ansatz_state(std::span<const ExponentialGenerator* const> generators,
                                 std::span<const double> thetas, const Statevector& reference);

/// Energy <psi(theta)|H|psi(theta)> and, when `gradient` is non-null, its exact
/// derivative with respect to every angle, computed with one reverse sweep.
double energy_and_gradient(std::span<const ExponentialGenerator* const> generators,
                           std::span<const double> thetas, const Eigen::SparseMatrix<cplx>& hamiltonian,
                           const Statevector& reference, std::vector<double>* gradient);

}  // namespace qbands

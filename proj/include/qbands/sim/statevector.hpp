// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstddef>
#include <cstdint>

#include "qbands/ops/qubit_operator.hpp"

namespace qbands {

/// Largest register the dense simulator accepts.
inline constexpr std::size_t kMaxStatevectorQubits = 24;

/// Dense pure state on n qubits. Basis index bit m is the occupation of mode m.
class Statevector {
 public:
  /// |0...0>. Throws ResourceError beyond kMaxStatevectorQubits.
  explicit Statevector(std::size_t num_qubits = 0);
  Statevector(std::size_t num_qubits, Eigen::VectorXcd amplitudes);

  static Statevector basis_state(std::size_t num_qubits, std::uint64_t index);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  Eigen::VectorXcd& amplitudes() noexcept { return amplitudes_; }
  cplx operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amplitudes_.norm(); }
  /// Rescales to unit norm; throws NumericalError for the zero vector.
  void normalize();

 private:
  std::size_t num_qubits_ = 0;
  Eigen::VectorXcd amplitudes_;
};

/// <a|b>.
cplx inner(const Statevector& a, const Statevector& b);

/// op|psi>, generally unnormalized. Throws std::invalid_argument on size mismatch.
Statevector apply_operator(const QubitOperator& op, const Statevector& psi);

/// <bra|op|ket>.
cplx expectation(const Statevector& bra, const QubitOperator& op, const Statevector& ket);
inline cplx expectation(const QubitOperator& op, const Statevector& psi) { return expectation(psi, op, psi); }

/// In-place exp(i angle P)|psi> = cos(angle)|psi> + i sin(angle) P|psi>.
void apply_pauli_rotation(Statevector& psi, const PauliString& p, double angle);

/// P|x> = i^{#Y} (-1)^{|x & z|} |x ^ mask_x>: the phase picked up by basis state x.
cplx pauli_phase(const PauliString& p, std::uint64_t x) noexcept;

/// Sparse matrix of `op` in the computational basis (for repeated products).
Eigen::SparseMatrix<cplx> to_sparse(const QubitOperator& op);

/// Dense matrix of `op`; intended for small registers and tests.
Eigen::MatrixXcd to_dense(const QubitOperator& op);

}  // namespace qbands

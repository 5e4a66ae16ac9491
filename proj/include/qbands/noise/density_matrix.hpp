// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <random>

#include "qbands/adapt/adapt.hpp"
#include "qbands/adapt/pool.hpp"
#include "qbands/ops/qubit_operator.hpp"
#include "qbands/sim/statevector.hpp"

namespace qbands {

/// Largest register simulated with a dense density matrix.
inline constexpr std::size_t kMaxDensityMatrixQubits = 12;

class DensityMatrix {
 public:
  /// |0..0><0..0|. Throws ResourceError beyond kMaxDensityMatrixQubits.
  explicit DensityMatrix(std::size_t num_qubits = 0);
  static DensityMatrix from_statevector(const Statevector& psi);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return rho_; }

  cplx trace() const { return rho_.trace(); }

  /// rho <- U rho U^dagger with U = exp(i angle P).
  void apply_pauli_rotation(const PauliString& p, double angle);

  /// Single-qubit depolarizing channel rho <- (1 - p) rho + p (I/2 (x) Tr_q rho).
  void depolarize(std::size_t qubit, double p);

  /// Tr(rho P) for one Pauli string (real for Hermitian rho).
  double pauli_expectation(const PauliString& p) const;
  /// Tr(rho O).
  cplx expectation(const QubitOperator& op) const;

 private:
  std::size_t num_qubits_ = 0;
  Eigen::MatrixXcd rho_;
};

/// Replays the ansatz gate by gate (one gate = one Pauli-string rotation of a
/// pool exponential) and depolarizes every qubit in the support of each gate
/// with probability `p_gate`. Throws std::invalid_argument unless 0 <= p_gate <= 1.
DensityMatrix prepare_noisy_state(const AdaptAnsatz& ansatz, const OperatorPool& pool, double p_gate);

/// Sample-mean estimate of an observable with its standard error.
struct Estimate {
  double mean = 0.0;
  double stderr = 0.0;
};

/// Estimates <P> from `shots` projective measurements (binomial outcome
/// counts); shots == 0 returns the exact value with zero error.
Estimate sample_pauli(const DensityMatrix& rho, const PauliString& p, std::uint64_t shots, std::mt19937_64& rng);

/// Per-string sampled estimate of Tr(rho O) for a Hermitian O.
Estimate estimate_observable(const DensityMatrix& rho, const QubitOperator& op, std::uint64_t shots,
                             std::mt19937_64& rng);

}  // namespace qbands

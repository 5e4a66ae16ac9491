// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/noise/density_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qbands/errors.hpp"

namespace qbands {

DensityMatrix::DensityMatrix(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits > kMaxDensityMatrixQubits)
    throw ResourceError("density matrix: " + std::to_string(num_qubits) + " qubits exceeds the limit of " +
                        std::to_string(kMaxDensityMatrixQubits));
  const auto dim = Eigen::Index{1} << num_qubits;
  rho_ = Eigen::MatrixXcd::Zero(dim, dim);
  rho_(0, 0) = 1.0;
}

DensityMatrix DensityMatrix::from_statevector(const Statevector& psi) {
  DensityMatrix d(psi.num_qubits());
  d.rho_ = psi.amplitudes() * psi.amplitudes().adjoint();
  return d;
}

void DensityMatrix::apply_pauli_rotation(const PauliString& p, double angle) {
  // U rho U^dagger = c^2 rho + i s c (P rho - rho P) + s^2 P rho P, with P rho built row/column-wise.
  const auto dim = static_cast<std::uint64_t>(rho_.rows());
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::MatrixXcd p_rho(rho_.rows(), rho_.cols());
  // (P rho)(i, j) = phase(i ^ x) rho(i ^ x, j), since P|k> = phase(k)|k ^ x>.
  for (std::uint64_t i = 0; i < dim; ++i)
    p_rho.row(static_cast<Eigen::Index>(i)) = pauli_phase(p, i ^ p.x) * rho_.row(static_cast<Eigen::Index>(i ^ p.x));
  Eigen::MatrixXcd rho_p(rho_.rows(), rho_.cols());
  Eigen::MatrixXcd p_rho_p(rho_.rows(), rho_.cols());
  // (M P)(i, j) = M(i, j ^ x) phase(j): P maps |j> to phase(j)|j ^ x>, so column j of MP is phase(j) M(:, j ^ x).
  for (std::uint64_t j = 0; j < dim; ++j) {
    const cplx ph = pauli_phase(p, j);
    rho_p.col(static_cast<Eigen::Index>(j)) = ph * rho_.col(static_cast<Eigen::Index>(j ^ p.x));
    p_rho_p.col(static_cast<Eigen::Index>(j)) = ph * p_rho.col(static_cast<Eigen::Index>(j ^ p.x));
  }
  rho_ = (c * c) * rho_ + cplx{0.0, s * c} * (p_rho - rho_p) + (s * s) * p_rho_p;
}

void DensityMatrix::depolarize(std::size_t qubit, double p) {
  if (qubit >= num_qubits_) throw std::invalid_argument("depolarize: qubit outside register");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarize: probability outside [0, 1]");
  if (p == 0.0) return;
  const auto dim = static_cast<std::uint64_t>(rho_.rows());
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  Eigen::MatrixXcd out(rho_.rows(), rho_.cols());
  for (std::uint64_t i = 0; i < dim; ++i)
    for (std::uint64_t j = 0; j < dim; ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      cplx v = (1.0 - p) * rho_(ii, jj);
      if (((i ^ j) & bit) == 0)
        v += 0.5 * p * (rho_(ii, jj) + rho_(static_cast<Eigen::Index>(i ^ bit), static_cast<Eigen::Index>(j ^ bit)));
      out(ii, jj) = v;
    }
  rho_ = std::move(out);
}

double DensityMatrix::pauli_expectation(const PauliString& p) const {
  // Tr(P rho) = sum_j phase(j ^ x) rho(j ^ x, j).
  const auto dim = static_cast<std::uint64_t>(rho_.rows());
  cplx acc{};
  for (std::uint64_t j = 0; j < dim; ++j)
    acc += pauli_phase(p, j ^ p.x) * rho_(static_cast<Eigen::Index>(j ^ p.x), static_cast<Eigen::Index>(j));
  return acc.real();
}

cplx DensityMatrix::expectation(const QubitOperator& op) const {
  if (op.num_qubits() != num_qubits_) throw std::invalid_argument("density matrix: register mismatch");
  cplx total{};
  for (const auto& t : op.terms()) total += t.coefficient * pauli_expectation(t.string);
  return total;
}

DensityMatrix prepare_noisy_state(const AdaptAnsatz& ansatz, const OperatorPool& pool, double p_gate) {
  if (!(p_gate >= 0.0 && p_gate <= 1.0))
    throw std::invalid_argument("noisy replay: depolarizing probability " + std::to_string(p_gate) +
                                " outside [0, 1]");
  DensityMatrix rho = DensityMatrix::from_statevector(ansatz.reference);
  for (std::size_t l = 0; l < ansatz.operators.size(); ++l) {
    const auto& gen = pool.entries.at(ansatz.operators[l]).generator;
    for (const auto& r : gen.rotations()) {
      rho.apply_pauli_rotation(r.string, ansatz.thetas[l] * r.weight);
      for (std::uint64_t s = r.string.support(); s; s &= s - 1)
        rho.depolarize(static_cast<std::size_t>(std::countr_zero(s)), p_gate);
    }
  }
  return rho;
}

Estimate sample_pauli(const DensityMatrix& rho, const PauliString& p, std::uint64_t shots, std::mt19937_64& rng) {
  const double exact = std::clamp(rho.pauli_expectation(p), -1.0, 1.0);
  if (shots == 0 || p.is_identity()) return {exact, 0.0};
  std::binomial_distribution<std::uint64_t> dist(shots, 0.5 * (1.0 + exact));
  const double plus = static_cast<double>(dist(rng));
  const double n = static_cast<double>(shots);
  const double mean = 2.0 * plus / n - 1.0;
  return {mean, std::sqrt(std::max(0.0, 1.0 - mean * mean) / n)};
}

Estimate estimate_observable(const DensityMatrix& rho, const QubitOperator& op, std::uint64_t shots,
                             std::mt19937_64& rng) {
  Estimate total;
  double var = 0.0;
  for (const auto& t : op.terms()) {
    const Estimate e = sample_pauli(rho, t.string, shots, rng);
    total.mean += t.coefficient.real() * e.mean;
    var += std::norm(t.coefficient) * e.stderr * e.stderr;
  }
  total.stderr = std::sqrt(var);
  return total;
}

}  // namespace qbands

// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/sim/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbands/errors.hpp"

namespace qbands {

namespace {

void check_size(std::size_t num_qubits) {
  if (num_qubits > kMaxStatevectorQubits)
    throw ResourceError("statevector: " + std::to_string(num_qubits) + " qubits exceeds the limit of " +
                        std::to_string(kMaxStatevectorQubits));
}

void check_match(std::size_t op_qubits, std::size_t state_qubits, const char* what) {
  if (op_qubits != state_qubits)
    throw std::invalid_argument(std::string(what) + ": operator acts on " + std::to_string(op_qubits) +
                                " qubits, state has " + std::to_string(state_qubits));
}

}  // namespace

Statevector::Statevector(std::size_t num_qubits) : num_qubits_(num_qubits) {
  check_size(num_qubits);
  amplitudes_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
  amplitudes_[0] = 1.0;
}

Statevector::Statevector(std::size_t num_qubits, Eigen::VectorXcd amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_size(num_qubits);
  if (amplitudes_.size() != (Eigen::Index{1} << num_qubits))
    throw std::invalid_argument("statevector: amplitude count does not match 2^num_qubits");
}

Statevector Statevector::basis_state(std::size_t num_qubits, std::uint64_t index) {
  Statevector s(num_qubits);
  if (index >= s.dimension()) throw std::invalid_argument("statevector: basis index outside register");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

void Statevector::normalize() {
  const double n = norm();
  if (n < 1e-300) throw NumericalError("statevector: cannot normalize the zero vector");
  amplitudes_ /= n;
}

cplx inner(const Statevector& a, const Statevector& b) {
  check_match(a.num_qubits(), b.num_qubits(), "inner");
  return a.amplitudes().dot(b.amplitudes());
}

cplx pauli_phase(const PauliString& p, std::uint64_t x) noexcept {
  static constexpr cplx kIPowers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int y_count = std::popcount(p.x & p.z);
  const int sign = std::popcount(x & p.z) & 1;
  return kIPowers[(y_count + 2 * sign) & 3];
}

Statevector apply_operator(const QubitOperator& op, const Statevector& psi) {
  check_match(op.num_qubits(), psi.num_qubits(), "apply_operator");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.amplitudes().size());
  const auto& in = psi.amplitudes();
  const std::uint64_t dim = psi.dimension();
  for (const auto& term : op.terms()) {
    const auto& p = term.string;
    for (std::uint64_t j = 0; j < dim; ++j) {
      const cplx a = in[static_cast<Eigen::Index>(j)];
      if (a == cplx{}) continue;
      out[static_cast<Eigen::Index>(j ^ p.x)] += term.coefficient * pauli_phase(p, j) * a;
    }
  }
  return Statevector(psi.num_qubits(), std::move(out));
}

cplx expectation(const Statevector& bra, const QubitOperator& op, const Statevector& ket) {
  check_match(op.num_qubits(), ket.num_qubits(), "expectation");
  check_match(bra.num_qubits(), ket.num_qubits(), "expectation");
  const auto& b = bra.amplitudes();
  const auto& k = ket.amplitudes();
  const std::uint64_t dim = ket.dimension();
  cplx total{};
  for (const auto& term : op.terms()) {
    const auto& p = term.string;
    cplx acc{};
    for (std::uint64_t j = 0; j < dim; ++j) {
      const cplx a = k[static_cast<Eigen::Index>(j)];
      if (a == cplx{}) continue;
      acc += std::conj(b[static_cast<Eigen::Index>(j ^ p.x)]) * pauli_phase(p, j) * a;
    }
    total += term.coefficient * acc;
  }
  return total;
}

void apply_pauli_rotation(Statevector& psi, const PauliString& p, double angle) {
  if ((p.support() >> psi.num_qubits()) != 0)
    throw std::invalid_argument("apply_pauli_rotation: string acts outside the register");
  const double c = std::cos(angle);
  const cplx is{0.0, std::sin(angle)};
  auto& amp = psi.amplitudes();
  const std::uint64_t dim = psi.dimension();
  if (p.x == 0) {
    for (std::uint64_t j = 0; j < dim; ++j) amp[static_cast<Eigen::Index>(j)] *= c + is * pauli_phase(p, j);
    return;
  }
  const std::uint64_t pivot = p.x & (~p.x + 1);  // lowest flipped bit
  for (std::uint64_t j = 0; j < dim; ++j) {
    if (j & pivot) continue;
    const std::uint64_t k = j ^ p.x;
    const cplx a = amp[static_cast<Eigen::Index>(j)];
    const cplx b = amp[static_cast<Eigen::Index>(k)];
    amp[static_cast<Eigen::Index>(j)] = c * a + is * pauli_phase(p, k) * b;
    amp[static_cast<Eigen::Index>(k)] = c * b + is * pauli_phase(p, j) * a;
  }
}

Eigen::SparseMatrix<cplx> to_sparse(const QubitOperator& op) {
  if (op.num_qubits() > kMaxStatevectorQubits) throw ResourceError("to_sparse: register too large");
  const std::uint64_t dim = std::uint64_t{1} << op.num_qubits();
  std::vector<Eigen::Triplet<cplx>> triplets;
  triplets.reserve(op.size() * dim);
  for (const auto& term : op.terms())
    for (std::uint64_t j = 0; j < dim; ++j)
      triplets.emplace_back(static_cast<int>(j ^ term.string.x), static_cast<int>(j),
                            term.coefficient * pauli_phase(term.string, j));
  Eigen::SparseMatrix<cplx> m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune([](Eigen::Index, Eigen::Index, const cplx& v) { return std::abs(v) > kPruneTolerance; });
  return m;
}

Eigen::MatrixXcd to_dense(const QubitOperator& op) {
  if (op.num_qubits() > 14) throw ResourceError("to_dense: register too large for a dense matrix");
  return Eigen::MatrixXcd(to_sparse(op));
}

}  // namespace qbands

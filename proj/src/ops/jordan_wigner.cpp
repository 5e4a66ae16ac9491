// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/ops/jordan_wigner.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qbands {

QubitOperator jordan_wigner(const LadderOp& op, std::size_t num_modes) {
  if (op.mode >= num_modes)
    throw std::out_of_range("jordan_wigner: mode " + std::to_string(op.mode) + " outside register of " +
                            std::to_string(num_modes));
  const std::uint64_t bit = 1ull << op.mode;
  const std::uint64_t parity = bit - 1;
  const PauliString x_string{bit, parity};
  const PauliString y_string{bit, parity | bit};
  const cplx y_coeff = op.dagger ? cplx{0.0, -0.5} : cplx{0.0, 0.5};
  return QubitOperator(num_modes, {PauliTerm{0.5, x_string}, PauliTerm{y_coeff, y_string}});
}

QubitOperator jordan_wigner(const FermionOperator& op, std::size_t num_modes) {
  if (num_modes > kMaxPauliQubits) throw std::invalid_argument("jordan_wigner: more than 64 modes");
  std::vector<QubitOperator> cache(2 * num_modes);
  auto image = [&](const LadderOp& f) -> const QubitOperator& {
    if (f.mode >= num_modes) jordan_wigner(f, num_modes);  // throws
    auto& slot = cache[2 * f.mode + (f.dagger ? 1 : 0)];
    if (slot.empty()) slot = jordan_wigner(f, num_modes);
    return slot;
  };

  std::vector<PauliTerm> acc;
  for (const auto& term : op.terms()) {
    QubitOperator product = QubitOperator::identity(num_modes, term.coefficient);
    for (const auto& f : term.factors) {
      product = product * image(f);
      if (product.empty()) break;
    }
    acc.insert(acc.end(), product.terms().begin(), product.terms().end());
  }
  return QubitOperator(num_modes, std::move(acc));
}

QubitOperator number_operator(std::size_t mode, std::size_t num_modes) {
  if (mode >= num_modes) throw std::out_of_range("number_operator: mode outside register");
  const std::uint64_t bit = 1ull << mode;
  return QubitOperator(num_modes, {PauliTerm{0.5, {}}, PauliTerm{-0.5, PauliString{0, bit}}});
}

}  // namespace qbands

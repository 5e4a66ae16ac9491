// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/lattice/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qbands/errors.hpp"
#include "qbands/ops/jordan_wigner.hpp"

namespace qbands {

namespace {

constexpr Spin kSpins[] = {Spin::alpha, Spin::beta};

}  // namespace

FermionOperator fermion_hamiltonian(const IntegralTable& table) {
  const std::size_t n_orb = table.n_orb;
  std::vector<FermionTerm> terms;
  if (table.constant != 0.0) terms.push_back({table.constant, {}});
  for (const auto& [key, value] : table.one_body) {
    for (Spin s : kSpins) {
      terms.push_back({value, {cr(mode_index(key.kp, key.p, s, n_orb)), an(mode_index(key.kq, key.q, s, n_orb))}});
    }
  }
  for (const auto& [key, value] : table.two_body) {
    for (Spin s1 : kSpins) {
      for (Spin s2 : kSpins) {
        const std::size_t p = mode_index(key.kp, key.p, s1, n_orb);
        const std::size_t q = mode_index(key.kq, key.q, s2, n_orb);
        const std::size_t r = mode_index(key.kr, key.r, s2, n_orb);
        const std::size_t s = mode_index(key.ks, key.s, s1, n_orb);
        if (p == q || r == s) continue;  // a^dagger_p a^dagger_p = 0
        terms.push_back({0.5 * value, {cr(p), cr(q), an(r), an(s)}});
      }
    }
  }
  return FermionOperator(std::move(terms)).simplified();
}

QubitOperator build_hamiltonian(const IntegralTable& table) {
  table.validate();
  return jordan_wigner(fermion_hamiltonian(table), table.num_modes());
}

QubitOperator particle_number_operator(std::size_t num_modes) {
  QubitOperator n(num_modes);
  for (std::size_t m = 0; m < num_modes; ++m) n += number_operator(m, num_modes);
  return n;
}

QubitOperator sz_operator(std::size_t num_modes) {
  QubitOperator sz(num_modes);
  for (std::size_t m = 0; m < num_modes; ++m) sz += number_operator(m, num_modes) * cplx{m % 2 == 0 ? 0.5 : -0.5};
  return sz;
}

QubitOperator translation_operator(const IntegralTable& table, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("translation_operator: axis must be 0, 1 or 2");
  const std::size_t n_modes = table.num_modes();
  const int dim = table.mesh.dims()[axis];
  std::size_t active = 0;
  QubitOperator t = QubitOperator::identity(n_modes);
  for (std::size_t m = 0; m < n_modes; ++m) {
    const auto label = decode_mode(m, table.n_orb);
    const int n_axis = table.mesh.point(label.k)[axis];
    if (n_axis == 0) continue;
    if (++active > 16) throw ResourceError("translation_operator: more than 16 modes carry momentum on this axis");
    // exp(i a n_m) = (1 + e^{ia})/2 I + (1 - e^{ia})/2 Z_m
    const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * n_axis / dim);
    const QubitOperator factor(n_modes, {PauliTerm{0.5 * (1.0 + e), {}}, PauliTerm{0.5 * (1.0 - e), PauliString{0, 1ull << m}}});
    t = t * factor;
  }
  return t;
}

}  // namespace qbands

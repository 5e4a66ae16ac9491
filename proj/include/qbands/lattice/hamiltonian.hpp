// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "qbands/lattice/integral_table.hpp"
#include "qbands/ops/fermion_operator.hpp"
#include "qbands/ops/qubit_operator.hpp"

namespace qbands {

/// Second-quantized Hamiltonian
///   H = c + sum h^p_q a^dagger_p a_q + 1/2 sum g^{pq}_{rs} a^dagger_p a^dagger_q a_r a_s
/// with spatial integrals expanded over spin, in normal order.
FermionOperator fermion_hamiltonian(const IntegralTable& table);

/// Jordan-Wigner image of fermion_hamiltonian(table) on table.num_modes() qubits.
QubitOperator build_hamiltonian(const IntegralTable& table);

/// Total particle number N = sum_m n_m.
QubitOperator particle_number_operator(std::size_t num_modes);

/// S_z = 1/2 sum (n_alpha - n_beta) under the interleaved spin ordering.
QubitOperator sz_operator(std::size_t num_modes);

/// Lattice translation along mesh axis `axis` (0..2):
///   T = exp(2 pi i sum_m n_axis(m) n_m / N_axis),
/// the diagonal operator whose eigenvalue is the crystal-momentum phase of a
/// basis state. Commutes with every momentum-conserving operator, umklapp
/// processes included. Expands to up to 2^(modes with n_axis != 0) strings,
/// so it is refused above 16 such modes.
QubitOperator translation_operator(const IntegralTable& table, int axis);

}  // namespace qbands

// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbands/lattice/integral_table.hpp"
#include "qbands/ops/fermion_operator.hpp"
#include "qbands/ops/qubit_operator.hpp"

namespace qbands {

enum class Sector { ip, ea };

std::string_view to_string(Sector sector);

/// One EOM basis operator rho_u with its Jordan-Wigner image.
struct BasisOperator {
  FermionOperator op;
  QubitOperator image;
  std::string label;
  /// Spatial orbital (within the cell) for singles; nullopt for 2h1p / 2p1h.
  std::optional<std::size_t> orbital;
};

/// Operator basis of R_IP(k) (1h + 2h1p) or R_EA(k) (1p + 2p1h) in one spin channel.
struct ExcitationBasis {
  Sector sector = Sector::ip;
  std::size_t k_target = 0;  ///< linear mesh index
  Spin spin = Spin::alpha;   ///< spin of the removed (IP) / added (EA) electron
  std::size_t num_modes = 0;
  std::vector<BasisOperator> operators;
  std::vector<std::size_t> singles;  ///< indices of the 1h / 1p block, in orbital order

  std::size_t size() const noexcept { return operators.size(); }
};

/// Enumerates the basis over general orbital indices:
///  IP: a_{p k s}; a^dagger_P a_Q a_S with k_P - k_Q - k_S + k = G, Q > S;
///  EA: a^dagger_{p k s}; a^dagger_P a^dagger_Q a_S with k_P + k_Q - k_S - k = G, P > Q;
/// restricted to a net S_z change of -1/2 (IP) / +1/2 (EA) in channel `spin`.
/// Throws InputError when the basis would be empty.
ExcitationBasis build_basis(const IntegralTable& table, Sector sector, std::size_t k_target,
                            Spin spin = Spin::alpha);

}  // namespace qbands

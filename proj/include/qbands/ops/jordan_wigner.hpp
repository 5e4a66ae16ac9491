// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "qbands/ops/fermion_operator.hpp"
#include "qbands/ops/qubit_operator.hpp"

namespace qbands {

/// Jordan-Wigner image of a single ladder operator on a `num_modes` register:
/// a^dagger_m -> (X_m - iY_m)/2 Z_{m-1} ... Z_0.
QubitOperator jordan_wigner(const LadderOp& op, std::size_t num_modes);

/// Jordan-Wigner image with qubit m <-> mode m. Throws std::out_of_range when a
/// mode index is >= num_modes.
QubitOperator jordan_wigner(const FermionOperator& op, std::size_t num_modes);

/// Occupation number operator n_m on the qubit register.
QubitOperator number_operator(std::size_t mode, std::size_t num_modes);

}  // namespace qbands

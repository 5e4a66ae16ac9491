// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qbands/lattice/kmesh.hpp"
#include "qbands/ops/qubit_operator.hpp"
#include "qbands/sim/statevector.hpp"

namespace qbands {

/// Registers above this size are refused by the exact-diagonalization oracle.
inline constexpr std::size_t kMaxFciQubits = 20;
/// Largest sector dimension diagonalized densely.
inline constexpr std::size_t kMaxFciSectorDimension = 2500;

/// Restricts a sector to basis states of total crystal momentum `total`
/// (sum of the k labels of occupied modes, reduced mod mesh).
struct MomentumFilter {
  KMesh mesh;
  std::size_t n_orb = 1;
  MeshPoint total{0, 0, 0};
};

struct SectorSpectrum {
  int n_electrons = 0;
  double sz = 0.0;
  std::vector<double> energies;  ///< ascending
  Statevector ground_vector;     ///< embedded in the full register, normalized
  std::vector<std::uint64_t> basis;
};

/// Dense diagonalization of H restricted to basis states with `n_electrons`
/// set bits and, when given, S_z = sz (even modes alpha) and total momentum.
/// Throws ResourceError above kMaxFciQubits or kMaxFciSectorDimension and
/// InputError for an empty sector.
SectorSpectrum fci_sector(const QubitOperator& h, int n_electrons, std::optional<double> sz = std::nullopt,
                          const std::optional<MomentumFilter>& momentum = std::nullopt);

/// Total crystal momentum of a computational basis state.
MeshPoint basis_state_momentum(std::uint64_t state, const KMesh& mesh, std::size_t n_orb);

struct IpEaSpectra {
  double ground_energy = 0.0;
  std::vector<double> ip;  ///< E(N-1) - E0(N), ascending
  std::vector<double> ea;  ///< E(N+1) - E0(N), ascending
};

/// Exact IP/EA excitation energies for removing / adding an electron of spin
/// `spin_channel` (+1 alpha, -1 beta). When `k_target` is given together with
/// mesh information, the N-1 (N+1) sectors are restricted to total momentum
/// K0 - k (K0 + k), K0 being the momentum of the N-electron ground state.
IpEaSpectra exact_ip_ea(const QubitOperator& h, int n_electrons, double sz, int spin_channel = +1,
                        const std::optional<MomentumFilter>& k_target = std::nullopt);

}  // namespace qbands

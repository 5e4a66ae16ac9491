// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbands/lattice/kmesh.hpp"
#include "qbands/ops/fermion_operator.hpp"

namespace qbands {

enum class Spin : int { alpha = 0, beta = 1 };

/// Decoded spin-orbital label of a fermionic mode.
struct SpinOrbitalIndex {
  std::size_t k = 0;  ///< linear mesh index
  std::size_t orb = 0;
  Spin spin = Spin::alpha;

  friend auto operator<=>(const SpinOrbitalIndex&, const SpinOrbitalIndex&) = default;
};

/// Modes are k-major, orbital-minor with spin interleaved:
/// mode = (k * n_orb + orb) * 2 + spin.
inline std::size_t mode_index(std::size_t k, std::size_t orb, Spin spin, std::size_t n_orb) {
  return ((k * n_orb + orb) * 2) + static_cast<std::size_t>(spin);
}

inline SpinOrbitalIndex decode_mode(std::size_t mode, std::size_t n_orb) {
  const std::size_t spatial = mode / 2;
  return {spatial / n_orb, spatial % n_orb, (mode % 2) ? Spin::beta : Spin::alpha};
}

/// h^{p kp}_{q kq}: coefficient of a^dagger_{p kp} a_{q kq}. Orbitals 0-based, k linear.
struct OneBodyKey {
  std::size_t p, kp, q, kq;
  friend auto operator<=>(const OneBodyKey&, const OneBodyKey&) = default;
};

/// g^{p kp, q kq}_{r kr, s ks}: coefficient of (1/2) a^dagger_p a^dagger_q a_r a_s,
/// spin expanded as a^dagger_{p s1} a^dagger_{q s2} a_{r s2} a_{s s1}.
struct TwoBodyKey {
  std::size_t p, kp, q, kq, r, kr, s, ks;
  friend auto operator<=>(const TwoBodyKey&, const TwoBodyKey&) = default;
};

/// Spin-restricted, k-resolved one- and two-electron integrals (Hartree).
struct IntegralTable {
  KMesh mesh;
  std::size_t n_orb = 0;
  int n_electrons = 0;
  double constant = 0.0;
  std::optional<double> hf_energy;
  /// Fractional offset of the mesh origin in reciprocal-lattice units.
  std::array<double, 3> kshift{0.0, 0.0, 0.0};
  /// Header keys this library does not interpret, kept for round trips.
  std::map<std::string, std::string> extra_header;
  std::map<OneBodyKey, cplx> one_body;
  std::map<TwoBodyKey, cplx> two_body;

  std::size_t num_spatial() const noexcept { return mesh.num_kpoints() * n_orb; }
  std::size_t num_modes() const noexcept { return 2 * num_spatial(); }

  cplx h(std::size_t p, std::size_t kp, std::size_t q, std::size_t kq) const;
  cplx g(const TwoBodyKey& key) const;

  /// Fractional coordinates of linear k-point `k` (kshift + n / N).
  std::array<double, 3> k_fractional(std::size_t k) const;

  /// Checks index ranges, momentum conservation and Hermiticity; throws InputError.
  void validate(double hermiticity_tolerance = 1e-10) const;
};

/// Closed-shell determinant used as the ansatz reference.
struct HartreeFockReference {
  std::vector<std::size_t> occupied_spatial;  ///< spatial index k * n_orb + orb, ascending
  std::vector<double> orbital_energies;       ///< Fock diagonal per spatial orbital
  std::vector<std::size_t> occupied_modes;    ///< ascending
  double energy = 0.0;
};

/// Aufbau filling on the self-consistent Fock diagonal, ties broken by index.
/// Throws InputError for odd electron counts or a degenerate Fermi level.
HartreeFockReference hartree_fock_reference(const IntegralTable& table);

}  // namespace qbands

// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbands/adapt/adapt.hpp"
#include "qbands/adapt/pool.hpp"
#include "qbands/eom/basis.hpp"
#include "qbands/lattice/integral_table.hpp"

namespace qbands {

/// CODATA 2018 Hartree energy in electron volts.
inline constexpr double kHartreeToEv = 27.211386245988;

constexpr double to_ev(double hartree) noexcept { return hartree * kHartreeToEv; }
constexpr double from_ev(double ev) noexcept { return ev / kHartreeToEv; }

/// Energy zero of the reported bands.
enum class Alignment {
  per_k,   ///< relative to each k-point's own ground-state energy E0(k)
  common,  ///< relative to the mean E0 over all successful k-points
};
std::string_view to_string(Alignment a);
/// Throws InputError for unknown names.
Alignment parse_alignment(std::string_view name);

enum class BandType { valence, conduction };
std::string_view to_string(BandType t);

struct BandConfig {
  PoolKind pool = PoolKind::gsd;
  bool complemented = true;
  AdaptConfig adapt;
  double qpwt_min = 0.5;
  double s_tol = 1e-8;
  /// Also solve the unprojected EOM-NP baseline and report it alongside.
  bool eom_np = false;
  Spin spin = Spin::alpha;
  Alignment alignment = Alignment::per_k;
  /// Worker threads over k-points; results do not depend on this value.
  unsigned threads = 1;
};

/// One integral table of the path. A single-point mesh is one path k-point;
/// for a multi-point mesh every listed (or, when empty, every) mesh point is
/// evaluated from the table's common ground state.
struct BandInput {
  std::string label;
  IntegralTable table;
  std::vector<std::size_t> k_indices;
};

/// One eigenstate of an IP or EA working equation.
struct SpectrumLine {
  double excitation = 0.0;  ///< Delta E (Hartree)
  double qpwt = 0.0;
};

/// Band energy at one k-point, tied to the Hartree-Fock orbital whose
/// single excitation dominates the state.
struct BandPoint {
  std::size_t index = 0;    ///< valence: 0 = highest; conduction: 0 = lowest
  std::size_t orbital = 0;  ///< orbital within the cell
  double energy_ev = 0.0;
  double qpwt = 0.0;
  std::optional<double> energy_np_ev;  ///< EOM-NP counterpart (comparison mode)
  std::optional<double> qpwt_np;
};

struct KPointBands {
  std::string label;
  std::array<double, 3> k{};  ///< fractional coordinates
  bool ok = false;
  std::string error;  ///< set when !ok
  double ground_energy = 0.0;  ///< Hartree
  bool adapt_converged = false;
  std::size_t ansatz_length = 0;
  std::vector<BandPoint> valence;     ///< energies descending
  std::vector<BandPoint> conduction;  ///< energies ascending
  std::vector<SpectrumLine> ip, ea;   ///< full projected spectra
  std::vector<SpectrumLine> ip_np, ea_np;
};

struct BandGap {
  double value_ev = 0.0;
  std::size_t k_valence = 0;  ///< index into BandStructure::kpoints
  std::size_t k_conduction = 0;
};

struct BandStructure {
  Alignment alignment = Alignment::per_k;
  bool eom_np = false;
  double qpwt_min = 0.5;
  std::vector<KPointBands> kpoints;
  std::optional<BandGap> gap;
  std::optional<BandGap> gap_np;
};

/// Assigns quasiparticle states to bands: states with QPWT >= qpwt_min compete
/// for the Hartree-Fock orbitals of their block (occupied orbitals for IP,
/// virtual orbitals for EA); pairs are taken greedily by decreasing single
/// overlap, each state and orbital used at most once. Returns (state, orbital) pairs.
std::vector<std::pair<std::size_t, std::size_t>> assign_bands(const std::vector<double>& qpwt,
                                                             const std::vector<std::vector<double>>& overlaps,
                                                             const std::vector<std::size_t>& allowed_orbitals,
                                                             double qpwt_min);

/// Per k-point: ADAPT ground state, projected EOM-IP/EA, QPWT filter and band
/// assembly. Failures are recorded on the k-point and the remaining points are
/// still evaluated. Deterministic for fixed inputs and configuration.
BandStructure band_pipeline(const std::vector<BandInput>& inputs, const BandConfig& config);

/// Recomputes the projected and EOM-NP gaps from the band points of the
/// successful k-points (the alignment is already applied to the energies).
void finalize_bands(BandStructure& bands);

/// Loads every *.kfcidump in `dir`, sorted by file name, as one path point each.
std::vector<BandInput> load_fixture_directory(const std::string& dir);

}  // namespace qbands

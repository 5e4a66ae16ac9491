// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "qbands/lattice/integral_table.hpp"

namespace qbands {

/// One-band Hubbard ring with periodic boundary conditions, written in the
/// Bloch basis on a (1, 1, n_sites) mesh.
struct HubbardSpec {
  int n_sites = 1;
  double t = 1.0;
  double u = 0.0;
  int n_electrons = 0;
  /// Optional gauge phase phi_n per Bloch orbital (radians). A non-trivial gauge
  /// leaves the spectrum unchanged but makes the two-body integrals, and hence
  /// the ground-state amplitudes in the orbital basis, complex.
  std::vector<double> orbital_phases;
};

/// Gauge phases phi_n = 0.9 n^2 + 0.4 n used for the complex-orbital fixture.
std::vector<double> default_complex_gauge(int n_sites);

/// h(k_n) = -2t cos(2 pi n / N), g = u / N on every momentum-conserving index
/// set, times exp(i(phi_p + phi_q - phi_r - phi_s)) when a gauge is supplied.
/// The table's EHF is filled whenever a closed-shell reference exists.
IntegralTable hubbard_integrals(const HubbardSpec& spec);

}  // namespace qbands

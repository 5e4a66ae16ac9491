// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/lattice/hubbard.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qbands/errors.hpp"

namespace qbands {

std::vector<double> default_complex_gauge(int n_sites) {
  std::vector<double> phases(static_cast<std::size_t>(std::max(n_sites, 0)));
  for (int n = 0; n < n_sites; ++n) phases[n] = 0.9 * n * n + 0.4 * n;
  return phases;
}

IntegralTable hubbard_integrals(const HubbardSpec& spec) {
  if (spec.n_sites < 1) throw InputError("hubbard: n_sites must be >= 1");
  if (spec.n_electrons < 0 || spec.n_electrons > 2 * spec.n_sites)
    throw InputError("hubbard: n_electrons outside [0, 2 * n_sites]");
  if (!spec.orbital_phases.empty() && spec.orbital_phases.size() != static_cast<std::size_t>(spec.n_sites))
    throw InputError("hubbard: orbital_phases needs one entry per site");

  const auto n = static_cast<std::size_t>(spec.n_sites);
  IntegralTable table;
  table.mesh = KMesh(1, 1, spec.n_sites);
  table.n_orb = 1;
  table.n_electrons = spec.n_electrons;
  table.constant = 0.0;
  table.extra_header["MODEL"] = "hubbard";

  auto phase = [&](std::size_t k) { return spec.orbital_phases.empty() ? 0.0 : spec.orbital_phases[k]; };

  for (std::size_t k = 0; k < n; ++k) {
    const double h = -2.0 * spec.t * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / spec.n_sites);
    table.one_body[{0, k, 0, k}] = h;
  }
  if (spec.u != 0.0) {
    const double g = spec.u / spec.n_sites;
    for (std::size_t kp = 0; kp < n; ++kp)
      for (std::size_t kq = 0; kq < n; ++kq)
        for (std::size_t kr = 0; kr < n; ++kr) {
          const std::size_t ks = (kp + kq + 2 * n - kr) % n;
          const double angle = phase(kp) + phase(kq) - phase(kr) - phase(ks);
          table.two_body[{0, kp, 0, kq, 0, kr, 0, ks}] = std::polar(g, angle);
        }
  }
  if (spec.n_electrons % 2 == 0) {
    try {
      table.hf_energy = hartree_fock_reference(table).energy;
    } catch (const InputError&) {
      // Open-shell filling: no single-determinant reference to record.
    }
  }
  return table;
}

}  // namespace qbands

// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/eom/basis.hpp"

#include <fmt/format.h>

#include "qbands/errors.hpp"
#include "qbands/ops/jordan_wigner.hpp"

namespace qbands {

std::string_view to_string(Sector sector) { return sector == Sector::ip ? "ip" : "ea"; }

ExcitationBasis build_basis(const IntegralTable& table, Sector sector, std::size_t k_target, Spin spin) {
  if (k_target >= table.mesh.num_kpoints()) throw InputError("build_basis: target k outside mesh");
  const std::size_t n = table.num_modes();
  const std::size_t n_orb = table.n_orb;
  const MeshPoint kt = table.mesh.point(k_target);
  auto k_of = [&](std::size_t m) { return table.mesh.point(decode_mode(m, n_orb).k); };
  auto sz2 = [&](std::size_t m) { return decode_mode(m, n_orb).spin == Spin::alpha ? 1 : -1; };
  const int channel = spin == Spin::alpha ? 1 : -1;

  ExcitationBasis basis;
  basis.sector = sector;
  basis.k_target = k_target;
  basis.spin = spin;
  basis.num_modes = n;

  auto add = [&](FermionOperator op, std::string label, std::optional<std::size_t> orbital) {
    BasisOperator b;
    b.image = jordan_wigner(op, n);
    b.op = std::move(op);
    b.label = std::move(label);
    b.orbital = orbital;
    basis.operators.push_back(std::move(b));
  };

  for (std::size_t p = 0; p < n_orb; ++p) {
    const std::size_t m = mode_index(k_target, p, spin, n_orb);
    basis.singles.push_back(basis.operators.size());
    if (sector == Sector::ip)
      add(FermionOperator(1.0, {an(m)}), fmt::format("a({})", m), p);
    else
      add(FermionOperator(1.0, {cr(m)}), fmt::format("a+({})", m), p);
  }

  if (sector == Sector::ip) {
    // a^dagger_P a_Q a_S: momentum k_P - k_Q - k_S + k = G, spin s_P - s_Q - s_S = -s.
    for (std::size_t P = 0; P < n; ++P)
      for (std::size_t Q = 0; Q < n; ++Q)
        for (std::size_t S = 0; S < Q; ++S) {
          if (sz2(P) - sz2(Q) - sz2(S) != -channel) continue;
          const MeshPoint cre[] = {k_of(P), kt};
          const MeshPoint ann[] = {k_of(Q), k_of(S)};
          if (!momentum_allowed(cre, ann, table.mesh)) continue;
          add(FermionOperator(1.0, {cr(P), an(Q), an(S)}), fmt::format("a+({})a({})a({})", P, Q, S), std::nullopt);
        }
  } else {
    // a^dagger_P a^dagger_Q a_S: momentum k_P + k_Q - k_S - k = G, spin s_P + s_Q - s_S = s.
    for (std::size_t P = 0; P < n; ++P)
      for (std::size_t Q = 0; Q < P; ++Q)
        for (std::size_t S = 0; S < n; ++S) {
          if (sz2(P) + sz2(Q) - sz2(S) != channel) continue;
          const MeshPoint cre[] = {k_of(P), k_of(Q)};
          const MeshPoint ann[] = {k_of(S), kt};
          if (!momentum_allowed(cre, ann, table.mesh)) continue;
          add(FermionOperator(1.0, {cr(P), cr(Q), an(S)}), fmt::format("a+({})a+({})a({})", P, Q, S), std::nullopt);
        }
  }
  if (basis.operators.empty()) throw InputError("build_basis: empty excitation basis");
  return basis;
}

}  // namespace qbands

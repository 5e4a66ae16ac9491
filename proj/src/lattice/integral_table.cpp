// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/lattice/integral_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qbands/errors.hpp"

namespace qbands {

namespace {

std::string describe(const OneBodyKey& k) {
  return "h(" + std::to_string(k.p + 1) + "," + std::to_string(k.kp) + ";" + std::to_string(k.q + 1) + "," +
         std::to_string(k.kq) + ")";
}

std::string describe(const TwoBodyKey& k) {
  return "g(" + std::to_string(k.p + 1) + "," + std::to_string(k.kp) + "," + std::to_string(k.q + 1) + "," +
         std::to_string(k.kq) + ";" + std::to_string(k.r + 1) + "," + std::to_string(k.kr) + "," +
         std::to_string(k.s + 1) + "," + std::to_string(k.ks) + ")";
}

}  // namespace

cplx IntegralTable::h(std::size_t p, std::size_t kp, std::size_t q, std::size_t kq) const {
  auto it = one_body.find({p, kp, q, kq});
  return it == one_body.end() ? cplx{} : it->second;
}

cplx IntegralTable::g(const TwoBodyKey& key) const {
  auto it = two_body.find(key);
  return it == two_body.end() ? cplx{} : it->second;
}

std::array<double, 3> IntegralTable::k_fractional(std::size_t k) const {
  const auto n = mesh.point(k);
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = kshift[i] + static_cast<double>(n[i]) / mesh.dims()[i];
  return out;
}

void IntegralTable::validate(double tol) const {
  if (n_orb == 0) throw InputError("integral table: NORB must be positive");
  if (n_electrons < 0 || static_cast<std::size_t>(n_electrons) > num_modes())
    throw InputError("integral table: NELEC outside [0, number of spin orbitals]");
  const std::size_t nk = mesh.num_kpoints();
  auto in_range = [&](std::size_t orb, std::size_t k) { return orb < n_orb && k < nk; };

  for (const auto& [key, value] : one_body) {
    if (!in_range(key.p, key.kp) || !in_range(key.q, key.kq))
      throw InputError("integral table: index out of range in " + describe(key));
    const MeshPoint cre[] = {mesh.point(key.kp)};
    const MeshPoint ann[] = {mesh.point(key.kq)};
    if (!momentum_allowed(cre, ann, mesh))
      throw InputError("integral table: " + describe(key) + " violates crystal momentum conservation");
    if (std::abs(value - std::conj(h(key.q, key.kq, key.p, key.kp))) > tol)
      throw InputError("integral table: " + describe(key) + " is not Hermitian");
  }
  for (const auto& [key, value] : two_body) {
    if (!in_range(key.p, key.kp) || !in_range(key.q, key.kq) || !in_range(key.r, key.kr) ||
        !in_range(key.s, key.ks))
      throw InputError("integral table: index out of range in " + describe(key));
    const MeshPoint cre[] = {mesh.point(key.kp), mesh.point(key.kq)};
    const MeshPoint ann[] = {mesh.point(key.kr), mesh.point(key.ks)};
    if (!momentum_allowed(cre, ann, mesh))
      throw InputError("integral table: " + describe(key) + " violates crystal momentum conservation");
    const TwoBodyKey partner{key.s, key.ks, key.r, key.kr, key.q, key.kq, key.p, key.kp};
    if (std::abs(value - std::conj(g(partner))) > tol)
      throw InputError("integral table: " + describe(key) + " is not Hermitian");
  }
}

HartreeFockReference hartree_fock_reference(const IntegralTable& table) {
  if (table.n_electrons % 2 != 0)
    throw InputError("Hartree-Fock reference: closed shell only, NELEC=" + std::to_string(table.n_electrons));
  const std::size_t n_spatial = table.num_spatial();
  const auto n_occ = static_cast<std::size_t>(table.n_electrons / 2);
  if (n_occ > n_spatial) throw InputError("Hartree-Fock reference: more electron pairs than spatial orbitals");

  const std::size_t n_orb = table.n_orb;
  auto split = [n_orb](std::size_t i) { return std::pair{i % n_orb, i / n_orb}; };
  auto h_diag = [&](std::size_t i) {
    auto [o, k] = split(i);
    return table.h(o, k, o, k).real();
  };
  // 2 J_PJ - K_PJ with J_PJ = g^{PJ}_{JP}, K_PJ = g^{PJ}_{PJ}.
  auto coulomb_exchange = [&](std::size_t i, std::size_t j) {
    auto [oi, ki] = split(i);
    auto [oj, kj] = split(j);
    const double jv = table.g({oi, ki, oj, kj, oj, kj, oi, ki}).real();
    const double kv = table.g({oi, ki, oj, kj, oi, ki, oj, kj}).real();
    return 2.0 * jv - kv;
  };

  std::vector<double> energies(n_spatial);
  for (std::size_t i = 0; i < n_spatial; ++i) energies[i] = h_diag(i);

  std::vector<std::size_t> order(n_spatial);
  std::vector<std::size_t> occupied;
  bool stable = false;
  for (int iter = 0; iter < 64 && !stable; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });
    std::vector<std::size_t> next(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_occ));
    std::sort(next.begin(), next.end());
    stable = (iter > 0 && next == occupied);
    occupied = std::move(next);
    for (std::size_t i = 0; i < n_spatial; ++i) {
      double f = h_diag(i);
      for (auto j : occupied) f += coulomb_exchange(i, j);
      energies[i] = f;
    }
  }
  if (!stable) throw NumericalError("Hartree-Fock reference: occupation did not stabilise");

  if (n_occ > 0 && n_occ < n_spatial) {
    double homo = -std::numeric_limits<double>::infinity();
    double lumo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_spatial; ++i) {
      const bool occ = std::binary_search(occupied.begin(), occupied.end(), i);
      if (occ) homo = std::max(homo, energies[i]);
      else lumo = std::min(lumo, energies[i]);
    }
    if (lumo - homo < 1e-8)
      throw InputError("Hartree-Fock reference: ambiguous open-shell filling (degenerate Fermi level)");
  }

  HartreeFockReference ref;
  ref.occupied_spatial = occupied;
  ref.orbital_energies = energies;
  ref.energy = table.constant;
  for (auto i : occupied) {
    ref.energy += 2.0 * h_diag(i);
    for (auto j : occupied) ref.energy += coulomb_exchange(i, j);
    ref.occupied_modes.push_back(2 * i);
    ref.occupied_modes.push_back(2 * i + 1);
  }
  return ref;
}

}  // namespace qbands

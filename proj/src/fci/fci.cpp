// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/fci/fci.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "qbands/errors.hpp"

namespace qbands {

namespace {

int twice_sz(std::uint64_t state) {
  int s = 0;
  for (std::uint64_t x = state; x; x &= x - 1) s += (std::countr_zero(x) % 2 == 0) ? 1 : -1;
  return s;
}

}  // namespace

MeshPoint basis_state_momentum(std::uint64_t state, const KMesh& mesh, std::size_t n_orb) {
  MeshPoint total{0, 0, 0};
  for (std::uint64_t x = state; x; x &= x - 1) {
    const auto mode = static_cast<std::size_t>(std::countr_zero(x));
    total = mesh.add(total, mesh.point(mode / 2 / n_orb));
  }
  return total;
}

SectorSpectrum fci_sector(const QubitOperator& h, int n_electrons, std::optional<double> sz,
                          const std::optional<MomentumFilter>& momentum) {
  const std::size_t n = h.num_qubits();
  if (n > kMaxFciQubits)
    throw ResourceError("fci: " + std::to_string(n) + " qubits exceeds the oracle limit of " +
                        std::to_string(kMaxFciQubits));
  std::optional<int> sz2;
  if (sz) sz2 = static_cast<int>(std::lround(2.0 * *sz));

  SectorSpectrum out;
  out.n_electrons = n_electrons;
  out.sz = sz.value_or(std::numeric_limits<double>::quiet_NaN());
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < dim; ++s) {
    if (std::popcount(s) != n_electrons) continue;
    if (sz2 && twice_sz(s) != *sz2) continue;
    if (momentum && basis_state_momentum(s, momentum->mesh, momentum->n_orb) != momentum->mesh.reduce(momentum->total))
      continue;
    out.basis.push_back(s);
  }
  if (out.basis.empty()) throw InputError("fci: empty sector");
  if (out.basis.size() > kMaxFciSectorDimension)
    throw ResourceError("fci: sector dimension " + std::to_string(out.basis.size()) + " exceeds " +
                        std::to_string(kMaxFciSectorDimension));

  std::unordered_map<std::uint64_t, Eigen::Index> index;
  for (std::size_t i = 0; i < out.basis.size(); ++i) index[out.basis[i]] = static_cast<Eigen::Index>(i);
  const auto d = static_cast<Eigen::Index>(out.basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& term : h.terms()) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const std::uint64_t src = out.basis[static_cast<std::size_t>(j)];
      auto it = index.find(src ^ term.string.x);
      if (it == index.end()) continue;  // leaves the sector (cancels against other strings)
      m(it->second, j) += term.coefficient * pauli_phase(term.string, src);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  out.energies.assign(es.eigenvalues().data(), es.eigenvalues().data() + d);
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  for (Eigen::Index j = 0; j < d; ++j) full[static_cast<Eigen::Index>(out.basis[j])] = es.eigenvectors()(j, 0);
  out.ground_vector = Statevector(n, std::move(full));
  return out;
}

IpEaSpectra exact_ip_ea(const QubitOperator& h, int n_electrons, double sz, int spin_channel,
                        const std::optional<MomentumFilter>& k_target) {
  IpEaSpectra out;
  const double dsz = 0.5 * spin_channel;
  if (!k_target) {
    out.ground_energy = fci_sector(h, n_electrons, sz).energies.front();
    out.ip = fci_sector(h, n_electrons - 1, sz - dsz).energies;
    out.ea = fci_sector(h, n_electrons + 1, sz + dsz).energies;
  } else {
    // Ground state: lowest energy over all momentum blocks; its block fixes K0.
    const KMesh& mesh = k_target->mesh;
    double best = std::numeric_limits<double>::infinity();
    MeshPoint k0{0, 0, 0};
    for (std::size_t k = 0; k < mesh.num_kpoints(); ++k) {
      MomentumFilter f{mesh, k_target->n_orb, mesh.point(k)};
      try {
        const double e = fci_sector(h, n_electrons, sz, f).energies.front();
        if (e < best - 1e-12) {
          best = e;
          k0 = f.total;
        }
      } catch (const InputError&) {
      }
    }
    out.ground_energy = best;
    out.ip = fci_sector(h, n_electrons - 1, sz - dsz,
                        MomentumFilter{mesh, k_target->n_orb, mesh.subtract(k0, k_target->total)})
                 .energies;
    out.ea = fci_sector(h, n_electrons + 1, sz + dsz,
                        MomentumFilter{mesh, k_target->n_orb, mesh.add(k0, k_target->total)})
                 .energies;
  }
  for (auto& e : out.ip) e -= out.ground_energy;
  for (auto& e : out.ea) e -= out.ground_energy;
  return out;
}

}  // namespace qbands

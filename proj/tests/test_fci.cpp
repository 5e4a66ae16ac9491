// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "qbands/errors.hpp"
#include "qbands/fci/fci.hpp"
#include "qbands/lattice/hamiltonian.hpp"
#include "qbands/lattice/hubbard.hpp"
#include "qbands/lattice/kfcidump.hpp"
#include "test_support.hpp"

namespace qbands {
namespace {

TEST(Fci, SectorMatchesDenseDiagonalization) {
  const IntegralTable t = hubbard_integrals({3, 1.0, 4.0, 2, default_complex_gauge(3)});
  const auto hq = build_hamiltonian(t);
  const auto dense = testing::dense_qubit(hq);
  for (int ne = 1; ne <= 3; ++ne) {
    const SectorSpectrum s = fci_sector(hq, ne);
    const auto ref = testing::sector_eigenvalues(dense, ne);
    ASSERT_EQ(s.energies.size(), static_cast<std::size_t>(ref.size()));
    for (std::size_t i = 0; i < s.energies.size(); ++i) EXPECT_NEAR(s.energies[i], ref(static_cast<Eigen::Index>(i)), 1e-10);
    EXPECT_NEAR(expectation(hq, s.ground_vector).real(), s.energies.front(), 1e-10);
  }
  const auto sz = fci_sector(hq, 2, 0.0);
  const auto ref = testing::sector_eigenvalues(dense, 2, 0);
  EXPECT_EQ(sz.energies.size(), static_cast<std::size_t>(ref.size()));
  EXPECT_NEAR(sz.energies.front(), ref(0), 1e-10);
}

TEST(Fci, MomentumBlocksPartitionTheSector) {
  const IntegralTable t = hubbard_integrals({3, 1.0, 4.0, 2, {}});
  const auto hq = build_hamiltonian(t);
  std::vector<double> merged;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto s = fci_sector(hq, 2, 0.0, MomentumFilter{t.mesh, 1, t.mesh.point(k)});
    for (auto state : s.basis) EXPECT_EQ(basis_state_momentum(state, t.mesh, 1), t.mesh.point(k));
    merged.insert(merged.end(), s.energies.begin(), s.energies.end());
  }
  std::sort(merged.begin(), merged.end());
  const auto full = fci_sector(hq, 2, 0.0);
  ASSERT_EQ(merged.size(), full.energies.size());
  for (std::size_t i = 0; i < merged.size(); ++i) EXPECT_NEAR(merged[i], full.energies[i], 1e-10);
}

TEST(Fci, FixtureGroundStates) {
  const auto h1 = parse_kfcidump(testing::fixture("hchain_1x1x1.kfcidump"));
  EXPECT_NEAR(fci_sector(build_hamiltonian(h1), 2, 0.0).energies.front(), -1.2941169079, 1e-8);
  const auto h2 = parse_kfcidump(testing::fixture("hchain_1x1x2.kfcidump"));
  EXPECT_NEAR(fci_sector(build_hamiltonian(h2), 4, 0.0).energies.front(), -1.7867499669, 1e-8);
}

TEST(Fci, IpEaAreSectorDifferences) {
  const IntegralTable t = hubbard_integrals({2, 1.0, 4.0, 2, {}});
  const auto hq = build_hamiltonian(t);
  const IpEaSpectra s = exact_ip_ea(hq, 2, 0.0);
  const double e0 = fci_sector(hq, 2, 0.0).energies.front();
  EXPECT_NEAR(s.ground_energy, e0, 1e-12);
  EXPECT_NEAR(s.ip.front(), fci_sector(hq, 1, -0.5).energies.front() - e0, 1e-12);
  EXPECT_NEAR(s.ea.front(), fci_sector(hq, 3, 0.5).energies.front() - e0, 1e-12);
}

TEST(Fci, RejectsImpossibleSectorsAndOversizedProblems) {
  const IntegralTable t = hubbard_integrals({2, 1.0, 4.0, 2, {}});
  const auto hq = build_hamiltonian(t);
  EXPECT_THROW(fci_sector(hq, 5), std::exception);
  EXPECT_THROW(fci_sector(hq, 2, 2.0), std::exception);
  EXPECT_THROW(fci_sector(QubitOperator(kMaxFciQubits + 1), 2), ResourceError);
}

}  // namespace
}  // namespace qbands

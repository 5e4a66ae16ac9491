// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qbands/errors.hpp"
#include "qbands/lattice/hamiltonian.hpp"
#include "qbands/lattice/hubbard.hpp"
#include "qbands/lattice/integral_table.hpp"
#include "qbands/lattice/kfcidump.hpp"
#include "qbands/lattice/kmesh.hpp"
#include "qbands/ops/jordan_wigner.hpp"
#include "qbands/sim/generator.hpp"
#include "qbands/sim/statevector.hpp"
#include "test_support.hpp"

namespace qbands {
namespace {

TEST(KMesh, LinearizationRoundTrip) {
  const KMesh mesh(2, 3, 4);
  EXPECT_EQ(mesh.num_kpoints(), 24u);
  for (std::size_t k = 0; k < mesh.num_kpoints(); ++k) EXPECT_EQ(mesh.linear(mesh.point(k)), k);
  EXPECT_EQ(mesh.linear({1, 2, 3}), 23u);
  EXPECT_EQ(mesh.add({1, 2, 3}, {1, 1, 1}), (MeshPoint{0, 0, 0}));
  EXPECT_THROW(mesh.linear({2, 0, 0}), std::out_of_range);
  EXPECT_THROW(KMesh(0, 1, 1), std::invalid_argument);
}

TEST(KMesh, MomentumConservationModuloReciprocalLattice) {
  const KMesh mesh(1, 1, 4);
  const MeshPoint c[] = {{0, 0, 3}, {0, 0, 2}};
  const MeshPoint a_ok[] = {{0, 0, 1}, {0, 0, 0}};  // 3 + 2 - 1 - 0 = 4 = G
  const MeshPoint a_bad[] = {{0, 0, 1}, {0, 0, 1}};
  EXPECT_TRUE(momentum_allowed(c, a_ok, mesh));
  EXPECT_FALSE(momentum_allowed(c, a_bad, mesh));
}

constexpr const char* kTiny = R"(# two-orbital toy
&KFCI NORB=2, NELEC=2, MESH=1,1,1, ECONST=0.5, EHF=-0.3, TAG=demo /
-1.0 0.0 1 0 1 0 0 0 0 0
-0.5 0.0 2 0 2 0 0 0 0 0
0.1 0.2 1 0 2 0 0 0 0 0
0.1 -0.2 2 0 1 0 0 0 0 0
0.6 0.0 1 0 1 0 1 0 1 0
0.5 0.0 0 0 0 0 0 0 0 0
)";

TEST(KFcidump, ParsesHeaderEntriesAndTerminator) {
  std::istringstream in(kTiny);
  const IntegralTable t = parse_kfcidump(in, "tiny");
  EXPECT_EQ(t.n_orb, 2u);
  EXPECT_EQ(t.n_electrons, 2);
  EXPECT_DOUBLE_EQ(t.constant, 0.5);
  ASSERT_TRUE(t.hf_energy);
  EXPECT_DOUBLE_EQ(*t.hf_energy, -0.3);
  EXPECT_EQ(t.extra_header.at("TAG"), "demo");
  EXPECT_EQ(t.h(0, 0, 1, 0), cplx(0.1, 0.2));
  EXPECT_EQ(t.g({0, 0, 0, 0, 0, 0, 0, 0}), cplx(0.6, 0.0));
}

TEST(KFcidump, WriteParseRoundTripIsExact) {
  const IntegralTable t = hubbard_integrals({3, 1.0, 2.5, 2, default_complex_gauge(3)});
  std::stringstream buf;
  write_kfcidump(t, buf);
  const IntegralTable back = parse_kfcidump(buf, "roundtrip");
  EXPECT_EQ(back.one_body, t.one_body);
  EXPECT_EQ(back.two_body, t.two_body);
  EXPECT_EQ(back.constant, t.constant);
  EXPECT_EQ(back.mesh, t.mesh);
  EXPECT_EQ(back.hf_energy, t.hf_energy);
}

struct ParseFailure {
  std::size_t line = 0;
  std::string message;
  bool empty() const { return message.empty(); }
  std::size_t find(const std::string& s) const { return message.find(s); }
};

ParseFailure error_of(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_kfcidump(in, "bad");
  } catch (const InputError& e) {
    return {e.line(), e.what()};
  }
  return {};
}

TEST(KFcidump, ErrorsCarryLineNumbers) {
  // Momentum violation on a 1x1x2 mesh: h(k=0 <- k=1).
  const std::string momentum = "&KFCI NORB=1, NELEC=2, MESH=1,1,2, ECONST=0 /\n"
                               "0.3 0 1 0 1 1 0 0 0 0\n0.3 0 1 1 1 0 0 0 0 0\n0 0 0 0 0 0 0 0 0 0\n";
  EXPECT_EQ(error_of(momentum).line, 2u) << error_of(momentum).message;
  EXPECT_NE(error_of(momentum).find("momentum"), std::string::npos);

  const std::string non_hermitian = "&KFCI NORB=2, NELEC=2, MESH=1,1,1, ECONST=0 /\n"
                                    "0.3 0 1 0 2 0 0 0 0 0\n0.2 0 2 0 1 0 0 0 0 0\n0 0 0 0 0 0 0 0 0 0\n";
  EXPECT_NE(error_of(non_hermitian).find("Hermitian"), std::string::npos) << error_of(non_hermitian).message;

  const std::string duplicate = "&KFCI NORB=1, NELEC=2, MESH=1,1,1, ECONST=0 /\n"
                                "0.3 0 1 0 1 0 0 0 0 0\n0.3 0 1 0 1 0 0 0 0 0\n0 0 0 0 0 0 0 0 0 0\n";
  EXPECT_EQ(error_of(duplicate).line, 3u) << error_of(duplicate).message;

  const std::string missing = "&KFCI NORB=1, MESH=1,1,1, ECONST=0 /\n0 0 0 0 0 0 0 0 0 0\n";
  EXPECT_NE(error_of(missing).find("NELEC"), std::string::npos) << error_of(missing).message;

  const std::string short_line = "&KFCI NORB=1, NELEC=2, MESH=1,1,1, ECONST=0 /\n0.3 0 1 0 1\n";
  EXPECT_EQ(error_of(short_line).line, 2u) << error_of(short_line).message;

  const std::string range = "&KFCI NORB=1, NELEC=2, MESH=1,1,1, ECONST=0 /\n"
                            "0.3 0 2 0 2 0 0 0 0 0\n0 0 0 0 0 0 0 0 0 0\n";
  EXPECT_FALSE(error_of(range).empty());

  const std::string no_terminator = "&KFCI NORB=1, NELEC=2, MESH=1,1,1, ECONST=0 /\n0.3 0 1 0 1 0 0 0 0 0\n";
  EXPECT_FALSE(error_of(no_terminator).empty());
}

TEST(KFcidump, BundledFixturesValidateAndMatchHeaderHfEnergy) {
  for (const char* name : {"hchain_1x1x1.kfcidump", "hchain_1x1x2.kfcidump", "hchain_path/k0.kfcidump",
                           "hchain_path/k2.kfcidump", "hchain_path/k4.kfcidump"}) {
    const IntegralTable t = parse_kfcidump(testing::fixture(name));
    ASSERT_TRUE(t.hf_energy) << name;
    const auto h = build_hamiltonian(t);
    const double e = expectation(h, prepare_hartree_fock(t)).real();
    EXPECT_NEAR(e, *t.hf_energy, 1e-8) << name;
  }
}

TEST(Hubbard, BlochSpectrumMatchesRealSpaceExactDiagonalization) {
  for (int n : {2, 3}) {
    for (bool gauge : {false, true}) {
      HubbardSpec spec{n, 1.0, 3.0, 2, gauge ? default_complex_gauge(n) : std::vector<double>{}};
      const IntegralTable t = hubbard_integrals(spec);
      const auto bloch = testing::dense_qubit(build_hamiltonian(t));
      const auto real = testing::dense_fermion(testing::real_space_hubbard(n, 1.0, 3.0),
                                               2 * static_cast<std::size_t>(n));
      for (int ne = 0; ne <= 2 * n; ++ne) {
        const auto a = testing::sector_eigenvalues(bloch, ne), b = testing::sector_eigenvalues(real, ne);
        ASSERT_EQ(a.size(), b.size());
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10) << "N=" << n << " ne=" << ne << " gauge=" << gauge;
      }
    }
  }
}

TEST(Hubbard, DimerGroundStateClosedForm) {
  // Two-site ring (t_eff = 2t), half filling: E0 = (U - sqrt(U^2 + 64 t^2)) / 2.
  const IntegralTable t = hubbard_integrals({2, 1.0, 4.0, 2, {}});
  const auto e = testing::sector_eigenvalues(testing::dense_qubit(build_hamiltonian(t)), 2);
  EXPECT_NEAR(e(0), (4.0 - std::sqrt(16.0 + 64.0)) / 2.0, 1e-12);
  EXPECT_NEAR(e(0), -2.472135955, 1e-9);
}

TEST(Hubbard, NoninteractingOneBodyDispersion) {
  const IntegralTable t = hubbard_integrals({4, 0.7, 0.0, 2, {}});
  for (std::size_t k = 0; k < 4; ++k)
    EXPECT_NEAR(t.h(0, k, 0, k).real(), -2 * 0.7 * std::cos(2 * std::numbers::pi * k / 4.0), 1e-14);
  EXPECT_TRUE(t.two_body.empty());
}

TEST(HartreeFock, DegenerateFermiLevelIsRejected) {
  EXPECT_THROW(hartree_fock_reference(hubbard_integrals({4, 1.0, 4.0, 4, {}})), InputError);
  EXPECT_THROW(hartree_fock_reference(hubbard_integrals({3, 1.0, 4.0, 3, {}})), InputError);
}

TEST(Symmetry, OperatorsCommuteWithHamiltonian) {
  const IntegralTable t = hubbard_integrals({3, 1.0, 4.0, 2, default_complex_gauge(3)});
  const auto h = build_hamiltonian(t);
  const std::size_t n = t.num_modes();
  EXPECT_TRUE(commutator(h, particle_number_operator(n)).pruned(1e-12).empty());
  EXPECT_TRUE(commutator(h, sz_operator(n)).pruned(1e-12).empty());
  EXPECT_TRUE(commutator(h, translation_operator(t, 2)).pruned(1e-12).empty());
}

TEST(Symmetry, TranslationOperatorDetectsMomentumViolation) {
  IntegralTable t = hubbard_integrals({3, 1.0, 0.0, 2, {}});
  // Inject a k-nonconserving hopping without validation.
  t.one_body[{0, 0, 0, 1}] = 0.2;
  t.one_body[{0, 1, 0, 0}] = 0.2;
  const auto h = jordan_wigner(fermion_hamiltonian(t), t.num_modes());
  EXPECT_FALSE(commutator(h, translation_operator(t, 2)).pruned(1e-12).empty());
  EXPECT_THROW(t.validate(), InputError);
}

}  // namespace
}  // namespace qbands

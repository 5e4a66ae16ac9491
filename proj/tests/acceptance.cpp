// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate A1-A7. Each test is independent and uses only bundled
// fixtures or generated model Hamiltonians.

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <fmt/format.h>
#include <numbers>
#include <random>

#include "qbands/adapt/adapt.hpp"
#include "qbands/adapt/pool.hpp"
#include "qbands/eom/basis.hpp"
#include "qbands/eom/functionals.hpp"
#include "qbands/eom/qse.hpp"
#include "qbands/fci/fci.hpp"
#include "qbands/lattice/hamiltonian.hpp"
#include "qbands/lattice/hubbard.hpp"
#include "qbands/lattice/kfcidump.hpp"
#include "qbands/noise/experiment.hpp"
#include "qbands/ops/jordan_wigner.hpp"
#include "qbands/sim/generator.hpp"
#include "test_support.hpp"

namespace qbands {
namespace {

std::vector<std::pair<std::string, IntegralTable>> bundled_fixtures() {
  std::vector<std::pair<std::string, IntegralTable>> out;
  for (const char* f : {"hchain_1x1x1", "hchain_1x1x2", "hchain_path/k0", "hchain_path/k1", "hchain_path/k2",
                        "hchain_path/k3", "hchain_path/k4"})
    out.emplace_back(f, parse_kfcidump(testing::fixture(std::string(f) + ".kfcidump")));
  return out;
}

// A1: {a_p, a_q^+} = delta_pq and {a_p, a_q} = 0 after Jordan-Wigner, symbolically.
TEST(A1_AlgebraExactness, CanonicalAnticommutationRelations) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const auto ap = jordan_wigner(an(p), n), aq = jordan_wigner(an(q), n);
        const auto cq = jordan_wigner(cr(q), n);
        const QubitOperator expected = p == q ? QubitOperator::identity(n) : QubitOperator(n);
        EXPECT_TRUE(approx_equal(anticommutator(ap, cq), expected, 1e-14)) << n << " " << p << " " << q;
        EXPECT_TRUE(anticommutator(ap, aq).pruned(1e-14).empty()) << n << " " << p << " " << q;
        EXPECT_TRUE(approx_equal(adjoint(ap), jordan_wigner(cr(p), n), 1e-14));
      }
}

// A2: [H, N] = [H, Sz] = [H, K] = 0 symbolically.
TEST(A2_SymmetrySuite, HamiltonianCommutesWithNumberSpinAndTranslations) {
  auto tables = bundled_fixtures();
  for (int n : {2, 3}) {
    tables.emplace_back("hubbard" + std::to_string(n), hubbard_integrals({n, 1.0, 4.0, 2, {}}));
    tables.emplace_back("hubbard" + std::to_string(n) + "c", hubbard_integrals({n, 1.0, 4.0, 2, default_complex_gauge(n)}));
  }
  for (const auto& [name, t] : tables) {
    const auto h = build_hamiltonian(t);
    const std::size_t modes = t.num_modes();
    EXPECT_TRUE(commutator(h, particle_number_operator(modes)).pruned(1e-12).empty()) << name;
    EXPECT_TRUE(commutator(h, sz_operator(modes)).pruned(1e-12).empty()) << name;
    for (int axis = 0; axis < 3; ++axis)
      EXPECT_TRUE(commutator(h, translation_operator(t, axis)).pruned(1e-12).empty()) << name << " axis " << axis;
  }
}

double fci_ground(const IntegralTable& t) {
  return fci_sector(build_hamiltonian(t), t.n_electrons, 0.0).energies.front();
}

AdaptAnsatz run_adapt(const IntegralTable& t, bool complemented, int max_iterations = 200) {
  const PreparedHamiltonian h(build_hamiltonian(t));
  const OperatorPool pool = build_pool(t, PoolKind::gsd, complemented);
  AdaptConfig cfg;
  cfg.epsilon = 1e-3;
  cfg.max_iterations = max_iterations;
  return adapt_solve(t, h, pool, cfg);
}

// A3: ADAPT-C{GSD} at eps = 1e-3 Ha.
TEST(A3_GroundStateAccuracy, FourQubitFixturesWithinMicroHartree) {
  const IntegralTable h1 = parse_kfcidump(testing::fixture("hchain_1x1x1.kfcidump"));
  const IntegralTable hub = hubbard_integrals({2, 1.0, 4.0, 2, {}});
  for (const auto* t : {&h1, &hub}) {
    const AdaptAnsatz a = run_adapt(*t, true);
    EXPECT_TRUE(a.converged);
    EXPECT_NEAR(a.energy, fci_ground(*t), 1e-6);
  }
}

TEST(A3_GroundStateAccuracy, ChemicalAccuracyOnEveryBundledFixture) {
  for (const auto& [name, t] : bundled_fixtures()) {
    const AdaptAnsatz a = run_adapt(t, true);
    EXPECT_TRUE(a.converged) << name;
    EXPECT_LT(std::abs(a.energy - fci_ground(t)), 1.594e-3) << name;
  }
}

// A4: complementary pool beats the plain pool on complex orbitals.
TEST(A4_AdaptCVersusAdapt, ComplexOrbitalHubbardRing) {
  const IntegralTable t = hubbard_integrals({3, 1.0, 4.0, 2, default_complex_gauge(3)});
  const double exact = fci_ground(t);
  const AdaptAnsatz c = run_adapt(t, true, 50);
  const AdaptAnsatz plain = run_adapt(t, false, 50);
  const double err_c = std::abs(c.energy - exact), err_plain = std::abs(plain.energy - exact);
  EXPECT_LT(err_c, 1e-6);
  EXPECT_LT(err_c, err_plain);
  RecordProperty("adapt_c_error", fmt::format("{:.3e}", err_c));
  RecordProperty("adapt_error", fmt::format("{:.3e}", err_plain));
}

// A5: complete-span EOM equals FCI sector differences; QPWT = 1 at g = 0.
TEST(A5_EomOracleEquivalence, CompleteSpanMatchesFci) {
  std::vector<std::pair<std::string, IntegralTable>> cases{
      {"hchain_1x1x1", parse_kfcidump(testing::fixture("hchain_1x1x1.kfcidump"))},
      {"hchain_1x1x2", parse_kfcidump(testing::fixture("hchain_1x1x2.kfcidump"))},
      {"hubbard2", hubbard_integrals({2, 1.0, 4.0, 2, {}})},
      {"hubbard3c", hubbard_integrals({3, 1.0, 4.0, 2, default_complex_gauge(3)})}};
  for (const auto& [name, t] : cases) {
    const auto hq = build_hamiltonian(t);
    const auto h = to_sparse(hq);
    const SectorSpectrum ground = fci_sector(hq, t.n_electrons, 0.0);
    for (std::size_t k = 0; k < t.mesh.num_kpoints(); ++k) {
      const IpEaSpectra ref = exact_ip_ea(hq, t.n_electrons, 0.0, +1, MomentumFilter{t.mesh, t.n_orb, t.mesh.point(k)});
      for (Sector s : {Sector::ip, Sector::ea}) {
        const auto& want = s == Sector::ip ? ref.ip : ref.ea;
        const QseSolution sol = solve_qse(build_qse_problem(ground.ground_vector, h, build_basis(t, s, k)));
        ASSERT_EQ(sol.retained_dim, want.size()) << name << " k=" << k << " " << to_string(s);
        for (std::size_t x = 0; x < want.size(); ++x)
          EXPECT_NEAR(sol.excitation_energies(static_cast<Eigen::Index>(x)), want[x], 1e-8) << name << " k=" << k;
      }
    }
  }
}

TEST(A5_EomOracleEquivalence, NoninteractingLimitHasUnitQuasiparticleWeight) {
  for (auto [n, ne] : {std::pair{2, 2}, std::pair{3, 2}}) {
    const IntegralTable t = hubbard_integrals({n, 1.0, 0.0, ne, {}});
    const auto h = to_sparse(build_hamiltonian(t));
    const Statevector ground = prepare_hartree_fock(t);  // exact at g = 0
    const auto occupied = hartree_fock_reference(t).occupied_modes;
    for (std::size_t k = 0; k < t.mesh.num_kpoints(); ++k) {
      const bool occ = std::binary_search(occupied.begin(), occupied.end(), mode_index(k, 0, Spin::alpha, 1));
      const double eps = -2.0 * std::cos(2 * std::numbers::pi * static_cast<double>(k) / n);
      for (Sector s : {Sector::ip, Sector::ea}) {
        const QseSolution sol = solve_qse(build_qse_problem(ground, h, build_basis(t, s, k)));
        // Exactly one quasiparticle (IP from an occupied, EA into an empty orbital) with
        // unit weight at the Koopmans energy; every other retained state (2h1p / 2p1h) has zero weight.
        const bool expect_qp = s == Sector::ip ? occ : !occ;
        int quasiparticles = 0;
        for (std::size_t x = 0; x < sol.qpwt.size(); ++x) {
          const double q = sol.qpwt[x];
          EXPECT_TRUE(std::abs(q) < 1e-10 || std::abs(q - 1.0) < 1e-10) << "N=" << n << " k=" << k << " q=" << q;
          if (q > 0.5) {
            ++quasiparticles;
            EXPECT_NEAR(sol.excitation_energies(static_cast<Eigen::Index>(x)), s == Sector::ip ? -eps : eps, 1e-10);
          }
        }
        EXPECT_EQ(quasiparticles, expect_qp ? 1 : 0) << "N=" << n << " k=" << k << " " << to_string(s);
      }
    }
  }
}

Statevector random_fixed_n_state(std::size_t n, int electrons, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  for (Eigen::Index s = 0; s < v.size(); ++s)
    if (std::popcount(static_cast<std::uint64_t>(s)) == electrons) v(s) = {g(rng), g(rng)};
  Statevector psi(n, v);
  psi.normalize();
  return psi;
}

// A6: projected functionals coincide; the unprojected double commutator does not.
TEST(A6_FunctionalIdentity, ProjectedFunctionalsAgreeForRandomPairs) {
  const IntegralTable t = hubbard_integrals({2, 1.0, 4.0, 2, default_complex_gauge(2)});
  const auto h = to_sparse(build_hamiltonian(t));
  const ExcitationBasis ip = build_basis(t, Sector::ip, 0), ea = build_basis(t, Sector::ea, 1);
  std::mt19937_64 rng(20260417);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> electrons(1, 3);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Statevector psi = random_fixed_n_state(4, electrons(rng), rng);
    const ExcitationBasis& basis = trial % 2 ? ip : ea;
    QubitOperator r(4);
    for (const auto& op : basis.operators) r += op.image * cplx(g(rng), g(rng));
    if (apply_operator(r, psi).norm() < 1e-6) continue;
    const FunctionalReport rep = verify_functional_equivalence(psi, h, r);
    worst = std::max(worst, rep.max_relative_deviation);
    EXPECT_LT(rep.max_relative_deviation, 1e-10) << "trial " << trial;
  }
  RecordProperty("max_relative_deviation", fmt::format("{:.3e}", worst));
}

TEST(A6_FunctionalIdentity, UnprojectedDoubleCommutatorDeviatesOnEarlyStoppedAdapt) {
  const IntegralTable t = hubbard_integrals({3, 1.0, 4.0, 2, default_complex_gauge(3)});
  const PreparedHamiltonian h(build_hamiltonian(t));
  const OperatorPool pool = build_pool(t, PoolKind::gsd, true);
  AdaptConfig cfg;
  cfg.max_iterations = 1;
  const AdaptAnsatz early = adapt_solve(t, h, pool, cfg);
  ASSERT_FALSE(early.converged);
  const Statevector psi = ansatz_state(early, pool);
  const ExcitationBasis basis = build_basis(t, Sector::ip, 0);
  const FunctionalReport rep = verify_functional_equivalence(psi, h.matrix, basis.operators[basis.singles[0]].image);
  EXPECT_LT(rep.max_relative_deviation, 1e-10);
  EXPECT_GT(std::abs(rep.unprojected_double_commutator - rep.working_equation), 1e-4);
  RecordProperty("unprojected_minus_working", fmt::format("{:.3e}", rep.unprojected_double_commutator - rep.working_equation));
}

// A7: zero-noise extrapolation beats the raw noisy estimate.
TEST(A7_NoiseZne, ExtrapolationReducesErrorsInMostRepeats) {
  const IntegralTable t = parse_kfcidump(testing::fixture("hchain_1x1x1.kfcidump"));
  const PreparedHamiltonian h(build_hamiltonian(t));
  const OperatorPool pool = build_pool(t, PoolKind::gsd, true);
  const AdaptAnsatz a = adapt_solve(t, h, pool, AdaptConfig{});
  NoiseSpec spec;  // lambda = 1e-3, scales {1, 1.25, 1.5}, 2^17 shots
  ASSERT_EQ(spec.shots, std::uint64_t{1} << 17);
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 16; ++s) seeds.push_back(0x5eed0000 + s);
  const NoiseReport report = run_noise_experiment(t, a, pool, spec, NoisyEomConfig{}, seeds, "hchain_1x1x1");
  const ZneScore score = score_report(report);
  EXPECT_EQ(score.repeats, 16);
  EXPECT_GE(score.energy, 14);
  EXPECT_GE(score.ip, 14);
  EXPECT_GE(score.ea, 14);
  RecordProperty("zne_better", fmt::format("energy {}/16, ip {}/16, ea {}/16", score.energy, score.ip, score.ea));
}

}  // namespace
}  // namespace qbands

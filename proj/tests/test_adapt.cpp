// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>
#include <tuple>

#include "qbands/adapt/adapt.hpp"
#include "qbands/adapt/checkpoint.hpp"
#include "qbands/adapt/optimizer.hpp"
#include "qbands/adapt/pool.hpp"
#include "qbands/errors.hpp"
#include "qbands/lattice/hamiltonian.hpp"
#include "qbands/lattice/hubbard.hpp"
#include "qbands/lattice/kfcidump.hpp"
#include "qbands/sim/generator.hpp"
#include "test_support.hpp"

namespace qbands {
namespace {

// Brute-force pool sizes from the selection rules alone.
struct Counts {
  std::size_t singles = 0, doubles = 0;
};

Counts brute_force_counts(const IntegralTable& t, PoolKind kind) {
  const std::size_t n = t.num_modes();
  std::set<std::size_t> occ;
  if (kind == PoolKind::sd)
    for (auto m : hartree_fock_reference(t).occupied_modes) occ.insert(m);
  auto spin = [&](std::size_t m) { return static_cast<int>(m % 2); };
  auto kpt = [&](std::size_t m) { return t.mesh.point(decode_mode(m, t.n_orb).k); };
  auto is_occ = [&](std::size_t m) { return kind == PoolKind::gsd || occ.contains(m); };
  auto is_virt = [&](std::size_t m) { return kind == PoolKind::gsd || !occ.contains(m); };
  std::set<std::pair<std::size_t, std::size_t>> singles;
  std::set<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>> doubles;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q || spin(p) != spin(q) || kpt(p) != kpt(q) || !is_virt(p) || !is_occ(q)) continue;
      singles.insert(std::minmax(p, q));
    }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
          if (p == q || r == s) continue;
          if (!is_virt(p) || !is_virt(q) || !is_occ(r) || !is_occ(s)) continue;
          if (spin(p) + spin(q) != spin(r) + spin(s)) continue;
          const MeshPoint c[] = {kpt(p), kpt(q)}, a[] = {kpt(r), kpt(s)};
          if (!momentum_allowed(c, a, t.mesh)) continue;
          auto created = std::minmax(p, q), annihilated = std::minmax(r, s);
          if (created == annihilated) continue;
          doubles.insert(std::minmax(created, annihilated));
        }
  return {singles.size(), doubles.size()};
}

std::size_t count_prefix(const OperatorPool& pool, char c) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < pool.base_size; ++i) n += pool.entries[i].label.front() == c;
  return n;
}

TEST(Pool, SizesMatchBruteForceEnumeration) {
  const std::vector<IntegralTable> tables{parse_kfcidump(testing::fixture("hchain_1x1x1.kfcidump")),
                                          parse_kfcidump(testing::fixture("hchain_1x1x2.kfcidump")),
                                          hubbard_integrals({3, 1.0, 4.0, 2, {}})};
  for (const auto& t : tables)
    for (PoolKind kind : {PoolKind::sd, PoolKind::gsd}) {
      const OperatorPool pool = build_pool(t, kind, true);
      const Counts c = brute_force_counts(t, kind);
      EXPECT_EQ(count_prefix(pool, 'S'), c.singles) << to_string(kind);
      EXPECT_EQ(count_prefix(pool, 'D'), c.doubles) << to_string(kind);
      EXPECT_EQ(pool.size(), 2 * pool.base_size);
      EXPECT_EQ(build_pool(t, kind, false).size(), pool.base_size);
    }
}

TEST(Pool, GeneratorsAreAntiHermitianAndComplementsPair) {
  const IntegralTable t = hubbard_integrals({2, 1.0, 4.0, 2, {}});
  const OperatorPool pool = build_pool(t, PoolKind::gsd, true);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& e = pool.entries[i];
    EXPECT_TRUE(equivalent(adjoint(e.tau), -1.0 * e.tau)) << e.label;
    if (i >= pool.base_size) {
      EXPECT_TRUE(e.complementary);
      EXPECT_EQ(e.label, "i" + pool.entries[i - pool.base_size].label);
    }
  }
  ASSERT_TRUE(pool.find(pool.entries[0].label));
  EXPECT_EQ(*pool.find(pool.entries[0].label), 0u);
  EXPECT_FALSE(pool.find("nonsense"));
  EXPECT_EQ(parse_pool_kind("GSD"), PoolKind::gsd);
  EXPECT_FALSE(parse_pool_kind("uccsd"));
}

TEST(Optimizer, MinimizesRosenbrock) {
  const Objective f = [](std::span<const double> x, std::vector<double>* g) {
    const double a = 1 - x[0], b = x[1] - x[0] * x[0];
    if (g) *g = {-2 * a - 400 * x[0] * b, 200 * b};
    return a * a + 100 * b * b;
  };
  const auto r = minimize_lbfgs(f, {-1.2, 1.0}, OptimizerConfig{});
  EXPECT_TRUE(r.converged) << r.message;
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
}

double fci_ground(const IntegralTable& t) {
  return testing::sector_eigenvalues(testing::dense_qubit(build_hamiltonian(t)), t.n_electrons)(0);
}

TEST(Adapt, HubbardDimerReachesExactEnergy) {
  const IntegralTable t = hubbard_integrals({2, 1.0, 4.0, 2, {}});
  const PreparedHamiltonian h(build_hamiltonian(t));
  const OperatorPool pool = build_pool(t, PoolKind::gsd, true);
  const AdaptAnsatz a = adapt_solve(t, h, pool, AdaptConfig{});
  EXPECT_TRUE(a.converged);
  EXPECT_NEAR(a.energy, fci_ground(t), 1e-8);
  EXPECT_NEAR(expectation(h.op, ansatz_state(a, pool)).real(), a.energy, 1e-10);
  // Energies along the history never increase.
  for (std::size_t i = 1; i < a.history.size(); ++i) EXPECT_LE(a.history[i].energy, a.history[i - 1].energy + 1e-12);
}

TEST(Adapt, ResidualGradientsMatchFiniteDifferences) {
  const IntegralTable t = hubbard_integrals({3, 1.0, 4.0, 2, default_complex_gauge(3)});
  const PreparedHamiltonian h(build_hamiltonian(t));
  const OperatorPool pool = build_pool(t, PoolKind::gsd, true);
  const AdaptAnsatz a = make_ansatz(prepare_hartree_fock(t), h);
  const auto r = residual_gradients(a, h, pool);
  ASSERT_EQ(r.size(), pool.size());
  for (std::size_t i = 0; i < pool.size(); i += 7) {
    const double step = 1e-5;
    auto plus = a.reference, minus = a.reference;
    pool.entries[i].generator.apply(plus, step);
    pool.entries[i].generator.apply(minus, -step);
    const double fd = (expectation(h.op, plus).real() - expectation(h.op, minus).real()) / (2 * step);
    EXPECT_NEAR(r[i], fd, 1e-7) << pool.entries[i].label;
  }
}

TEST(Adapt, IterationBudgetIsReportedAsNonConvergence) {
  const IntegralTable t = hubbard_integrals({3, 1.0, 4.0, 2, default_complex_gauge(3)});
  const PreparedHamiltonian h(build_hamiltonian(t));
  const OperatorPool pool = build_pool(t, PoolKind::gsd, true);
  AdaptConfig cfg;
  cfg.max_iterations = 1;
  const AdaptAnsatz a = adapt_solve(t, h, pool, cfg);
  EXPECT_FALSE(a.converged);
  EXPECT_EQ(a.operators.size(), 1u);
}

TEST(Checkpoint, RoundTripAndResume) {
  const IntegralTable t = hubbard_integrals({3, 1.0, 4.0, 2, default_complex_gauge(3)});
  const PreparedHamiltonian h(build_hamiltonian(t));
  const OperatorPool pool = build_pool(t, PoolKind::gsd, true);
  AdaptConfig cfg;
  cfg.max_iterations = 2;
  const AdaptAnsatz partial = adapt_solve(t, h, pool, cfg);
  const AdaptAnsatz back = checkpoint_from_json(checkpoint_to_json(partial, pool), pool);
  EXPECT_EQ(back.operators, partial.operators);
  EXPECT_EQ(back.thetas, partial.thetas);
  EXPECT_NEAR(expectation(h.op, ansatz_state(back, pool)).real(), partial.energy, 1e-12);

  const AdaptAnsatz resumed = adapt_solve(back, h, pool, AdaptConfig{});
  EXPECT_TRUE(resumed.converged);
  EXPECT_NEAR(resumed.energy, fci_ground(t), 1e-6);

  const OperatorPool other = build_pool(t, PoolKind::gsd, false);
  EXPECT_THROW(checkpoint_from_json(checkpoint_to_json(partial, pool), other), InputError);
  EXPECT_THROW(checkpoint_from_json("{not json", pool), InputError);
}

}  // namespace
}  // namespace qbands

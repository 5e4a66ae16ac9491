// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbands/lattice/integral_table.hpp"
#include "qbands/ops/fermion_operator.hpp"
#include "qbands/sim/generator.hpp"

namespace qbands {

enum class PoolKind { sd, gsd };

std::string_view to_string(PoolKind kind);
/// Accepts "sd" / "gsd" (case-insensitive); nullopt otherwise.
std::optional<PoolKind> parse_pool_kind(std::string_view text);

/// One anti-Hermitian pool operator: tau = T - T^dagger (standard) or
/// tau = i (T + T^dagger) (complementary partner of the same excitation T).
struct PoolEntry {
  FermionOperator excitation;  ///< T, normal ordered
  FermionOperator tau;         ///< anti-Hermitian generator
  ExponentialGenerator generator;
  std::string label;
  bool complementary = false;
};

struct OperatorPool {
  PoolKind kind = PoolKind::gsd;
  bool complemented = true;
  std::size_t num_modes = 0;
  /// Standard entries first, then (when complemented) the i(T + T^dagger)
  /// partner of every standard entry in the same order: entry i + base_size
  /// is the partner of entry i.
  std::vector<PoolEntry> entries;
  std::size_t base_size = 0;

  std::size_t size() const noexcept { return entries.size(); }
  /// Index of the entry with `label`, nullopt when absent.
  std::optional<std::size_t> find(std::string_view label) const;
};

/// Builds the momentum- and Sz-conserving singles and doubles pool.
///  SD:  occupied -> virtual excitations with respect to the Hartree-Fock filling.
///  GSD: general excitations a^dagger_p a_q (p > q) and a^dagger_p a^dagger_q a_s a_r
///       over distinct index pairs {p,q} != {r,s}, one of tau / -tau kept.
/// Every generator's qubit image is verified to consist of commuting strings.
OperatorPool build_pool(const IntegralTable& table, PoolKind kind, bool complemented);

}  // namespace qbands

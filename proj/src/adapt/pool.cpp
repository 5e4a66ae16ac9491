// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/adapt/pool.hpp"

#include <algorithm>
#include <cctype>
#include <fmt/format.h>
#include <set>
#include <utility>

namespace qbands {

namespace {

struct ModeInfo {
  MeshPoint k;
  int spin;
};

std::string mode_list(std::initializer_list<std::size_t> modes) {
  std::string out;
  for (auto m : modes) out += (out.empty() ? "" : ",") + std::to_string(m);
  return out;
}

}  // namespace

std::string_view to_string(PoolKind kind) { return kind == PoolKind::sd ? "sd" : "gsd"; }

std::optional<PoolKind> parse_pool_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "sd") return PoolKind::sd;
  if (lower == "gsd") return PoolKind::gsd;
  return std::nullopt;
}

std::optional<std::size_t> OperatorPool::find(std::string_view label) const {
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].label == label) return i;
  return std::nullopt;
}

OperatorPool build_pool(const IntegralTable& table, PoolKind kind, bool complemented) {
  const std::size_t n = table.num_modes();
  std::vector<ModeInfo> info(n);
  for (std::size_t m = 0; m < n; ++m) {
    const auto label = decode_mode(m, table.n_orb);
    info[m] = {table.mesh.point(label.k), static_cast<int>(label.spin)};
  }

  std::vector<std::size_t> occupied, virtuals;
  if (kind == PoolKind::sd) {
    const auto ref = hartree_fock_reference(table);
    occupied = ref.occupied_modes;
    for (std::size_t m = 0; m < n; ++m)
      if (!std::binary_search(occupied.begin(), occupied.end(), m)) virtuals.push_back(m);
  } else {
    for (std::size_t m = 0; m < n; ++m) occupied.push_back(m);
    virtuals = occupied;
  }

  auto single_allowed = [&](std::size_t p, std::size_t q) {
    return info[p].spin == info[q].spin && info[p].k == info[q].k;
  };
  auto double_allowed = [&](std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    if (info[p].spin + info[q].spin != info[r].spin + info[s].spin) return false;
    const MeshPoint cre[] = {info[p].k, info[q].k};
    const MeshPoint ann[] = {info[r].k, info[s].k};
    return momentum_allowed(cre, ann, table.mesh);
  };

  // (excitation T, label) in deterministic enumeration order.
  std::vector<std::pair<FermionOperator, std::string>> excitations;
  if (kind == PoolKind::sd) {
    for (auto i : occupied)
      for (auto a : virtuals)
        if (single_allowed(a, i))
          excitations.emplace_back(FermionOperator(1.0, {cr(a), an(i)}), "S(" + mode_list({a, i}) + ")");
    for (std::size_t x = 0; x < occupied.size(); ++x)
      for (std::size_t y = x + 1; y < occupied.size(); ++y)
        for (std::size_t u = 0; u < virtuals.size(); ++u)
          for (std::size_t v = u + 1; v < virtuals.size(); ++v) {
            const auto i = occupied[x], j = occupied[y], a = virtuals[u], b = virtuals[v];
            if (double_allowed(a, b, i, j))
              excitations.emplace_back(FermionOperator(1.0, {cr(b), cr(a), an(i), an(j)}),
                                       "D(" + mode_list({b, a, j, i}) + ")");
          }
  } else {
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t p = q + 1; p < n; ++p)
        if (single_allowed(p, q))
          excitations.emplace_back(FermionOperator(1.0, {cr(p), an(q)}), "S(" + mode_list({p, q}) + ")");
    // Unordered pairs {r<s} (annihilated) and {p<q} (created); tau(pq,rs) = -tau(rs,pq),
    // so keep only (p,q) lexicographically above (r,s).
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = r + 1; s < n; ++s) pairs.emplace_back(r, s);
    for (std::size_t lo = 0; lo < pairs.size(); ++lo)
      for (std::size_t hi = lo + 1; hi < pairs.size(); ++hi) {
        const auto [r, s] = pairs[lo];
        const auto [p, q] = pairs[hi];
        if (double_allowed(p, q, r, s))
          excitations.emplace_back(FermionOperator(1.0, {cr(q), cr(p), an(r), an(s)}),
                                   "D(" + mode_list({q, p, s, r}) + ")");
      }
  }

  OperatorPool pool;
  pool.kind = kind;
  pool.complemented = complemented;
  pool.num_modes = n;
  std::set<std::string> seen;
  for (auto& [t, label] : excitations) {
    const FermionOperator tdag = adjoint(t);
    PoolEntry e;
    e.excitation = t.simplified();
    e.tau = (t - tdag).simplified();
    if (e.tau.empty()) continue;
    const std::string key = e.tau.to_string();
    if (seen.count(key) || seen.count((-1.0 * e.tau).simplified().to_string())) continue;
    seen.insert(key);
    e.generator = ExponentialGenerator(e.tau, n);
    e.label = label;
    pool.entries.push_back(std::move(e));
  }
  pool.base_size = pool.entries.size();
  if (complemented) {
    for (std::size_t i = 0; i < pool.base_size; ++i) {
      const auto& base = pool.entries[i];
      PoolEntry c;
      c.excitation = base.excitation;
      c.tau = (cplx{0.0, 1.0} * (base.excitation + adjoint(base.excitation))).simplified();
      c.generator = ExponentialGenerator(c.tau, n);
      c.label = "i" + base.label;
      c.complementary = true;
      pool.entries.push_back(std::move(c));
    }
  }
  return pool;
}

}  // namespace qbands

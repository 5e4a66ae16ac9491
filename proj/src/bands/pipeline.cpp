// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/bands/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fmt/format.h>
#include <map>
#include <set>
#include <thread>
#include <tuple>

#include "qbands/eom/qse.hpp"
#include "qbands/errors.hpp"
#include "qbands/lattice/hamiltonian.hpp"
#include "qbands/lattice/kfcidump.hpp"

namespace qbands {

std::string_view to_string(Alignment a) { return a == Alignment::per_k ? "per-k" : "common"; }

Alignment parse_alignment(std::string_view name) {
  if (name == "per-k") return Alignment::per_k;
  if (name == "common") return Alignment::common;
  throw InputError(fmt::format("unknown alignment '{}' (expected per-k or common)", name));
}

std::string_view to_string(BandType t) { return t == BandType::valence ? "valence" : "conduction"; }

std::vector<std::pair<std::size_t, std::size_t>> assign_bands(const std::vector<double>& qpwt,
                                                             const std::vector<std::vector<double>>& overlaps,
                                                             const std::vector<std::size_t>& allowed_orbitals,
                                                             double qpwt_min) {
  struct Candidate {
    double overlap;
    std::size_t state, orbital;
  };
  std::vector<Candidate> candidates;
  for (std::size_t x = 0; x < qpwt.size(); ++x) {
    if (qpwt[x] < qpwt_min) continue;
    for (auto orb : allowed_orbitals)
      if (orb < overlaps.at(x).size() && overlaps[x][orb] > 1e-12) candidates.push_back({overlaps[x][orb], x, orb});
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(b.overlap, a.state, a.orbital) < std::tie(a.overlap, b.state, b.orbital);
  });
  std::set<std::size_t> used_states, used_orbitals;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& c : candidates) {
    if (used_states.contains(c.state) || used_orbitals.contains(c.orbital)) continue;
    used_states.insert(c.state);
    used_orbitals.insert(c.orbital);
    out.emplace_back(c.state, c.orbital);
  }
  return out;
}

namespace {

struct SectorResult {
  std::vector<SpectrumLine> spectrum;
  std::vector<std::pair<double, BandPoint>> bands;  ///< (excitation energy, band point without energy)
};

SectorResult solve_sector(const QseSolution& sol, const ExcitationBasis& basis,
                          const std::vector<std::size_t>& allowed, double qpwt_min) {
  SectorResult r;
  const auto n_states = static_cast<std::size_t>(sol.excitation_energies.size());
  std::size_t n_orb = 0;
  for (auto s : basis.singles) n_orb = std::max(n_orb, *basis.operators[s].orbital + 1);
  std::vector<std::vector<double>> overlaps(n_states, std::vector<double>(n_orb, 0.0));
  for (std::size_t x = 0; x < n_states; ++x) {
    r.spectrum.push_back({sol.excitation_energies(static_cast<Eigen::Index>(x)), sol.qpwt[x]});
    for (std::size_t j = 0; j < basis.singles.size(); ++j)
      overlaps[x][*basis.operators[basis.singles[j]].orbital] =
          sol.single_overlaps(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(j));
  }
  for (auto [state, orb] : assign_bands(sol.qpwt, overlaps, allowed, qpwt_min)) {
    BandPoint p;
    p.orbital = orb;
    p.qpwt = sol.qpwt[state];
    r.bands.emplace_back(sol.excitation_energies(static_cast<Eigen::Index>(state)), p);
  }
  return r;
}

std::vector<KPointBands> evaluate_input(const BandInput& input, const BandConfig& config) {
  const IntegralTable& table = input.table;
  std::vector<std::size_t> ks = input.k_indices;
  if (ks.empty())
    for (std::size_t k = 0; k < table.mesh.num_kpoints(); ++k) ks.push_back(k);
  const bool single = table.mesh.num_kpoints() == 1 && input.k_indices.empty();

  std::vector<KPointBands> out;
  for (auto k : ks) {
    KPointBands kb;
    kb.label = single ? input.label : fmt::format("{}@k{}", input.label, k);
    if (k < table.mesh.num_kpoints()) kb.k = table.k_fractional(k);
    out.push_back(std::move(kb));
  }

  try {
    const PreparedHamiltonian h(build_hamiltonian(table));
    const OperatorPool pool = build_pool(table, config.pool, config.complemented);
    const AdaptAnsatz ansatz = adapt_solve(table, h, pool, config.adapt);
    const Statevector psi = ansatz_state(ansatz, pool);
    const HartreeFockReference hf = hartree_fock_reference(table);
    const std::set<std::size_t> occupied(hf.occupied_spatial.begin(), hf.occupied_spatial.end());

    for (std::size_t i = 0; i < ks.size(); ++i) {
      KPointBands& kb = out[i];
      kb.ground_energy = ansatz.energy;
      kb.adapt_converged = ansatz.converged;
      kb.ansatz_length = ansatz.operators.size();
      try {
        if (ks[i] >= table.mesh.num_kpoints())
          throw InputError(fmt::format("k index {} outside the {}-point mesh", ks[i], table.mesh.num_kpoints()));
        std::vector<std::size_t> occ, virt;
        for (std::size_t orb = 0; orb < table.n_orb; ++orb)
          (occupied.contains(ks[i] * table.n_orb + orb) ? occ : virt).push_back(orb);

        for (Sector sector : {Sector::ip, Sector::ea}) {
          const ExcitationBasis basis = build_basis(table, sector, ks[i], config.spin);
          const bool ip = sector == Sector::ip;
          const auto& allowed = ip ? occ : virt;
          const QseSolution sol = solve_qse(build_qse_problem(psi, h.matrix, basis), config.s_tol);
          SectorResult res = solve_sector(sol, basis, allowed, config.qpwt_min);
          (ip ? kb.ip : kb.ea) = res.spectrum;
          auto& target = ip ? kb.valence : kb.conduction;
          for (auto& [de, p] : res.bands) {
            p.energy_ev = to_ev(ip ? -de : de);
            target.push_back(p);
          }
          if (config.eom_np) {
            const QseSolution np = eom_np_solve(psi, h.matrix, basis, config.s_tol);
            SectorResult rnp = solve_sector(np, basis, allowed, config.qpwt_min);
            (ip ? kb.ip_np : kb.ea_np) = rnp.spectrum;
            for (auto& [de, p] : rnp.bands) {
              auto it = std::find_if(target.begin(), target.end(),
                                     [&](const BandPoint& b) { return b.orbital == p.orbital; });
              if (it == target.end()) continue;
              it->energy_np_ev = to_ev(ip ? -de : de);
              it->qpwt_np = p.qpwt;
            }
          }
          std::sort(target.begin(), target.end(), [ip](const BandPoint& a, const BandPoint& b) {
            return ip ? a.energy_ev > b.energy_ev : a.energy_ev < b.energy_ev;
          });
          for (std::size_t b = 0; b < target.size(); ++b) target[b].index = b;
        }
        kb.ok = true;
      } catch (const std::exception& e) {
        kb.ok = false;
        kb.error = e.what();
        kb.valence.clear();
        kb.conduction.clear();
      }
    }
  } catch (const std::exception& e) {
    for (auto& kb : out) {
      kb.ok = false;
      kb.error = e.what();
    }
  }
  return out;
}

}  // namespace

BandStructure band_pipeline(const std::vector<BandInput>& inputs, const BandConfig& config) {
  std::vector<std::vector<KPointBands>> results(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) results[i] = evaluate_input(inputs[i], config);
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(inputs.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  BandStructure bands;
  bands.alignment = config.alignment;
  bands.eom_np = config.eom_np;
  bands.qpwt_min = config.qpwt_min;
  for (auto& r : results)
    for (auto& kb : r) bands.kpoints.push_back(std::move(kb));

  if (config.alignment == Alignment::common) {
    // Common reference E_ref = mean E0: valence E_ref - E(N-1), conduction E(N+1) - E_ref.
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& kb : bands.kpoints)
      if (kb.ok) sum += kb.ground_energy, ++n;
    const double ref = n ? sum / static_cast<double>(n) : 0.0;
    for (auto& kb : bands.kpoints) {
      if (!kb.ok) continue;
      const double shift = to_ev(kb.ground_energy - ref);
      for (auto& p : kb.valence) {
        p.energy_ev -= shift;
        if (p.energy_np_ev) *p.energy_np_ev -= shift;
      }
      for (auto& p : kb.conduction) {
        p.energy_ev += shift;
        if (p.energy_np_ev) *p.energy_np_ev += shift;
      }
    }
  }
  finalize_bands(bands);
  return bands;
}

void finalize_bands(BandStructure& bands) {
  auto compute = [&](bool np) -> std::optional<BandGap> {
    std::optional<std::pair<double, std::size_t>> vbm, cbm;
    for (std::size_t i = 0; i < bands.kpoints.size(); ++i) {
      const auto& kb = bands.kpoints[i];
      if (!kb.ok) continue;
      for (const auto& p : kb.valence) {
        const auto e = np ? p.energy_np_ev : std::optional<double>(p.energy_ev);
        if (e && (!vbm || *e > vbm->first)) vbm = {*e, i};
      }
      for (const auto& p : kb.conduction) {
        const auto e = np ? p.energy_np_ev : std::optional<double>(p.energy_ev);
        if (e && (!cbm || *e < cbm->first)) cbm = {*e, i};
      }
    }
    if (!vbm || !cbm) return std::nullopt;
    return BandGap{cbm->first - vbm->first, vbm->second, cbm->second};
  };
  bands.gap = compute(false);
  bands.gap_np = bands.eom_np ? compute(true) : std::nullopt;
}

std::vector<BandInput> load_fixture_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw InputError(fmt::format("fixture directory '{}' does not exist", dir));
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".kfcidump") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError(fmt::format("fixture directory '{}' contains no .kfcidump files", dir));
  std::vector<BandInput> out;
  for (const auto& f : files) out.push_back({f.stem().string(), parse_kfcidump(f), {}});
  return out;
}

}  // namespace qbands

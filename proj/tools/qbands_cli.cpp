// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line driver: ground states, band structures, FCI reference values,
// single-k EOM spectra, noise experiments and Hubbard fixture generation.

#include <CLI11.hpp>
#include <cstdio>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qbands/adapt/adapt.hpp"
#include "qbands/adapt/checkpoint.hpp"
#include "qbands/adapt/pool.hpp"
#include "qbands/bands/output.hpp"
#include "qbands/bands/pipeline.hpp"
#include "qbands/eom/basis.hpp"
#include "qbands/eom/qse.hpp"
#include "qbands/eom/qse_dump.hpp"
#include "qbands/errors.hpp"
#include "qbands/fci/fci.hpp"
#include "qbands/lattice/hamiltonian.hpp"
#include "qbands/lattice/hubbard.hpp"
#include "qbands/lattice/kfcidump.hpp"
#include "qbands/noise/experiment.hpp"

namespace {

using namespace qbands;
using nlohmann::json;

constexpr int kExitSuccess = 0;
constexpr int kExitNotConverged = 2;
constexpr int kExitInputError = 3;

struct CommonOptions {
  std::string integrals;
  std::string fixture_dir;
  std::string pool = "gsd";
  bool no_complement = false;
  double eps = 1e-3;
  int max_iterations = 200;
  double qpwt_min = 0.5;
  double s_tol = 1e-8;
  bool eom_np = false;
  std::string format = "json";
  std::uint64_t seed = 20260101;
  std::string out;
};

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw InputError(fmt::format("cannot write '{}'", path));
}

PoolKind pool_kind(const std::string& name) {
  auto k = parse_pool_kind(name);
  if (!k) throw InputError(fmt::format("unknown pool '{}' (expected sd or gsd)", name));
  return *k;
}

Spin parse_spin(const std::string& s) {
  if (s == "alpha") return Spin::alpha;
  if (s == "beta") return Spin::beta;
  throw InputError(fmt::format("unknown spin '{}' (expected alpha or beta)", s));
}

AdaptConfig adapt_config(const CommonOptions& o) {
  AdaptConfig c;
  c.epsilon = o.eps;
  c.max_iterations = o.max_iterations;
  return c;
}

IntegralTable require_table(const CommonOptions& o) {
  if (o.integrals.empty()) throw InputError("--integrals is required");
  return parse_kfcidump(o.integrals);
}

struct GroundResult {
  IntegralTable table;
  PreparedHamiltonian h;
  OperatorPool pool;
  AdaptAnsatz ansatz;
};

GroundResult solve_ground(const CommonOptions& o, const std::string& resume = {}) {
  IntegralTable table = require_table(o);
  PreparedHamiltonian h(build_hamiltonian(table));
  OperatorPool pool = build_pool(table, pool_kind(o.pool), !o.no_complement);
  AdaptAnsatz ansatz = resume.empty() ? adapt_solve(table, h, pool, adapt_config(o))
                                      : adapt_solve(load_checkpoint(resume, pool), h, pool, adapt_config(o));
  return {std::move(table), std::move(h), std::move(pool), std::move(ansatz)};
}

int run_ground(const CommonOptions& o, const std::string& resume) {
  const GroundResult g = solve_ground(o, resume);
  write_output(checkpoint_to_json(g.ansatz, g.pool), o.out);
  std::fprintf(stderr, "E = %.12f Ha after %zu operators (%s)\n", g.ansatz.energy, g.ansatz.operators.size(),
               g.ansatz.converged ? "converged" : "NOT converged");
  return g.ansatz.converged ? kExitSuccess : kExitNotConverged;
}

int run_bands(const CommonOptions& o, const std::string& alignment, unsigned threads) {
  std::vector<BandInput> inputs;
  if (!o.fixture_dir.empty() && !o.integrals.empty())
    throw InputError("use either --fixture-dir or --integrals, not both");
  if (!o.fixture_dir.empty()) inputs = load_fixture_directory(o.fixture_dir);
  else inputs.push_back({std::filesystem::path(o.integrals).stem().string(), require_table(o), {}});

  BandConfig cfg;
  cfg.pool = pool_kind(o.pool);
  cfg.complemented = !o.no_complement;
  cfg.adapt = adapt_config(o);
  cfg.qpwt_min = o.qpwt_min;
  cfg.s_tol = o.s_tol;
  cfg.eom_np = o.eom_np;
  cfg.alignment = parse_alignment(alignment);
  cfg.threads = threads;
  const BandStructure bands = band_pipeline(inputs, cfg);
  write_output(render(bands, parse_output_format(o.format)), o.out);

  bool all_good = true;
  for (const auto& kb : bands.kpoints) {
    if (!kb.ok) std::fprintf(stderr, "k-point %s failed: %s\n", kb.label.c_str(), kb.error.c_str());
    else if (!kb.adapt_converged) std::fprintf(stderr, "k-point %s: ADAPT did not converge\n", kb.label.c_str());
    all_good = all_good && kb.ok && kb.adapt_converged;
  }
  return all_good ? kExitSuccess : kExitNotConverged;
}

int run_fci(const CommonOptions& o, std::optional<int> nelec, double sz) {
  const IntegralTable table = require_table(o);
  const QubitOperator h = build_hamiltonian(table);
  const int n = nelec.value_or(table.n_electrons);
  json j;
  j["format"] = "qbands.fci";
  j["num_qubits"] = table.num_modes();
  j["n_electrons"] = n;
  j["sz"] = sz;
  const SectorSpectrum ground = fci_sector(h, n, sz);
  j["ground_energy"] = ground.energies.front();
  j["sector_dimension"] = ground.basis.size();
  auto& ks = j["kpoints"] = json::array();
  for (std::size_t k = 0; k < table.mesh.num_kpoints(); ++k) {
    const auto spectra = exact_ip_ea(h, n, sz, +1,
                                     MomentumFilter{table.mesh, table.n_orb, table.mesh.point(k)});
    ks.push_back({{"k_index", k}, {"k", table.k_fractional(k)}, {"ip", spectra.ip}, {"ea", spectra.ea}});
  }
  write_output(j.dump(2), o.out);
  return kExitSuccess;
}

int run_eom(const CommonOptions& o, std::size_t k, const std::string& sector, const std::string& spin,
            const std::string& dump_prefix) {
  const GroundResult g = solve_ground(o);
  const Statevector psi = ansatz_state(g.ansatz, g.pool);
  json j;
  j["format"] = "qbands.eom";
  j["ground_energy"] = g.ansatz.energy;
  j["adapt_converged"] = g.ansatz.converged;
  j["k_index"] = k;
  j["method"] = o.eom_np ? "eom-np" : "projected";
  std::vector<Sector> sectors;
  if (sector == "ip" || sector == "both") sectors.push_back(Sector::ip);
  if (sector == "ea" || sector == "both") sectors.push_back(Sector::ea);
  if (sectors.empty()) throw InputError(fmt::format("unknown sector '{}' (expected ip, ea or both)", sector));
  for (Sector s : sectors) {
    const ExcitationBasis basis = build_basis(g.table, s, k, parse_spin(spin));
    const QseProblem problem = o.eom_np ? build_eom_np_problem(psi, g.h.matrix, basis)
                                        : build_qse_problem(psi, g.h.matrix, basis);
    const QseSolution sol = solve_qse(problem, o.s_tol);
    json states = json::array();
    for (Eigen::Index x = 0; x < sol.excitation_energies.size(); ++x) {
      const double qp = sol.qpwt[static_cast<std::size_t>(x)];
      states.push_back({{"excitation_ha", sol.excitation_energies(x)},
                        {"excitation_ev", to_ev(sol.excitation_energies(x))},
                        {"qpwt", qp},
                        {"quasiparticle", qp >= o.qpwt_min}});
    }
    j[std::string(to_string(s))] = {{"basis_size", basis.size()}, {"retained_dim", sol.retained_dim},
                                    {"diagnostic", sol.diagnostic}, {"states", states}};
    if (!dump_prefix.empty())
      write_qse_dump(basis, problem, sol, o.s_tol, o.eom_np, fmt::format("{}_{}.json", dump_prefix, to_string(s)));
  }
  write_output(j.dump(2), o.out);
  return g.ansatz.converged ? kExitSuccess : kExitNotConverged;
}

int run_noise(const CommonOptions& o, const NoiseSpec& spec, int repeats, std::size_t k, double noisy_s_tol) {
  const GroundResult g = solve_ground(o);
  std::vector<std::uint64_t> seeds;
  for (int r = 0; r < repeats; ++r) seeds.push_back(o.seed + static_cast<std::uint64_t>(r));
  NoisyEomConfig eom;
  eom.k_index = k;
  eom.s_tol = noisy_s_tol;
  eom.qpwt_min = o.qpwt_min;
  const NoiseReport report = run_noise_experiment(g.table, g.ansatz, g.pool, spec, eom, seeds,
                                                  std::filesystem::path(o.integrals).stem().string());
  if (o.format == "json") write_output(noise_report_json(report), o.out);
  else if (o.format == "csv") write_output(noise_report_csv(report), o.out);
  else throw InputError("noise: --format must be json or csv");
  const ZneScore s = score_report(report);
  std::fprintf(stderr, "ZNE closer than noisy: energy %d/%d, IP %d/%d, EA %d/%d\n", s.energy, s.repeats, s.ip,
               s.repeats, s.ea, s.repeats);
  return g.ansatz.converged ? kExitSuccess : kExitNotConverged;
}

int run_model_hubbard(const HubbardSpec& spec, bool complex_gauge, const std::string& out) {
  HubbardSpec s = spec;
  if (complex_gauge) s.orbital_phases = default_complex_gauge(s.n_sites);
  const IntegralTable table = hubbard_integrals(s);
  if (out.empty() || out == "-") write_kfcidump(table, std::cout);
  else write_kfcidump(table, std::filesystem::path(out));
  return kExitSuccess;
}

void add_integrals(CLI::App* c, CommonOptions& o) {
  c->add_option("--integrals", o.integrals, "k-FCIDUMP integral file")->required();
}
void add_adapt(CLI::App* c, CommonOptions& o) {
  c->add_option("--pool", o.pool, "operator pool: sd or gsd")->check(CLI::IsMember({"sd", "gsd"}));
  c->add_flag("--no-complement", o.no_complement, "plain ADAPT pool without the i(T + T^dagger) partners");
  c->add_option("--eps", o.eps, "ADAPT residual-norm threshold (Hartree)")->check(CLI::PositiveNumber);
  c->add_option("--max-iter", o.max_iterations, "ADAPT iteration budget")->check(CLI::PositiveNumber);
}
void add_out(CLI::App* c, CommonOptions& o) { c->add_option("--out", o.out, "output path (default: stdout)"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qbands: quasiparticle band structures from ADAPT-C ground states and projected EOM-IP/EA"};
  app.require_subcommand(1);
  CommonOptions o;

  auto* ground = app.add_subcommand("ground", "ADAPT-C ground state of one fixture; writes a checkpoint");
  std::string resume;
  add_integrals(ground, o);
  add_adapt(ground, o);
  add_out(ground, o);
  ground->add_option("--resume", resume, "continue from a checkpoint")->check(CLI::ExistingFile);

  auto* bands = app.add_subcommand("bands", "band structure over per-k fixtures");
  std::string alignment = "per-k";
  unsigned threads = 1;
  auto* integ = bands->add_option("--integrals", o.integrals, "single k-FCIDUMP (all its mesh points)");
  auto* fdir = bands->add_option("--fixture-dir", o.fixture_dir, "directory of per-k k-FCIDUMP files");
  integ->excludes(fdir);
  bands->add_option("--qpwt-min", o.qpwt_min, "quasiparticle-weight filter")->check(CLI::Range(0.0, 1.0));
  bands->add_option("--s-tol", o.s_tol, "relative overlap eigenvalue cutoff")->check(CLI::PositiveNumber);
  bands->add_flag("--eom-np", o.eom_np, "also report the unprojected EOM-NP baseline");
  bands->add_option("--format", o.format, "json, csv or asciiplot")
      ->check(CLI::IsMember({"json", "csv", "asciiplot"}));
  bands->add_option("--alignment", alignment, "per-k or common")->check(CLI::IsMember({"per-k", "common"}));
  bands->add_option("--threads", threads, "worker threads over fixtures")->check(CLI::PositiveNumber);
  bands->add_option("--seed", o.seed, "accepted for interface uniformity; the pipeline is deterministic");
  add_adapt(bands, o);
  add_out(bands, o);

  auto* fci = app.add_subcommand("fci", "exact ground state and per-k IP/EA spectra");
  std::optional<int> nelec;
  double sz = 0.0;
  add_integrals(fci, o);
  fci->add_option("--nelec", nelec, "electron count (default: NELEC)");
  fci->add_option("--sz", sz, "S_z of the N-electron sector");
  add_out(fci, o);

  auto* eom = app.add_subcommand("eom", "projected EOM-IP/EA spectrum at one k-point");
  std::size_t k_index = 0;
  std::string sector = "both", spin = "alpha", dump;
  add_integrals(eom, o);
  add_adapt(eom, o);
  eom->add_option("--k", k_index, "linear mesh index of the target k-point");
  eom->add_option("--sector", sector, "ip, ea or both")->check(CLI::IsMember({"ip", "ea", "both"}));
  eom->add_option("--spin", spin, "alpha or beta")->check(CLI::IsMember({"alpha", "beta"}));
  eom->add_option("--s-tol", o.s_tol, "relative overlap eigenvalue cutoff")->check(CLI::PositiveNumber);
  eom->add_option("--qpwt-min", o.qpwt_min, "quasiparticle-weight threshold")->check(CLI::Range(0.0, 1.0));
  eom->add_flag("--eom-np", o.eom_np, "unprojected EOM-NP working equation");
  eom->add_option("--dump", dump, "write <prefix>_ip.json / <prefix>_ea.json QSE matrices");
  add_out(eom, o);

  auto* noise = app.add_subcommand("noise", "depolarizing-noise experiment with zero-noise extrapolation");
  NoiseSpec spec;
  int repeats = 16;
  double noisy_s_tol = 1e-2;
  std::size_t noise_k = 0;
  add_integrals(noise, o);
  add_adapt(noise, o);
  noise->add_option("--lambda", spec.lambda, "per-qubit depolarizing probability per gate")
      ->check(CLI::Range(0.0, 1.0));
  noise->add_option("--scales", spec.scales, "noise scale factors")->delimiter(',');
  noise->add_option("--shots", spec.shots, "shots per Pauli string (0 = exact)");
  noise->add_option("--repeats", repeats, "independent sampling repeats")->check(CLI::PositiveNumber);
  noise->add_option("--seed", o.seed, "seed of the first repeat; repeat r uses seed + r");
  noise->add_option("--k", noise_k, "k-point of the IP/EA endpoints");
  noise->add_option("--s-tol", noisy_s_tol, "overlap cutoff for sampled matrices")->check(CLI::PositiveNumber);
  noise->add_option("--qpwt-min", o.qpwt_min, "quasiparticle-weight threshold")->check(CLI::Range(0.0, 1.0));
  noise->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  add_out(noise, o);

  auto* model = app.add_subcommand("model", "generate model-Hamiltonian fixtures");
  model->require_subcommand(1);
  auto* hubbard = model->add_subcommand("hubbard", "1D Hubbard ring in the Bloch basis (1 x 1 x N mesh)");
  HubbardSpec hs;
  bool complex_gauge = false;
  hubbard->add_option("--sites", hs.n_sites, "ring length N = number of k-points")->check(CLI::PositiveNumber);
  hubbard->add_option("--t", hs.t, "hopping (Hartree)");
  hubbard->add_option("--u", hs.u, "on-site repulsion (Hartree)");
  hubbard->add_option("--nelec", hs.n_electrons, "electron count")->required();
  hubbard->add_flag("--complex-gauge", complex_gauge, "apply k-dependent orbital phases (complex integrals)");
  add_out(hubbard, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitInputError;
  }

  try {
    if (*ground) return run_ground(o, resume);
    if (*bands) return run_bands(o, alignment, threads);
    if (*fci) return run_fci(o, nelec, sz);
    if (*eom) return run_eom(o, k_index, sector, spin, dump);
    if (*noise) return run_noise(o, spec, repeats, noise_k, noisy_s_tol);
    if (*hubbard) return run_model_hubbard(hs, complex_gauge, o.out);
  } catch (const InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInputError;
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "resource limit: %s\n", e.what());
    return kExitInputError;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNotConverged;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return kExitInputError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitInputError;
}

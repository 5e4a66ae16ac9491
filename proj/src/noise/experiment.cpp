// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/noise/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <json.hpp>
#include <map>
#include <set>
#include <stdexcept>

#include "qbands/eom/qse.hpp"
#include "qbands/lattice/hamiltonian.hpp"
#include "qbands/noise/zne.hpp"

namespace qbands {

void NoiseSpec::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("noise: lambda outside [0, 1]");
  if (scales.empty()) throw std::invalid_argument("noise: empty scale list");
  for (double s : scales)
    if (!(s > 0.0) || s * lambda > 1.0)
      throw std::invalid_argument(fmt::format("noise: scale {} invalid for lambda {}", s, lambda));
  if (std::set<double>(scales.begin(), scales.end()).size() < 2)
    throw std::invalid_argument("noise: extrapolation needs at least two distinct scales");
}

Estimate simulate_noisy_energy(const AdaptAnsatz& ansatz, const OperatorPool& pool, const QubitOperator& hamiltonian,
                               const NoiseSpec& noise, double scale, std::mt19937_64& rng) {
  const DensityMatrix rho = prepare_noisy_state(ansatz, pool, scale * noise.lambda);
  return estimate_observable(rho, hamiltonian, noise.shots, rng);
}

NoisyEomEvaluator::NoisyEomEvaluator(const IntegralTable& table, const QubitOperator& hamiltonian,
                                     const NoisyEomConfig& config)
    : config_(config) {
  std::map<PauliString, std::size_t> index;
  auto compile = [&](const QubitOperator& op) {
    Element e;
    for (const auto& t : op.terms()) {
      if (t.string.is_identity()) {
        e.constant += t.coefficient;
        continue;
      }
      auto [it, inserted] = index.try_emplace(t.string, strings_.size());
      if (inserted) strings_.push_back(t.string);
      e.terms.emplace_back(it->second, t.coefficient);
    }
    return e;
  };
  energy_ = compile(hamiltonian);
  for (auto [sector, target] : {std::pair{Sector::ip, &ip_}, std::pair{Sector::ea, &ea_}}) {
    target->basis = build_basis(table, sector, config.k_index, config.spin);
    const auto& ops = target->basis.operators;
    for (const auto& u : ops) {
      const QubitOperator u_dag = adjoint(u.image);
      const QubitOperator u_dag_h = u_dag * hamiltonian;
      for (const auto& v : ops) {
        target->h.push_back(compile(u_dag_h * v.image));
        target->s.push_back(compile(u_dag * v.image));
      }
    }
  }
}

std::vector<double> NoisyEomEvaluator::measure(const DensityMatrix& rho, std::uint64_t shots,
                                               std::mt19937_64& rng) const {
  std::vector<double> out;
  out.reserve(strings_.size());
  for (const auto& p : strings_) out.push_back(sample_pauli(rho, p, shots, rng).mean);
  return out;
}

cplx NoisyEomEvaluator::evaluate(const Element& e, const std::vector<double>& expectations) {
  cplx v = e.constant;
  for (const auto& [i, c] : e.terms) v += c * expectations[i];
  return v;
}

std::optional<double> NoisyEomEvaluator::lowest(const SectorMatrices& m, const Eigen::MatrixXcd& h,
                                                const Eigen::MatrixXcd& s, double energy) const {
  QseProblem problem;
  problem.h = 0.5 * (h + h.adjoint());
  problem.s = 0.5 * (s + s.adjoint());
  problem.asymmetry = (h - h.adjoint()).cwiseAbs().maxCoeff();
  problem.ground_energy = energy;
  problem.energy_offset = energy;
  problem.singles = m.basis.singles;
  for (const auto& op : m.basis.operators) problem.labels.push_back(op.label);
  // Eigenvalues of S below s_tol * max eig(S), including the negative ones
  // produced by sampling noise, are discarded by the canonical orthogonalization.
  const QseSolution sol = solve_qse(problem, config_.s_tol);
  std::optional<double> best;
  for (Eigen::Index x = 0; x < sol.excitation_energies.size(); ++x)
    if (sol.qpwt[static_cast<std::size_t>(x)] >= config_.qpwt_min) {
      const double e = sol.excitation_energies(x);
      if (!best || e < *best) best = e;
    }
  return best;
}

EomEndpoints NoisyEomEvaluator::solve(const std::vector<double>& expectations) const {
  if (expectations.size() != strings_.size()) throw std::invalid_argument("noisy EOM: expectation count mismatch");
  EomEndpoints out;
  out.energy = evaluate(energy_, expectations).real();
  for (auto [m, slot] : {std::pair{&ip_, &out.ip}, std::pair{&ea_, &out.ea}}) {
    const auto n = static_cast<Eigen::Index>(m->basis.size());
    Eigen::MatrixXcd h(n, n), s(n, n);
    for (Eigen::Index u = 0; u < n; ++u)
      for (Eigen::Index v = 0; v < n; ++v) {
        const auto i = static_cast<std::size_t>(u * n + v);
        h(u, v) = evaluate(m->h[i], expectations);
        s(u, v) = evaluate(m->s[i], expectations);
      }
    *slot = lowest(*m, h, s, out.energy);
  }
  return out;
}

EomEndpoints NoisyEomEvaluator::solve_extrapolated(const std::vector<double>& scales,
                                                   const std::vector<std::vector<double>>& expectations) const {
  if (expectations.size() != scales.size()) throw std::invalid_argument("noisy EOM: one measurement set per scale");
  // Every matrix element is linear in the string expectation values, so
  // extrapolating each string is identical to extrapolating each element.
  std::vector<double> zero_noise(strings_.size());
  std::vector<double> column(scales.size());
  for (std::size_t j = 0; j < strings_.size(); ++j) {
    for (std::size_t s = 0; s < scales.size(); ++s) column[s] = expectations[s].at(j);
    zero_noise[j] = zne_extrapolate(scales, column);
  }
  return solve(zero_noise);
}

NoiseReport run_noise_experiment(const IntegralTable& table, const AdaptAnsatz& ansatz, const OperatorPool& pool,
                                 const NoiseSpec& noise, const NoisyEomConfig& eom,
                                 const std::vector<std::uint64_t>& seeds, std::string system_label) {
  noise.validate();
  const PreparedHamiltonian h(build_hamiltonian(table));
  const NoisyEomEvaluator evaluator(table, h.op, eom);

  NoiseReport report;
  report.system = std::move(system_label);
  report.noise = noise;
  report.eom = eom;
  report.num_qubits = table.num_modes();
  report.ansatz_length = ansatz.operators.size();
  report.measured_strings = evaluator.num_measured_strings();

  std::mt19937_64 unused;
  report.ideal = evaluator.solve(evaluator.measure(prepare_noisy_state(ansatz, pool, 0.0), 0, unused));

  std::vector<DensityMatrix> states;
  states.reserve(noise.scales.size());
  for (double s : noise.scales) states.push_back(prepare_noisy_state(ansatz, pool, s * noise.lambda));

  for (auto seed : seeds) {
    std::mt19937_64 rng(seed);
    NoiseRepeat rep;
    rep.seed = seed;
    std::vector<std::vector<double>> measured;
    for (const auto& rho : states) {
      measured.push_back(evaluator.measure(rho, noise.shots, rng));
      rep.per_scale.push_back(evaluator.solve(measured.back()));
    }
    rep.extrapolated = evaluator.solve_extrapolated(noise.scales, measured);
    report.repeats.push_back(std::move(rep));
  }
  return report;
}

ZneScore score_report(const NoiseReport& report) {
  ZneScore score;
  const auto& scales = report.noise.scales;
  const auto base = static_cast<std::size_t>(std::min_element(scales.begin(), scales.end()) - scales.begin());
  auto closer = [](std::optional<double> zne, std::optional<double> noisy, std::optional<double> ideal) {
    return zne && noisy && ideal && std::abs(*zne - *ideal) < std::abs(*noisy - *ideal);
  };
  for (const auto& r : report.repeats) {
    const auto& noisy = r.per_scale.at(base);
    score.energy += closer(r.extrapolated.energy, noisy.energy, report.ideal.energy);
    score.ip += closer(r.extrapolated.ip, noisy.ip, report.ideal.ip);
    score.ea += closer(r.extrapolated.ea, noisy.ea, report.ideal.ea);
    ++score.repeats;
  }
  return score;
}

namespace {

nlohmann::json endpoints_json(const EomEndpoints& e) {
  auto opt = [](std::optional<double> v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"energy", e.energy}, {"ip", opt(e.ip)}, {"ea", opt(e.ea)}};
}

std::string csv_value(std::optional<double> v) { return v ? fmt::format("{:.12g}", *v) : std::string{}; }

}  // namespace

std::string noise_report_json(const NoiseReport& report) {
  nlohmann::json j;
  j["format"] = "qbands.noise-report";
  j["version"] = 1;
  j["system"] = report.system;
  j["num_qubits"] = report.num_qubits;
  j["ansatz_length"] = report.ansatz_length;
  j["measured_strings"] = report.measured_strings;
  j["noise"] = {{"model", "depolarizing"},
                {"lambda", report.noise.lambda},
                {"scales", report.noise.scales},
                {"shots", report.noise.shots},
                {"extrapolation", "linear"}};
  j["eom"] = {{"k_index", report.eom.k_index},
              {"spin", report.eom.spin == Spin::alpha ? "alpha" : "beta"},
              {"s_tol", report.eom.s_tol},
              {"qpwt_min", report.eom.qpwt_min}};
  j["ideal"] = endpoints_json(report.ideal);
  auto& reps = j["repeats"] = nlohmann::json::array();
  for (const auto& r : report.repeats) {
    nlohmann::json jr{{"seed", r.seed}, {"zne", endpoints_json(r.extrapolated)}};
    auto& per = jr["per_scale"] = nlohmann::json::array();
    for (std::size_t s = 0; s < r.per_scale.size(); ++s) {
      auto e = endpoints_json(r.per_scale[s]);
      e["scale"] = report.noise.scales[s];
      per.push_back(std::move(e));
    }
    reps.push_back(std::move(jr));
  }
  const ZneScore score = score_report(report);
  j["summary"] = {{"repeats", score.repeats},
                  {"zne_better_energy", score.energy},
                  {"zne_better_ip", score.ip},
                  {"zne_better_ea", score.ea}};
  return j.dump(2);
}

std::string noise_report_csv(const NoiseReport& report) {
  std::string out = "repeat,seed,scale,energy,ip,ea\n";
  auto row = [&out](const std::string& rep, const std::string& seed, const std::string& scale, const EomEndpoints& e) {
    out += fmt::format("{},{},{},{:.12g},{},{}\n", rep, seed, scale, e.energy, csv_value(e.ip), csv_value(e.ea));
  };
  row("", "", "ideal", report.ideal);
  for (std::size_t r = 0; r < report.repeats.size(); ++r) {
    const auto& rep = report.repeats[r];
    const auto seed = std::to_string(rep.seed);
    for (std::size_t s = 0; s < rep.per_scale.size(); ++s)
      row(std::to_string(r), seed, fmt::format("{}", report.noise.scales[s]), rep.per_scale[s]);
    row(std::to_string(r), seed, "zne", rep.extrapolated);
  }
  return out;
}

}  // namespace qbands

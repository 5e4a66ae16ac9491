// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/adapt/checkpoint.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qbands/errors.hpp"

namespace qbands {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "qbands.adapt-checkpoint";

std::uint64_t reference_index(const Statevector& ref) {
  const auto& a = ref.amplitudes();
  Eigen::Index best = 0;
  a.cwiseAbs().maxCoeff(&best);
  if (std::abs(std::abs(a[best]) - 1.0) > 1e-12)
    throw std::invalid_argument("checkpoint: reference is not a computational basis state");
  return static_cast<std::uint64_t>(best);
}

}  // namespace

std::string checkpoint_to_json(const AdaptAnsatz& ansatz, const OperatorPool& pool) {
  json j;
  j["format"] = kFormat;
  j["version"] = 1;
  j["num_qubits"] = ansatz.reference.num_qubits();
  const auto ref = reference_index(ansatz.reference);
  json occ = json::array();
  for (std::size_t m = 0; m < ansatz.reference.num_qubits(); ++m)
    if (ref >> m & 1) occ.push_back(m);
  j["reference_occupation"] = occ;
  j["pool"] = {{"kind", std::string(to_string(pool.kind))}, {"complemented", pool.complemented}, {"size", pool.size()}};
  json ops = json::array();
  for (std::size_t l = 0; l < ansatz.operators.size(); ++l)
    ops.push_back({{"index", ansatz.operators[l]}, {"label", ansatz.labels[l]}, {"theta", ansatz.thetas[l]}});
  j["operators"] = ops;
  j["energy"] = ansatz.energy;
  j["gradient_norm"] = ansatz.gradient_norm;
  j["converged"] = ansatz.converged;
  json hist = json::array();
  for (std::size_t i = 0; i < ansatz.history.size(); ++i) {
    const auto& h = ansatz.history[i];
    hist.push_back({{"iteration", i + 1},
                    {"selected_index", h.selected_index},
                    {"selected_label", h.selected_label},
                    {"max_gradient", h.max_gradient},
                    {"gradient_norm", h.gradient_norm},
                    {"energy", h.energy},
                    {"optimizer_iterations", h.optimizer_iterations},
                    {"optimizer_converged", h.optimizer_converged}});
  }
  j["history"] = hist;
  return j.dump(2) + "\n";
}

void save_checkpoint(const AdaptAnsatz& ansatz, const OperatorPool& pool, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write checkpoint " + path.string());
  out << checkpoint_to_json(ansatz, pool);
}

AdaptAnsatz checkpoint_from_json(const std::string& text, const OperatorPool& pool) {
  try {
    const json j = json::parse(text);
    if (j.at("format") != kFormat) throw InputError("checkpoint: unknown format tag");
    if (j.at("version") != 1) throw InputError("checkpoint: unsupported version");
    const auto& p = j.at("pool");
    if (p.at("kind").get<std::string>() != to_string(pool.kind) ||
        p.at("complemented").get<bool>() != pool.complemented || p.at("size").get<std::size_t>() != pool.size())
      throw InputError("checkpoint: pool does not match the one it was written with");
    const auto n = j.at("num_qubits").get<std::size_t>();
    if (n != pool.num_modes) throw InputError("checkpoint: register size does not match the pool");
    std::uint64_t ref = 0;
    for (const auto& m : j.at("reference_occupation")) {
      const auto mode = m.get<std::size_t>();
      if (mode >= n) throw InputError("checkpoint: reference occupation outside register");
      ref |= std::uint64_t{1} << mode;
    }
    AdaptAnsatz a;
    a.reference = Statevector::basis_state(n, ref);
    for (const auto& op : j.at("operators")) {
      const auto index = op.at("index").get<std::size_t>();
      const auto label = op.at("label").get<std::string>();
      if (index >= pool.size() || pool.entries[index].label != label)
        throw InputError("checkpoint: operator '" + label + "' does not match pool entry " + std::to_string(index));
      a.operators.push_back(index);
      a.labels.push_back(label);
      a.thetas.push_back(op.at("theta").get<double>());
    }
    a.energy = j.at("energy").get<double>();
    a.gradient_norm = j.at("gradient_norm").get<double>();
    a.converged = j.at("converged").get<bool>();
    for (const auto& h : j.at("history")) {
      AdaptIteration it;
      it.selected_index = h.at("selected_index").get<std::size_t>();
      it.selected_label = h.at("selected_label").get<std::string>();
      it.max_gradient = h.at("max_gradient").get<double>();
      it.gradient_norm = h.at("gradient_norm").get<double>();
      it.energy = h.at("energy").get<double>();
      it.optimizer_iterations = h.at("optimizer_iterations").get<int>();
      it.optimizer_converged = h.at("optimizer_converged").get<bool>();
      a.history.push_back(std::move(it));
    }
    return a;
  } catch (const json::exception& e) {
    throw InputError(std::string("checkpoint: malformed JSON: ") + e.what());
  }
}

AdaptAnsatz load_checkpoint(const std::filesystem::path& path, const OperatorPool& pool) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open checkpoint " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_json(ss.str(), pool);
}

}  // namespace qbands

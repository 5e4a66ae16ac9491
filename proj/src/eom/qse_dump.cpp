// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/eom/qse_dump.hpp"

#include <fstream>
#include <json.hpp>

#include "qbands/errors.hpp"

namespace qbands {

namespace {

nlohmann::json complex_matrix(const Eigen::MatrixXcd& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array(), ri = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"re", re}, {"im", im}};
}

}  // namespace

std::string qse_dump_json(const ExcitationBasis& basis, const QseProblem& problem, const QseSolution& solution,
                          double s_tol, bool eom_np) {
  nlohmann::json j;
  j["format"] = "qbands.qse-dump";
  j["version"] = 1;
  j["sector"] = std::string(to_string(basis.sector));
  j["k_index"] = basis.k_target;
  j["spin"] = basis.spin == Spin::alpha ? "alpha" : "beta";
  j["method"] = eom_np ? "eom-np" : "projected";
  j["ground_energy"] = problem.ground_energy;
  j["energy_offset"] = problem.energy_offset;
  j["s_tol"] = s_tol;
  j["retained_dim"] = solution.retained_dim;
  j["basis"] = problem.labels;
  j["singles"] = problem.singles;
  j["H"] = complex_matrix(problem.h);
  j["S"] = complex_matrix(problem.s);
  std::vector<double> e(solution.excitation_energies.data(),
                        solution.excitation_energies.data() + solution.excitation_energies.size());
  j["excitation_energies"] = e;
  j["qpwt"] = solution.qpwt;
  return j.dump(2) + "\n";
}

void write_qse_dump(const ExcitationBasis& basis, const QseProblem& problem, const QseSolution& solution,
                    double s_tol, bool eom_np, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write QSE dump " + path.string());
  out << qse_dump_json(basis, problem, solution, s_tol, eom_np);
}

}  // namespace qbands

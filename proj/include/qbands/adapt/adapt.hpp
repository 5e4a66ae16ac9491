// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/SparseCore>
#include <cstddef>
#include <string>
#include <vector>

#include "qbands/adapt/optimizer.hpp"
#include "qbands/adapt/pool.hpp"
#include "qbands/ops/qubit_operator.hpp"
#include "qbands/sim/statevector.hpp"

namespace qbands {

/// Diagnostics of one ADAPT iteration: the gradient screen that led to the
/// selection and the energy after re-optimization.
struct AdaptIteration {
  std::size_t selected_index = 0;
  std::string selected_label;
  double max_gradient = 0.0;   ///< max_i |R_i| before selection
  double gradient_norm = 0.0;  ///< ||R||_2 before selection
  double energy = 0.0;         ///< energy after re-optimization
  int optimizer_iterations = 0;
  bool optimizer_converged = false;
};

/// Ordered product of pool exponentials acting on a reference determinant.
struct AdaptAnsatz {
  std::vector<std::size_t> operators;  ///< pool indices, in application order
  std::vector<std::string> labels;
  std::vector<double> thetas;
  Statevector reference;
  double energy = 0.0;
  std::vector<AdaptIteration> history;
  /// ||R||_2 from the most recent gradient screen.
  double gradient_norm = 0.0;
  bool converged = false;
};

struct AdaptConfig {
  double epsilon = 1e-3;  ///< Hartree; stop when ||R||_2 < epsilon
  int max_iterations = 200;
  OptimizerConfig optimizer;
  /// Gradients within this distance of the maximum count as ties, resolved
  /// towards the lowest pool index.
  double tie_tolerance = 1e-12;
};

/// Sparse Hamiltonian plus its symbolic form, built once per solve.
struct PreparedHamiltonian {
  explicit PreparedHamiltonian(QubitOperator op);
  QubitOperator op;
  Eigen::SparseMatrix<cplx> matrix;
};

/// Empty ansatz on `reference` with its energy.
AdaptAnsatz make_ansatz(const Statevector& reference, const PreparedHamiltonian& h);

/// |Psi> of the ansatz.
Statevector ansatz_state(const AdaptAnsatz& ansatz, const OperatorPool& pool);

/// R_i = <Psi|[H, tau_i]|Psi> = 2 Re <H Psi|tau_i Psi> for every pool entry.
std::vector<double> residual_gradients(const AdaptAnsatz& ansatz, const PreparedHamiltonian& h,
                                       const OperatorPool& pool);

/// Energy gradient dE/dtheta_l of the current ansatz (reverse sweep).
std::vector<double> energy_gradient(const AdaptAnsatz& ansatz, const PreparedHamiltonian& h,
                                    const OperatorPool& pool);

/// Appends the entry with the largest |R_i| (from `gradients`) and re-minimizes
/// all angles jointly, warm-started with the new angle at zero. Throws
/// NumericalError if the energy rises.
AdaptAnsatz adapt_step(const AdaptAnsatz& ansatz, const PreparedHamiltonian& h, const OperatorPool& pool,
                       const std::vector<double>& gradients, const AdaptConfig& config);

/// Iterates from `start` until ||R||_2 < epsilon or the iteration budget is
/// exhausted; `converged` records which happened.
AdaptAnsatz adapt_solve(AdaptAnsatz start, const PreparedHamiltonian& h, const OperatorPool& pool,
                        const AdaptConfig& config);

/// Convenience: Hartree-Fock reference of `table`, then adapt_solve.
AdaptAnsatz adapt_solve(const IntegralTable& table, const PreparedHamiltonian& h, const OperatorPool& pool,
                        const AdaptConfig& config);

}  // namespace qbands

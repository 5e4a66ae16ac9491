// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/adapt/adapt.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

#include "qbands/errors.hpp"
#include "qbands/sim/generator.hpp"

namespace qbands {

namespace {

constexpr double kMonotonicitySlack = 1e-10;

std::vector<const ExponentialGenerator*> generators_of(const AdaptAnsatz& ansatz, const OperatorPool& pool) {
  std::vector<const ExponentialGenerator*> gens;
  gens.reserve(ansatz.operators.size());
  for (auto i : ansatz.operators) {
    if (i >= pool.size()) throw std::invalid_argument("ansatz references an entry outside the pool");
    gens.push_back(&pool.entries[i].generator);
  }
  return gens;
}

}  // namespace

PreparedHamiltonian::PreparedHamiltonian(QubitOperator o) : op(std::move(o)), matrix(to_sparse(op)) {}

AdaptAnsatz make_ansatz(const Statevector& reference, const PreparedHamiltonian& h) {
  AdaptAnsatz a;
  a.reference = reference;
  const Eigen::VectorXcd hv = h.matrix * reference.amplitudes();
  a.energy = reference.amplitudes().dot(hv).real();
  return a;
}

Statevector ansatz_state(const AdaptAnsatz& ansatz, const OperatorPool& pool) {
  const auto gens = generators_of(ansatz, pool);
  return prepare_ansatz_state(gens, ansatz.thetas, ansatz.reference);
}

std::vector<double> residual_gradients(const AdaptAnsatz& ansatz, const PreparedHamiltonian& h,
                                       const OperatorPool& pool) {
  const Statevector psi = ansatz_state(ansatz, pool);
  const Statevector hpsi(psi.num_qubits(), h.matrix * psi.amplitudes());
  std::vector<double> r(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i)
    r[i] = 2.0 * expectation(hpsi, pool.entries[i].generator.qubit_image(), psi).real();
  return r;
}

std::vector<double> energy_gradient(const AdaptAnsatz& ansatz, const PreparedHamiltonian& h,
                                    const OperatorPool& pool) {
  const auto gens = generators_of(ansatz, pool);
  std::vector<double> g;
  energy_and_gradient(gens, ansatz.thetas, h.matrix, ansatz.reference, &g);
  return g;
}

AdaptAnsatz adapt_step(const AdaptAnsatz& ansatz, const PreparedHamiltonian& h, const OperatorPool& pool,
                       const std::vector<double>& gradients, const AdaptConfig& config) {
  if (gradients.size() != pool.size() || pool.size() == 0)
    throw std::invalid_argument("adapt_step: gradient list does not match the pool");
  double max_grad = 0.0, sq = 0.0;
  for (double r : gradients) {
    max_grad = std::max(max_grad, std::abs(r));
    sq += r * r;
  }
  std::size_t selected = 0;
  while (std::abs(gradients[selected]) < max_grad - config.tie_tolerance) ++selected;

  AdaptAnsatz next = ansatz;
  next.operators.push_back(selected);
  next.labels.push_back(pool.entries[selected].label);
  next.thetas.push_back(0.0);

  const auto gens = generators_of(next, pool);
  const Objective objective = [&](std::span<const double> x, std::vector<double>* grad) {
    return energy_and_gradient(gens, x, h.matrix, next.reference, grad);
  };
  const auto opt = minimize_lbfgs(objective, next.thetas, config.optimizer);
  next.thetas = opt.x;
  next.energy = opt.value;
  if (next.energy > ansatz.energy + kMonotonicitySlack)
    throw NumericalError(fmt::format("adapt_step: energy rose from {:.12f} to {:.12f} at iteration {} ({})",
                                     ansatz.energy, next.energy, next.history.size() + 1, opt.message));

  AdaptIteration it;
  it.selected_index = selected;
  it.selected_label = pool.entries[selected].label;
  it.max_gradient = max_grad;
  it.gradient_norm = std::sqrt(sq);
  it.energy = next.energy;
  it.optimizer_iterations = opt.iterations;
  it.optimizer_converged = opt.converged;
  next.history.push_back(std::move(it));
  next.gradient_norm = std::sqrt(sq);
  next.converged = false;
  return next;
}

AdaptAnsatz adapt_solve(AdaptAnsatz ansatz, const PreparedHamiltonian& h, const OperatorPool& pool,
                        const AdaptConfig& config) {
  if (pool.size() == 0) {
    ansatz.converged = true;
    ansatz.gradient_norm = 0.0;
    return ansatz;
  }
  for (int iter = 0;; ++iter) {
    const auto gradients = residual_gradients(ansatz, h, pool);
    double sq = 0.0;
    for (double r : gradients) sq += r * r;
    ansatz.gradient_norm = std::sqrt(sq);
    if (ansatz.gradient_norm < config.epsilon) {
      ansatz.converged = true;
      return ansatz;
    }
    if (iter >= config.max_iterations) {
      ansatz.converged = false;
      return ansatz;
    }
    ansatz = adapt_step(ansatz, h, pool, gradients, config);
  }
}

AdaptAnsatz adapt_solve(const IntegralTable& table, const PreparedHamiltonian& h, const OperatorPool& pool,
                        const AdaptConfig& config) {
  return adapt_solve(make_ansatz(prepare_hartree_fock(table), h), h, pool, config);
}

}  // namespace qbands

// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qbands {

struct OptimizerConfig {
  /// Stop when the largest gradient component falls below this value.
  double gradient_tolerance = 1e-8;
  int max_iterations = 2000;
  /// L-BFGS history length.
  int memory = 20;
};

struct OptimizerResult {
  std::vector<double> x;
  double value = 0.0;
  double gradient_max = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// Objective returning f(x) and filling the gradient when the pointer is non-null.
using Objective = std::function<double(std::span<const double> x, std::vector<double>* gradient)>;

/// Unconstrained L-BFGS minimization (Ceres line-search solver, Wolfe line search).
/// The returned point is never worse than `x0`.
OptimizerResult minimize_lbfgs(const Objective& objective, std::vector<double> x0, const OptimizerConfig& config);

}  // namespace qbands

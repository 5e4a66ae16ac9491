// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/adapt/optimizer.hpp"

#include <ceres/ceres.h>

#include <algorithm>
#include <cmath>

namespace qbands {

namespace {

class CeresObjective final : public ceres::FirstOrderFunction {
 public:
  CeresObjective(const Objective& f, int n) : f_(f), n_(n) {}

  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    std::span<const double> x(parameters, static_cast<std::size_t>(n_));
    if (gradient == nullptr) {
      *cost = f_(x, nullptr);
    } else {
      *cost = f_(x, &scratch_);
      std::copy(scratch_.begin(), scratch_.end(), gradient);
    }
    return std::isfinite(*cost);
  }
  int NumParameters() const override { return n_; }

 private:
  const Objective& f_;
  int n_;
  mutable std::vector<double> scratch_;
};

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

OptimizerResult minimize_lbfgs(const Objective& objective, std::vector<double> x0, const OptimizerConfig& config) {
  OptimizerResult result;
  std::vector<double> g0;
  const double f0 = objective(x0, &g0);
  result.x = x0;
  result.value = f0;
  result.gradient_max = max_abs(g0);
  if (x0.empty() || result.gradient_max < config.gradient_tolerance) {
    result.converged = true;
    result.message = "initial point is stationary";
    return result;
  }

  ceres::GradientProblem problem(new CeresObjective(objective, static_cast<int>(x0.size())));
  ceres::GradientProblemSolver::Options options;
  options.line_search_direction_type = ceres::LBFGS;
  options.max_lbfgs_rank = config.memory;
  options.max_num_iterations = config.max_iterations;
  options.gradient_tolerance = config.gradient_tolerance;
  options.function_tolerance = 1e-16;
  options.parameter_tolerance = 1e-16;
  options.logging_type = ceres::SILENT;
  options.minimizer_progress_to_stdout = false;

  std::vector<double> x = x0;
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(options, problem, x.data(), &summary);

  std::vector<double> g;
  const double f = objective(x, &g);
  result.iterations = static_cast<int>(summary.iterations.size());
  result.message = summary.message;
  if (f <= f0) {
    result.x = std::move(x);
    result.value = f;
    result.gradient_max = max_abs(g);
  }
  result.converged = result.gradient_max < config.gradient_tolerance ||
                     summary.termination_type == ceres::CONVERGENCE;
  return result;
}

}  // namespace qbands

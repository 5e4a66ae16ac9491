// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/noise/zne.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qbands {

double zne_extrapolate(std::span<const double> scales, std::span<const double> values, int degree) {
  if (scales.size() != values.size()) throw std::invalid_argument("zne: scale and value counts differ");
  if (degree < 0) throw std::invalid_argument("zne: negative polynomial degree");
  const std::set<double> distinct(scales.begin(), scales.end());
  if (distinct.size() < static_cast<std::size_t>(degree) + 1)
    throw std::invalid_argument("zne: need at least degree + 1 distinct noise scales");
  if (std::any_of(values.begin(), values.end(), [](double v) { return !std::isfinite(v); }) ||
      std::any_of(scales.begin(), scales.end(), [](double v) { return !std::isfinite(v); }))
    throw std::invalid_argument("zne: non-finite input");

  const auto n = static_cast<Eigen::Index>(scales.size());
  Eigen::MatrixXd vandermonde(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double power = 1.0;
    for (int d = 0; d <= degree; ++d, power *= scales[static_cast<std::size_t>(i)]) vandermonde(i, d) = power;
    rhs(i) = values[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd coeffs = vandermonde.colPivHouseholderQr().solve(rhs);
  return coeffs(0);
}

}  // namespace qbands

// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

namespace qbands {

/// Zero-noise extrapolation: least-squares polynomial fit of `values` against
/// the noise `scales`, evaluated at scale 0. The default degree 1 is linear
/// (Richardson with a straight line). Throws std::invalid_argument when the
/// sizes differ, fewer than degree + 1 distinct scales are given, or a value is
/// not finite.
double zne_extrapolate(std::span<const double> scales, std::span<const double> values, int degree = 1);

}  // namespace qbands

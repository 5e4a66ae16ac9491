// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/SparseCore>

#include "qbands/ops/qubit_operator.hpp"
#include "qbands/sim/statevector.hpp"

namespace qbands {

/// The EOM functionals evaluated for one excitation operator R on a reference
/// Psi, with the projected operator R~ = R|Psi><Psi| realized exactly as the
/// rank-one maps R~|x> = <Psi|x> R|Psi> and R~^dagger|x> = <R Psi|x> |Psi>.
struct FunctionalReport {
  double simple_metric = 0.0;           ///< <R~^+ [H, R~]> / <R~^+ R~>
  double commutator_metric = 0.0;       ///< <[R~^+, [H, R~]]_+> / <[R~^+, R~]_+>
  double double_commutator = 0.0;       ///< <[R~^+, H, R~]_+> / <[R~^+, R~]_+>
  double working_equation = 0.0;        ///< <R^+ H R> / <R^+ R> - <H>
  double unprojected_double_commutator = 0.0;  ///< <[R^+, H, R]_+> / <[R^+, R]_+> (EOM-NP)
  /// Largest imaginary part encountered in the projected functionals.
  double max_imaginary = 0.0;
  /// max |a - b| / max(|a|, |b|) over the four projected values.
  double max_relative_deviation = 0.0;
  /// <Psi|R|Psi>: the projected killer condition requires it to vanish.
  double killer_residual = 0.0;
};

/// Requires R|Psi> != 0 (NumericalError otherwise). Psi is normalized internally.
FunctionalReport verify_functional_equivalence(const Statevector& ground, const Eigen::SparseMatrix<cplx>& hamiltonian,
                                               const QubitOperator& r);

}  // namespace qbands

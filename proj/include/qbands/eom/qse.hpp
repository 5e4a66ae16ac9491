// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstddef>
#include <string>
#include <vector>

#include "qbands/eom/basis.hpp"
#include "qbands/sim/statevector.hpp"

namespace qbands {

/// Generalized Hermitian eigenproblem H C = S C E in the span of {rho_u |Psi>}.
struct QseProblem {
  Eigen::MatrixXcd h;
  Eigen::MatrixXcd s;
  double ground_energy = 0.0;
  /// Subtracted from the eigenvalues to give excitation energies: E_0 for the
  /// projected working equation, 0 for the commutator (EOM-NP) form.
  double energy_offset = 0.0;
  /// Largest |H - H^dagger| before symmetrization.
  double asymmetry = 0.0;
  std::vector<std::size_t> singles;
  std::vector<std::string> labels;
};

struct QseSolution {
  /// Excitation energies Delta E_x (Hartree), ascending.
  Eigen::VectorXd excitation_energies;
  /// Columns are S-normalized eigenvectors (C^dagger S C = I).
  Eigen::MatrixXcd vectors;
  /// Norm of each eigenstate's projection onto span{singles rho |Psi>}, in [0, 1].
  std::vector<double> qpwt;
  /// ||R_1||_2 of the raw coefficient vector (equals qpwt for an orthonormal basis).
  std::vector<double> qpwt_coefficient;
  /// |<phi_s|chi_x>|^2 / <phi_s|phi_s> per state x (rows) and single s (columns).
  Eigen::MatrixXd single_overlaps;
  std::size_t retained_dim = 0;
  std::string diagnostic;
};

/// Matrices of the projected working equation:
///   H_uv = <Psi|rho_u^dagger H rho_v|Psi>, S_uv = <Psi|rho_u^dagger rho_v|Psi>,
/// on the normalized copy of `ground`. H is symmetrized after checking its
/// asymmetry is below 1e-8 (NumericalError otherwise).
QseProblem build_qse_problem(const Statevector& ground, const Eigen::SparseMatrix<cplx>& hamiltonian,
                             const ExcitationBasis& basis);

/// EOM-NP baseline: unprojected symmetric double commutator
///   H_uv = <Psi|[rho_u^dagger, H, rho_v]_+|Psi>, S_uv = <Psi|[rho_u^dagger, rho_v]_+|Psi>.
QseProblem build_eom_np_problem(const Statevector& ground, const Eigen::SparseMatrix<cplx>& hamiltonian,
                                const ExcitationBasis& basis);

/// Canonical orthogonalization: eigenvalues of S below s_tol * max eig(S) are
/// dropped, H is solved in the retained subspace and back-transformed.
/// Returns an empty solution with a diagnostic when S is numerically zero.
QseSolution solve_qse(const QseProblem& problem, double s_tol = 1e-8);

/// Projector-based quasiparticle weights of `solution` (recomputed from S).
std::vector<double> quasiparticle_weight(const QseSolution& solution, const QseProblem& problem,
                                         double s_tol = 1e-8);

/// Convenience: build_eom_np_problem + solve_qse.
QseSolution eom_np_solve(const Statevector& ground, const Eigen::SparseMatrix<cplx>& hamiltonian,
                         const ExcitationBasis& basis, double s_tol = 1e-8);

}  // namespace qbands

// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/eom/qse.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "qbands/errors.hpp"

namespace qbands {

namespace {

constexpr double kAsymmetryLimit = 1e-8;
/// Below this absolute scale the overlap matrix counts as zero.
constexpr double kOverlapFloor = 1e-14;

Statevector normalized(const Statevector& s) {
  Statevector out = s;
  out.normalize();
  return out;
}

std::vector<Eigen::VectorXcd> apply_all(const ExcitationBasis& basis, const Statevector& psi, bool dagger) {
  std::vector<Eigen::VectorXcd> out;
  out.reserve(basis.size());
  for (const auto& b : basis.operators)
    out.push_back(apply_operator(dagger ? adjoint(b.image) : b.image, psi).amplitudes());
  return out;
}

void finish(QseProblem& p) {
  const Eigen::MatrixXcd hd = p.h.adjoint();
  p.asymmetry = p.h.size() ? (p.h - hd).cwiseAbs().maxCoeff() : 0.0;
  if (p.asymmetry > kAsymmetryLimit)
    throw NumericalError(fmt::format("QSE: H asymmetry {:.3e} exceeds {:.0e}", p.asymmetry, kAsymmetryLimit));
  p.h = 0.5 * (p.h + hd);
  const Eigen::MatrixXcd sd = p.s.adjoint();
  p.s = 0.5 * (p.s + sd);
}

void copy_basis_info(QseProblem& p, const ExcitationBasis& basis) {
  p.singles = basis.singles;
  for (const auto& b : basis.operators) p.labels.push_back(b.label);
}

/// Retained eigenvectors of a Hermitian PSD matrix scaled by 1/sqrt(eigenvalue).
Eigen::MatrixXcd canonical_transform(const Eigen::MatrixXcd& s, double s_tol, std::size_t* kept) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
  const auto& w = es.eigenvalues();
  const double wmax = w.size() ? w.maxCoeff() : 0.0;
  std::vector<Eigen::Index> keep;
  if (wmax > kOverlapFloor)
    for (Eigen::Index i = 0; i < w.size(); ++i)
      if (w[i] > s_tol * wmax) keep.push_back(i);
  Eigen::MatrixXcd x(s.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    x.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]) / std::sqrt(w[keep[j]]);
  *kept = keep.size();
  return x;
}

}  // namespace

QseProblem build_qse_problem(const Statevector& ground, const Eigen::SparseMatrix<cplx>& hamiltonian,
                             const ExcitationBasis& basis) {
  const Statevector psi = normalized(ground);
  const auto phi = apply_all(basis, psi, false);
  const auto n = static_cast<Eigen::Index>(basis.size());
  QseProblem p;
  p.ground_energy = psi.amplitudes().dot(hamiltonian * psi.amplitudes()).real();
  p.energy_offset = p.ground_energy;
  p.h.resize(n, n);
  p.s.resize(n, n);
  for (Eigen::Index v = 0; v < n; ++v) {
    const Eigen::VectorXcd hv = hamiltonian * phi[v];
    for (Eigen::Index u = 0; u < n; ++u) {
      p.h(u, v) = phi[u].dot(hv);
      p.s(u, v) = phi[u].dot(phi[v]);
    }
  }
  finish(p);
  copy_basis_info(p, basis);
  return p;
}

QseProblem build_eom_np_problem(const Statevector& ground, const Eigen::SparseMatrix<cplx>& hamiltonian,
                                const ExcitationBasis& basis) {
  const Statevector psi = normalized(ground);
  const Statevector hpsi(psi.num_qubits(), hamiltonian * psi.amplitudes());
  const auto a = apply_all(basis, psi, false);   // rho_u |Psi>
  const auto b = apply_all(basis, psi, true);    // rho_u^dagger |Psi>
  const auto c = apply_all(basis, hpsi, false);  // rho_u H|Psi>
  const auto d = apply_all(basis, hpsi, true);   // rho_u^dagger H|Psi>
  const auto n = static_cast<Eigen::Index>(basis.size());
  std::vector<Eigen::VectorXcd> ha, hb;
  for (Eigen::Index u = 0; u < n; ++u) {
    ha.push_back(hamiltonian * a[u]);
    hb.push_back(hamiltonian * b[u]);
  }
  QseProblem p;
  p.ground_energy = psi.amplitudes().dot(hpsi.amplitudes()).real();
  p.energy_offset = 0.0;
  p.h.resize(n, n);
  p.s.resize(n, n);
  // 2[A, H, R]_+ = 2AHR - 2RHA - HAR + RAH - ARH + HRA with A = rho_u^dagger, R = rho_v.
  for (Eigen::Index u = 0; u < n; ++u)
    for (Eigen::Index v = 0; v < n; ++v) {
      p.h(u, v) = a[u].dot(ha[v]) - b[v].dot(hb[u]) +
                  0.5 * (-c[u].dot(a[v]) + b[v].dot(d[u]) - a[u].dot(c[v]) + d[v].dot(b[u]));
      p.s(u, v) = a[u].dot(a[v]) + b[v].dot(b[u]);
    }
  finish(p);
  copy_basis_info(p, basis);
  return p;
}

std::vector<double> quasiparticle_weight(const QseSolution& solution, const QseProblem& problem, double s_tol) {
  std::vector<double> out;
  const auto ns = static_cast<Eigen::Index>(problem.singles.size());
  if (ns == 0 || solution.vectors.cols() == 0) return std::vector<double>(solution.vectors.cols(), 0.0);
  Eigen::MatrixXcd s11(ns, ns), s1all(ns, problem.s.cols());
  for (Eigen::Index i = 0; i < ns; ++i) {
    s1all.row(i) = problem.s.row(static_cast<Eigen::Index>(problem.singles[i]));
    for (Eigen::Index j = 0; j < ns; ++j)
      s11(i, j) = problem.s(static_cast<Eigen::Index>(problem.singles[i]), static_cast<Eigen::Index>(problem.singles[j]));
  }
  std::size_t kept = 0;
  const Eigen::MatrixXcd x = canonical_transform(s11, s_tol, &kept);
  // o = <phi_singles|chi>; ||P chi||^2 = o^dagger S11^+ o = ||X^dagger o||^2.
  const Eigen::MatrixXcd o = s1all * solution.vectors;
  for (Eigen::Index c = 0; c < o.cols(); ++c) {
    const double w = kept ? (x.adjoint() * o.col(c)).norm() : 0.0;
    out.push_back(std::min(w, 1.0 + 1e-10));
  }
  return out;
}

QseSolution solve_qse(const QseProblem& problem, double s_tol) {
  QseSolution sol;
  std::size_t kept = 0;
  const Eigen::MatrixXcd x = canonical_transform(problem.s, s_tol, &kept);
  sol.retained_dim = kept;
  if (kept == 0) {
    sol.excitation_energies.resize(0);
    sol.vectors.resize(problem.s.rows(), 0);
    sol.single_overlaps.resize(0, static_cast<Eigen::Index>(problem.singles.size()));
    sol.diagnostic = "overlap matrix is numerically zero; no states retained";
    return sol;
  }
  Eigen::MatrixXcd hp = x.adjoint() * problem.h * x;
  hp = 0.5 * (hp + hp.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hp);
  sol.excitation_energies = es.eigenvalues().array() - problem.energy_offset;
  sol.vectors = x * es.eigenvectors();
  if (kept < static_cast<std::size_t>(problem.s.rows()))
    sol.diagnostic = fmt::format("dropped {} of {} overlap eigenvalues below s_tol={:.1e}",
                                 problem.s.rows() - static_cast<Eigen::Index>(kept), problem.s.rows(), s_tol);

  sol.qpwt = quasiparticle_weight(sol, problem, s_tol);
  const auto ns = static_cast<Eigen::Index>(problem.singles.size());
  sol.single_overlaps.resize(static_cast<Eigen::Index>(kept), ns);
  for (Eigen::Index c = 0; c < sol.vectors.cols(); ++c) {
    double sq = 0.0;
    for (Eigen::Index i = 0; i < ns; ++i) {
      const auto si = static_cast<Eigen::Index>(problem.singles[i]);
      sq += std::norm(sol.vectors(si, c));
      const double sii = problem.s(si, si).real();
      const cplx o = (problem.s.row(si) * sol.vectors.col(c)).value();
      sol.single_overlaps(c, i) = sii > kOverlapFloor ? std::norm(o) / sii : 0.0;
    }
    sol.qpwt_coefficient.push_back(std::sqrt(sq));
  }
  return sol;
}

QseSolution eom_np_solve(const Statevector& ground, const Eigen::SparseMatrix<cplx>& hamiltonian,
                         const ExcitationBasis& basis, double s_tol) {
  return solve_qse(build_eom_np_problem(ground, hamiltonian, basis), s_tol);
}

}  // namespace qbands

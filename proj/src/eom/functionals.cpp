// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/eom/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>

#include "qbands/errors.hpp"

namespace qbands {

namespace {

using Vec = Eigen::VectorXcd;
using Map = std::function<Vec(const Vec&)>;

/// Linear maps needed by the functionals: R, R^dagger and H.
struct Maps {
  Map r, rd, h;
};

/// <Psi| m_1 m_2 ... m_k |Psi>, maps applied right to left.
cplx word(const Vec& psi, std::initializer_list<const Map*> maps) {
  Vec v = psi;
  for (auto it = std::rbegin(maps); it != std::rend(maps); ++it) v = (**it)(v);
  return psi.dot(v);
}

struct Values {
  cplx simple_n, simple_d, comm_n, comm_d, dc_n;
};

/// Numerators and denominators of the three functionals for maps (R, R^dagger, H).
Values evaluate(const Vec& psi, const Maps& m) {
  const Map* R = &m.r;
  const Map* A = &m.rd;
  const Map* H = &m.h;
  Values v;
  // <R^+ [H, R]> = <A H R> - <A R H>
  v.simple_n = word(psi, {A, H, R}) - word(psi, {A, R, H});
  v.simple_d = word(psi, {A, R});
  // [A, [H, R]]_+ = AHR - ARH + HRA - RHA
  v.comm_n = word(psi, {A, H, R}) - word(psi, {A, R, H}) + word(psi, {H, R, A}) - word(psi, {R, H, A});
  v.comm_d = word(psi, {A, R}) + word(psi, {R, A});
  // [[A, H], R]_+ = AHR - HAR + RAH - RHA; [A, H, R]_+ is the mean of both double commutators.
  const cplx left = word(psi, {A, H, R}) - word(psi, {H, A, R}) + word(psi, {R, A, H}) - word(psi, {R, H, A});
  v.dc_n = 0.5 * (left + v.comm_n);
  return v;
}

}  // namespace

FunctionalReport verify_functional_equivalence(const Statevector& ground, const Eigen::SparseMatrix<cplx>& hamiltonian,
                                               const QubitOperator& r) {
  Statevector psi_state = ground;
  psi_state.normalize();
  const Vec psi = psi_state.amplitudes();
  const std::size_t n = psi_state.num_qubits();
  const QubitOperator rd_op = adjoint(r);

  const Map h = [&](const Vec& x) -> Vec { return hamiltonian * x; };
  const Map r_plain = [&](const Vec& x) { return apply_operator(r, Statevector(n, x)).amplitudes(); };
  const Map rd_plain = [&](const Vec& x) { return apply_operator(rd_op, Statevector(n, x)).amplitudes(); };

  const Vec r_psi = r_plain(psi);
  if (r_psi.norm() < 1e-12) throw NumericalError("functional check: R|Psi> vanishes");
  const Map r_proj = [&](const Vec& x) -> Vec { return psi.dot(x) * r_psi; };
  const Map rd_proj = [&](const Vec& x) -> Vec { return r_psi.dot(x) * psi; };

  FunctionalReport rep;
  const Values proj = evaluate(psi, {r_proj, rd_proj, h});
  const Values bare = evaluate(psi, {r_plain, rd_plain, h});

  const cplx simple = proj.simple_n / proj.simple_d;
  const cplx comm = proj.comm_n / proj.comm_d;
  const cplx dc = proj.dc_n / proj.comm_d;
  const double energy = psi.dot(hamiltonian * psi).real();
  const cplx working = r_psi.dot(hamiltonian * r_psi) / r_psi.squaredNorm() - energy;

  rep.simple_metric = simple.real();
  rep.commutator_metric = comm.real();
  rep.double_commutator = dc.real();
  rep.working_equation = working.real();
  rep.unprojected_double_commutator = (bare.dc_n / bare.comm_d).real();
  rep.max_imaginary = std::max({std::abs(simple.imag()), std::abs(comm.imag()), std::abs(dc.imag()),
                                std::abs(working.imag())});
  rep.killer_residual = std::abs(psi.dot(r_psi));

  const double vals[] = {rep.simple_metric, rep.commutator_metric, rep.double_commutator, rep.working_equation};
  for (double a : vals)
    for (double b : vals) {
      const double scale = std::max(std::abs(a), std::abs(b));
      if (scale > 0.0) rep.max_relative_deviation = std::max(rep.max_relative_deviation, std::abs(a - b) / scale);
    }
  return rep;
}

}  // namespace qbands

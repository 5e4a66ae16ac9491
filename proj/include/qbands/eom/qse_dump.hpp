// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "qbands/eom/basis.hpp"
#include "qbands/eom/qse.hpp"

namespace qbands {

/// JSON dump of one QSE solve:
/// {
///   "format": "qbands.qse-dump", "version": 1,
///   "sector": "ip", "k_index": 0, "spin": "alpha", "method": "projected" | "eom-np",
///   "ground_energy": E0, "energy_offset": E0, "s_tol": 1e-8, "retained_dim": r,
///   "basis": ["a(0)", ...], "singles": [0, ...],
///   "H": {"re": [[...]], "im": [[...]]}, "S": {"re": [[...]], "im": [[...]]},
///   "excitation_energies": [...], "qpwt": [...]
/// }
std::string qse_dump_json(const ExcitationBasis& basis, const QseProblem& problem, const QseSolution& solution,
                          double s_tol, bool eom_np);
void write_qse_dump(const ExcitationBasis& basis, const QseProblem& problem, const QseSolution& solution,
                    double s_tol, bool eom_np, const std::filesystem::path& path);

}  // namespace qbands

// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "qbands/adapt/adapt.hpp"
#include "qbands/adapt/pool.hpp"

namespace qbands {

/// JSON checkpoint of an ADAPT run:
/// {
///   "format": "qbands.adapt-checkpoint", "version": 1,
///   "num_qubits": n, "reference_occupation": [modes...],
///   "pool": {"kind": "gsd", "complemented": true, "size": m},
///   "operators": [{"index": i, "label": "D(3,2,1,0)", "theta": x}, ...],
///   "energy": E, "gradient_norm": r, "converged": true,
///   "history": [{"iteration": 1, "selected_index": i, "selected_label": "...",
///                "max_gradient": g, "gradient_norm": r, "energy": E,
///                "optimizer_iterations": k, "optimizer_converged": true}, ...]
/// }
std::string checkpoint_to_json(const AdaptAnsatz& ansatz, const OperatorPool& pool);
void save_checkpoint(const AdaptAnsatz& ansatz, const OperatorPool& pool, const std::filesystem::path& path);

/// Restores an ansatz; operator labels must match `pool` (same kind, flag and
/// size), otherwise InputError.
AdaptAnsatz checkpoint_from_json(const std::string& text, const OperatorPool& pool);
AdaptAnsatz load_checkpoint(const std::filesystem::path& path, const OperatorPool& pool);

}  // namespace qbands

// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "qbands/lattice/integral_table.hpp"

namespace qbands {

/// Reads a k-FCIDUMP file. Every violation (syntax, index range, duplicate
/// entry, momentum conservation, Hermiticity beyond 1e-10) raises InputError
/// carrying the offending line number.
IntegralTable parse_kfcidump(const std::filesystem::path& path);
IntegralTable parse_kfcidump(std::istream& in, const std::string& source_name = "<stream>");

/// Writes `table` in k-FCIDUMP form with round-trip precision.
void write_kfcidump(const IntegralTable& table, std::ostream& out);
void write_kfcidump(const IntegralTable& table, const std::filesystem::path& path);

}  // namespace qbands

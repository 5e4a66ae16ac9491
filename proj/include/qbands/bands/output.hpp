// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qbands/bands/pipeline.hpp"

namespace qbands {

enum class OutputFormat { json, csv, asciiplot };
std::string_view to_string(OutputFormat f);
/// Throws InputError for unknown names.
OutputFormat parse_output_format(std::string_view name);

/// "qbands.bands" JSON document with every k-point, band and spectrum.
std::string bands_to_json(const BandStructure& bands);
/// Inverse of bands_to_json. Throws InputError on malformed documents.
BandStructure bands_from_json(const std::string& text);

/// One row per band point:
///   k_label,k1,k2,k3,band_type,index,energy_ev,qpwt
/// plus orbital, energy_np_ev, qpwt_np when the structure carries EOM-NP results.
std::string bands_to_csv(const BandStructure& bands);
/// Rebuilds k-points and band points from bands_to_csv output (spectra and
/// ground-state data are not part of the CSV). Throws InputError.
BandStructure bands_from_csv(const std::string& text);

/// Energy-versus-k text chart: one column group per k-point, 'v' valence,
/// 'c' conduction, 'x' both.
std::string bands_to_asciiplot(const BandStructure& bands, int height = 24);

std::string render(const BandStructure& bands, OutputFormat format);
/// Writes render() to `path`; throws InputError when the file cannot be written.
void emit_outputs(const BandStructure& bands, OutputFormat format, const std::filesystem::path& path);

}  // namespace qbands

// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/bands/output.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

#include "qbands/errors.hpp"

namespace qbands {

using nlohmann::json;

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::asciiplot: return "asciiplot";
  }
  return "?";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  if (name == "asciiplot") return OutputFormat::asciiplot;
  throw InputError(fmt::format("unknown output format '{}' (expected json, csv or asciiplot)", name));
}

namespace {

json opt(std::optional<double> v) { return v ? json(*v) : json(nullptr); }
std::optional<double> opt_from(const json& j) {
  return j.is_null() ? std::nullopt : std::optional<double>(j.get<double>());
}

json band_json(const BandPoint& p) {
  return {{"index", p.index}, {"orbital", p.orbital},         {"energy_ev", p.energy_ev},
          {"qpwt", p.qpwt},   {"energy_np_ev", opt(p.energy_np_ev)}, {"qpwt_np", opt(p.qpwt_np)}};
}

BandPoint band_from(const json& j) {
  BandPoint p;
  p.index = j.at("index").get<std::size_t>();
  p.orbital = j.at("orbital").get<std::size_t>();
  p.energy_ev = j.at("energy_ev").get<double>();
  p.qpwt = j.at("qpwt").get<double>();
  p.energy_np_ev = opt_from(j.at("energy_np_ev"));
  p.qpwt_np = opt_from(j.at("qpwt_np"));
  return p;
}

json spectrum_json(const std::vector<SpectrumLine>& s) {
  json a = json::array();
  for (const auto& l : s) a.push_back({{"excitation", l.excitation}, {"qpwt", l.qpwt}});
  return a;
}

std::vector<SpectrumLine> spectrum_from(const json& j) {
  std::vector<SpectrumLine> out;
  for (const auto& l : j) out.push_back({l.at("excitation").get<double>(), l.at("qpwt").get<double>()});
  return out;
}

json gap_json(const std::optional<BandGap>& g) {
  if (!g) return nullptr;
  return {{"value_ev", g->value_ev}, {"k_valence", g->k_valence}, {"k_conduction", g->k_conduction}};
}

std::optional<BandGap> gap_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return BandGap{j.at("value_ev").get<double>(), j.at("k_valence").get<std::size_t>(),
                 j.at("k_conduction").get<std::size_t>()};
}

std::string fmt_double(double v) { return fmt::format("{}", v); }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') cur += '"', ++i;
      else if (c == '"') quoted = false;
      else cur += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

double parse_number(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("bands csv", line, fmt::format("invalid number '{}'", s));
  }
}

}  // namespace

std::string bands_to_json(const BandStructure& bands) {
  json j;
  j["format"] = "qbands.bands";
  j["version"] = 1;
  j["units"] = {{"band_energies", "eV"}, {"spectra", "Hartree"}, {"ground_energy", "Hartree"}};
  j["alignment"] = std::string(to_string(bands.alignment));
  j["eom_np"] = bands.eom_np;
  j["qpwt_min"] = bands.qpwt_min;
  j["gap"] = gap_json(bands.gap);
  j["gap_np"] = gap_json(bands.gap_np);
  auto& ks = j["kpoints"] = json::array();
  for (const auto& kb : bands.kpoints) {
    json jk{{"label", kb.label},
            {"k", kb.k},
            {"ok", kb.ok},
            {"error", kb.error},
            {"ground_energy", kb.ground_energy},
            {"adapt_converged", kb.adapt_converged},
            {"ansatz_length", kb.ansatz_length}};
    auto& v = jk["valence"] = json::array();
    for (const auto& p : kb.valence) v.push_back(band_json(p));
    auto& c = jk["conduction"] = json::array();
    for (const auto& p : kb.conduction) c.push_back(band_json(p));
    jk["ip"] = spectrum_json(kb.ip);
    jk["ea"] = spectrum_json(kb.ea);
    jk["ip_np"] = spectrum_json(kb.ip_np);
    jk["ea_np"] = spectrum_json(kb.ea_np);
    ks.push_back(std::move(jk));
  }
  return j.dump(2) + "\n";
}

BandStructure bands_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format") != "qbands.bands") throw InputError("bands json: not a qbands.bands document");
    if (j.at("version") != 1) throw InputError("bands json: unsupported version");
    BandStructure b;
    b.alignment = parse_alignment(j.at("alignment").get<std::string>());
    b.eom_np = j.at("eom_np").get<bool>();
    b.qpwt_min = j.at("qpwt_min").get<double>();
    b.gap = gap_from(j.at("gap"));
    b.gap_np = gap_from(j.at("gap_np"));
    for (const auto& jk : j.at("kpoints")) {
      KPointBands kb;
      kb.label = jk.at("label").get<std::string>();
      kb.k = jk.at("k").get<std::array<double, 3>>();
      kb.ok = jk.at("ok").get<bool>();
      kb.error = jk.at("error").get<std::string>();
      kb.ground_energy = jk.at("ground_energy").get<double>();
      kb.adapt_converged = jk.at("adapt_converged").get<bool>();
      kb.ansatz_length = jk.at("ansatz_length").get<std::size_t>();
      for (const auto& p : jk.at("valence")) kb.valence.push_back(band_from(p));
      for (const auto& p : jk.at("conduction")) kb.conduction.push_back(band_from(p));
      kb.ip = spectrum_from(jk.at("ip"));
      kb.ea = spectrum_from(jk.at("ea"));
      kb.ip_np = spectrum_from(jk.at("ip_np"));
      kb.ea_np = spectrum_from(jk.at("ea_np"));
      b.kpoints.push_back(std::move(kb));
    }
    return b;
  } catch (const json::exception& e) {
    throw InputError(fmt::format("bands json: {}", e.what()));
  }
}

std::string bands_to_csv(const BandStructure& bands) {
  std::string out = "k_label,k1,k2,k3,band_type,index,energy_ev,qpwt";
  if (bands.eom_np) out += ",orbital,energy_np_ev,qpwt_np";
  out += "\n";
  auto opt_str = [](std::optional<double> v) { return v ? fmt_double(*v) : std::string{}; };
  for (const auto& kb : bands.kpoints) {
    if (!kb.ok) continue;
    for (BandType type : {BandType::valence, BandType::conduction}) {
      for (const auto& p : type == BandType::valence ? kb.valence : kb.conduction) {
        out += fmt::format("{},{},{},{},{},{},{},{}", csv_field(kb.label), fmt_double(kb.k[0]), fmt_double(kb.k[1]),
                           fmt_double(kb.k[2]), to_string(type), p.index, fmt_double(p.energy_ev),
                           fmt_double(p.qpwt));
        if (bands.eom_np) out += fmt::format(",{},{},{}", p.orbital, opt_str(p.energy_np_ev), opt_str(p.qpwt_np));
        out += "\n";
      }
    }
  }
  return out;
}

BandStructure bands_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InputError("bands csv: missing header");
  const auto header = split_csv(line);
  const std::vector<std::string> base{"k_label", "k1", "k2", "k3", "band_type", "index", "energy_ev", "qpwt"};
  BandStructure b;
  if (header == base) {
    b.eom_np = false;
  } else {
    auto np = base;
    np.insert(np.end(), {"orbital", "energy_np_ev", "qpwt_np"});
    if (header != np) throw InputError("bands csv", 1, "unexpected header");
    b.eom_np = true;
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != header.size())
      throw InputError("bands csv", line_no, fmt::format("expected {} fields, found {}", header.size(), f.size()));
    const std::array<double, 3> k{parse_number(f[1], line_no), parse_number(f[2], line_no),
                                  parse_number(f[3], line_no)};
    if (b.kpoints.empty() || b.kpoints.back().label != f[0] || b.kpoints.back().k != k) {
      KPointBands kb;
      kb.label = f[0];
      kb.k = k;
      kb.ok = true;
      b.kpoints.push_back(std::move(kb));
    }
    BandPoint p;
    p.index = static_cast<std::size_t>(parse_number(f[5], line_no));
    p.energy_ev = parse_number(f[6], line_no);
    p.qpwt = parse_number(f[7], line_no);
    if (b.eom_np) {
      p.orbital = static_cast<std::size_t>(parse_number(f[8], line_no));
      if (!f[9].empty()) p.energy_np_ev = parse_number(f[9], line_no);
      if (!f[10].empty()) p.qpwt_np = parse_number(f[10], line_no);
    }
    if (f[4] == "valence") b.kpoints.back().valence.push_back(p);
    else if (f[4] == "conduction") b.kpoints.back().conduction.push_back(p);
    else throw InputError("bands csv", line_no, fmt::format("unknown band_type '{}'", f[4]));
  }
  finalize_bands(b);
  return b;
}

std::string bands_to_asciiplot(const BandStructure& bands, int height) {
  height = std::max(height, 4);
  std::vector<const KPointBands*> ks;
  for (const auto& kb : bands.kpoints)
    if (kb.ok) ks.push_back(&kb);
  double lo = INFINITY, hi = -INFINITY;
  for (auto* kb : ks) {
    for (const auto& p : kb->valence) lo = std::min(lo, p.energy_ev), hi = std::max(hi, p.energy_ev);
    for (const auto& p : kb->conduction) lo = std::min(lo, p.energy_ev), hi = std::max(hi, p.energy_ev);
  }
  std::string out = "Band structure (eV, " + std::string(to_string(bands.alignment)) + " alignment)\n";
  if (!std::isfinite(lo)) return out + "(no bands)\n";
  if (hi - lo < 1e-9) lo -= 0.5, hi += 0.5;
  constexpr int kColumn = 6;
  const auto width = static_cast<std::size_t>(kColumn) * ks.size();
  std::vector<std::string> grid(static_cast<std::size_t>(height), std::string(width, ' '));
  auto row_of = [&](double e) {
    return static_cast<std::size_t>(std::lround((hi - e) / (hi - lo) * (height - 1)));
  };
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const std::size_t col = i * kColumn + kColumn / 2;
    auto mark = [&](double e, char c) {
      char& cell = grid[row_of(e)][col];
      cell = (cell == ' ' || cell == c) ? c : 'x';
    };
    for (const auto& p : ks[i]->valence) mark(p.energy_ev, 'v');
    for (const auto& p : ks[i]->conduction) mark(p.energy_ev, 'c');
  }
  for (int r = 0; r < height; ++r) {
    const double e = hi - (hi - lo) * r / (height - 1);
    out += fmt::format("{:>10.3f} |{}\n", e, grid[static_cast<std::size_t>(r)]);
  }
  out += std::string(11, ' ') + "+" + std::string(width, '-') + "\n";
  std::string labels(12, ' ');
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::string l = ks[i]->label.substr(0, kColumn - 1);
    labels += fmt::format("{:^{}}", l, kColumn);
  }
  out += labels + "\n";
  if (bands.gap) out += fmt::format("gap: {:.6f} eV (VBM at {}, CBM at {})\n", bands.gap->value_ev,
                                    bands.kpoints[bands.gap->k_valence].label,
                                    bands.kpoints[bands.gap->k_conduction].label);
  if (bands.gap_np) out += fmt::format("EOM-NP gap: {:.6f} eV\n", bands.gap_np->value_ev);
  return out;
}

std::string render(const BandStructure& bands, OutputFormat format) {
  switch (format) {
    case OutputFormat::json: return bands_to_json(bands);
    case OutputFormat::csv: return bands_to_csv(bands);
    case OutputFormat::asciiplot: return bands_to_asciiplot(bands);
  }
  return {};
}

void emit_outputs(const BandStructure& bands, OutputFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(fmt::format("cannot open '{}' for writing", path.string()));
  out << render(bands, format);
  if (!out.flush()) throw InputError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace qbands

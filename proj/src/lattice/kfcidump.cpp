// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/lattice/kfcidump.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "qbands/errors.hpp"

namespace qbands {

namespace {

constexpr double kHermiticityTolerance = 1e-10;

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& tok, const std::string& src, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw InputError(src, line, "expected a real number, got '" + tok + "'");
  }
}

long parse_int(const std::string& tok, const std::string& src, std::size_t line) {
  long v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw InputError(src, line, "expected an integer, got '" + tok + "'");
  return v;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct Header {
  std::optional<long> norb, nelec;
  std::optional<std::array<int, 3>> mesh;
  std::optional<double> ehf, econst;
  std::array<double, 3> kshift{0.0, 0.0, 0.0};
  std::map<std::string, std::string> extra;
};

void apply_header_token(Header& h, const std::string& tok, const std::string& src, std::size_t line) {
  const auto eq = tok.find('=');
  if (eq == std::string::npos) throw InputError(src, line, "malformed header token '" + tok + "'");
  std::string key = tok.substr(0, eq);
  std::string value = tok.substr(eq + 1);
  if (!value.empty() && value.back() == ',') value.pop_back();
  for (auto& c : key) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (key == "NORB") {
    h.norb = parse_int(value, src, line);
  } else if (key == "NELEC") {
    h.nelec = parse_int(value, src, line);
  } else if (key == "MESH") {
    const auto parts = split_commas(value);
    if (parts.size() != 3) throw InputError(src, line, "MESH needs three comma-separated integers");
    std::array<int, 3> m{};
    for (int i = 0; i < 3; ++i) m[i] = static_cast<int>(parse_int(parts[i], src, line));
    h.mesh = m;
  } else if (key == "EHF") {
    h.ehf = parse_double(value, src, line);
  } else if (key == "ECONST") {
    h.econst = parse_double(value, src, line);
  } else if (key == "KSHIFT") {
    const auto parts = split_commas(value);
    if (parts.size() != 3) throw InputError(src, line, "KSHIFT needs three comma-separated numbers");
    for (int i = 0; i < 3; ++i) h.kshift[i] = parse_double(parts[i], src, line);
  } else {
    h.extra[key] = value;
  }
}

}  // namespace

IntegralTable parse_kfcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open integral file " + path.string());
  return parse_kfcidump(in, path.string());
}

IntegralTable parse_kfcidump(std::istream& in, const std::string& src) {
  std::string raw;
  std::size_t line_no = 0;
  Header header;
  bool in_header = false;
  bool header_done = false;
  bool terminated = false;
  std::size_t terminator_line = 0;
  double terminator_value = 0.0;

  IntegralTable table;
  std::map<OneBodyKey, std::size_t> one_lines;
  std::map<TwoBodyKey, std::size_t> two_lines;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto tokens = split_ws(strip_comment(raw));
    if (tokens.empty()) continue;

    if (!header_done) {
      std::size_t i = 0;
      if (!in_header) {
        if (tokens[0].rfind("&KFCI", 0) != 0) throw InputError(src, line_no, "expected '&KFCI' header");
        in_header = true;
        const std::string rest = tokens[0].substr(5);
        if (!rest.empty() && rest != "/") apply_header_token(header, rest, src, line_no);
        i = 1;
      }
      for (; i < tokens.size(); ++i) {
        std::string tok = tokens[i];
        bool ends = false;
        if (tok == "/" || tok == "&END") {
          ends = true;
          tok.clear();
        } else if (tok.back() == '/') {
          ends = true;
          tok.pop_back();
        }
        if (!tok.empty()) apply_header_token(header, tok, src, line_no);
        if (ends) {
          if (i + 1 != tokens.size()) throw InputError(src, line_no, "unexpected tokens after header terminator");
          header_done = true;
          break;
        }
      }
      if (header_done) {
        if (!header.norb || !header.nelec || !header.mesh || !header.econst)
          throw InputError(src, line_no, "header requires NORB, NELEC, MESH and ECONST");
        if (*header.norb <= 0) throw InputError(src, line_no, "NORB must be positive");
        const auto& m = *header.mesh;
        if (m[0] < 1 || m[1] < 1 || m[2] < 1) throw InputError(src, line_no, "MESH dimensions must be positive");
        table.mesh = KMesh(m[0], m[1], m[2]);
        table.n_orb = static_cast<std::size_t>(*header.norb);
        table.n_electrons = static_cast<int>(*header.nelec);
        table.constant = *header.econst;
        table.hf_energy = header.ehf;
        table.kshift = header.kshift;
        table.extra_header = header.extra;
        if (table.n_electrons < 0 || static_cast<std::size_t>(table.n_electrons) > table.num_modes())
          throw InputError(src, line_no, "NELEC outside [0, number of spin orbitals]");
      }
      continue;
    }

    if (terminated) throw InputError(src, line_no, "entry after the constant terminator line");
    if (tokens.size() != 10)
      throw InputError(src, line_no, "expected 10 fields 're im p kp q kq r kr s ks', got " +
                                         std::to_string(tokens.size()));
    const double re = parse_double(tokens[0], src, line_no);
    const double im = parse_double(tokens[1], src, line_no);
    long idx[8];
    for (int i = 0; i < 8; ++i) idx[i] = parse_int(tokens[2 + i], src, line_no);
    const cplx value{re, im};

    const long norb = static_cast<long>(table.n_orb);
    const long nk = static_cast<long>(table.mesh.num_kpoints());
    auto check_orb = [&](long o) {
      if (o < 1 || o > norb) throw InputError(src, line_no, "orbital index " + std::to_string(o) + " outside 1.." + std::to_string(norb));
    };
    auto check_k = [&](long k) {
      if (k < 0 || k >= nk) throw InputError(src, line_no, "k index " + std::to_string(k) + " outside 0.." + std::to_string(nk - 1));
    };

    const bool all_zero = std::all_of(std::begin(idx), std::end(idx), [](long v) { return v == 0; });
    if (all_zero) {
      if (im != 0.0) throw InputError(src, line_no, "constant term must be real");
      terminated = true;
      terminator_line = line_no;
      terminator_value = re;
      continue;
    }
    if (idx[4] == 0 && idx[6] == 0) {
      if (idx[5] != 0 || idx[7] != 0) throw InputError(src, line_no, "one-body entry must have zero r/s k indices");
      check_orb(idx[0]);
      check_orb(idx[2]);
      check_k(idx[1]);
      check_k(idx[3]);
      OneBodyKey key{static_cast<std::size_t>(idx[0] - 1), static_cast<std::size_t>(idx[1]),
                     static_cast<std::size_t>(idx[2] - 1), static_cast<std::size_t>(idx[3])};
      const MeshPoint cre[] = {table.mesh.point(key.kp)};
      const MeshPoint ann[] = {table.mesh.point(key.kq)};
      if (!momentum_allowed(cre, ann, table.mesh))
        throw InputError(src, line_no, "one-body entry violates crystal momentum conservation");
      if (!table.one_body.emplace(key, value).second) throw InputError(src, line_no, "duplicate one-body entry");
      one_lines[key] = line_no;
      continue;
    }
    for (int i = 0; i < 8; i += 2) {
      check_orb(idx[i]);
      check_k(idx[i + 1]);
    }
    TwoBodyKey key{static_cast<std::size_t>(idx[0] - 1), static_cast<std::size_t>(idx[1]),
                   static_cast<std::size_t>(idx[2] - 1), static_cast<std::size_t>(idx[3]),
                   static_cast<std::size_t>(idx[4] - 1), static_cast<std::size_t>(idx[5]),
                   static_cast<std::size_t>(idx[6] - 1), static_cast<std::size_t>(idx[7])};
    const MeshPoint cre[] = {table.mesh.point(key.kp), table.mesh.point(key.kq)};
    const MeshPoint ann[] = {table.mesh.point(key.kr), table.mesh.point(key.ks)};
    if (!momentum_allowed(cre, ann, table.mesh))
      throw InputError(src, line_no, "two-body entry violates crystal momentum conservation");
    if (!table.two_body.emplace(key, value).second) throw InputError(src, line_no, "duplicate two-body entry");
    two_lines[key] = line_no;
  }

  if (!header_done) throw InputError(src, line_no, "missing or unterminated '&KFCI ... /' header");
  if (!terminated) throw InputError(src, line_no, "missing constant terminator line 're im 0 0 0 0 0 0 0 0'");
  if (std::abs(terminator_value - table.constant) > kHermiticityTolerance)
    throw InputError(src, terminator_line, "constant entry disagrees with ECONST");

  for (const auto& [key, value] : table.one_body) {
    if (std::abs(value - std::conj(table.h(key.q, key.kq, key.p, key.kp))) > kHermiticityTolerance)
      throw InputError(src, one_lines[key], "one-body entry is not Hermitian (partner missing or mismatched)");
  }
  for (const auto& [key, value] : table.two_body) {
    const TwoBodyKey partner{key.s, key.ks, key.r, key.kr, key.q, key.kq, key.p, key.kp};
    if (std::abs(value - std::conj(table.g(partner))) > kHermiticityTolerance)
      throw InputError(src, two_lines[key], "two-body entry is not Hermitian (partner missing or mismatched)");
  }
  table.validate(kHermiticityTolerance);
  return table;
}

void write_kfcidump(const IntegralTable& table, std::ostream& out) {
  const auto& m = table.mesh.dims();
  out << fmt::format("&KFCI NORB={} NELEC={} MESH={},{},{}", table.n_orb, table.n_electrons, m[0], m[1], m[2]);
  if (table.hf_energy) out << fmt::format(" EHF={:.17g}", *table.hf_energy);
  out << fmt::format(" ECONST={:.17g}", table.constant);
  if (table.kshift != std::array<double, 3>{0.0, 0.0, 0.0})
    out << fmt::format(" KSHIFT={:.17g},{:.17g},{:.17g}", table.kshift[0], table.kshift[1], table.kshift[2]);
  for (const auto& [k, v] : table.extra_header) out << ' ' << k << '=' << v;
  out << " /\n";
  for (const auto& [k, v] : table.one_body)
    out << fmt::format("{:.17g} {:.17g} {} {} {} {} 0 0 0 0\n", v.real(), v.imag(), k.p + 1, k.kp, k.q + 1, k.kq);
  for (const auto& [k, v] : table.two_body)
    out << fmt::format("{:.17g} {:.17g} {} {} {} {} {} {} {} {}\n", v.real(), v.imag(), k.p + 1, k.kp, k.q + 1,
                       k.kq, k.r + 1, k.kr, k.s + 1, k.ks);
  out << fmt::format("{:.17g} 0 0 0 0 0 0 0 0 0\n", table.constant);
}

void write_kfcidump(const IntegralTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write integral file " + path.string());
  write_kfcidump(table, out);
  if (!out) throw InputError("error while writing " + path.string());
}

}  // namespace qbands

// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/ops/qubit_operator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qbands {

namespace {

struct PauliHash {
  std::size_t operator()(const PauliString& s) const noexcept {
    std::uint64_t h = s.x * 0x9E3779B97F4A7C15ull;
    h ^= s.z + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

using Accumulator = std::unordered_map<PauliString, cplx, PauliHash>;

std::vector<PauliTerm> collect(const Accumulator& acc, double tolerance) {
  std::vector<PauliTerm> out;
  out.reserve(acc.size());
  for (const auto& [s, c] : acc) {
    if (std::abs(c) >= tolerance) out.push_back({c, s});
  }
  std::sort(out.begin(), out.end(), [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; });
  return out;
}

std::uint64_t register_mask(std::size_t n) { return n >= 64 ? ~0ull : ((1ull << n) - 1); }

}  // namespace

PauliString PauliString::single(std::size_t qubit, char letter) {
  if (qubit >= kMaxPauliQubits) throw std::out_of_range("PauliString: qubit index exceeds 64");
  const std::uint64_t bit = 1ull << qubit;
  switch (letter) {
    case 'I': return {};
    case 'X': return {bit, 0};
    case 'Y': return {bit, bit};
    case 'Z': return {0, bit};
    default: throw std::invalid_argument(std::string("PauliString: unknown letter ") + letter);
  }
}

std::size_t PauliString::weight() const noexcept { return static_cast<std::size_t>(std::popcount(x | z)); }

char PauliString::letter(std::size_t qubit) const noexcept {
  if (qubit >= 64) return 'I';
  const bool bx = (x >> qubit) & 1u;
  const bool bz = (z >> qubit) & 1u;
  if (bx && bz) return 'Y';
  if (bx) return 'X';
  if (bz) return 'Z';
  return 'I';
}

std::map<std::size_t, char> PauliString::letters() const {
  std::map<std::size_t, char> out;
  for (std::uint64_t m = support(); m; m &= m - 1) {
    const auto q = static_cast<std::size_t>(std::countr_zero(m));
    out.emplace(q, letter(q));
  }
  return out;
}

bool PauliString::commutes_with(const PauliString& other) const noexcept {
  return (std::popcount(x & other.z) + std::popcount(z & other.x)) % 2 == 0;
}

std::string PauliString::to_string() const {
  if (is_identity()) return "I";
  std::string out;
  for (const auto& [q, l] : letters()) {
    if (!out.empty()) out += ' ';
    out += l;
    out += std::to_string(q);
  }
  return out;
}

// Writing P = i^{|x&z|} X^x Z^z, moving Z^{z1} past X^{x2} costs (-1)^{|z1&x2|}.
PauliProduct multiply(const PauliString& a, const PauliString& b) noexcept {
  PauliString c{a.x ^ b.x, a.z ^ b.z};
  const int phase = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) + 2 * std::popcount(a.z & b.x) -
                    std::popcount(c.x & c.z);
  return {c, ((phase % 4) + 4) % 4};
}

cplx phase_factor(int phase) noexcept {
  switch (((phase % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

QubitOperator::QubitOperator(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits > kMaxPauliQubits) throw std::invalid_argument("QubitOperator: more than 64 qubits");
}

QubitOperator::QubitOperator(std::size_t num_qubits, std::vector<PauliTerm> terms, double tolerance)
    : QubitOperator(num_qubits) {
  Accumulator acc;
  const auto mask = register_mask(num_qubits);
  for (const auto& t : terms) {
    if (!std::isfinite(t.coefficient.real()) || !std::isfinite(t.coefficient.imag()))
      throw std::invalid_argument("QubitOperator: non-finite coefficient");
    if ((t.string.support() & ~mask) != 0) throw std::out_of_range("QubitOperator: Pauli string outside register");
    acc[t.string] += t.coefficient;
  }
  terms_ = collect(acc, tolerance);
}

QubitOperator QubitOperator::identity(std::size_t num_qubits, cplx coefficient) {
  return QubitOperator(num_qubits, {PauliTerm{coefficient, {}}});
}

QubitOperator QubitOperator::from_string(std::size_t num_qubits, const std::string& text, cplx coefficient) {
  std::istringstream is(text);
  PauliString s;
  std::string tok;
  while (is >> tok) {
    if (tok == "I") continue;
    if (tok.size() < 2) throw std::invalid_argument("QubitOperator: bad token " + tok);
    const auto q = static_cast<std::size_t>(std::stoul(tok.substr(1)));
    const auto single = PauliString::single(q, tok[0]);
    if (s.support() & single.support()) throw std::invalid_argument("QubitOperator: qubit repeated in " + text);
    s.x |= single.x;
    s.z |= single.z;
  }
  return QubitOperator(num_qubits, {PauliTerm{coefficient, s}});
}

cplx QubitOperator::coefficient(const PauliString& s) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), s,
                             [](const PauliTerm& t, const PauliString& v) { return t.string < v; });
  return (it != terms_.end() && it->string == s) ? it->coefficient : cplx{};
}

double QubitOperator::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coefficient));
  return m;
}

bool QubitOperator::is_hermitian(double tolerance) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const PauliTerm& t) { return std::abs(t.coefficient.imag()) <= tolerance; });
}

QubitOperator QubitOperator::pruned(double tolerance) const {
  QubitOperator out(num_qubits_);
  for (const auto& t : terms_)
    if (std::abs(t.coefficient) >= tolerance) out.terms_.push_back(t);
  return out;
}

void QubitOperator::check_compatible(const QubitOperator& other) const {
  if (num_qubits_ != other.num_qubits_)
    throw std::invalid_argument("QubitOperator: register sizes differ (" + std::to_string(num_qubits_) + " vs " +
                                std::to_string(other.num_qubits_) + ")");
}

QubitOperator& QubitOperator::operator+=(const QubitOperator& other) {
  check_compatible(other);
  std::vector<PauliTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  *this = QubitOperator(num_qubits_, std::move(all));
  return *this;
}

QubitOperator& QubitOperator::operator-=(const QubitOperator& other) {
  check_compatible(other);
  std::vector<PauliTerm> all = terms_;
  for (const auto& t : other.terms_) all.push_back({-t.coefficient, t.string});
  *this = QubitOperator(num_qubits_, std::move(all));
  return *this;
}

QubitOperator& QubitOperator::operator*=(cplx scalar) {
  for (auto& t : terms_) t.coefficient *= scalar;
  *this = QubitOperator(num_qubits_, std::move(terms_));
  return *this;
}

QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
  a.check_compatible(b);
  Accumulator acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      const auto p = multiply(x.string, y.string);
      acc[p.string] += x.coefficient * y.coefficient * phase_factor(p.phase);
    }
  }
  QubitOperator out(a.num_qubits_);
  out.terms_ = collect(acc, kPruneTolerance);
  return out;
}

std::string QubitOperator::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << terms_[i].coefficient << " [" << terms_[i].string.to_string() << "]";
  }
  return os.str();
}

QubitOperator adjoint(const QubitOperator& a) {
  std::vector<PauliTerm> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) out.push_back({std::conj(t.coefficient), t.string});
  return QubitOperator(a.num_qubits(), std::move(out));
}

// Only anticommuting string pairs survive: [P, Q] = 2PQ when {P, Q} = 0.
QubitOperator commutator(const QubitOperator& a, const QubitOperator& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("commutator: register sizes differ");
  std::vector<PauliTerm> out;
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      if (x.string.commutes_with(y.string)) continue;
      const auto p = multiply(x.string, y.string);
      out.push_back({2.0 * x.coefficient * y.coefficient * phase_factor(p.phase), p.string});
    }
  }
  return QubitOperator(a.num_qubits(), std::move(out));
}

QubitOperator anticommutator(const QubitOperator& a, const QubitOperator& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("anticommutator: register sizes differ");
  std::vector<PauliTerm> out;
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      if (!x.string.commutes_with(y.string)) continue;
      const auto p = multiply(x.string, y.string);
      out.push_back({2.0 * x.coefficient * y.coefficient * phase_factor(p.phase), p.string});
    }
  }
  return QubitOperator(a.num_qubits(), std::move(out));
}

bool approx_equal(const QubitOperator& a, const QubitOperator& b, double tolerance) {
  if (a.num_qubits() != b.num_qubits()) return false;
  const auto diff = QubitOperator(a) - b;
  return diff.max_abs_coefficient() <= tolerance;
}

}  // namespace qbands

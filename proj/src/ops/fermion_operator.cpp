// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/ops/fermion_operator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qbands {

namespace {

bool finite(cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

enum class PairOrder { ordered, swap, vanish, contract };

// Classifies the adjacent pair (left, right) against the normal-order rule.
PairOrder classify(const LadderOp& left, const LadderOp& right) {
  if (left.dagger && !right.dagger) return PairOrder::ordered;
  if (!left.dagger && right.dagger) return PairOrder::contract;
  if (left.mode == right.mode) return PairOrder::vanish;
  return left.mode > right.mode ? PairOrder::ordered : PairOrder::swap;
}

}  // namespace

FermionOperator::FermionOperator(std::vector<FermionTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (!finite(t.coefficient)) throw std::invalid_argument("FermionOperator: non-finite coefficient");
  }
}

FermionOperator::FermionOperator(cplx coefficient, std::vector<LadderOp> factors)
    : FermionOperator(std::vector<FermionTerm>{FermionTerm{coefficient, std::move(factors)}}) {}

FermionOperator FermionOperator::identity(cplx coefficient) { return FermionOperator(coefficient, {}); }

std::size_t FermionOperator::mode_count() const {
  std::size_t n = 0;
  for (const auto& t : terms_)
    for (const auto& f : t.factors) n = std::max(n, f.mode + 1);
  return n;
}

FermionOperator FermionOperator::simplified(double tolerance) const {
  std::map<std::vector<LadderOp>, cplx> acc;
  std::vector<FermionTerm> work(terms_.rbegin(), terms_.rend());
  while (!work.empty()) {
    FermionTerm t = std::move(work.back());
    work.pop_back();
    if (t.coefficient == cplx{}) continue;
    bool ordered = true;
    for (std::size_t i = 0; i + 1 < t.factors.size(); ++i) {
      const auto left = t.factors[i];
      const auto right = t.factors[i + 1];
      const auto kind = classify(left, right);
      if (kind == PairOrder::ordered) continue;
      ordered = false;
      if (kind == PairOrder::vanish) break;
      if (kind == PairOrder::contract && left.mode == right.mode) {
        FermionTerm delta{t.coefficient, {}};
        delta.factors.reserve(t.factors.size() - 2);
        delta.factors.insert(delta.factors.end(), t.factors.begin(), t.factors.begin() + i);
        delta.factors.insert(delta.factors.end(), t.factors.begin() + i + 2, t.factors.end());
        work.push_back(std::move(delta));
      }
      std::swap(t.factors[i], t.factors[i + 1]);
      t.coefficient = -t.coefficient;
      work.push_back(std::move(t));
      break;
    }
    if (ordered) acc[t.factors] += t.coefficient;
  }

  std::vector<FermionTerm> out;
  out.reserve(acc.size());
  for (auto& [factors, c] : acc) {
    if (std::abs(c) >= tolerance) out.push_back(FermionTerm{c, factors});
  }
  FermionOperator result;
  result.terms_ = std::move(out);
  return result;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

FermionOperator& FermionOperator::operator-=(const FermionOperator& other) {
  for (const auto& t : other.terms_) terms_.push_back(FermionTerm{-t.coefficient, t.factors});
  return *this;
}

FermionOperator& FermionOperator::operator*=(cplx scalar) {
  if (!finite(scalar)) throw std::invalid_argument("FermionOperator: non-finite scalar");
  for (auto& t : terms_) t.coefficient *= scalar;
  return *this;
}

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) { return multiply(a, b); }

std::string FermionOperator::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << terms_[i].coefficient;
    for (const auto& f : terms_[i].factors) os << ' ' << 'a' << f.mode << (f.dagger ? "^" : "");
  }
  return os.str();
}

FermionOperator multiply(const FermionOperator& a, const FermionOperator& b) {
  std::vector<FermionTerm> out;
  out.reserve(a.terms().size() * b.terms().size());
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      FermionTerm t{x.coefficient * y.coefficient, x.factors};
      t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
      out.push_back(std::move(t));
    }
  }
  return FermionOperator(std::move(out));
}

FermionOperator adjoint(const FermionOperator& a) {
  std::vector<FermionTerm> out;
  out.reserve(a.terms().size());
  for (const auto& t : a.terms()) {
    FermionTerm r{std::conj(t.coefficient), {}};
    r.factors.reserve(t.factors.size());
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) r.factors.push_back({it->mode, !it->dagger});
    out.push_back(std::move(r));
  }
  return FermionOperator(std::move(out));
}

bool equivalent(const FermionOperator& a, const FermionOperator& b, double tolerance) {
  return (a - b).simplified(tolerance).empty();
}

}  // namespace qbands

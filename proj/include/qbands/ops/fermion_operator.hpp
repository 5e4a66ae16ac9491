// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace qbands {

using cplx = std::complex<double>;

/// Coefficients with |c| below this are dropped by simplification.
inline constexpr double kPruneTolerance = 1e-14;

/// A single creation (dagger) or annihilation operator on one fermionic mode.
struct LadderOp {
  std::size_t mode = 0;
  bool dagger = false;

  friend auto operator<=>(const LadderOp&, const LadderOp&) = default;
};

inline LadderOp cr(std::size_t mode) { return {mode, true}; }
inline LadderOp an(std::size_t mode) { return {mode, false}; }

/// Product of ladder operators, kept in insertion order.
struct FermionTerm {
  cplx coefficient{1.0, 0.0};
  std::vector<LadderOp> factors;
};

/// Linear combination of ladder-operator products.
///
/// Arithmetic never reorders factors; `simplified()` brings every term into
/// normal order (creators left, each group sorted by descending mode) using the
/// canonical anticommutation relations, merges equal products and prunes
/// coefficients below the tolerance.
class FermionOperator {
 public:
  FermionOperator() = default;
  explicit FermionOperator(std::vector<FermionTerm> terms);
  FermionOperator(cplx coefficient, std::vector<LadderOp> factors);

  static FermionOperator identity(cplx coefficient = 1.0);

  const std::vector<FermionTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  /// One past the largest mode index referenced, 0 for operators without factors.
  std::size_t mode_count() const;

  FermionOperator simplified(double tolerance = kPruneTolerance) const;

  FermionOperator& operator+=(const FermionOperator& other);
  FermionOperator& operator-=(const FermionOperator& other);
  FermionOperator& operator*=(cplx scalar);

  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) { return a += b; }
  friend FermionOperator operator-(FermionOperator a, const FermionOperator& b) { return a -= b; }
  friend FermionOperator operator*(FermionOperator a, cplx s) { return a *= s; }
  friend FermionOperator operator*(cplx s, FermionOperator a) { return a *= s; }
  friend FermionOperator operator*(const FermionOperator& a, const FermionOperator& b);

  std::string to_string() const;

 private:
  std::vector<FermionTerm> terms_;
};

/// Term-by-term concatenation of factor lists; no reordering.
FermionOperator multiply(const FermionOperator& a, const FermionOperator& b);

/// Reverses every factor list, flips daggers and conjugates coefficients.
FermionOperator adjoint(const FermionOperator& a);

/// True when a - b simplifies to the zero operator.
bool equivalent(const FermionOperator& a, const FermionOperator& b,
                double tolerance = 1e-12);

}  // namespace qbands

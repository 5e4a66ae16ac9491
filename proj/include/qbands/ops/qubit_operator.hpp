// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qbands/ops/fermion_operator.hpp"

namespace qbands {

/// Registers wider than this cannot be represented by the 64-bit masks.
inline constexpr std::size_t kMaxPauliQubits = 64;

/// Tensor product of single-qubit Paulis in symplectic form.
///
/// Qubit q carries X when only bit q of `x` is set, Z when only bit q of `z`
/// is set, Y when both are set and the identity otherwise.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  static PauliString single(std::size_t qubit, char letter);

  bool is_identity() const noexcept { return (x | z) == 0; }
  std::uint64_t support() const noexcept { return x | z; }
  std::size_t weight() const noexcept;
  /// Letter on `qubit`: 'I', 'X', 'Y' or 'Z'.
  char letter(std::size_t qubit) const noexcept;
  /// Sparse view: qubit index to letter, identities omitted.
  std::map<std::size_t, char> letters() const;
  bool commutes_with(const PauliString& other) const noexcept;
  std::string to_string() const;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;
};

/// Product a*b = i^phase * c, with phase in {0,1,2,3}.
struct PauliProduct {
  PauliString string;
  int phase = 0;
};
PauliProduct multiply(const PauliString& a, const PauliString& b) noexcept;

/// Multiplicative factor i^phase.
cplx phase_factor(int phase) noexcept;

struct PauliTerm {
  cplx coefficient{1.0, 0.0};
  PauliString string;
};

/// Weighted sum of Pauli strings on a fixed register.
///
/// Arithmetic results are always simplified: strings are unique, sorted and
/// coefficients below the pruning tolerance are removed.
class QubitOperator {
 public:
  explicit QubitOperator(std::size_t num_qubits = 0);
  QubitOperator(std::size_t num_qubits, std::vector<PauliTerm> terms,
                double tolerance = kPruneTolerance);

  static QubitOperator identity(std::size_t num_qubits, cplx coefficient = 1.0);
  /// Parses e.g. "X0 Y3" (whitespace separated letter+index tokens, "I" for identity).
  static QubitOperator from_string(std::size_t num_qubits, const std::string& text,
                                   cplx coefficient = 1.0);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Coefficient of `s`, zero when absent.
  cplx coefficient(const PauliString& s) const;
  /// Largest coefficient magnitude, 0 for the zero operator.
  double max_abs_coefficient() const;
  bool is_hermitian(double tolerance = 1e-12) const;
  /// Drops terms below `tolerance`.
  QubitOperator pruned(double tolerance) const;

  QubitOperator& operator+=(const QubitOperator& other);
  QubitOperator& operator-=(const QubitOperator& other);
  QubitOperator& operator*=(cplx scalar);

  friend QubitOperator operator+(QubitOperator a, const QubitOperator& b) { return a += b; }
  friend QubitOperator operator-(QubitOperator a, const QubitOperator& b) { return a -= b; }
  friend QubitOperator operator*(QubitOperator a, cplx s) { return a *= s; }
  friend QubitOperator operator*(cplx s, QubitOperator a) { return a *= s; }
  friend QubitOperator operator*(const QubitOperator& a, const QubitOperator& b);

  std::string to_string() const;

 private:
  void check_compatible(const QubitOperator& other) const;

  std::size_t num_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

QubitOperator adjoint(const QubitOperator& a);

/// ab - ba with exact phase tracking.
QubitOperator commutator(const QubitOperator& a, const QubitOperator& b);

/// ab + ba.
QubitOperator anticommutator(const QubitOperator& a, const QubitOperator& b);

/// Coefficient-wise comparison of two operators on the same register.
bool approx_equal(const QubitOperator& a, const QubitOperator& b, double tolerance = 1e-12);

}  // namespace qbands

// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>

namespace qbands {

/// Integer label (n1, n2, n3) of a k-point on a Monkhorst-Pack style mesh,
/// k = sum_i n_i b_i / N_i.
using MeshPoint = std::array<int, 3>;

class KMesh {
 public:
  KMesh() : KMesh(1, 1, 1) {}
  KMesh(int n1, int n2, int n3);

  const std::array<int, 3>& dims() const noexcept { return dims_; }
  std::size_t num_kpoints() const noexcept {
    return static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2];
  }

  bool contains(const MeshPoint& k) const noexcept;
  /// Row-major linearization, (n1 * N2 + n2) * N3 + n3.
  std::size_t linear(const MeshPoint& k) const;
  MeshPoint point(std::size_t linear_index) const;

  MeshPoint reduce(const MeshPoint& k) const noexcept;
  MeshPoint add(const MeshPoint& a, const MeshPoint& b) const noexcept;
  MeshPoint subtract(const MeshPoint& a, const MeshPoint& b) const noexcept;
  bool is_zero(const MeshPoint& k) const noexcept;

  friend bool operator==(const KMesh&, const KMesh&) = default;

 private:
  std::array<int, 3> dims_;
};

/// True iff the summed creation momenta minus the summed annihilation momenta
/// vanish modulo the mesh, i.e. differ by a reciprocal lattice vector.
bool momentum_allowed(std::span<const MeshPoint> creation, std::span<const MeshPoint> annihilation,
                      const KMesh& mesh);

std::string to_string(const MeshPoint& k);

}  // namespace qbands

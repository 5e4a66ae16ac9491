// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include "qbands/lattice/kmesh.hpp"

#include <stdexcept>

namespace qbands {

KMesh::KMesh(int n1, int n2, int n3) : dims_{n1, n2, n3} {
  if (n1 < 1 || n2 < 1 || n3 < 1) throw std::invalid_argument("KMesh: dimensions must be positive");
}

bool KMesh::contains(const MeshPoint& k) const noexcept {
  for (int i = 0; i < 3; ++i)
    if (k[i] < 0 || k[i] >= dims_[i]) return false;
  return true;
}

std::size_t KMesh::linear(const MeshPoint& k) const {
  if (!contains(k)) throw std::out_of_range("KMesh: point " + to_string(k) + " outside mesh");
  return (static_cast<std::size_t>(k[0]) * dims_[1] + k[1]) * dims_[2] + k[2];
}

MeshPoint KMesh::point(std::size_t linear_index) const {
  if (linear_index >= num_kpoints()) throw std::out_of_range("KMesh: linear index outside mesh");
  const auto n3 = static_cast<int>(linear_index % dims_[2]);
  linear_index /= dims_[2];
  const auto n2 = static_cast<int>(linear_index % dims_[1]);
  const auto n1 = static_cast<int>(linear_index / dims_[1]);
  return {n1, n2, n3};
}

MeshPoint KMesh::reduce(const MeshPoint& k) const noexcept {
  MeshPoint r{};
  for (int i = 0; i < 3; ++i) r[i] = ((k[i] % dims_[i]) + dims_[i]) % dims_[i];
  return r;
}

MeshPoint KMesh::add(const MeshPoint& a, const MeshPoint& b) const noexcept {
  return reduce({a[0] + b[0], a[1] + b[1], a[2] + b[2]});
}

MeshPoint KMesh::subtract(const MeshPoint& a, const MeshPoint& b) const noexcept {
  return reduce({a[0] - b[0], a[1] - b[1], a[2] - b[2]});
}

bool KMesh::is_zero(const MeshPoint& k) const noexcept { return reduce(k) == MeshPoint{0, 0, 0}; }

bool momentum_allowed(std::span<const MeshPoint> creation, std::span<const MeshPoint> annihilation,
                      const KMesh& mesh) {
  MeshPoint total{0, 0, 0};
  for (const auto& k : creation) total = mesh.add(total, k);
  for (const auto& k : annihilation) total = mesh.subtract(total, k);
  return mesh.is_zero(total);
}

std::string to_string(const MeshPoint& k) {
  return "(" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]) + ")";
}

}  // namespace qbands

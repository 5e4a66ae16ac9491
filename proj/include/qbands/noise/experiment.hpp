// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qbands/adapt/adapt.hpp"
#include "qbands/adapt/pool.hpp"
#include "qbands/eom/basis.hpp"
#include "qbands/lattice/integral_table.hpp"
#include "qbands/noise/density_matrix.hpp"

namespace qbands {

/// Depolarizing noise model and measurement budget. Each gate depolarizes
/// every qubit it touches with probability scale * lambda.
struct NoiseSpec {
  double lambda = 1e-3;
  std::vector<double> scales{1.0, 1.25, 1.5};
  std::uint64_t shots = std::uint64_t{1} << 17;  ///< per Pauli string; 0 = exact expectation values
  /// Throws std::invalid_argument for lambda outside [0, 1], an empty scale
  /// list, fewer than two distinct scales or a scale making p_gate exceed 1.
  void validate() const;
};

/// Sampled energy of the ansatz prepared under noise at `scale`.
Estimate simulate_noisy_energy(const AdaptAnsatz& ansatz, const OperatorPool& pool, const QubitOperator& hamiltonian,
                               const NoiseSpec& noise, double scale, std::mt19937_64& rng);

/// Ground-state energy and lowest IP / EA excitation energies estimated from a
/// single set of Pauli-string measurements.
struct EomEndpoints {
  double energy = 0.0;
  std::optional<double> ip;  ///< lowest IP state with quasiparticle weight >= qpwt_min
  std::optional<double> ea;
};

/// Settings of the noisy EOM evaluation.
struct NoisyEomConfig {
  std::size_t k_index = 0;
  Spin spin = Spin::alpha;
  /// Canonical-orthogonalization threshold. Sampled overlap matrices are full
  /// rank, so this must sit above the shot-noise floor.
  double s_tol = 1e-2;
  double qpwt_min = 0.5;
};

/// Evaluates the projected IP and EA working equations from measured
/// expectation values of rho_u^dagger H rho_v and rho_u^dagger rho_v.
/// Unique Pauli strings are measured once per noise scale and shared by all
/// matrix elements.
class NoisyEomEvaluator {
 public:
  NoisyEomEvaluator(const IntegralTable& table, const QubitOperator& hamiltonian, const NoisyEomConfig& config);

  /// Number of distinct non-identity Pauli strings that are measured.
  std::size_t num_measured_strings() const noexcept { return strings_.size(); }

  /// Sampled expectation value of every measured string in `rho`.
  std::vector<double> measure(const DensityMatrix& rho, std::uint64_t shots, std::mt19937_64& rng) const;

  /// Endpoints from one set of string expectation values.
  EomEndpoints solve(const std::vector<double>& expectations) const;

  /// Endpoints after elementwise linear extrapolation of the matrices measured
  /// at the given noise scales.
  EomEndpoints solve_extrapolated(const std::vector<double>& scales,
                                  const std::vector<std::vector<double>>& expectations) const;

 private:
  struct Element {
    std::vector<std::pair<std::size_t, cplx>> terms;  ///< (string index, coefficient)
    cplx constant{};
  };
  struct SectorMatrices {
    ExcitationBasis basis;
    std::vector<Element> h, s;  ///< row-major, size x size
  };
  static cplx evaluate(const Element& e, const std::vector<double>& expectations);
  std::optional<double> lowest(const SectorMatrices& m, const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& s,
                               double energy) const;

  NoisyEomConfig config_;
  std::vector<PauliString> strings_;
  Element energy_;
  SectorMatrices ip_, ea_;
};

/// One repeat of the noise experiment.
struct NoiseRepeat {
  std::uint64_t seed = 0;
  std::vector<EomEndpoints> per_scale;  ///< aligned with NoiseSpec::scales
  EomEndpoints extrapolated;
};

struct NoiseReport {
  std::string system;
  NoiseSpec noise;
  NoisyEomConfig eom;
  std::size_t num_qubits = 0;
  std::size_t ansatz_length = 0;
  std::size_t measured_strings = 0;
  EomEndpoints ideal;  ///< noiseless, exact expectation values
  std::vector<NoiseRepeat> repeats;
};

/// Replays the ansatz under noise at every scale and, for each seed, samples
/// all strings and evaluates the EOM endpoints at each scale and extrapolated
/// to zero noise. Results are reproducible for a fixed seed list.
NoiseReport run_noise_experiment(const IntegralTable& table, const AdaptAnsatz& ansatz, const OperatorPool& pool,
                                 const NoiseSpec& noise, const NoisyEomConfig& eom,
                                 const std::vector<std::uint64_t>& seeds, std::string system_label = {});

/// Count of repeats in which the extrapolated quantity is closer to the ideal
/// value than the scale-1 estimate, for energy, IP and EA respectively.
struct ZneScore {
  int energy = 0, ip = 0, ea = 0;
  int repeats = 0;
};
ZneScore score_report(const NoiseReport& report);

/// "qbands.noise-report" JSON document.
std::string noise_report_json(const NoiseReport& report);
/// Long-format CSV: repeat,seed,scale,energy,ip,ea (scale "zne" for the extrapolated row,
/// "ideal" for the noiseless reference).
std::string noise_report_csv(const NoiseReport& report);

}  // namespace qbands

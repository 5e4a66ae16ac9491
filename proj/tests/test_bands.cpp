// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>

#include "qbands/bands/output.hpp"
#include "qbands/bands/pipeline.hpp"
#include "qbands/errors.hpp"
#include "qbands/fci/fci.hpp"
#include "qbands/lattice/hamiltonian.hpp"
#include "qbands/lattice/hubbard.hpp"
#include "test_support.hpp"

namespace qbands {
namespace {

TEST(Units, PinnedHartreeConstant) {
  EXPECT_EQ(to_ev(0.0), 0.0);
  EXPECT_EQ(to_ev(1.0), 27.211386245988);
  for (double x : {-3.7, 0.01, 12.5}) EXPECT_NEAR(to_ev(from_ev(x)), x, 1e-12);
}

BandStructure hubbard_bands(int n, double u, int ne, BandConfig cfg = {}) {
  return band_pipeline({{"hub", hubbard_integrals({n, 1.0, u, ne, {}}), {}}}, cfg);
}

TEST(Pipeline, NoninteractingBandsEqualOneBodyDispersion) {
  const BandStructure b = hubbard_bands(3, 0.0, 2);
  ASSERT_EQ(b.kpoints.size(), 3u);
  for (const auto& kb : b.kpoints) ASSERT_TRUE(kb.ok) << kb.error;
  ASSERT_EQ(b.kpoints[0].valence.size(), 1u);
  EXPECT_NEAR(b.kpoints[0].valence[0].energy_ev, to_ev(-2.0), 1e-9);
  EXPECT_NEAR(b.kpoints[0].valence[0].qpwt, 1.0, 1e-12);
  EXPECT_TRUE(b.kpoints[0].conduction.empty());
  for (std::size_t k : {1u, 2u}) {
    EXPECT_TRUE(b.kpoints[k].valence.empty());
    ASSERT_EQ(b.kpoints[k].conduction.size(), 1u);
    EXPECT_NEAR(b.kpoints[k].conduction[0].energy_ev, to_ev(1.0), 1e-9);
  }
  ASSERT_TRUE(b.gap);
  EXPECT_NEAR(b.gap->value_ev, to_ev(3.0), 1e-9);
  EXPECT_EQ(b.gap->k_valence, 0u);
}

TEST(Pipeline, InteractionOpensGapConsistentWithFci) {
  const BandStructure free = hubbard_bands(2, 0.0, 2);
  const BandStructure corr = hubbard_bands(2, 4.0, 2);
  ASSERT_TRUE(free.gap && corr.gap);
  EXPECT_GT(corr.gap->value_ev, free.gap->value_ev);
  // Sign convention: gap = E(N+1) + E(N-1) - 2 E(N).
  const auto hq = build_hamiltonian(hubbard_integrals({2, 1.0, 4.0, 2, {}}));
  const double e0 = fci_sector(hq, 2, 0.0).energies.front();
  const double fundamental =
      fci_sector(hq, 3, 0.5).energies.front() + fci_sector(hq, 1, -0.5).energies.front() - 2 * e0;
  EXPECT_NEAR(from_ev(corr.gap->value_ev), fundamental, 1e-8);
  // The fundamental gap never exceeds a direct gap at a single k.
  for (const auto& kb : corr.kpoints)
    if (!kb.valence.empty() && !kb.conduction.empty())
      EXPECT_LE(corr.gap->value_ev, kb.conduction.front().energy_ev - kb.valence.front().energy_ev + 1e-9);
}

TEST(Pipeline, FailuresAreRecordedPerInputAndOthersContinue) {
  const std::vector<BandInput> inputs{{"bad", hubbard_integrals({4, 1.0, 4.0, 4, {}}), {}},
                                      {"good", hubbard_integrals({2, 1.0, 4.0, 2, {}}), {}}};
  const BandStructure b = band_pipeline(inputs, BandConfig{});
  ASSERT_EQ(b.kpoints.size(), 6u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_FALSE(b.kpoints[i].ok);
    EXPECT_FALSE(b.kpoints[i].error.empty());
  }
  EXPECT_TRUE(b.kpoints[4].ok && b.kpoints[5].ok);
  EXPECT_TRUE(b.gap);
}

TEST(Pipeline, DeterministicAcrossThreadCounts) {
  const std::vector<BandInput> inputs{{"a", hubbard_integrals({2, 1.0, 4.0, 2, {}}), {}},
                                      {"b", hubbard_integrals({2, 1.0, 2.0, 2, default_complex_gauge(2)}), {}}};
  BandConfig one, two;
  two.threads = 2;
  EXPECT_EQ(bands_to_json(band_pipeline(inputs, one)), bands_to_json(band_pipeline(inputs, two)));
}

TEST(Pipeline, CommonAlignmentShiftsByGroundEnergyDifferences) {
  const std::vector<BandInput> inputs{{"a", hubbard_integrals({2, 1.0, 4.0, 2, {}}), {0}},
                                      {"b", hubbard_integrals({2, 1.0, 2.0, 2, {}}), {0}}};
  BandConfig per_k, common;
  common.alignment = Alignment::common;
  const BandStructure p = band_pipeline(inputs, per_k), c = band_pipeline(inputs, common);
  const double mean = 0.5 * (p.kpoints[0].ground_energy + p.kpoints[1].ground_energy);
  for (std::size_t i = 0; i < 2; ++i) {
    const double shift = to_ev(p.kpoints[i].ground_energy - mean);
    EXPECT_NEAR(c.kpoints[i].valence[0].energy_ev, p.kpoints[i].valence[0].energy_ev - shift, 1e-9);
  }
}

TEST(Pipeline, EomNpComparisonColumns) {
  BandConfig cfg;
  cfg.eom_np = true;
  const BandStructure b = hubbard_bands(2, 4.0, 2, cfg);
  EXPECT_TRUE(b.eom_np);
  const std::string csv = bands_to_csv(b);
  EXPECT_EQ(csv.rfind("k_label,k1,k2,k3,band_type,index,energy_ev,qpwt,orbital,energy_np_ev,qpwt_np\n", 0), 0u);
  EXPECT_FALSE(b.kpoints[0].ip_np.empty());
}

TEST(Output, JsonAndCsvRoundTrips) {
  BandConfig cfg;
  cfg.eom_np = true;
  const BandStructure b = hubbard_bands(3, 4.0, 2, cfg);
  const std::string json = bands_to_json(b);
  const BandStructure from_json = bands_from_json(json);
  EXPECT_EQ(bands_to_json(from_json), json);

  // json -> csv -> structure: every band number survives bit for bit.
  const BandStructure from_csv = bands_from_csv(bands_to_csv(from_json));
  ASSERT_EQ(from_csv.kpoints.size(), b.kpoints.size());
  for (std::size_t i = 0; i < b.kpoints.size(); ++i) {
    EXPECT_EQ(from_csv.kpoints[i].label, b.kpoints[i].label);
    EXPECT_EQ(from_csv.kpoints[i].k, b.kpoints[i].k);
    for (auto member : {&KPointBands::valence, &KPointBands::conduction}) {
      const auto &x = from_csv.kpoints[i].*member, &y = b.kpoints[i].*member;
      ASSERT_EQ(x.size(), y.size());
      for (std::size_t j = 0; j < x.size(); ++j) {
        EXPECT_EQ(x[j].energy_ev, y[j].energy_ev);
        EXPECT_EQ(x[j].qpwt, y[j].qpwt);
        EXPECT_EQ(x[j].index, y[j].index);
        EXPECT_EQ(x[j].energy_np_ev, y[j].energy_np_ev);
      }
    }
  }
  ASSERT_TRUE(from_csv.gap && b.gap);
  EXPECT_EQ(from_csv.gap->value_ev, b.gap->value_ev);
  EXPECT_EQ(bands_to_csv(from_csv), bands_to_csv(b));
}

TEST(Output, EmptyStructureGivesWellFormedFiles) {
  const BandStructure empty;
  const auto j = nlohmann::json::parse(bands_to_json(empty));
  EXPECT_TRUE(j["kpoints"].empty());
  EXPECT_TRUE(j["gap"].is_null());
  EXPECT_EQ(bands_to_csv(empty), "k_label,k1,k2,k3,band_type,index,energy_ev,qpwt\n");
  EXPECT_TRUE(bands_from_csv(bands_to_csv(empty)).kpoints.empty());
  EXPECT_NE(bands_to_asciiplot(empty).find("no bands"), std::string::npos);
}

TEST(Output, AsciiPlotAndErrors) {
  const BandStructure b = hubbard_bands(3, 0.0, 2);
  const std::string plot = bands_to_asciiplot(b);
  EXPECT_NE(plot.find('v'), std::string::npos);
  EXPECT_NE(plot.find('c'), std::string::npos);
  EXPECT_NE(plot.find("gap:"), std::string::npos);
  EXPECT_THROW(emit_outputs(b, OutputFormat::csv, "/nonexistent-dir/bands.csv"), InputError);
  EXPECT_THROW(parse_output_format("xml"), InputError);
  EXPECT_THROW(bands_from_csv("wrong,header\n"), InputError);
  EXPECT_THROW(bands_from_json("{}"), InputError);
  const auto path = std::filesystem::temp_directory_path() / "qbands_test_bands.json";
  emit_outputs(b, OutputFormat::json, path);
  EXPECT_TRUE(std::filesystem::exists(path));
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace qbands

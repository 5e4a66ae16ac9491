// Copyright 2026 The qbands Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "qbands/lattice/kfcidump.hpp"
#include "test_support.hpp"

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  const std::string cmd = std::string(QBANDS_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qbands_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(Cli, ModelHubbardWritesParsableFixture) {
  const auto out = dir_ / "hub2.kfcidump";
  ASSERT_EQ(run("model hubbard --sites 2 --u 4 --nelec 2 --out " + out.string()), 0);
  const auto t = qbands::parse_kfcidump(out);
  EXPECT_EQ(t.mesh.num_kpoints(), 2u);
  EXPECT_EQ(t.n_electrons, 2);
}

TEST_F(Cli, GroundEomFciAndBands) {
  const auto fixture = dir_ / "hub2.kfcidump";
  ASSERT_EQ(run("model hubbard --sites 2 --u 4 --nelec 2 --out " + fixture.string()), 0);
  const auto ckpt = dir_ / "ground.json";
  EXPECT_EQ(run("ground --integrals " + fixture.string() + " --out " + ckpt.string()), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(ckpt))["format"], "qbands.adapt-checkpoint");
  EXPECT_EQ(run("ground --integrals " + fixture.string() + " --resume " + ckpt.string()), 0);

  const auto eom = dir_ / "eom.json";
  EXPECT_EQ(run("eom --integrals " + fixture.string() + " --k 1 --dump " + (dir_ / "qse").string() + " --out " +
                eom.string()),
            0);
  EXPECT_TRUE(fs::exists(dir_ / "qse_ip.json"));
  EXPECT_TRUE(fs::exists(dir_ / "qse_ea.json"));
  EXPECT_FALSE(nlohmann::json::parse(slurp(eom))["ip"]["states"].empty());

  EXPECT_EQ(run("fci --integrals " + fixture.string() + " --out " + (dir_ / "fci.json").string()), 0);
  const auto bands = dir_ / "bands.csv";
  EXPECT_EQ(run("bands --integrals " + fixture.string() + " --format csv --eom-np --out " + bands.string()), 0);
  EXPECT_EQ(slurp(bands).rfind("k_label,k1,k2,k3,band_type,index,energy_ev,qpwt", 0), 0u);
  EXPECT_EQ(run("bands --fixture-dir " + qbands::testing::fixture("hchain_path") + " --format asciiplot --out " +
                (dir_ / "plot.txt").string()),
            0);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("ground --integrals /no/such/file.kfcidump"), 3);
  EXPECT_EQ(run("ground --bogus-flag"), 3);
  EXPECT_EQ(run(""), 3);
  EXPECT_EQ(run("bands --fixture-dir /no/such/dir"), 3);
  const auto fixture = dir_ / "hub3.kfcidump";
  ASSERT_EQ(run("model hubbard --sites 3 --u 4 --nelec 2 --complex-gauge --out " + fixture.string()), 0);
  EXPECT_EQ(run("ground --max-iter 1 --integrals " + fixture.string()), 2);
  EXPECT_EQ(run("model hubbard --sites 4 --u 4 --nelec 4 --out " + (dir_ / "x").string() + " && " +
                std::string(QBANDS_CLI) + " ground --integrals " + (dir_ / "x").string()),
            3);
}

TEST_F(Cli, NoiseReportCsv) {
  const auto out = dir_ / "noise.csv";
  EXPECT_EQ(run("noise --integrals " + qbands::testing::fixture("hchain_1x1x1.kfcidump") +
                " --repeats 2 --shots 1024 --seed 9 --format csv --out " + out.string()),
            0);
  EXPECT_EQ(slurp(out).rfind("repeat,seed,scale,energy,ip,ea", 0), 0u);
}

}  // namespace

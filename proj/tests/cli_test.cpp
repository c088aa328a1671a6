// Copyright 2026 The channel-spectra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "chanspec/cli/config.hpp"
#include "chanspec/cli/experiment.hpp"
#include "chanspec/cli/runner.hpp"

namespace chanspec::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Captured {
  int status = -1;
  std::string out;
};

Captured run_tool(const std::string& args) {
  const std::string cmd = std::string(CHANSPEC_TOOL) + " " + args + " 2>&1";
  Captured c;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("chanspec_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(Csv, QuotesOnlyWhenNeeded) {
  CsvTable t{"x.csv", {"a", "b"}, {{"plain", "has,comma"}, {"say \"hi\"", "1.5"}}};
  EXPECT_EQ(t.to_csv(), "a,b\nplain,\"has,comma\"\n\"say \"\"hi\"\"\",1.5\n");
}

TEST(Csv, NumberFormatting) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Digest, KnownVectors) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Config, ShippedConfigsValidate) {
  std::size_t seen = 0;
  for (const auto& entry : fs::directory_iterator(CHANSPEC_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    json doc = load_config_file(entry.path());
    EXPECT_TRUE(validate_config(doc).empty()) << entry.path();
  }
  EXPECT_GE(seen, 10u);
}

TEST(Config, RejectsOutOfRangeEpsilon) {
  json doc = load_config_file(fs::path(CHANSPEC_CONFIG_DIR) / "qec_full_pauli.json");
  apply_override(doc, "qec.epsilon_grid=[0.5, 1.5]");
  auto problems = validate_config(doc);
  ASSERT_FALSE(problems.empty());
  EXPECT_NE(problems.front().find("epsilon"), std::string::npos) << problems.front();
}

TEST(Config, MissingSeedAndUnknownField) {
  json doc = {{"experiment", "qec"}, {"qec", {{"rounds", 2}, {"bogus", 1}}}};
  auto problems = validate_config(doc);
  bool seed = false;
  bool unknown = false;
  for (const auto& p : problems) {
    seed |= p.find("seed") != std::string::npos;
    unknown |= p.find("bogus") != std::string::npos;
  }
  EXPECT_TRUE(seed);
  EXPECT_TRUE(unknown);
  EXPECT_THROW(parse_config(doc), ConfigError);
}

TEST(Config, TablesNeedNoSeed) {
  json doc = {{"experiment", "tables"}};
  EXPECT_TRUE(validate_config(doc).empty());
}

TEST(Config, OverridesParseJsonValues) {
  json doc = {{"experiment", "qec"}, {"seed", 1}};
  apply_override(doc, "qec.rounds=4");
  apply_override(doc, "qec.failure=amplitude_damping");
  EXPECT_EQ(doc["qec"]["rounds"], 4);
  EXPECT_EQ(doc["qec"]["failure"], "amplitude_damping");
  EXPECT_THROW(apply_override(doc, "no_equals"), ConfigError);
  ExperimentConfig cfg = parse_config(doc);
  EXPECT_EQ(cfg.qec.rounds, 4u);
  EXPECT_EQ(cfg.qec.failure, FailureMode::AmplitudeDamping);
}

TEST(Tables, ListingsInProcess) {
  TablesConfig t;
  t.codes = {"three_qubit_bitflip"};
  t.noises = {"none", "1q_paulis", "full_pauli", "amplitude_damping"};
  auto r = build_tables(t);
  EXPECT_NE(r.text.find("0.00, m=60 / 2.00, m=4"), std::string::npos) << r.text;
  EXPECT_NE(r.text.find("0.00, m=24 / 0.50, m=32 / 1.00, m=8"), std::string::npos) << r.text;
  EXPECT_NE(r.text.find("0.00, m=63 / 2.83, m=1"), std::string::npos) << r.text;
  EXPECT_EQ(r.csv.columns.front(), "code");
}

TEST(Tool, VersionAndHelp) {
  auto v = run_tool("--version");
  EXPECT_EQ(v.status, 0);
  EXPECT_NE(v.out.find(std::string(tool_version())), std::string::npos);
}

TEST(Tool, TablesSubcommand) {
  auto a = run_tool("tables --code three_qubit_bitflip --noise none -o " + scratch("t1").string());
  EXPECT_EQ(a.status, kExitOk) << a.out;
  EXPECT_NE(a.out.find("0.00, m=60 / 2.00, m=4"), std::string::npos) << a.out;
  auto b = run_tool("tables --code five_qubit --noise full_pauli --strength 1 -o " +
                    scratch("t2").string());
  EXPECT_EQ(b.status, kExitOk) << b.out;
  EXPECT_NE(b.out.find("0.00, m=1023 / 4.00, m=1"), std::string::npos) << b.out;
}

TEST(Tool, ConfigErrorExitCode) {
  auto r = run_tool("qec --config " + std::string(CHANSPEC_CONFIG_DIR) +
                    "/qec_full_pauli.json --set 'qec.epsilon_grid=[1.5]' -o " +
                    scratch("bad").string());
  EXPECT_EQ(r.status, kExitConfig) << r.out;
  EXPECT_NE(r.out.find("config error"), std::string::npos);
  auto v = run_tool("validate --config " + std::string(CHANSPEC_CONFIG_DIR) + "/tables.json");
  EXPECT_EQ(v.status, kExitOk) << v.out;
}

TEST(Tool, PipelineErrorExitCode) {
  fs::path blocker = scratch("blocker");
  std::ofstream(blocker) << "not a directory";
  auto r = run_tool("tables --code three_qubit_bitflip --noise none -o " + (blocker / "sub").string());
  EXPECT_EQ(r.status, kExitPipeline) << r.out;
  fs::remove(blocker);
}

TEST(Tool, RepeatRunsAreByteIdentical) {
  const std::string config = std::string(CHANSPEC_CONFIG_DIR) + "/qec_full_pauli.json";
  const std::string small = " --set qec.rounds=3 --set qec.ensemble_size=4 --set 'qec.epsilon_grid=[0,0.5]'";
  fs::path a = scratch("rep_a");
  fs::path b = scratch("rep_b");
  ASSERT_EQ(run_tool("qec --config " + config + small + " -o " + a.string()).status, kExitOk);
  ASSERT_EQ(run_tool("qec --config " + config + small + " -j 2 -o " + b.string()).status, kExitOk);
  const std::string csv = "qec_three_qubit_bitflip_full_pauli.csv";
  ASSERT_TRUE(fs::exists(a / csv));
  EXPECT_EQ(slurp(a / csv), slurp(b / csv));
}

TEST(Tool, SeedChangesRandomOutput) {
  const std::string config = std::string(CHANSPEC_CONFIG_DIR) + "/spectrum_kraus.json";
  fs::path a = scratch("seed_a");
  fs::path b = scratch("seed_b");
  ASSERT_EQ(run_tool("spectrum --config " + config + " -o " + a.string()).status, kExitOk);
  ASSERT_EQ(run_tool("spectrum --config " + config + " --seed 4 -o " + b.string()).status, kExitOk);
  bool differs = false;
  for (const auto& entry : fs::directory_iterator(a)) {
    if (entry.path().extension() == ".csv") {
      differs |= slurp(entry.path()) != slurp(b / entry.path().filename());
    }
  }
  EXPECT_TRUE(differs);
}

TEST(Tool, ManifestRecordsChecksums) {
  fs::path dir = scratch("manifest");
  auto r = run_tool("spectrum --config " + std::string(CHANSPEC_CONFIG_DIR) +
                    "/spectrum_kraus.json -o " + dir.string());
  ASSERT_EQ(r.status, kExitOk) << r.out;
  json m = json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(m["schema_version"], kManifestSchemaVersion);
  EXPECT_EQ(m["csv_schema_version"], kCsvSchemaVersion);
  EXPECT_EQ(m["seed"], 3);
  EXPECT_EQ(m["status"], "ok");
  ASSERT_FALSE(m["files"].empty());
  for (const auto& f : m["files"]) {
    const std::string body = slurp(dir / f["name"].get<std::string>());
    EXPECT_EQ(f["sha256"], sha256_hex(body));
    EXPECT_EQ(f["bytes"], body.size());
  }
  EXPECT_EQ(m["config"]["spectrum"]["kappa"], 20);
}

}  // namespace
}  // namespace chanspec::cli

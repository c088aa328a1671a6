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

// JSON experiment configuration: parsing, overrides and field-level checks.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "chanspec/ensembles.hpp"
#include "chanspec/pec.hpp"
#include "chanspec/qec.hpp"

namespace chanspec::cli {

enum class ExperimentKind { Mitigation, Qec, Ensemble, Spectrum, Tables };

std::string to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(const std::string& name);

/// One channel whose full spectrum is written out.
struct SpectrumConfig {
  /// kraus, unitary, pauli, amplitude_damping or recovery.
  std::string channel = "kraus";
  std::size_t dimension = 8;
  std::size_t kappa = 20;
  double alpha = 1.0;
  std::string code = "three_qubit_bitflip";
  double cluster_tolerance = kClusterTolerance;
};

struct TablesConfig {
  std::vector<std::string> codes = {"three_qubit_bitflip", "five_qubit"};
  std::vector<std::string> noises = {"none", "1q_paulis", "full_pauli", "amplitude_damping"};
  double strength = 1.0;
  /// Also checks that the dilation of each with-code matrix has spectrum
  /// +-sigma (order 2d^2).
  bool check_dilation = false;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Tables;
  std::optional<std::uint64_t> seed;
  std::filesystem::path output_dir;
  std::size_t jobs = 1;
  PecConfig mitigation;
  SweepVariable sweep_variable = SweepVariable::Kappa;
  std::vector<double> sweep_values = {20, 40, 80, 160, 320};
  QecExperimentConfig qec;
  GapExperimentConfig ensemble;
  SpectrumConfig spectrum;
  TablesConfig tables;
  /// Effective document after overrides, echoed into the manifest.
  nlohmann::json document;
};

/// Thrown with every field-level problem found.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

nlohmann::json load_config_file(const std::filesystem::path& path);

/// "a.b.c=value"; the value is parsed as JSON when possible, else kept as a
/// string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Output directory used when neither the config nor --out names one.
std::filesystem::path default_output_dir();

/// Parses and range-checks without running anything. `kind` overrides the
/// document's "experiment" field when given (they must agree if both exist).
ExperimentConfig parse_config(const nlohmann::json& doc, std::optional<ExperimentKind> kind = {});

/// Problems found by parse_config, empty when the document is valid.
std::vector<std::string> validate_config(const nlohmann::json& doc,
                                         std::optional<ExperimentKind> kind = {});

}  // namespace chanspec::cli

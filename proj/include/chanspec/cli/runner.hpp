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

// Command plumbing shared by the executable and the tests: config assembly,
// file writing and the manifest.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chanspec/cli/config.hpp"

namespace chanspec::cli {

inline constexpr int kManifestSchemaVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitPipeline = 3;

std::string_view tool_version();

struct RunRequest {
  /// Unset for `run`, which takes the kind from the document.
  std::optional<ExperimentKind> kind;
  std::optional<std::filesystem::path> config_path;
  /// "a.b=value" assignments, applied in order after the file is loaded.
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  std::optional<std::size_t> jobs;
};

/// Loads the file (if any), applies flags and overrides. Throws ConfigError.
nlohmann::json assemble_document(const RunRequest& request);

/// Runs the experiment and writes its files plus manifest.json into the
/// output directory. Messages go to `out` and `err`; returns an exit code.
int run_command(const RunRequest& request, std::ostream& out, std::ostream& err);

/// Schema and range checks only.
int validate_command(const RunRequest& request, std::ostream& out, std::ostream& err);

std::string sha256_hex(std::string_view data);

}  // namespace chanspec::cli

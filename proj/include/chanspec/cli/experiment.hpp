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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chanspec/cli/config.hpp"

namespace chanspec::cli {

/// Bumped whenever a CSV column set changes.
inline constexpr int kCsvSchemaVersion = 1;

struct CsvTable {
  std::string name;  // file name, e.g. "qec_full_pauli.csv"
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// UTF-8, header row, '.' decimal separator, '\n' line ends.
  std::string to_csv() const;
};

/// Round-trip formatting for doubles (shortest representation).
std::string format_number(double value);

struct ExperimentOutput {
  std::vector<CsvTable> tables;
  /// (file name, contents) for non-CSV artifacts such as tables.txt.
  std::vector<std::pair<std::string, std::string>> text_files;
  /// Text echoed to stdout after a successful run.
  std::string console;
};

ExperimentOutput run_experiment(const ExperimentConfig& config);

struct TablesResult {
  CsvTable csv;
  /// Two-column layout ("No code" / "With code") per code.
  std::string text;
};

TablesResult build_tables(const TablesConfig& tables);

}  // namespace chanspec::cli

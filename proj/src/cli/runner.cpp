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

#include "chanspec/cli/runner.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <fmt/format.h>
#include <fstream>
#include <memory>
#include <ostream>

#include "chanspec/cli/experiment.hpp"

namespace chanspec::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file(const fs::path& path, std::string_view contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

json file_entry(const std::string& name, std::string_view contents) {
  return {{"name", name}, {"sha256", sha256_hex(contents)}, {"bytes", contents.size()}};
}

void report_problems(const ConfigError& e, std::ostream& err) {
  for (const auto& p : e.problems()) err << "config error: " << p << '\n';
}

}  // namespace

std::string_view tool_version() { return CHANSPEC_VERSION; }

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

json assemble_document(const RunRequest& request) {
  json doc = json::object();
  if (request.config_path) doc = load_config_file(*request.config_path);
  if (!doc.is_object()) throw ConfigError({"<root>: expected a JSON object"});
  for (const auto& o : request.overrides) apply_override(doc, o);
  if (request.seed) doc["seed"] = *request.seed;
  if (request.out) doc["output_dir"] = request.out->string();
  if (request.jobs) doc["jobs"] = *request.jobs;
  return doc;
}

int validate_command(const RunRequest& request, std::ostream& out, std::ostream& err) {
  std::vector<std::string> problems;
  try {
    problems = validate_config(assemble_document(request), request.kind);
  } catch (const ConfigError& e) {
    problems = e.problems();
  }
  if (problems.empty()) {
    out << "ok\n";
    return kExitOk;
  }
  for (const auto& p : problems) err << "config error: " << p << '\n';
  return kExitConfig;
}

int run_command(const RunRequest& request, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = parse_config(assemble_document(request), request.kind);
  } catch (const ConfigError& e) {
    report_problems(e, err);
    return kExitConfig;
  }

  const fs::path dir = config.output_dir.empty() ? default_output_dir() : config.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    err << "cannot create output directory " << dir << ": " << ec.message() << '\n';
    return kExitPipeline;
  }

  json manifest = {
      {"schema_version", kManifestSchemaVersion},
      {"csv_schema_version", kCsvSchemaVersion},
      {"tool", "channel-spectra"},
      {"version", tool_version()},
      {"experiment", to_string(config.kind)},
      {"seed", config.seed ? json(*config.seed) : json(nullptr)},
      {"config", config.document},
      {"files", json::array()},
  };

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  int code = kExitOk;
  try {
    ExperimentOutput result = run_experiment(config);
    for (const auto& table : result.tables) {
      const std::string csv = table.to_csv();
      write_file(dir / table.name, csv);
      json entry = file_entry(table.name, csv);
      entry["columns"] = table.columns;
      entry["rows"] = table.rows.size();
      manifest["files"].push_back(std::move(entry));
    }
    for (const auto& [name, contents] : result.text_files) {
      write_file(dir / name, contents);
      manifest["files"].push_back(file_entry(name, contents));
    }
    manifest["status"] = "ok";
    out << result.console;
  } catch (const std::exception& e) {
    // Files already listed were written completely; nothing else was.
    manifest["status"] = "failed";
    manifest["error"] = e.what();
    err << "pipeline error: " << e.what() << '\n';
    code = kExitPipeline;
  }
  // Wall time is the only run-dependent field; it lives here, never in a CSV.
  manifest["wall_time_seconds"] = elapsed();
  try {
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "manifest error: " << e.what() << '\n';
    return kExitPipeline;
  }
  if (code == kExitOk) out << "wrote " << (dir / "manifest.json").string() << '\n';
  return code;
}

}  // namespace chanspec::cli

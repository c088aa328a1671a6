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

// channel-spectra <subcommand> --config <path> [--seed N] [--out DIR] [--jobs K]

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chanspec/cli/runner.hpp"

namespace {

using chanspec::cli::ExperimentKind;
using chanspec::cli::RunRequest;

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t jobs = 1;
};

void add_common(CLI::App* sub, Common& c, bool config_required) {
  auto* opt = sub->add_option("-c,--config", c.config, "JSON experiment config")
                  ->check(CLI::ExistingFile);
  if (config_required) opt->required();
  sub->add_option("--seed", c.seed, "master seed (overrides the config)");
  sub->add_option("-o,--out", c.out, "output directory (overrides the config)");
  sub->add_option("-j,--jobs", c.jobs, "worker threads")->check(CLI::Range(1, 256));
  sub->add_option("--set", c.overrides, "override a field, e.g. --set qec.rounds=10");
}

RunRequest to_request(CLI::App* sub, const Common& c, std::optional<ExperimentKind> kind) {
  RunRequest r;
  r.kind = kind;
  if (!c.config.empty()) r.config_path = c.config;
  r.overrides = c.overrides;
  if (sub->count("--seed")) r.seed = c.seed;
  if (sub->count("--out")) r.out = c.out;
  if (sub->count("--jobs")) r.jobs = c.jobs;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of quantum channels"};
  app.set_version_flag("--version", std::string(chanspec::cli::tool_version()));
  app.require_subcommand(1);

  Common run_opts;
  auto* run = app.add_subcommand("run", "run the experiment named by the config");
  add_common(run, run_opts, true);

  Common validate_opts;
  auto* validate = app.add_subcommand("validate", "check a config without running it");
  add_common(validate, validate_opts, true);

  struct Named {
    ExperimentKind kind;
    CLI::App* app;
    Common opts;
  };
  std::vector<Named> named;
  named.reserve(5);
  for (ExperimentKind k : {ExperimentKind::Mitigation, ExperimentKind::Qec,
                           ExperimentKind::Ensemble, ExperimentKind::Spectrum,
                           ExperimentKind::Tables}) {
    named.push_back({k, nullptr, {}});
    Named& n = named.back();
    const std::string name = chanspec::cli::to_string(k);
    n.app = app.add_subcommand(name, "run the " + name + " experiment");
    add_common(n.app, n.opts, false);
  }

  // Shorthand flags for the multiplicity tables.
  CLI::App* tables = named.back().app;
  std::vector<std::string> codes;
  std::vector<std::string> noises;
  double strength = 1.0;
  bool check_dilation = false;
  tables->add_option("--code", codes, "stabilizer code (repeatable)");
  tables->add_option("--noise", noises, "none, 1q_paulis, full_pauli or amplitude_damping");
  tables->add_option("--strength", strength, "noise strength in [0, 1]");
  tables->add_flag("--check-dilation", check_dilation, "verify the Hermitian dilation spectrum");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return chanspec::cli::run_command(to_request(run, run_opts, {}), std::cout, std::cerr);
  if (validate->parsed()) {
    return chanspec::cli::validate_command(to_request(validate, validate_opts, {}), std::cout,
                                           std::cerr);
  }
  for (auto& n : named) {
    if (!n.app->parsed()) continue;
    RunRequest r = to_request(n.app, n.opts, n.kind);
    if (n.kind == ExperimentKind::Tables) {
      if (!codes.empty()) r.overrides.push_back("tables.codes=" + nlohmann::json(codes).dump());
      if (!noises.empty()) r.overrides.push_back("tables.noises=" + nlohmann::json(noises).dump());
      if (tables->count("--strength")) r.overrides.push_back("tables.strength=" + nlohmann::json(strength).dump());
      if (check_dilation) r.overrides.push_back("tables.check_dilation=true");
    }
    return chanspec::cli::run_command(r, std::cout, std::cerr);
  }
  return chanspec::cli::kExitConfig;
}

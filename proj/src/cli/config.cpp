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

#include "chanspec/cli/config.hpp"

#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "chanspec/errors.hpp"

namespace chanspec::cli {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "\n") + p;
  return out;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Reads typed fields from one JSON object and records every problem with
// its dotted path. Unknown keys are reported by finish().
class Reader {
 public:
  Reader(const json& obj, std::string path, std::vector<std::string>& problems)
      : obj_(obj), path_(std::move(path)), problems_(problems) {
    if (!obj_.is_object()) fail("", "must be an object");
  }

  bool has(const char* key) {
    seen_.insert(key);
    return obj_.is_object() && obj_.contains(key);
  }

  void size(const char* key, std::size_t& out, std::size_t lo = 0,
            std::size_t hi = std::numeric_limits<std::size_t>::max()) {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      fail(key, "must be a nonnegative integer");
      return;
    }
    const auto x = v.get<std::uint64_t>();
    if (x < lo || x > hi) {
      fail(key, fmt::format("must lie in [{}, {}], got {}", lo, hi, x));
      return;
    }
    out = static_cast<std::size_t>(x);
  }

  void seed(const char* key, std::optional<std::uint64_t>& out) {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      fail(key, "must be a nonnegative integer");
      return;
    }
    out = v.get<std::uint64_t>();
  }

  void number(const char* key, double& out, double lo = -kInf, double hi = kInf) {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number()) {
      fail(key, "must be a number");
      return;
    }
    const double x = v.get<double>();
    if (!(x >= lo && x <= hi)) {
      fail(key, fmt::format("must lie in [{}, {}], got {}", lo, hi, x));
      return;
    }
    out = x;
  }

  void boolean(const char* key, bool& out) {
    if (!has(key)) return;
    if (!obj_.at(key).is_boolean()) {
      fail(key, "must be true or false");
      return;
    }
    out = obj_.at(key).get<bool>();
  }

  void string(const char* key, std::string& out) {
    if (!has(key)) return;
    if (!obj_.at(key).is_string()) {
      fail(key, "must be a string");
      return;
    }
    out = obj_.at(key).get<std::string>();
  }

  void numbers(const char* key, std::vector<double>& out, double lo = -kInf, double hi = kInf) {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_array() || v.empty()) {
      fail(key, "must be a nonempty array of numbers");
      return;
    }
    std::vector<double> values;
    for (const auto& e : v) {
      if (!e.is_number()) {
        fail(key, "must be a nonempty array of numbers");
        return;
      }
      const double x = e.get<double>();
      if (!(x >= lo && x <= hi)) {
        fail(key, fmt::format("values must lie in [{}, {}], got {}", lo, hi, x));
        return;
      }
      values.push_back(x);
    }
    out = std::move(values);
  }

  void sizes(const char* key, std::vector<std::size_t>& out, std::size_t lo = 0) {
    std::vector<double> values;
    numbers(key, values, static_cast<double>(lo));
    if (values.empty()) return;
    std::vector<std::size_t> result;
    for (double x : values) {
      if (x != static_cast<double>(static_cast<std::size_t>(x))) {
        fail(key, "values must be integers");
        return;
      }
      result.push_back(static_cast<std::size_t>(x));
    }
    out = std::move(result);
  }

  void strings(const char* key, std::vector<std::string>& out) {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_array() || v.empty()) {
      fail(key, "must be a nonempty array of strings");
      return;
    }
    std::vector<std::string> values;
    for (const auto& e : v) {
      if (!e.is_string()) {
        fail(key, "must be a nonempty array of strings");
        return;
      }
      values.push_back(e.get<std::string>());
    }
    out = std::move(values);
  }

  template <typename Parse>
  void choice(const char* key, Parse&& parse) {
    std::string name;
    if (!has(key)) return;
    string(key, name);
    if (name.empty()) return;
    try {
      parse(name);
    } catch (const std::exception& e) {
      fail(key, e.what());
    }
  }

  const json* object(const char* key) {
    if (!has(key)) return nullptr;
    return &obj_.at(key);
  }

  void fail(const std::string& key, const std::string& message) {
    std::string field = path_;
    if (!key.empty()) field += (field.empty() ? "" : ".") + key;
    problems_.push_back(fmt::format("{}: {}", field.empty() ? "<root>" : field, message));
  }

  void finish() {
    if (!obj_.is_object()) return;
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) fail(key, "unknown field");
    }
  }

  const std::string& path() const { return path_; }

 private:
  const json& obj_;
  std::string path_;
  std::vector<std::string>& problems_;
  std::set<std::string> seen_;
};

template <typename Fn>
void library_check(std::vector<std::string>& problems, const std::string& section, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    problems.push_back(fmt::format("{}: {}", section, e.what()));
  }
}

void read_mitigation(const json& obj, ExperimentConfig& cfg, std::vector<std::string>& problems) {
  Reader r(obj, "mitigation", problems);
  PecConfig& m = cfg.mitigation;
  r.string("circuit", m.circuit);
  r.size("num_qubits", m.num_qubits, 1, kMaxPauliQubits);
  r.size("layers", m.layers, 1);
  r.size("kappa", m.kappa, 1);
  r.number("epsilon", m.epsilon, 0.0);
  r.number("alpha", m.alpha, 0.0, 1.0);
  r.size("ensemble_size", m.ensemble_size, 1);
  r.choice("damping_mode", [&](const std::string& s) {
    if (s == "channel") m.damping = DampingMode::Channel;
    else if (s == "bernoulli") m.damping = DampingMode::Bernoulli;
    else throw std::invalid_argument("must be channel or bernoulli");
  });
  r.choice("perturbation", [&](const std::string& s) {
    if (s == "support") m.support = PerturbationSupport::Support;
    else if (s == "full") m.support = PerturbationSupport::Full;
    else throw std::invalid_argument("must be support or full");
  });
  if (const json* noise = r.object("noise")) {
    if (!noise->is_object() || noise->empty()) {
      r.fail("noise", "must be a nonempty object mapping Pauli strings to probabilities");
    } else {
      m.noise.clear();
      for (const auto& [label, prob] : noise->items()) {
        if (!prob.is_number()) {
          r.fail("noise." + label, "must be a number");
          continue;
        }
        try {
          m.noise.emplace_back(PauliString::from_string(label), prob.get<double>());
        } catch (const std::exception& e) {
          r.fail("noise." + label, e.what());
        }
      }
    }
  }
  if (const json* sweep = r.object("sweep")) {
    Reader s(*sweep, "mitigation.sweep", problems);
    s.choice("variable", [&](const std::string& v) { cfg.sweep_variable = parse_sweep_variable(v); });
    s.numbers("values", cfg.sweep_values, 0.0);
    s.finish();
  }
  r.finish();
}

void read_qec(const json& obj, ExperimentConfig& cfg, std::vector<std::string>& problems) {
  Reader r(obj, "qec", problems);
  QecExperimentConfig& q = cfg.qec;
  r.choice("code", [&](const std::string& s) {
    build_code(s);
    q.code = s;
  });
  r.choice("failure", [&](const std::string& s) { q.failure = parse_failure_mode(s); });
  r.size("rounds", q.rounds, 1);
  r.numbers("epsilon_grid", q.epsilon_grid, 0.0, 1.0);
  r.size("ensemble_size", q.ensemble_size, 1);
  r.number("damping_strength", q.damping_strength, 0.0, 1.0);
  r.choice("injection", [&](const std::string& s) {
    if (s == "per_round") q.injection = FailureInjection::PerRound;
    else if (s == "per_trial") q.injection = FailureInjection::PerTrial;
    else throw std::invalid_argument("must be per_round or per_trial");
  });
  r.choice("noise", [&](const std::string& s) {
    if (s == "correctable_mixture") q.noise = WellBehavedNoise::CorrectableMixture;
    else if (s == "errors_only") q.noise = WellBehavedNoise::ErrorsOnly;
    else throw std::invalid_argument("must be correctable_mixture or errors_only");
  });
  r.number("cluster_tolerance", q.cluster_tolerance, 0.0);
  r.finish();
}

void read_ensemble(const json& obj, ExperimentConfig& cfg, std::vector<std::string>& problems) {
  Reader r(obj, "ensemble", problems);
  GapExperimentConfig& g = cfg.ensemble;
  r.choice("family", [&](const std::string& s) { g.family = parse_channel_family(s); });
  r.sizes("kappa_grid", g.kappa_grid, 1);
  r.size("dimension", g.dimension, 1, kMaxSystemDimension);
  r.size("trials", g.trials, 1);
  r.size("target_index", g.target_index, 1);
  r.number("theta", g.theta, 1e-12);
  r.number("cluster_tolerance", g.cluster_tolerance, 0.0);
  r.number("peripheral_tolerance", g.peripheral_tolerance, 0.0, 1.0);
  r.boolean("sandwich", g.sandwich);
  r.finish();
  if (g.target_index > g.dimension * g.dimension) {
    r.fail("target_index", "must not exceed dimension^2");
  }
}

void read_spectrum(const json& obj, ExperimentConfig& cfg, std::vector<std::string>& problems) {
  Reader r(obj, "spectrum", problems);
  SpectrumConfig& s = cfg.spectrum;
  r.choice("channel", [&](const std::string& c) {
    static const std::set<std::string> kKnown = {"kraus", "unitary", "pauli", "amplitude_damping",
                                                 "recovery"};
    if (!kKnown.count(c)) {
      throw std::invalid_argument("must be kraus, unitary, pauli, amplitude_damping or recovery");
    }
    s.channel = c;
  });
  r.size("dimension", s.dimension, 1, kMaxSystemDimension);
  r.size("kappa", s.kappa, 1);
  r.number("alpha", s.alpha, 0.0, 1.0);
  r.choice("code", [&](const std::string& c) {
    build_code(c);
    s.code = c;
  });
  r.number("cluster_tolerance", s.cluster_tolerance, 0.0);
  r.finish();
}

void read_tables(const json& obj, ExperimentConfig& cfg, std::vector<std::string>& problems) {
  Reader r(obj, "tables", problems);
  TablesConfig& t = cfg.tables;
  r.strings("codes", t.codes);
  r.strings("noises", t.noises);
  r.number("strength", t.strength, 0.0, 1.0);
  r.boolean("check_dilation", t.check_dilation);
  r.finish();
  for (const auto& c : t.codes) {
    try {
      build_code(c);
    } catch (const std::exception& e) {
      r.fail("codes", e.what());
    }
  }
  for (const auto& n : t.noises) {
    try {
      parse_table_noise(n);
    } catch (const std::exception& e) {
      r.fail("noises", e.what());
    }
  }
}

ExperimentConfig parse_impl(const json& doc, std::optional<ExperimentKind> kind,
                            std::vector<std::string>& problems) {
  ExperimentConfig cfg;
  cfg.document = doc;
  Reader root(doc, "", problems);
  std::optional<ExperimentKind> declared;
  root.choice("experiment", [&](const std::string& s) {
    declared = parse_kind(s);
    if (!declared) {
      throw std::invalid_argument("must be mitigation, qec, ensemble, spectrum or tables");
    }
  });
  if (kind && declared && *kind != *declared) {
    root.fail("experiment", fmt::format("config declares '{}' but the '{}' command was used",
                                        to_string(*declared), to_string(*kind)));
  }
  if (kind) {
    cfg.kind = *kind;
  } else if (declared) {
    cfg.kind = *declared;
  } else {
    root.fail("experiment", "required (or use a kind-specific subcommand)");
  }
  root.seed("seed", cfg.seed);
  root.size("jobs", cfg.jobs, 1, 256);
  std::string out;
  root.string("output_dir", out);
  if (!out.empty()) cfg.output_dir = out;

  if (const json* m = root.object("mitigation")) read_mitigation(*m, cfg, problems);
  if (const json* q = root.object("qec")) read_qec(*q, cfg, problems);
  if (const json* e = root.object("ensemble")) read_ensemble(*e, cfg, problems);
  if (const json* s = root.object("spectrum")) read_spectrum(*s, cfg, problems);
  if (const json* t = root.object("tables")) read_tables(*t, cfg, problems);
  root.finish();

  // The tables pipeline is deterministic; every other pipeline draws random
  // numbers and so needs an explicit seed.
  if (cfg.kind != ExperimentKind::Tables && !cfg.seed) {
    problems.push_back("seed: required (set it in the config or pass --seed)");
  }
  if (!problems.empty()) return cfg;

  const std::uint64_t seed = cfg.seed.value_or(0);
  cfg.mitigation.seed = seed;
  cfg.mitigation.jobs = cfg.jobs;
  cfg.qec.seed = seed;
  cfg.qec.jobs = cfg.jobs;
  cfg.ensemble.seed = seed;
  cfg.ensemble.jobs = cfg.jobs;
  switch (cfg.kind) {
    case ExperimentKind::Mitigation:
      library_check(problems, "mitigation", [&] {
        validate(cfg.mitigation);
        if (cfg.sweep_variable == SweepVariable::Kappa) {
          for (double v : cfg.sweep_values) {
            if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v))) {
              throw RangeError("sweep.values: kappa values must be integers >= 1");
            }
          }
        } else if (cfg.sweep_variable == SweepVariable::Alpha) {
          for (double v : cfg.sweep_values) {
            if (v > 1.0) throw RangeError("sweep.values: alpha values must lie in [0, 1]");
          }
        }
      });
      break;
    case ExperimentKind::Qec:
      library_check(problems, "qec", [&] { validate(cfg.qec); });
      break;
    case ExperimentKind::Ensemble:
      library_check(problems, "ensemble", [&] {
        if (cfg.ensemble.family == ChannelFamily::Pauli &&
            (cfg.ensemble.dimension < 2 ||
             (cfg.ensemble.dimension & (cfg.ensemble.dimension - 1)) != 0)) {
          throw DimensionError("dimension must be a power of two for the pauli family");
        }
      });
      break;
    case ExperimentKind::Spectrum:
    case ExperimentKind::Tables:
      break;
  }
  return cfg;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Mitigation: return "mitigation";
    case ExperimentKind::Qec: return "qec";
    case ExperimentKind::Ensemble: return "ensemble";
    case ExperimentKind::Spectrum: return "spectrum";
    case ExperimentKind::Tables: return "tables";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_kind(const std::string& name) {
  if (name == "mitigation") return ExperimentKind::Mitigation;
  if (name == "qec") return ExperimentKind::Qec;
  if (name == "ensemble") return ExperimentKind::Ensemble;
  if (name == "spectrum") return ExperimentKind::Spectrum;
  if (name == "tables") return ExperimentKind::Tables;
  return std::nullopt;
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({fmt::format("{}: invalid JSON ({})", path.string(), e.what())});
  }
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError({fmt::format("--set '{}': expected key.path=value", assignment)});
  }
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  json* node = &doc;
  std::stringstream ss(path);
  std::string key;
  std::vector<std::string> keys;
  while (std::getline(ss, key, '.')) keys.push_back(key);
  for (std::size_t k = 0; k + 1 < keys.size(); ++k) {
    if (!node->is_object()) {
      throw ConfigError({fmt::format("--set '{}': '{}' is not an object", assignment, keys[k])});
    }
    node = &(*node)[keys[k]];
    if (node->is_null()) *node = json::object();
  }
  if (!node->is_object()) throw ConfigError({fmt::format("--set '{}': bad path", assignment)});
  (*node)[keys.back()] = std::move(value);
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("CHANNEL_SPECTRA_OUT"); env && *env) return env;
  return "out";
}

ExperimentConfig parse_config(const json& doc, std::optional<ExperimentKind> kind) {
  std::vector<std::string> problems;
  ExperimentConfig cfg = parse_impl(doc, kind, problems);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

std::vector<std::string> validate_config(const json& doc, std::optional<ExperimentKind> kind) {
  std::vector<std::string> problems;
  parse_impl(doc, kind, problems);
  return problems;
}

}  // namespace chanspec::cli

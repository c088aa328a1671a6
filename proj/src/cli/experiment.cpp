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

#include "chanspec/cli/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "chanspec/errors.hpp"

namespace chanspec::cli {
namespace {

using Row = std::vector<std::string>;

std::string num(double v) { return format_number(v); }
std::string num(std::size_t v) { return std::to_string(v); }

std::vector<std::string> chernoff_columns() {
  return {"mu", "mu_plus", "mu_minus", "L", "log_term", "bound", "tail_bound"};
}

void append_chernoff(Row& row, const ChernoffReport& c) {
  row.push_back(num(c.mu));
  row.push_back(num(c.mu_plus));
  row.push_back(num(c.mu_minus));
  row.push_back(num(c.L));
  row.push_back(num(c.log_term));
  row.push_back(num(c.expectation_bound));
  row.push_back(c.tail_bound ? num(*c.tail_bound) : "");
}

ExperimentOutput run_mitigation(const ExperimentConfig& cfg) {
  auto points = mitigation_experiment(cfg.mitigation, cfg.sweep_variable, cfg.sweep_values);
  CsvTable t;
  t.name = fmt::format("mitigation_{}_{}.csv", cfg.mitigation.circuit, to_string(cfg.sweep_variable));
  t.columns = {"sweep_variable", "value", "kappa", "epsilon", "alpha", "ensemble_size",
               "sigma1_mean", "sigma1_std", "lambda1_mean", "lambda1_std", "sigma1_abs_dev_mean",
               "gamma_mean", "normality_defect_max", "spectrum_mismatch_max"};
  for (auto& c : chernoff_columns()) t.columns.push_back(c);
  std::string console;
  for (const auto& p : points) {
    Row row = {to_string(p.variable), num(p.value), num(p.kappa), num(p.epsilon), num(p.alpha),
               num(cfg.mitigation.ensemble_size), num(p.sigma1.mean), num(p.sigma1.std),
               num(p.lambda1.mean), num(p.lambda1.std), num(p.sigma1_deviation), num(p.gamma.mean),
               num(p.max_normality_defect), num(p.max_spectrum_mismatch)};
    append_chernoff(row, p.chernoff);
    t.rows.push_back(std::move(row));
    console += fmt::format("{}={:<8g} sigma1 {:.4f} +- {:.4f}  |lambda1| {:.4f}  mu {:.4f}\n",
                           to_string(p.variable), p.value, p.sigma1.mean, p.sigma1.std,
                           p.lambda1.mean, p.chernoff.mu);
  }
  return {{std::move(t)}, {}, std::move(console)};
}

ExperimentOutput run_qec(const ExperimentConfig& cfg) {
  auto points = qec_experiment(cfg.qec);
  CsvTable t;
  t.name = fmt::format("qec_{}_{}.csv", cfg.qec.code, to_string(cfg.qec.failure));
  t.columns = {"code", "failure", "rounds", "epsilon_prime", "ensemble_size",
               "spectral_radius_mean", "spectral_radius_std", "singular_radius_mean",
               "singular_radius_std", "unit_eigen_count_mean", "unit_singular_count_mean",
               "code_singular_count_mean", "radius_exceeds_code_fraction"};
  for (auto& c : chernoff_columns()) t.columns.push_back(c);
  std::string console;
  for (const auto& p : points) {
    Row row = {cfg.qec.code, to_string(cfg.qec.failure), num(cfg.qec.rounds), num(p.epsilon_prime),
               num(cfg.qec.ensemble_size), num(p.spectral_radius.mean), num(p.spectral_radius.std),
               num(p.singular_radius.mean), num(p.singular_radius.std),
               num(p.unit_eigen_count.mean), num(p.unit_singular_count.mean),
               num(p.code_singular_count.mean), num(p.radius_exceeds_code_fraction)};
    append_chernoff(row, p.chernoff);
    t.rows.push_back(std::move(row));
    console += fmt::format(
        "eps'={:<5g} |lambda|~1: {:.2f}  sigma~1: {:.2f}  sigma~code: {:.2f}  sigma1 {:.4f}\n",
        p.epsilon_prime, p.unit_eigen_count.mean, p.unit_singular_count.mean,
        p.code_singular_count.mean, p.singular_radius.mean);
  }
  return {{std::move(t)}, {}, std::move(console)};
}

ExperimentOutput run_ensemble(const ExperimentConfig& cfg) {
  auto reports = gap_experiment(cfg.ensemble);
  CsvTable t;
  t.name = fmt::format("ensemble_{}.csv", to_string(cfg.ensemble.family));
  t.columns = {"family", "kappa", "dimension", "trials", "gamma_lambda_mean", "gamma_lambda_std",
               "gamma_lambda_count", "gamma_sigma_mean", "gamma_sigma_std", "gamma_sigma_count",
               "gap_difference_max", "sigma1_mean", "sigma2_mean", "sigma2_std",
               "lambda2_mean", "nilpotent_radius_mean", "nilpotent_radius_std",
               "peripheral_rank_mean", "sigma_above_one", "sigma_excess_max", "mu_plus", "mu_minus",
               "mu_upper", "L_upper", "bound_upper", "mu_lower", "bound_lower"};
  std::string console;
  for (const auto& r : reports) {
    Row row = {std::string(to_string(r.family)), num(r.kappa), num(cfg.ensemble.dimension),
               num(r.trials), num(r.gamma_lambda.mean), num(r.gamma_lambda.std),
               num(r.gamma_lambda.count), num(r.gamma_sigma.mean), num(r.gamma_sigma.std),
               num(r.gamma_sigma.count), num(r.max_gap_difference), num(r.sigma1.mean),
               num(r.sigma2.mean), num(r.sigma2.std), num(r.lambda2_modulus.mean),
               num(r.nilpotent_radius.mean), num(r.nilpotent_radius.std),
               num(r.peripheral_rank.mean), num(r.sigma_above_one), num(r.max_sigma_excess)};
    if (r.upper && r.lower) {
      for (double v : {r.upper->mu_plus, r.upper->mu_minus, r.upper->mu, r.upper->L,
                       r.upper->expectation_bound, r.lower->mu, r.lower->mu}) {
        row.push_back(num(v));
      }
    } else {
      row.insert(row.end(), 7, "");
    }
    t.rows.push_back(std::move(row));
    console += fmt::format("kappa={:<5} gamma_lambda {:.4f}  gamma_sigma {:.4f}  sigma2 {:.4f}",
                           r.kappa, r.gamma_lambda.mean, r.gamma_sigma.mean, r.sigma2.mean);
    if (r.upper && r.lower) {
      console += fmt::format("  upper {:.4f}  lower {:.4f}", r.upper->expectation_bound,
                             r.lower->mu);
    }
    console += "\n";
  }
  return {{std::move(t)}, {}, std::move(console)};
}

ExperimentOutput run_spectrum(const ExperimentConfig& cfg) {
  const SpectrumConfig& s = cfg.spectrum;
  Rng rng = Rng(cfg.seed.value_or(0)).derive(0);
  ComplexMatrix m;
  std::string label = s.channel;
  if (s.channel == "recovery") {
    m = recovery_superoperator(build_code(s.code)).matrix();
    label += "_" + s.code;
  } else if (s.channel == "amplitude_damping") {
    if ((s.dimension & (s.dimension - 1)) != 0 || s.dimension < 2) {
      throw DimensionError("spectrum: amplitude_damping needs a power-of-two dimension");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < s.dimension) ++n;
    m = superoperator(amplitude_damping_channel(n, s.alpha)).matrix();
  } else {
    m = superoperator(sample_family_channel(parse_channel_family(s.channel), s.dimension, s.kappa,
                                            rng))
            .matrix();
  }
  SpectralReport rep = spectral_report(m, s.cluster_tolerance);
  CsvTable t;
  t.name = fmt::format("spectrum_{}.csv", label);
  t.columns = {"kind", "index", "re", "im", "modulus"};
  for (std::size_t k = 0; k < rep.eigenvalues.size(); ++k) {
    const Complex z = rep.eigenvalues[k];
    t.rows.push_back({"eigenvalue", num(k + 1), num(z.real()), num(z.imag()), num(std::abs(z))});
  }
  for (std::size_t k = 0; k < rep.singular_values.size(); ++k) {
    const double v = rep.singular_values[k];
    t.rows.push_back({"singular", num(k + 1), num(v), num(0.0), num(v)});
  }
  std::string console = fmt::format(
      "{}: order {}, spectral radius {:.6f}, singular radius {:.6f}, normal {}, unital {}, "
      "trace-preserving {}\n",
      label, m.rows(), rep.spectral_radius(), rep.singular_radius(), is_normal(m, 1e-8),
      is_unital(m, static_cast<std::size_t>(std::lround(std::sqrt(m.rows())))),
      is_trace_preserving(m, static_cast<std::size_t>(std::lround(std::sqrt(m.rows())))));
  return {{std::move(t)}, {}, std::move(console)};
}

}  // namespace

std::string CsvTable::to_csv() const {
  auto line = [](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += ',';
      const std::string& c = cells[k];
      if (c.find_first_of(",\"\n") != std::string::npos) {
        out += '"';
        for (char ch : c) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        out += '"';
      } else {
        out += c;
      }
    }
    return out + '\n';
  };
  std::string out = line(columns);
  for (const auto& r : rows) {
    if (r.size() != columns.size()) throw std::logic_error("CsvTable: row width mismatch in " + name);
    out += line(r);
  }
  return out;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  return fmt::format("{}", value);
}

TablesResult build_tables(const TablesConfig& tables) {
  TablesResult out;
  out.csv.name = "tables.csv";
  out.csv.columns = {"code", "noise", "strength", "with_code", "value", "multiplicity"};
  for (const auto& code_name : tables.codes) {
    const StabilizerCode code = build_code(code_name);
    std::vector<std::array<std::string, 3>> lines;
    lines.push_back({"noise", "No code", "With code"});
    std::string dilation_note;
    for (const auto& noise_name : tables.noises) {
      const TableNoise noise = parse_table_noise(noise_name);
      std::array<std::string, 3> cells = {noise_name, "N/A", ""};
      for (bool with_code : {false, true}) {
        if (!with_code && noise == TableNoise::None) continue;
        std::vector<double> sv = table_singular_values(code, noise, tables.strength, with_code);
        auto rows = multiplicity_listing(sv);
        cells[with_code ? 2 : 1] = format_listing(rows);
        for (const auto& r : rows) {
          out.csv.rows.push_back({code_name, noise_name, format_number(tables.strength),
                                  with_code ? "true" : "false", r.value, std::to_string(r.count)});
        }
        if (with_code && tables.check_dilation) {
          const Superoperator s = compose(recovery_superoperator(code),
                                          table_noise_superoperator(code, noise, tables.strength));
          const HermitianDilation chi = dilate(s.matrix());
          std::vector<double> lambda = hermitian_eigenvalues(chi.matrix());
          std::vector<double> expected = sv;
          for (double v : sv) expected.push_back(-v);
          std::sort(expected.begin(), expected.end(), std::greater<>());
          double dev = 0.0;
          for (std::size_t k = 0; k < lambda.size(); ++k) dev = std::max(dev, std::abs(lambda[k] - expected[k]));
          dilation_note += fmt::format("  dilation check {} (order {}): max |lambda - (+-sigma)| = {:.2e}\n",
                                       noise_name, chi.order(), dev);
        }
      }
      lines.push_back(cells);
    }
    std::array<std::size_t, 3> width = {0, 0, 0};
    for (const auto& l : lines) {
      for (std::size_t c = 0; c < 3; ++c) width[c] = std::max(width[c], l[c].size());
    }
    out.text += fmt::format("{} [{},{}], strength {}\n", code_name, code.n, code.k,
                            format_number(tables.strength));
    for (const auto& l : lines) {
      out.text += fmt::format("  {:<{}} | {:<{}} | {}\n", l[0], width[0], l[1], width[1], l[2]);
    }
    out.text += dilation_note;
    out.text += "\n";
  }
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::Mitigation: return run_mitigation(config);
    case ExperimentKind::Qec: return run_qec(config);
    case ExperimentKind::Ensemble: return run_ensemble(config);
    case ExperimentKind::Spectrum: return run_spectrum(config);
    case ExperimentKind::Tables: {
      TablesResult t = build_tables(config.tables);
      ExperimentOutput out;
      out.console = t.text;
      out.text_files.emplace_back("tables.txt", t.text);
      out.tables.push_back(std::move(t.csv));
      return out;
    }
  }
  throw std::logic_error("run_experiment: unknown kind");
}

}  // namespace chanspec::cli

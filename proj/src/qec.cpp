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

#include "chanspec/qec.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <set>

#include "chanspec/errors.hpp"
#include "chanspec/parallel.hpp"

namespace chanspec {
namespace {

std::string cyclic_shift(const std::string& s, std::size_t by) {
  const std::size_t n = s.size();
  std::string out(n, 'I');
  for (std::size_t q = 0; q < n; ++q) out[(q + by) % n] = s[q];
  return out;
}

double pow4(std::size_t e) { return std::ldexp(1.0, static_cast<int>(2 * e)); }

std::size_t count_near(std::span<const double> values, double target, double tol) {
  return static_cast<std::size_t>(std::count_if(
      values.begin(), values.end(), [&](double v) { return std::abs(v - target) <= tol; }));
}

}  // namespace

Syndrome syndrome_of(const std::vector<PauliString>& generators, const PauliString& p) {
  Syndrome s;
  s.reserve(generators.size());
  for (const auto& g : generators) s.push_back(static_cast<std::uint8_t>(g.symplectic_product(p)));
  return s;
}

StabilizerCode build_code(const CodeSpec& spec) {
  if (spec.generators.empty()) throw PreconditionError("build_code: no generators");
  StabilizerCode code;
  code.name = spec.name;
  for (const auto& g : spec.generators) code.generators.push_back(PauliString::from_string(g));
  code.n = code.generators.front().num_qubits();
  for (const auto& g : code.generators) {
    if (g.num_qubits() != code.n) throw DimensionError("build_code: generators differ in length");
  }
  if (code.generators.size() >= code.n) {
    throw PreconditionError("build_code: need fewer generators than qubits");
  }
  code.k = code.n - code.generators.size();

  // Matrix-level commutation check, independent of the symplectic shortcut.
  for (std::size_t a = 0; a < code.generators.size(); ++a) {
    const ComplexMatrix ma = code.generators[a].matrix();
    for (std::size_t b = a + 1; b < code.generators.size(); ++b) {
      const ComplexMatrix mb = code.generators[b].matrix();
      if ((ma * mb - mb * ma).cwiseAbs().maxCoeff() > 1e-12) {
        throw PreconditionError("build_code: generators " + code.generators[a].str() + " and " +
                                code.generators[b].str() + " do not commute");
      }
    }
  }

  std::vector<PauliString> correctable;
  correctable.emplace_back(code.n);
  for (const auto& c : spec.correctable) {
    PauliString p = PauliString::from_string(c).without_phase();
    if (p.num_qubits() != code.n) throw DimensionError("build_code: correctable error length");
    if (p.weight() == 0) continue;
    correctable.push_back(p);
  }
  std::map<Syndrome, std::size_t> seen;
  for (const auto& p : correctable) {
    Syndrome s = syndrome_of(code.generators, p);
    auto [it, inserted] = seen.emplace(s, code.recoveries.size());
    if (!inserted) {
      throw PreconditionError("build_code: " + p.str() + " and " +
                              code.recoveries[it->second].str() + " share a syndrome");
    }
    code.recoveries.push_back(p);
    code.syndromes.push_back(std::move(s));
  }
  const std::size_t expected = std::size_t{1} << code.generators.size();
  if (code.recoveries.size() != expected) {
    throw PreconditionError("build_code: recovery table has " +
                            std::to_string(code.recoveries.size()) + " entries, expected " +
                            std::to_string(expected));
  }
  return code;
}

StabilizerCode build_code(const std::string& name) {
  if (name == "three_qubit_bitflip") {
    return build_code(CodeSpec{name, {"IZZ", "ZZI"}, {"XII", "IXI", "IIX"}});
  }
  if (name == "five_qubit") {
    CodeSpec spec{name, {}, {}};
    for (std::size_t s = 0; s < 4; ++s) spec.generators.push_back(cyclic_shift("XZZXI", s));
    for (const auto& p : weight_one_paulis(5)) spec.correctable.push_back(p.str());
    return build_code(spec);
  }
  throw PreconditionError("unknown code '" + name + "' (expected three_qubit_bitflip or five_qubit)");
}

std::vector<std::string> builtin_code_names() { return {"three_qubit_bitflip", "five_qubit"}; }

SyndromeProjector syndrome_projector(const StabilizerCode& code, const Syndrome& syndrome) {
  if (syndrome.size() != code.generators.size()) {
    throw DimensionError("syndrome_projector: syndrome length must equal the generator count");
  }
  const auto d = static_cast<Eigen::Index>(code.dimension());
  ComplexMatrix pi = ComplexMatrix::Identity(d, d);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (std::size_t i = 0; i < syndrome.size(); ++i) {
    if (syndrome[i] > 1) throw RangeError("syndrome_projector: syndrome bits must be 0 or 1");
    const double sign = syndrome[i] ? -1.0 : 1.0;
    pi = pi * ((id + sign * code.generators[i].matrix()) * 0.5);
  }
  return {std::move(pi), syndrome};
}

KrausChannel recovery_channel(const StabilizerCode& code) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(code.num_syndromes());
  for (std::size_t m = 0; m < code.num_syndromes(); ++m) {
    ops.push_back(code.recoveries[m].matrix() * syndrome_projector(code, code.syndromes[m]).matrix);
  }
  return KrausChannel(std::move(ops));
}

Superoperator recovery_superoperator(const StabilizerCode& code) {
  return superoperator(recovery_channel(code));
}

SpectrumPrediction perfect_spectrum_prediction(const StabilizerCode& code) {
  SpectrumPrediction p;
  p.unit_eigen_multiplicity = static_cast<std::size_t>(pow4(code.k));
  p.zero_eigen_multiplicity = static_cast<std::size_t>(pow4(code.n) - pow4(code.k));
  p.nonzero_singular_multiplicity = p.unit_eigen_multiplicity;
  p.theorem_singular_value = std::pow(2.0, static_cast<double>(code.n - code.k) / 2.0);
  p.generator_count_value = static_cast<double>(code.generators.size());
  return p;
}

KrausChannel well_behaved_noise(const StabilizerCode& code, WellBehavedNoise kind) {
  std::vector<PauliString> set = code.recoveries;
  if (kind == WellBehavedNoise::ErrorsOnly) set.erase(set.begin());
  return uniform_pauli_channel(set);
}

std::string to_string(FailureMode mode) {
  switch (mode) {
    case FailureMode::None: return "none";
    case FailureMode::ExtraBitflip: return "extra_bitflip";
    case FailureMode::FullPauli: return "full_pauli";
    case FailureMode::AmplitudeDamping: return "amplitude_damping";
  }
  return "unknown";
}

FailureMode parse_failure_mode(const std::string& name) {
  if (name == "none") return FailureMode::None;
  if (name == "extra_bitflip") return FailureMode::ExtraBitflip;
  if (name == "full_pauli") return FailureMode::FullPauli;
  if (name == "amplitude_damping") return FailureMode::AmplitudeDamping;
  throw PreconditionError("unknown failure mode '" + name +
                          "' (expected none, extra_bitflip, full_pauli or amplitude_damping)");
}

QecRound::QecRound(const StabilizerCode& code, FailureMode failure, double damping_strength,
                   WellBehavedNoise noise)
    : dimension_(code.dimension()) {
  recovery_ = recovery_superoperator(code).matrix();
  noise_ = superoperator(well_behaved_noise(code, noise)).matrix();
  switch (failure) {
    case FailureMode::None:
      failure_ = ComplexMatrix::Identity(noise_.rows(), noise_.cols());
      break;
    case FailureMode::ExtraBitflip:
      failure_ = noise_;
      break;
    case FailureMode::FullPauli:
      failure_ = superoperator(uniform_pauli_channel(pauli_group(code.n))).matrix();
      break;
    case FailureMode::AmplitudeDamping:
      failure_ = superoperator(amplitude_damping_channel(code.n, damping_strength)).matrix();
      break;
  }
  clean_round_ = recovery_ * noise_;
  failed_round_ = recovery_ * failure_ * noise_;
}

Superoperator noisy_round(const QecRound& round, double epsilon_prime, Rng& rng) {
  if (!(epsilon_prime >= 0.0 && epsilon_prime <= 1.0)) {
    throw RangeError("noisy_round: epsilon' must lie in [0, 1]");
  }
  return Superoperator(round.round(rng.bernoulli(epsilon_prime)), round.dimension());
}

void validate(const QecExperimentConfig& c) {
  build_code(c.code);
  if (c.rounds < 1) throw RangeError("qec.rounds must be at least 1");
  if (c.ensemble_size < 1) throw RangeError("qec.ensemble_size must be at least 1");
  if (c.epsilon_grid.empty()) throw RangeError("qec.epsilon_grid must not be empty");
  for (double e : c.epsilon_grid) {
    if (!(e >= 0.0 && e <= 1.0)) {
      throw RangeError("qec.epsilon_grid values must lie in [0, 1], got " + std::to_string(e));
    }
  }
  if (!(c.damping_strength >= 0.0 && c.damping_strength <= 1.0)) {
    throw RangeError("qec.damping_strength must lie in [0, 1]");
  }
}

std::vector<QecPoint> qec_experiment(const QecExperimentConfig& config) {
  validate(config);
  const StabilizerCode code = build_code(config.code);
  const QecRound round(code, config.failure, config.damping_strength, config.noise);
  const double code_value = perfect_spectrum_prediction(code).theorem_singular_value;
  const double tol = config.cluster_tolerance;
  const Rng root(config.seed);

  std::vector<QecPoint> points;
  for (std::size_t ei = 0; ei < config.epsilon_grid.size(); ++ei) {
    const double eps = config.epsilon_grid[ei];
    const Rng base = root.derive(ei);
    struct Trial {
      ComplexMatrix s;
      double lambda1 = 0, sigma1 = 0;
      std::size_t unit_eigen = 0, unit_singular = 0, code_singular = 0;
    };
    std::vector<Trial> trials(config.ensemble_size);
    parallel_for(config.ensemble_size, config.jobs, [&](std::size_t t) {
      Rng stream = base.derive(t);
      const bool trial_fails = config.injection == FailureInjection::PerTrial && stream.bernoulli(eps);
      Trial& tr = trials[t];
      tr.s = ComplexMatrix::Identity(round.recovery().rows(), round.recovery().cols());
      for (std::size_t r = 0; r < config.rounds; ++r) {
        const bool fail =
            config.injection == FailureInjection::PerRound ? stream.bernoulli(eps) : trial_fails;
        tr.s = round.round(fail) * tr.s;
      }
      std::vector<double> sv = singular_values(tr.s);
      std::vector<Complex> ev = eigenvalues(tr.s);
      std::vector<double> moduli;
      moduli.reserve(ev.size());
      for (const auto& z : ev) moduli.push_back(std::abs(z));
      tr.lambda1 = moduli.front();
      tr.sigma1 = sv.front();
      tr.unit_eigen = count_near(moduli, 1.0, tol);
      tr.unit_singular = count_near(sv, 1.0, tol);
      tr.code_singular = count_near(sv, code_value, tol);
    });

    QecPoint p;
    p.epsilon_prime = eps;
    std::vector<double> l1, s1, ue, us, cs;
    std::size_t exceed = 0;
    for (const auto& tr : trials) {
      l1.push_back(tr.lambda1);
      s1.push_back(tr.sigma1);
      ue.push_back(static_cast<double>(tr.unit_eigen));
      us.push_back(static_cast<double>(tr.unit_singular));
      cs.push_back(static_cast<double>(tr.code_singular));
      if (tr.sigma1 > code_value + tol) ++exceed;
    }
    p.spectral_radius = summarize(l1);
    p.singular_radius = summarize(s1);
    p.unit_eigen_count = summarize(ue);
    p.unit_singular_count = summarize(us);
    p.code_singular_count = summarize(cs);
    p.radius_exceeds_code_fraction =
        static_cast<double>(exceed) / static_cast<double>(config.ensemble_size);

    std::vector<ComplexMatrix> ensemble;
    ensemble.reserve(trials.size());
    for (auto& tr : trials) ensemble.push_back(std::move(tr.s));
    PipelineOptions opt;
    opt.target_index = 1;
    opt.jobs = config.jobs;
    p.chernoff = singular_bound_pipeline(ensemble, opt, base.derive(config.ensemble_size));
    points.push_back(std::move(p));
  }
  return points;
}

std::string to_string(TableNoise noise) {
  switch (noise) {
    case TableNoise::None: return "none";
    case TableNoise::CorrectablePaulis: return "1q_paulis";
    case TableNoise::FullPauli: return "full_pauli";
    case TableNoise::AmplitudeDamping: return "amplitude_damping";
  }
  return "unknown";
}

TableNoise parse_table_noise(const std::string& name) {
  if (name == "none") return TableNoise::None;
  if (name == "1q_paulis") return TableNoise::CorrectablePaulis;
  if (name == "full_pauli") return TableNoise::FullPauli;
  if (name == "amplitude_damping") return TableNoise::AmplitudeDamping;
  throw PreconditionError("unknown table noise '" + name +
                          "' (expected none, 1q_paulis, full_pauli or amplitude_damping)");
}

Superoperator table_noise_superoperator(const StabilizerCode& code, TableNoise noise,
                                        double strength) {
  if (!(strength >= 0.0 && strength <= 1.0)) throw RangeError("noise strength must lie in [0, 1]");
  const std::size_t d = code.dimension();
  const Superoperator id = Superoperator::identity(d);
  auto mix = [&](const Superoperator& s) {
    return Superoperator((1.0 - strength) * id.matrix() + strength * s.matrix(), d);
  };
  switch (noise) {
    case TableNoise::None: return id;
    case TableNoise::CorrectablePaulis: return mix(superoperator(well_behaved_noise(code)));
    case TableNoise::FullPauli: return mix(superoperator(uniform_pauli_channel(pauli_group(code.n))));
    case TableNoise::AmplitudeDamping: return superoperator(amplitude_damping_channel(code.n, strength));
  }
  throw PreconditionError("unknown table noise");
}

std::vector<double> table_singular_values(const StabilizerCode& code, TableNoise noise,
                                          double strength, bool with_code) {
  Superoperator n = table_noise_superoperator(code, noise, strength);
  if (!with_code) return singular_values(n.matrix());
  return singular_values(compose(recovery_superoperator(code), n).matrix());
}

std::vector<MultiplicityRow> multiplicity_listing(std::span<const double> descending, double tol) {
  std::vector<Cluster<double>> clusters = cluster_values(descending, tol);
  std::map<double, MultiplicityRow> merged;  // keyed by the rounded value
  for (const auto& c : clusters) {
    std::string label = fmt::format("{:.2f}", c.value);
    if (label == "-0.00") label = "0.00";
    const double key = std::stod(label);
    auto [it, inserted] = merged.emplace(key, MultiplicityRow{label, 0});
    it->second.count += c.count;
  }
  std::vector<MultiplicityRow> rows;
  for (auto& [key, row] : merged) rows.push_back(row);
  return rows;
}

std::string format_listing(const std::vector<MultiplicityRow>& rows) {
  std::string out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k) out += " / ";
    out += fmt::format("{}, m={}", rows[k].value, rows[k].count);
  }
  return out;
}

}  // namespace chanspec

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

#include "chanspec/pec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "chanspec/errors.hpp"
#include "chanspec/parallel.hpp"

namespace chanspec {
namespace {

std::size_t group_size(std::size_t num_qubits) {
  if (num_qubits == 0 || num_qubits > kMaxPauliQubits) {
    throw RangeError("PEC: qubit count must be in 1.." + std::to_string(kMaxPauliQubits));
  }
  return std::size_t{1} << (2 * num_qubits);
}

// x and z bit masks of every Pauli index, for fast symplectic products.
struct SymplecticTable {
  std::vector<std::uint32_t> x, z;

  explicit SymplecticTable(std::size_t num_qubits) {
    const std::size_t count = group_size(num_qubits);
    x.resize(count);
    z.resize(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
      PauliString p = PauliString::from_index(num_qubits, idx);
      for (std::size_t q = 0; q < num_qubits; ++q) {
        if (p.x_bit(q)) x[idx] |= 1u << q;
        if (p.z_bit(q)) z[idx] |= 1u << q;
      }
    }
  }

  int sign(std::size_t a, std::size_t b) const {
    return std::popcount((x[a] & z[b]) ^ (z[a] & x[b])) & 1 ? -1 : 1;
  }
};

// Sign-pattern transform v -> H v with H_{b,j} = (-1)^<b,j>. H^2 = 4^n I.
std::vector<double> symplectic_transform(const SymplecticTable& table,
                                         const std::vector<double>& v) {
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t b = 0; b < v.size(); ++b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] != 0.0) acc += table.sign(b, j) * v[j];
    }
    out[b] = acc;
  }
  return out;
}

std::vector<double> cumulative(const std::vector<double>& weights) {
  std::vector<double> cdf(weights.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) cdf[k] = acc += weights[k];
  for (double& c : cdf) c /= acc;
  // Pin the tail to exactly 1 from the last positive weight on, so a draw
  // never lands past it on round-off.
  for (std::size_t k = weights.size(); k-- > 0;) {
    cdf[k] = 1.0;
    if (weights[k] > 0.0) break;
  }
  return cdf;
}

std::size_t draw(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.uniform();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

ComplexMatrix materialize(const std::optional<ComplexMatrix>& m, const ComplexMatrix& pending) {
  if (!m) return single_superoperator(pending);
  ComplexMatrix out = *m;
  left_apply_conjugation(pending, out);
  return out;
}

}  // namespace

PauliNoiseModel::PauliNoiseModel(std::size_t num_qubits, std::vector<double> probabilities, bool)
    : num_qubits_(num_qubits), probabilities_(std::move(probabilities)) {
  if (probabilities_.size() != group_size(num_qubits)) {
    throw DimensionError("PauliNoiseModel: expected 4^n probabilities");
  }
  double total = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0)) throw RangeError("PauliNoiseModel: probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw RangeError("PauliNoiseModel: probabilities must sum to 1, got " + std::to_string(total));
  }
}

PauliNoiseModel::PauliNoiseModel(std::size_t num_qubits,
                                 const std::vector<std::pair<PauliString, double>>& terms)
    : PauliNoiseModel(num_qubits, [&] {
        std::vector<double> dense(group_size(num_qubits), 0.0);
        for (const auto& [p, prob] : terms) {
          if (p.num_qubits() != num_qubits) {
            throw DimensionError("PauliNoiseModel: term " + p.str() + " has the wrong length");
          }
          dense[p.index()] += prob;
        }
        return dense;
      }(), true) {}

PauliNoiseModel PauliNoiseModel::from_dense(std::size_t num_qubits,
                                            std::vector<double> probabilities) {
  return PauliNoiseModel(num_qubits, std::move(probabilities), true);
}

PauliNoiseModel PauliNoiseModel::noiseless(std::size_t num_qubits) {
  std::vector<double> dense(group_size(num_qubits), 0.0);
  dense[0] = 1.0;
  return PauliNoiseModel(num_qubits, std::move(dense), true);
}

std::vector<std::pair<std::size_t, double>> PauliNoiseModel::support() const {
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t k = 0; k < probabilities_.size(); ++k) {
    if (probabilities_[k] > 0.0) out.emplace_back(k, probabilities_[k]);
  }
  return out;
}

KrausChannel PauliNoiseModel::channel() const {
  std::vector<std::pair<PauliString, double>> terms;
  for (const auto& [idx, prob] : support()) {
    terms.emplace_back(PauliString::from_index(num_qubits_, idx), prob);
  }
  return pauli_channel(terms);
}

std::vector<double> pauli_fidelities(const PauliNoiseModel& model) {
  SymplecticTable table(model.num_qubits());
  return symplectic_transform(table, model.probabilities());
}

Superoperator MitigationDistribution::superoperator() const {
  const std::size_t d = std::size_t{1} << num_qubits;
  const auto order = static_cast<Eigen::Index>(d * d);
  ComplexMatrix s = ComplexMatrix::Zero(order, order);
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (coefficients[k] == 0.0) continue;
    s += coefficients[k] * single_superoperator(PauliString::from_index(num_qubits, k).matrix());
  }
  return Superoperator(std::move(s), d);
}

MitigationDistribution invert_pauli_noise(const PauliNoiseModel& model) {
  SymplecticTable table(model.num_qubits());
  std::vector<double> f = symplectic_transform(table, model.probabilities());
  for (double& v : f) {
    if (std::abs(v) <= 1e-12) throw NumericalError("invert_pauli_noise: noise is not invertible");
    v = 1.0 / v;
  }
  MitigationDistribution out;
  out.num_qubits = model.num_qubits();
  out.coefficients = symplectic_transform(table, f);
  const double scale = 1.0 / static_cast<double>(f.size());
  out.gamma = 0.0;
  for (double& c : out.coefficients) {
    c *= scale;
    out.gamma += std::abs(c);
  }
  return out;
}

PauliNoiseModel perturb_noise(const PauliNoiseModel& model, double epsilon, Rng& rng,
                              PerturbationSupport support) {
  if (!(epsilon >= 0.0)) throw RangeError("perturb_noise: epsilon must be nonnegative");
  if (epsilon == 0.0) return model;
  std::vector<double> c = model.probabilities();
  for (double& v : c) {
    if (support == PerturbationSupport::Support && v == 0.0) continue;
    v = std::max(0.0, v + epsilon * rng.uniform(-1.0, 1.0));
  }
  double total = 0.0;
  for (double v : c) total += v;
  if (total <= 0.0) throw NumericalError("perturb_noise: every coefficient clamped to zero");
  for (double& v : c) v /= total;
  return PauliNoiseModel::from_dense(model.num_qubits(), std::move(c));
}

PauliNoiseModel conjugate_noise(const PauliNoiseModel& model, const ComplexMatrix& unitary) {
  const std::size_t n = model.num_qubits();
  const std::size_t d = std::size_t{1} << n;
  if (static_cast<std::size_t>(unitary.rows()) != d || unitary.rows() != unitary.cols()) {
    throw DimensionError("conjugate_noise: unitary dimension mismatch");
  }
  const std::size_t count = group_size(n);
  std::vector<ComplexMatrix> paulis;
  paulis.reserve(count);
  for (std::size_t k = 0; k < count; ++k) paulis.push_back(PauliString::from_index(n, k).matrix());

  std::vector<double> out(count, 0.0);
  for (const auto& [j, prob] : model.support()) {
    const ComplexMatrix m = unitary.adjoint() * paulis[j] * unitary;
    std::optional<std::size_t> image;
    for (std::size_t k = 0; k < count; ++k) {
      const Complex overlap = (paulis[k].adjoint() * m).trace() / static_cast<double>(d);
      if (std::abs(std::abs(overlap) - 1.0) < 1e-9) {
        image = k;
        break;
      }
    }
    if (!image) throw PreconditionError("conjugate_noise: gate does not map Paulis to Paulis");
    out[*image] += prob;
  }
  return PauliNoiseModel::from_dense(n, std::move(out));
}

ComplexMatrix cx_gate(std::size_t num_qubits, std::size_t control, std::size_t target) {
  if (control >= num_qubits || target >= num_qubits || control == target) {
    throw RangeError("cx_gate: invalid control/target");
  }
  const std::size_t d = std::size_t{1} << num_qubits;
  const std::size_t cbit = std::size_t{1} << (num_qubits - 1 - control);
  const std::size_t tbit = std::size_t{1} << (num_qubits - 1 - target);
  ComplexMatrix u = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t col = 0; col < d; ++col) {
    const std::size_t row = (col & cbit) ? col ^ tbit : col;
    u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  }
  return u;
}

Circuit identity_circuit(std::size_t num_qubits, std::size_t layers) {
  group_size(num_qubits);
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  return Circuit{"identity", num_qubits, std::vector<ComplexMatrix>(layers, ComplexMatrix::Identity(d, d))};
}

Circuit cx_ladder_circuit(std::size_t num_qubits, std::size_t layers) {
  group_size(num_qubits);
  if (num_qubits < 2) throw RangeError("cx_ladder needs at least two qubits");
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  ComplexMatrix u = ComplexMatrix::Identity(d, d);
  for (std::size_t q = 0; q + 1 < num_qubits; ++q) u = cx_gate(num_qubits, q, q + 1) * u;
  return Circuit{"cx_ladder", num_qubits, std::vector<ComplexMatrix>(layers, u)};
}

Circuit named_circuit(const std::string& name, std::size_t num_qubits, std::size_t layers) {
  if (name == "identity") return identity_circuit(num_qubits, layers);
  if (name == "cx_ladder") return cx_ladder_circuit(num_qubits, layers);
  throw PreconditionError("unknown circuit '" + name + "' (expected identity or cx_ladder)");
}

Superoperator ideal_superoperator(const Circuit& circuit) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << circuit.num_qubits);
  ComplexMatrix u = ComplexMatrix::Identity(d, d);
  for (const auto& layer : circuit.layers) u = layer * u;
  return Superoperator(single_superoperator(u), static_cast<std::size_t>(d));
}

void validate(const PecConfig& c) {
  group_size(c.num_qubits);
  if (c.kappa < 1) throw RangeError("mitigation.kappa must be at least 1");
  if (c.layers < 1) throw RangeError("mitigation.layers must be at least 1");
  if (c.ensemble_size < 1) throw RangeError("mitigation.ensemble_size must be at least 1");
  if (!(c.epsilon >= 0.0)) throw RangeError("mitigation.epsilon must be nonnegative");
  if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) throw RangeError("mitigation.alpha must lie in [0, 1]");
  named_circuit(c.circuit, c.num_qubits, 1);
  true_noise(c);
}

PauliNoiseModel default_noise(std::size_t num_qubits) {
  PauliString x(num_qubits), z(num_qubits);
  x.set_letter(0, 1);
  z.set_letter(0, 3);
  return PauliNoiseModel(num_qubits, {{PauliString(num_qubits), 0.9}, {x, 0.05}, {z, 0.05}});
}

PauliNoiseModel true_noise(const PecConfig& config) {
  if (config.noise.empty()) return default_noise(config.num_qubits);
  return PauliNoiseModel(config.num_qubits, config.noise);
}

PecSampler::PecSampler(Circuit circuit, const PauliNoiseModel& true_model,
                       const PauliNoiseModel& learned, double alpha, DampingMode damping)
    : dimension_(std::size_t{1} << circuit.num_qubits),
      num_qubits_(circuit.num_qubits),
      alpha_(alpha),
      damping_(damping) {
  if (true_model.num_qubits() != num_qubits_ || learned.num_qubits() != num_qubits_) {
    throw DimensionError("PecSampler: noise models and circuit differ in qubit count");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw RangeError("PecSampler: alpha must lie in [0, 1]");
  const std::size_t count = group_size(num_qubits_);
  paulis_.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    paulis_.push_back(PauliString::from_index(num_qubits_, k).matrix());
  }
  noise_cdf_ = cumulative(true_model.probabilities());
  for (auto& u : circuit.layers) {
    // The correction precedes the gate, so it inverts the noise as seen
    // through the gate: N U C = U requires C = (U^dagger N U)^{-1}.
    MitigationDistribution inv = invert_pauli_noise(conjugate_noise(learned, u));
    std::vector<double> weights(inv.coefficients.size());
    for (std::size_t k = 0; k < weights.size(); ++k) weights[k] = std::abs(inv.coefficients[k]);
    layers_.push_back(Layer{std::move(u), cumulative(weights), inv.gamma});
    inverse_.push_back(std::move(inv));
  }
  if (alpha_ > 0.0) {
    if (damping_ == DampingMode::Channel) {
      damping_channel_ = sparse_superoperator(amplitude_damping_channel(num_qubits_, alpha_));
    } else {
      const KrausChannel decay = amplitude_damping_channel(1, 1.0);
      const KrausChannel idle({ComplexMatrix::Identity(2, 2)});
      for (std::size_t q = 0; q < num_qubits_; ++q) {
        KrausChannel ch = q == 0 ? decay : idle;
        for (std::size_t r = 1; r < num_qubits_; ++r) ch = tensor(ch, r == q ? decay : idle);
        decay_per_qubit_.push_back(sparse_superoperator(ch));
      }
    }
  }
}

ComplexMatrix PecSampler::instance(Rng& rng) const {
  const auto d = static_cast<Eigen::Index>(dimension_);
  std::optional<ComplexMatrix> m;
  ComplexMatrix pending = ComplexMatrix::Identity(d, d);
  double weight = 1.0;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    if (l > 0 && alpha_ > 0.0) {
      if (damping_ == DampingMode::Channel) {
        m = ComplexMatrix(damping_channel_ * materialize(m, pending));
        pending.setIdentity();
      } else {
        for (std::size_t q = 0; q < num_qubits_; ++q) {
          if (!rng.bernoulli(alpha_)) continue;
          m = ComplexMatrix(decay_per_qubit_[q] * materialize(m, pending));
          pending.setIdentity();
        }
      }
    }
    const std::size_t j = draw(noise_cdf_, rng);
    const std::size_t i = draw(layer.cdf, rng);
    const double c = inverse_[l].coefficients[i];
    weight *= layer.gamma * (c < 0.0 ? -1.0 : 1.0);
    pending = paulis_[j] * layer.unitary * paulis_[i] * pending;
  }
  ComplexMatrix out = materialize(m, pending);
  out *= weight;
  return out;
}

ComplexMatrix PecSampler::estimator(std::size_t kappa, const Rng& rng) const {
  if (kappa < 1) throw RangeError("estimator: kappa must be at least 1");
  const auto order = static_cast<Eigen::Index>(dimension_ * dimension_);
  ComplexMatrix sum = ComplexMatrix::Zero(order, order);
  for (std::size_t k = 0; k < kappa; ++k) {
    Rng stream = rng.derive(k);
    sum += instance(stream);
  }
  return sum / static_cast<double>(kappa);
}

ComplexMatrix mitigated_estimator(const PecConfig& config, const Rng& rng) {
  validate(config);
  const PauliNoiseModel truth = true_noise(config);
  Rng learn = rng.derive(0);
  const PauliNoiseModel learned = perturb_noise(truth, config.epsilon, learn, config.support);
  PecSampler sampler(named_circuit(config.circuit, config.num_qubits, config.layers), truth,
                     learned, config.alpha, config.damping);
  return sampler.estimator(config.kappa, rng.derive(1));
}

std::string to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::Kappa: return "kappa";
    case SweepVariable::Epsilon: return "epsilon";
    case SweepVariable::Alpha: return "alpha";
  }
  return "unknown";
}

SweepVariable parse_sweep_variable(const std::string& name) {
  if (name == "kappa") return SweepVariable::Kappa;
  if (name == "epsilon") return SweepVariable::Epsilon;
  if (name == "alpha") return SweepVariable::Alpha;
  throw PreconditionError("unknown sweep variable '" + name + "' (expected kappa, epsilon or alpha)");
}

std::vector<MitigationPoint> mitigation_experiment(const PecConfig& base, SweepVariable variable,
                                                   const std::vector<double>& values) {
  if (values.empty()) throw RangeError("mitigation_experiment: empty sweep");
  const Rng root(base.seed);
  std::vector<MitigationPoint> points;
  for (double value : values) {
    PecConfig cfg = base;
    switch (variable) {
      case SweepVariable::Kappa:
        if (!(value >= 1.0) || value != std::floor(value)) {
          throw RangeError("mitigation sweep: kappa values must be integers >= 1");
        }
        cfg.kappa = static_cast<std::size_t>(value);
        break;
      case SweepVariable::Epsilon: cfg.epsilon = value; break;
      case SweepVariable::Alpha: cfg.alpha = value; break;
    }
    validate(cfg);

    struct Slot {
      ComplexMatrix z;
      double sigma1 = 0, lambda1 = 0, normality = 0, mismatch = 0, gamma = 1;
    };
    std::vector<Slot> slots(cfg.ensemble_size);
    const PauliNoiseModel truth = true_noise(cfg);
    const Circuit circuit = named_circuit(cfg.circuit, cfg.num_qubits, cfg.layers);
    parallel_for(cfg.ensemble_size, cfg.jobs, [&](std::size_t e) {
      const Rng stream = root.derive(e);
      Rng learn = stream.derive(0);
      const PauliNoiseModel learned = perturb_noise(truth, cfg.epsilon, learn, cfg.support);
      PecSampler sampler(circuit, truth, learned, cfg.alpha, cfg.damping);
      Slot& s = slots[e];
      s.z = sampler.estimator(cfg.kappa, stream.derive(1));
      s.gamma = 1.0;
      for (const auto& inv : sampler.distributions()) s.gamma *= inv.gamma;
      std::vector<double> sv = singular_values(s.z);
      std::vector<Complex> ev = eigenvalues(s.z);
      s.sigma1 = sv.front();
      s.lambda1 = std::abs(ev.front());
      const double fro2 = s.z.squaredNorm();
      s.normality = fro2 > 0 ? (s.z * s.z.adjoint() - s.z.adjoint() * s.z).norm() / fro2 : 0.0;
      std::vector<double> moduli;
      for (const auto& z : ev) moduli.push_back(std::abs(z));
      std::sort(moduli.begin(), moduli.end(), std::greater<>());
      for (std::size_t k = 0; k < sv.size(); ++k) {
        s.mismatch = std::max(s.mismatch, std::abs(moduli[k] - sv[k]));
      }
    });

    MitigationPoint p;
    p.variable = variable;
    p.value = value;
    p.kappa = cfg.kappa;
    p.epsilon = cfg.epsilon;
    p.alpha = cfg.alpha;
    std::vector<double> s1, l1, g;
    double dev = 0.0;
    for (auto& s : slots) {
      s1.push_back(s.sigma1);
      l1.push_back(s.lambda1);
      g.push_back(s.gamma);
      dev += std::abs(s.sigma1 - 1.0);
      p.max_normality_defect = std::max(p.max_normality_defect, s.normality);
      p.max_spectrum_mismatch = std::max(p.max_spectrum_mismatch, s.mismatch);
    }
    p.sigma1 = summarize(s1);
    p.lambda1 = summarize(l1);
    p.gamma = summarize(g);
    p.sigma1_deviation = dev / static_cast<double>(slots.size());

    std::vector<ComplexMatrix> ensemble;
    ensemble.reserve(slots.size());
    for (auto& s : slots) ensemble.push_back(std::move(s.z));
    PipelineOptions opt;
    opt.target_index = 1;
    opt.jobs = cfg.jobs;
    p.chernoff = singular_bound_pipeline(ensemble, opt, root.derive(cfg.ensemble_size));
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace chanspec

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

#include <gtest/gtest.h>

#include <cmath>

#include "chanspec/errors.hpp"
#include "oracles.hpp"

namespace chanspec {
namespace {

using Terms = std::vector<std::pair<std::string, double>>;

PauliNoiseModel model(std::size_t n, const Terms& terms) {
  std::vector<std::pair<PauliString, double>> t;
  for (const auto& [s, p] : terms) t.emplace_back(PauliString::from_string(s), p);
  return PauliNoiseModel(n, t);
}

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

ComplexMatrix random_model_superop_inverse_product(std::size_t n, Rng& rng) {
  std::vector<double> p(std::size_t{1} << (2 * n), 0.0);
  p[0] = 0.8;
  double rest = 0.2;
  for (int k = 0; k < 3; ++k) {
    double w = rest * rng.uniform(0.1, 0.5);
    p[1 + rng.index(p.size() - 1)] += w;
    rest -= w;
  }
  p[0] += rest;
  PauliNoiseModel m = PauliNoiseModel::from_dense(n, p);
  MitigationDistribution inv = invert_pauli_noise(m);
  return inv.superoperator().matrix() * superoperator(m.channel()).matrix();
}

TEST(NoiseModel, Validation) {
  EXPECT_ANY_THROW(model(1, {{"I", 0.5}}));
  EXPECT_ANY_THROW(model(1, {{"I", 1.2}, {"X", -0.2}}));
  EXPECT_ANY_THROW(model(2, {{"I", 1.0}}));
  auto m = model(2, {{"II", 0.7}, {"XZ", 0.3}});
  EXPECT_DOUBLE_EQ(m.probability(PauliString::from_string("XZ")), 0.3);
  EXPECT_EQ(m.support().size(), 2u);
}

TEST(Fidelities, MatchTransferOracle) {
  Terms terms = {{"II", 0.6}, {"XI", 0.1}, {"YZ", 0.15}, {"ZZ", 0.05}, {"IY", 0.1}};
  auto f = pauli_fidelities(model(2, terms));
  auto group = pauli_group(2);
  for (std::size_t b = 0; b < group.size(); ++b) {
    EXPECT_NEAR(f[b], oracle::fidelity(terms, group[b].str()), 1e-14) << group[b].str();
  }
}

TEST(Inversion, Noiseless) {
  auto inv = invert_pauli_noise(PauliNoiseModel::noiseless(2));
  EXPECT_NEAR(inv.gamma, 1.0, 1e-15);
  EXPECT_NEAR(inv.coefficients[0], 1.0, 1e-15);
  for (std::size_t k = 1; k < inv.coefficients.size(); ++k) EXPECT_NEAR(inv.coefficients[k], 0.0, 1e-15);
}

TEST(Inversion, SingleQubitBitFlip) {
  auto m = model(1, {{"I", 0.9}, {"X", 0.1}});
  auto inv = invert_pauli_noise(m);
  ComplexMatrix prod = inv.superoperator().matrix() * superoperator(m.channel()).matrix();
  EXPECT_LE(oracle::max_abs(prod - ComplexMatrix::Identity(4, 4)), 1e-10);
  // f_X = 1, f_Y = f_Z = 0.8: c_inv = (1 + 1 + 1.25 + 1.25) / 4 on I, etc.
  EXPECT_NEAR(inv.coefficients[0], 1.125, 1e-12);
  EXPECT_NEAR(inv.coefficients[1], -0.125, 1e-12);
  EXPECT_NEAR(inv.gamma, 1.25, 1e-12);
  double sum_abs = 0.0;
  for (double c : inv.coefficients) sum_abs += std::abs(c);
  EXPECT_NEAR(inv.gamma, sum_abs, 1e-12);
}

TEST(Inversion, ExactForRandomModels) {
  Rng rng(41);
  for (std::size_t n : {1u, 2u, 3u}) {
    for (int t = 0; t < 3; ++t) {
      const ComplexMatrix prod = random_model_superop_inverse_product(n, rng);
      EXPECT_LE(oracle::max_abs(prod - ComplexMatrix::Identity(prod.rows(), prod.cols())), 1e-8);
    }
  }
}

TEST(Inversion, GammaAboveOneUnlessTrivial) {
  EXPECT_GT(invert_pauli_noise(model(1, {{"I", 0.99}, {"Z", 0.01}})).gamma, 1.0);
  EXPECT_NEAR(invert_pauli_noise(model(1, {{"X", 1.0}})).gamma, 1.0, 1e-12);
}

TEST(Inversion, SingularNoiseRejected) {
  EXPECT_THROW(invert_pauli_noise(model(1, {{"I", 0.5}, {"X", 0.5}})), NumericalError);
}

TEST(Perturbation, ZeroEpsilonUnchanged) {
  Rng rng(42);
  auto m = default_noise(3);
  EXPECT_EQ(perturb_noise(m, 0.0, rng).probabilities(), m.probabilities());
}

TEST(Perturbation, StaysNormalized) {
  Rng rng(43);
  auto m = default_noise(2);
  for (double eps : {0.01, 0.2, 1.0}) {
    for (auto support : {PerturbationSupport::Support, PerturbationSupport::Full}) {
      auto p = perturb_noise(m, eps, rng, support);
      double total = 0.0;
      for (double v : p.probabilities()) {
        EXPECT_GE(v, 0.0);
        total += v;
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
      if (support == PerturbationSupport::Support) {
        // Entries may clamp to zero but never leave the original support.
        EXPECT_LE(p.support().size(), 3u);
        for (const auto& [j, prob] : p.support()) EXPECT_GT(m.probabilities()[j], 0.0);
      }
    }
  }
  EXPECT_THROW(perturb_noise(m, -0.1, rng), RangeError);
}

TEST(Conjugation, CxMapsControlXToXX) {
  ComplexMatrix cx = cx_gate(2, 0, 1);
  auto m = conjugate_noise(model(2, {{"II", 0.9}, {"XI", 0.1}}), cx);
  EXPECT_NEAR(m.probability(PauliString::from_string("XX")), 0.1, 1e-15);
  EXPECT_NEAR(m.probability(PauliString::from_string("II")), 0.9, 1e-15);
  // Consistency with U^dagger N U built from matrices.
  ComplexMatrix x = oracle::pauli("XI");
  EXPECT_LE(oracle::max_abs(cx.adjoint() * x * cx - oracle::pauli("XX")), 1e-15);
  ComplexMatrix t = ComplexMatrix::Identity(2, 2);
  t(1, 1) = std::polar(1.0, M_PI / 4);
  EXPECT_ANY_THROW(conjugate_noise(model(1, {{"I", 0.9}, {"X", 0.1}}), t));
}

TEST(Circuits, Shapes) {
  auto id = identity_circuit(3, 3);
  EXPECT_EQ(id.layers.size(), 3u);
  EXPECT_LE(oracle::max_abs(ideal_superoperator(id).matrix() - ComplexMatrix::Identity(64, 64)), 0.0);
  auto ladder = cx_ladder_circuit(3, 2);
  ComplexMatrix want = cx_gate(3, 1, 2) * cx_gate(3, 0, 1);
  EXPECT_LE(oracle::max_abs(ladder.layers[0] - want), 1e-15);
  EXPECT_ANY_THROW(named_circuit("toffoli", 3, 1));
}

TEST(Sampler, TrivialNoiseIdentity) {
  auto noiseless = PauliNoiseModel::noiseless(2);
  PecSampler s(identity_circuit(2, 3), noiseless, noiseless, 0.0, DampingMode::Channel);
  Rng rng(44);
  EXPECT_LE(oracle::max_abs(s.instance(rng) - ComplexMatrix::Identity(16, 16)), 1e-14);
}

TEST(Sampler, InstanceNormIsGammaPower) {
  auto truth = default_noise(2);
  Circuit c = cx_ladder_circuit(2, 3);
  PecSampler s(c, truth, truth, 0.0, DampingMode::Channel);
  double gamma = 1.0;
  for (const auto& d : s.distributions()) gamma *= d.gamma;
  Rng rng(45);
  for (int t = 0; t < 10; ++t) EXPECT_NEAR(s.instance(rng).norm(), gamma * 4.0, 1e-10 * gamma);
}

TEST(Sampler, ExactEnumerationIsUnbiased) {
  // One qubit, Clifford gate: the sampling law summed over all (j, i)
  // pairs with its weights reproduces the ideal superoperator.
  auto truth = model(1, {{"I", 0.85}, {"X", 0.1}, {"Z", 0.05}});
  Circuit c{"h", 1, {hadamard()}};
  PecSampler s(c, truth, truth, 0.0, DampingMode::Channel);
  const auto& inv = s.distributions().front();
  auto group = pauli_group(1);
  ComplexMatrix mean = ComplexMatrix::Zero(4, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < 4; ++i) {
      const double prob = truth.probabilities()[j] * std::abs(inv.coefficients[i]) / inv.gamma;
      const double sign = inv.coefficients[i] < 0 ? -1.0 : 1.0;
      const ComplexMatrix op = group[j].matrix() * c.layers[0] * group[i].matrix();
      mean += prob * inv.gamma * sign * oracle::kron(op.conjugate(), op);
    }
  }
  EXPECT_LE(oracle::max_abs(mean - oracle::kron(hadamard().conjugate(), hadamard())), 1e-12);
}

TEST(Sampler, EstimatorOfOneIsFirstInstance) {
  auto truth = default_noise(1);
  PecSampler s(identity_circuit(1, 2), truth, truth, 0.0, DampingMode::Channel);
  Rng root(46);
  Rng first = root.derive(0);
  EXPECT_EQ(s.estimator(1, root), s.instance(first));
  EXPECT_THROW(s.estimator(0, root), RangeError);
}

TEST(Sampler, DampingModesAgreeAtFullStrength) {
  auto noiseless = PauliNoiseModel::noiseless(2);
  PecSampler channel(identity_circuit(2, 3), noiseless, noiseless, 1.0, DampingMode::Channel);
  PecSampler bernoulli(identity_circuit(2, 3), noiseless, noiseless, 1.0, DampingMode::Bernoulli);
  Rng a(47), b(47);
  ComplexMatrix d = superoperator(amplitude_damping_channel(2, 1.0)).matrix();
  EXPECT_LE(oracle::max_abs(channel.instance(a) - d * d), 1e-12);
  EXPECT_LE(oracle::max_abs(bernoulli.instance(b) - d * d), 1e-12);
}

TEST(Estimator, NormalityDependsOnGate) {
  PecConfig c;
  c.num_qubits = 2;
  c.kappa = 40;
  c.seed = 48;
  ComplexMatrix z = mitigated_estimator(c, Rng(c.seed));
  EXPECT_TRUE(is_normal(z, 1e-10));
  c.circuit = "cx_ladder";
  ComplexMatrix w = mitigated_estimator(c, Rng(c.seed));
  EXPECT_FALSE(is_normal(w, 1e-6));
}

TEST(Experiment, DeterministicAcrossJobs) {
  PecConfig c;
  c.num_qubits = 2;
  c.ensemble_size = 6;
  c.seed = 49;
  auto a = mitigation_experiment(c, SweepVariable::Kappa, {5, 10});
  c.jobs = 3;
  auto b = mitigation_experiment(c, SweepVariable::Kappa, {5, 10});
  ASSERT_EQ(a.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(a[k].sigma1.mean, b[k].sigma1.mean);
    EXPECT_EQ(a[k].chernoff.mu, b[k].chernoff.mu);
  }
  EXPECT_THROW(mitigation_experiment(c, SweepVariable::Kappa, {2.5}), RangeError);
  EXPECT_THROW(mitigation_experiment(c, SweepVariable::Alpha, {}), RangeError);
}

TEST(Experiment, ConfigValidation) {
  PecConfig c;
  c.alpha = 1.5;
  EXPECT_THROW(validate(c), RangeError);
  c = {};
  c.num_qubits = 6;
  EXPECT_ANY_THROW(validate(c));
  c = {};
  c.kappa = 0;
  EXPECT_THROW(validate(c), RangeError);
  EXPECT_EQ(parse_sweep_variable("epsilon"), SweepVariable::Epsilon);
  EXPECT_ANY_THROW(parse_sweep_variable("beta"));
}

}  // namespace
}  // namespace chanspec

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

#include "chanspec/ensembles.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "chanspec/errors.hpp"

namespace chanspec {
namespace {

TEST(ModulusGap, Examples) {
  std::vector<double> eig = {1.0, 0.7, 0.7, 0.1};
  EXPECT_NEAR(*modulus_gap(eig, 1e-6), 0.3, 1e-15);
  std::vector<double> sv = {1.0, 1.0, 0.4};
  EXPECT_NEAR(*modulus_gap(sv, 1e-6), 0.6, 1e-15);
  std::vector<double> flat = {0.5, 0.5, 0.5};
  EXPECT_FALSE(modulus_gap(flat, 1e-6).has_value());
  EXPECT_FALSE(modulus_gap({}, 1e-6).has_value());
}

TEST(SpectralGap, UsesEigenModuliAndSingularValues) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m.diagonal() << 1.0, Complex(0, -0.6), 0.2;
  auto g = spectral_gap(spectral_report(m));
  ASSERT_TRUE(g.gamma_lambda && g.gamma_sigma);
  EXPECT_NEAR(*g.gamma_lambda, 0.4, 1e-12);
  EXPECT_NEAR(*g.gamma_sigma, 0.4, 1e-12);
  auto none = spectral_gap(spectral_report(ComplexMatrix::Identity(2, 2)));
  EXPECT_FALSE(none.gamma_lambda.has_value());
}

TEST(Summarize, SampleStd) {
  std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  auto s = summarize(v);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.std, std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_EQ(s.count, 4u);
  std::vector<double> one = {7.0};
  EXPECT_EQ(summarize(one).std, 0.0);
}

TEST(LogLogSlope, PowerLaw) {
  std::vector<double> x = {10, 20, 40, 80};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 / v);
  EXPECT_NEAR(loglog_slope(x, y), -1.0, 1e-12);
  std::vector<double> bad = {1.0, -1.0, 1.0, 1.0};
  EXPECT_THROW(loglog_slope(x, bad), RangeError);
}

TEST(SampleFamily, PauliNeedsPowerOfTwo) {
  Rng rng(1);
  EXPECT_EQ(sample_family_channel(ChannelFamily::Pauli, 8, 5, rng).dimension(), 8u);
  EXPECT_ANY_THROW(sample_family_channel(ChannelFamily::Pauli, 6, 5, rng));
  EXPECT_EQ(sample_family_channel(ChannelFamily::Kraus, 6, 5, rng).dimension(), 6u);
}

GapExperimentConfig small_config(ChannelFamily family) {
  GapExperimentConfig c;
  c.family = family;
  c.kappa_grid = {10, 40};
  c.dimension = 4;
  c.trials = 12;
  c.seed = 99;
  return c;
}

TEST(GapExperiment, DeterministicAndThreadIndependent) {
  auto c = small_config(ChannelFamily::Kraus);
  auto a = gap_experiment(c);
  c.jobs = 3;
  auto b = gap_experiment(c);
  ASSERT_EQ(a.size(), 2u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].gamma_lambda.mean, b[k].gamma_lambda.mean);
    EXPECT_EQ(a[k].sigma2.mean, b[k].sigma2.mean);
    ASSERT_TRUE(a[k].upper && b[k].upper);
    EXPECT_EQ(a[k].upper->expectation_bound, b[k].upper->expectation_bound);
    EXPECT_EQ(a[k].lower->mu, b[k].lower->mu);
  }
}

TEST(GapExperiment, PauliGapsCoincide) {
  auto c = small_config(ChannelFamily::Pauli);
  c.sandwich = false;
  for (const auto& r : gap_experiment(c)) {
    EXPECT_LE(r.max_gap_difference, 1e-8);
    EXPECT_FALSE(r.upper.has_value());
  }
}

TEST(GapExperiment, SinglePeripheralEigenvalueAtLargeKappa) {
  GapExperimentConfig c = small_config(ChannelFamily::Kraus);
  c.dimension = 8;
  c.kappa_grid = {80};
  c.sandwich = false;
  for (auto family : {ChannelFamily::Kraus, ChannelFamily::Unitary, ChannelFamily::Pauli}) {
    c.family = family;
    auto r = gap_experiment(c);
    EXPECT_DOUBLE_EQ(r[0].peripheral_rank.mean, 1.0) << to_string(family);
    EXPECT_EQ(r[0].peripheral_rank.std, 0.0);
  }
}

TEST(GapExperiment, Validation) {
  auto c = small_config(ChannelFamily::Kraus);
  c.trials = 0;
  EXPECT_ANY_THROW(gap_experiment(c));
  c = small_config(ChannelFamily::Kraus);
  c.kappa_grid = {0};
  EXPECT_ANY_THROW(gap_experiment(c));
}

}  // namespace
}  // namespace chanspec

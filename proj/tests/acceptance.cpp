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

// One test per acceptance criterion. Each prints a single
// "ACCEPTANCE <PASS|FAIL> <name>" line; tolerances and grids are pinned here.

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "chanspec/channels.hpp"
#include "chanspec/chernoff.hpp"
#include "chanspec/ensembles.hpp"
#include "chanspec/pec.hpp"
#include "chanspec/qec.hpp"
#include "chanspec/spectral.hpp"
#include "oracles.hpp"

namespace chanspec {
namespace {

constexpr double kSpectrumTol = 1e-8;
constexpr double kIdempotenceTol = 1e-8;
constexpr double kEnumerationTol = 1e-12;
constexpr double kNormalityTol = 1e-6;
constexpr double kGapEqualityTol = 1e-8;
constexpr double kRadiusDrift = 0.02;
constexpr double kSlopeLow = -1.3;
constexpr double kSlopeHigh = -0.7;
constexpr double kBitflipSeconds = 10.0;
constexpr double kFiveQubitSeconds = 300.0;
constexpr double kSandwichSeconds = 600.0;

constexpr std::uint64_t kEnsembleSeed = 11;
constexpr std::uint64_t kMitigationSeed = 20240611;
constexpr std::uint64_t kQecSeed = 7;
constexpr std::uint64_t kDilationSeed = 5;

constexpr std::size_t kSystemDimension = 8;
constexpr std::size_t kTrials = 100;
const std::vector<std::size_t> kKappaGrid = {10, 20, 40, 80, 160, 320};
const std::vector<ChannelFamily> kFamilies = {ChannelFamily::Kraus, ChannelFamily::Unitary,
                                              ChannelFamily::Pauli};

class Acceptance : public ::testing::Test {
 protected:
  void TearDown() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    std::printf("ACCEPTANCE %s %s\n", HasFailure() ? "FAIL" : "PASS", info->name());
    std::fflush(stdout);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string listing(const StabilizerCode& code, TableNoise noise, bool with_code) {
  return format_listing(multiplicity_listing(table_singular_values(code, noise, 1.0, with_code)));
}

struct TableRow {
  TableNoise noise;
  const char* no_code;  // empty when the column is N/A
  const char* with_code;
};

void check_table(const std::string& code_name, const std::vector<TableRow>& rows) {
  auto code = build_code(code_name);
  for (const auto& row : rows) {
    if (*row.no_code) {
      EXPECT_EQ(listing(code, row.noise, false), row.no_code) << to_string(row.noise);
    }
    EXPECT_EQ(listing(code, row.noise, true), row.with_code) << to_string(row.noise);
  }
}

TEST_F(Acceptance, BitflipMultiplicityTable) {
  const auto t0 = std::chrono::steady_clock::now();
  check_table("three_qubit_bitflip",
              {{TableNoise::None, "", "0.00, m=60 / 2.00, m=4"},
               {TableNoise::CorrectablePaulis, "0.00, m=24 / 0.50, m=32 / 1.00, m=8",
                "0.00, m=60 / 1.00, m=2 / 2.00, m=2"},
               {TableNoise::FullPauli, "0.00, m=63 / 1.00, m=1", "0.00, m=63 / 2.00, m=1"},
               {TableNoise::AmplitudeDamping, "0.00, m=63 / 2.83, m=1", "0.00, m=63 / 2.83, m=1"}});
  const double elapsed = seconds_since(t0);
  std::printf("  runtime %.2f s\n", elapsed);
  EXPECT_LT(elapsed, kBitflipSeconds);
}

TEST_F(Acceptance, FiveQubitMultiplicityTable) {
  const auto t0 = std::chrono::steady_clock::now();
  check_table("five_qubit",
              {{TableNoise::None, "", "0.00, m=1020 / 4.00, m=4"},
               {TableNoise::CorrectablePaulis,
                "0.00, m=405 / 0.25, m=513 / 0.50, m=90 / 0.75, m=15 / 1.00, m=1",
                "0.00, m=1020 / 1.00, m=3 / 4.00, m=1"},
               {TableNoise::FullPauli, "0.00, m=1023 / 1.00, m=1", "0.00, m=1023 / 4.00, m=1"},
               {TableNoise::AmplitudeDamping, "0.00, m=1023 / 5.66, m=1",
                "0.00, m=1023 / 4.12, m=1"}});

  // Order-2048 dilation of the damped, corrected channel.
  auto code = build_code("five_qubit");
  const ComplexMatrix m = recovery_superoperator(code).matrix() *
                          table_noise_superoperator(code, TableNoise::AmplitudeDamping, 1.0).matrix();
  HermitianDilation chi = dilate(m);
  ASSERT_EQ(chi.order(), 2048u);
  std::vector<double> lambda = hermitian_eigenvalues(chi.matrix());
  std::vector<double> sigma = singular_values(m);
  std::vector<double> want;
  for (double s : sigma) want.push_back(s);
  for (double s : sigma) want.push_back(-s);
  std::sort(want.begin(), want.end(), std::greater<>());
  double dev = 0.0;
  for (std::size_t k = 0; k < want.size(); ++k) dev = std::max(dev, std::abs(lambda[k] - want[k]));
  const double elapsed = seconds_since(t0);
  std::printf("  dilation deviation %.3g, runtime %.1f s\n", dev, elapsed);
  EXPECT_LE(dev, kSpectrumTol);
  EXPECT_LT(elapsed, kFiveQubitSeconds);
}

TEST_F(Acceptance, RecoveryChannelTheorems) {
  for (const std::string name : {"three_qubit_bitflip", "five_qubit"}) {
    SCOPED_TRACE(name);
    auto code = build_code(name);
    const std::size_t d2 = code.dimension() * code.dimension();
    const std::size_t unit = std::size_t{1} << (2 * code.k);
    const ComplexMatrix r = recovery_superoperator(code).matrix();

    auto ev = eigenvalues(r);
    std::size_t ones = 0, zeros = 0;
    for (const auto& z : ev) {
      ones += std::abs(z - 1.0) <= kSpectrumTol;
      zeros += std::abs(z) <= kSpectrumTol;
    }
    EXPECT_EQ(ones, unit);
    EXPECT_EQ(zeros, d2 - unit);

    const double idem = (r * r - r).norm();
    EXPECT_LE(idem, kIdempotenceTol);

    const double scale = std::pow(2.0, static_cast<double>(code.n - code.k));
    const ComplexMatrix delta = r.adjoint() * r / scale;
    EXPECT_LE(oracle::max_abs(delta - delta.adjoint()), kIdempotenceTol);
    EXPECT_LE((delta * delta - delta).norm(), kIdempotenceTol);
    EXPECT_TRUE(is_unital(delta, code.dimension(), kIdempotenceTol));

    auto sv = table_singular_values(code, TableNoise::CorrectablePaulis, 1.0, true);
    const auto nonzero = static_cast<std::size_t>(
        std::count_if(sv.begin(), sv.end(), [](double s) { return s > kSpectrumTol; }));
    EXPECT_EQ(nonzero, unit);
    std::printf("  %s: |1|=%zu |0|=%zu idempotence %.2g nonzero sigma %zu\n", name.c_str(), ones,
                zeros, idem, nonzero);
  }
}

TEST_F(Acceptance, DilationInterlacing) {
  Rng root(kDilationSeed);
  double worst_dilation = 0.0, worst_split = 0.0, worst_interlace = 0.0;
  std::size_t index = 0;
  for (std::size_t order : {8u, 64u, 128u}) {
    for (std::size_t t = 0; t < 100; ++t) {
      Rng rng = root.derive(index++);
      ComplexMatrix m(order, order);
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = rng.complex_normal();
      }
      const ComplexMatrix chi = dilate(m).matrix();
      const auto lambda = oracle::hermitian_eigenvalues(chi);
      const auto sigma = oracle::singular_values(m);
      for (std::size_t k = 0; k < order; ++k) {
        worst_dilation = std::max(worst_dilation, std::abs(lambda[k] - sigma[k]));
        worst_dilation = std::max(worst_dilation, std::abs(lambda[2 * order - 1 - k] + sigma[k]));
      }

      ComplexMatrix g(order, order);
      for (Eigen::Index c = 0; c < g.cols(); ++c) {
        for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = rng.complex_normal();
      }
      const ComplexMatrix h = (g + g.adjoint()) * 0.5;
      PsdSplit split = split_psd(h);
      const double scale = oracle::max_abs(h);
      worst_split = std::max(worst_split, oracle::max_abs(split.positive - split.negative - h) / scale);
      worst_split = std::max(worst_split, oracle::max_abs(split.positive * split.negative) / (scale * scale));
      worst_split = std::max(worst_split, -oracle::hermitian_eigenvalues(split.positive).back() / scale);
      worst_split = std::max(worst_split, -oracle::hermitian_eigenvalues(split.negative).back() / scale);

      for (std::size_t l : {1u, 2u, 3u}) {
        for (auto strategy : {SubmatrixStrategy::Deterministic, SubmatrixStrategy::Random}) {
          const auto sub = oracle::hermitian_eigenvalues(principal_submatrix(chi, l, strategy, rng));
          for (std::size_t i = 0; i < sub.size(); ++i) {
            worst_interlace = std::max(worst_interlace, sub[i] - lambda[i]);
            worst_interlace = std::max(worst_interlace, lambda[i + l] - sub[i]);
          }
        }
      }
    }
  }
  std::printf("  dilation %.2g, split %.2g, interlacing violation %.2g\n", worst_dilation,
              worst_split, worst_interlace);
  EXPECT_LE(worst_dilation, kSpectrumTol);
  EXPECT_LE(worst_split, kSpectrumTol);
  EXPECT_LE(worst_interlace, kSpectrumTol);
}

std::vector<ComplexMatrix> family_ensemble(ChannelFamily family, std::size_t kappa, const Rng& root) {
  std::vector<ComplexMatrix> out;
  for (std::size_t t = 0; t < kTrials; ++t) {
    Rng rng = root.derive(t);
    out.push_back(superoperator(sample_family_channel(family, kSystemDimension, kappa, rng)).matrix());
  }
  return out;
}

TEST_F(Acceptance, ExpectationBound) {
  Rng root(kEnsembleSeed);
  std::size_t cell = 0;
  for (auto family : kFamilies) {
    for (std::size_t kappa : {10u, 40u, 160u}) {
      auto ensemble = family_ensemble(family, kappa, root.derive(cell++));
      std::vector<double> s1;
      for (const auto& m : ensemble) s1.push_back(oracle::singular_values(m).front());
      const double mean_s1 = oracle::mean(s1);
      PipelineOptions opt;
      opt.target_index = 1;
      opt.theta = 1.0;
      ChernoffReport r = singular_bound_pipeline(ensemble, opt, root.derive(1000 + cell));
      std::printf("  %s kappa=%zu mean sigma1 %.6f mu %.6f bound %.4f\n",
                  std::string(to_string(family)).c_str(), kappa, mean_s1, r.mu,
                  r.expectation_bound);
      EXPECT_GE(r.expectation_bound, mean_s1) << to_string(family) << " kappa " << kappa;
      // Empirical, not a theorem: mu alone already dominated in the reference runs.
      EXPECT_GE(r.mu, mean_s1 - kSpectrumTol) << "mu regression, " << to_string(family)
                                              << " kappa " << kappa;
    }
  }
}

GapExperimentConfig gap_config(ChannelFamily family, bool sandwich) {
  GapExperimentConfig c;
  c.family = family;
  c.kappa_grid = kKappaGrid;
  c.dimension = kSystemDimension;
  c.trials = kTrials;
  c.seed = kEnsembleSeed;
  c.sandwich = sandwich;
  return c;
}

TEST_F(Acceptance, SecondSingularSandwich) {
  const auto t0 = std::chrono::steady_clock::now();
  for (auto family : kFamilies) {
    for (const auto& p : gap_experiment(gap_config(family, true))) {
      ASSERT_TRUE(p.upper && p.lower);
      std::printf("  %s kappa=%zu upper %.4f sigma2 %.4f lower %.4f\n",
                  std::string(to_string(family)).c_str(), p.kappa, p.upper->expectation_bound,
                  p.sigma2.mean, p.lower->mu);
      EXPECT_GE(p.upper->expectation_bound, p.sigma2.mean) << to_string(family) << " " << p.kappa;
      EXPECT_GE(p.sigma2.mean, p.lower->mu) << to_string(family) << " " << p.kappa;
    }
  }
  const double elapsed = seconds_since(t0);
  std::printf("  runtime %.1f s\n", elapsed);
  EXPECT_LT(elapsed, kSandwichSeconds);
}

ComplexMatrix hadamard_gate() {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

TEST_F(Acceptance, PecConvergence) {
  PecConfig base;
  base.circuit = "identity";
  base.num_qubits = 3;
  base.layers = 3;
  base.ensemble_size = kTrials;
  base.seed = kMitigationSeed;

  auto kappa = mitigation_experiment(base, SweepVariable::Kappa, {20, 80, 320});
  for (std::size_t k = 0; k < kappa.size(); ++k) {
    std::printf("  kappa=%zu |sigma1-1| %.4f normality %.2g\n", kappa[k].kappa,
                kappa[k].sigma1_deviation, kappa[k].max_normality_defect);
    EXPECT_LE(kappa[k].max_normality_defect, kNormalityTol);
    if (k > 0) EXPECT_LT(kappa[k].sigma1_deviation, kappa[k - 1].sigma1_deviation);
  }

  // Exact expectation at n = 1: every (noise draw, correction draw) pair.
  {
    PauliNoiseModel truth(1, {{PauliString::from_string("I"), 0.85},
                              {PauliString::from_string("X"), 0.1},
                              {PauliString::from_string("Z"), 0.05}});
    const ComplexMatrix u = hadamard_gate();
    PecSampler sampler(Circuit{"h", 1, {u}}, truth, truth, 0.0, DampingMode::Channel);
    const auto& inv = sampler.distributions().front();

    // Independent inverse: invert U^dagger N U directly and read off its
    // (diagonal) Pauli expansion.
    std::vector<oracle::Matrix> kraus;
    const std::string letters = "IXYZ";
    for (std::size_t j = 0; j < 4; ++j) {
      const double p = truth.probabilities()[j];
      if (p > 0) kraus.push_back(std::sqrt(p) * u.adjoint() * oracle::pauli(letters[j]) * u);
    }
    const oracle::Matrix c = oracle::superoperator(kraus).inverse();
    oracle::Matrix basis(16, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      const oracle::Matrix p = oracle::pauli(letters[i]);
      basis.col(static_cast<Eigen::Index>(i)) = oracle::vec(oracle::kron(p.conjugate(), p));
    }
    const Eigen::VectorXcd coeff = basis.colPivHouseholderQr().solve(oracle::vec(c));
    double coeff_dev = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      coeff_dev = std::max(coeff_dev, std::abs(coeff(static_cast<Eigen::Index>(i)) - inv.coefficients[i]));
    }

    oracle::Matrix mean = oracle::Matrix::Zero(4, 4);
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t i = 0; i < 4; ++i) {
        const double prob = truth.probabilities()[j] * std::abs(inv.coefficients[i]) / inv.gamma;
        const double sign = inv.coefficients[i] < 0 ? -1.0 : 1.0;
        const oracle::Matrix op = oracle::pauli(letters[j]) * u * oracle::pauli(letters[i]);
        mean += prob * inv.gamma * sign * oracle::kron(op.conjugate(), op);
      }
    }
    const double bias = oracle::max_abs(mean - oracle::kron(u.conjugate(), u));
    std::printf("  n=1 enumeration bias %.2g, inverse deviation %.2g\n", bias, coeff_dev);
    EXPECT_LE(bias, kEnumerationTol);
    EXPECT_LE(coeff_dev, kEnumerationTol);
  }

  PecConfig learn = base;
  learn.kappa = 320;
  auto eps = mitigation_experiment(learn, SweepVariable::Epsilon, {0.0, 0.1, 0.2});
  for (std::size_t k = 0; k < eps.size(); ++k) {
    std::printf("  epsilon=%.2f sigma1 %.4f\n", eps[k].epsilon, eps[k].sigma1.mean);
    if (k > 0) EXPECT_GT(eps[k].sigma1.mean, eps[k - 1].sigma1.mean) << "epsilon " << eps[k].epsilon;
  }

  PecConfig damp = learn;
  damp.epsilon = 0.2;
  auto alpha = mitigation_experiment(damp, SweepVariable::Alpha, {0.0, 0.5, 1.0});
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    std::printf("  alpha=%.1f sigma1 %.4f |lambda1| %.4f\n", alpha[k].alpha, alpha[k].sigma1.mean,
                alpha[k].lambda1.mean);
    if (k > 0) {
      EXPECT_GT(alpha[k].sigma1.mean, alpha[k - 1].sigma1.mean) << "alpha " << alpha[k].alpha;
      EXPECT_LT(std::abs(alpha[k].lambda1.mean - 1.0), std::abs(alpha[k - 1].lambda1.mean - 1.0))
          << "alpha " << alpha[k].alpha;
    }
  }
}

std::vector<QecPoint> qec_run(FailureMode failure) {
  QecExperimentConfig c;
  c.code = "three_qubit_bitflip";
  c.failure = failure;
  c.rounds = 25;
  c.ensemble_size = 50;
  c.epsilon_grid = {0.0, 0.5, 1.0};
  c.seed = kQecSeed;
  return qec_experiment(c);
}

TEST_F(Acceptance, QecFailureTrends) {
  auto full = qec_run(FailureMode::FullPauli);
  for (const auto& p : full) {
    std::printf("  full_pauli eps'=%.2f |lambda|~1 %.2f sigma~1 %.2f sigma1 %.4f\n", p.epsilon_prime,
                p.unit_eigen_count.mean, p.unit_singular_count.mean, p.singular_radius.mean);
  }
  EXPECT_DOUBLE_EQ(full.front().unit_eigen_count.mean, 4.0);
  EXPECT_DOUBLE_EQ(full.back().unit_eigen_count.mean, 1.0);
  EXPECT_DOUBLE_EQ(full.front().unit_singular_count.mean, 2.0);
  EXPECT_DOUBLE_EQ(full.back().unit_singular_count.mean, 0.0);
  for (std::size_t k = 1; k < full.size(); ++k) {
    EXPECT_LE(full[k].unit_eigen_count.mean, full[k - 1].unit_eigen_count.mean);
    EXPECT_LE(full[k].unit_singular_count.mean, full[k - 1].unit_singular_count.mean);
  }

  for (auto mode : {FailureMode::FullPauli, FailureMode::ExtraBitflip}) {
    auto points = mode == FailureMode::FullPauli ? full : qec_run(mode);
    const double r0 = points.front().singular_radius.mean;
    for (const auto& p : points) {
      EXPECT_LE(std::abs(p.singular_radius.mean - r0), kRadiusDrift * r0)
          << to_string(mode) << " eps' " << p.epsilon_prime;
    }
  }

  auto damp = qec_run(FailureMode::AmplitudeDamping);
  const double generators = static_cast<double>(build_code("three_qubit_bitflip").generators.size());
  std::printf("  amplitude_damping eps'=1 sigma1 %.4f vs |G| %.0f\n",
              damp.back().singular_radius.mean, generators);
  EXPECT_GT(damp.back().singular_radius.mean, generators);
}

TEST_F(Acceptance, GapLaws) {
  std::vector<double> kappas(kKappaGrid.begin(), kKappaGrid.end());
  for (auto family : kFamilies) {
    auto points = gap_experiment(gap_config(family, false));
    std::vector<double> radius;
    for (const auto& p : points) {
      radius.push_back(p.nilpotent_radius.mean);
      std::printf("  %s kappa=%zu gamma_lambda %.4f gamma_sigma %.4f nilpotent %.4f\n",
                  std::string(to_string(family)).c_str(), p.kappa, p.gamma_lambda.mean,
                  p.gamma_sigma.mean, p.nilpotent_radius.mean);
      if (family == ChannelFamily::Pauli) {
        EXPECT_LE(p.max_gap_difference, kGapEqualityTol) << "kappa " << p.kappa;
      }
      if (family == ChannelFamily::Kraus) {
        EXPECT_LE(p.gamma_lambda.mean, p.gamma_sigma.mean) << "Kraus kappa " << p.kappa;
      }
    }
    if (family == ChannelFamily::Kraus) {
      const double slope = loglog_slope(kappas, radius);
      std::printf("  Kraus nilpotent-radius log-log slope %.3f\n", slope);
      EXPECT_GE(slope, kSlopeLow);
      EXPECT_LE(slope, kSlopeHigh);
    }
  }
}

}  // namespace
}  // namespace chanspec

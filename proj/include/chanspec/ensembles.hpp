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

// Random channel ensembles: spectral gaps, decay of the non-peripheral
// spectrum with kappa, and the two-sided bound on sigma_2.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chanspec/channels.hpp"
#include "chanspec/chernoff.hpp"
#include "chanspec/spectral.hpp"

namespace chanspec {

/// Radius minus the largest value outside the radius cluster (values within
/// `tol` of the first). Empty when every value sits in that cluster.
std::optional<double> modulus_gap(std::span<const double> descending, double tol);

struct SpectralGaps {
  std::optional<double> gamma_lambda;
  std::optional<double> gamma_sigma;
};

SpectralGaps spectral_gap(const SpectralReport& report, double tol = kClusterTolerance);

/// Mean and sample standard deviation of the values that were defined.
struct Summary {
  double mean = 0.0;
  double std = 0.0;
  std::size_t count = 0;
};

Summary summarize(std::span<const double> values);

/// Random channel of the family on a d-dimensional system. The Pauli family
/// needs d to be a power of two.
KrausChannel sample_family_channel(ChannelFamily family, std::size_t d, std::size_t kappa,
                                   Rng& rng);

struct GapExperimentConfig {
  ChannelFamily family = ChannelFamily::Kraus;
  std::vector<std::size_t> kappa_grid = {10, 20, 40, 80, 160, 320};
  std::size_t dimension = 8;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  /// Singular value order bounded by the sandwich.
  std::size_t target_index = 2;
  double theta = 1.0;
  double cluster_tolerance = kClusterTolerance;
  double peripheral_tolerance = 1e-6;
  bool sandwich = true;
  std::size_t jobs = 1;
};

struct GapReport {
  ChannelFamily family = ChannelFamily::Kraus;
  std::size_t kappa = 0;
  std::size_t trials = 0;
  Summary gamma_lambda;
  Summary gamma_sigma;
  /// Trial-wise gamma_lambda - gamma_sigma; for the Pauli family this is zero.
  double max_gap_difference = 0.0;
  Summary sigma1;
  Summary sigma2;
  Summary lambda2_modulus;
  /// Spectral radius of S (I - T_p).
  Summary nilpotent_radius;
  Summary peripheral_rank;
  /// Trials whose sigma_1 exceeds 1 + tol (Kraus normalization round-off).
  std::size_t sigma_above_one = 0;
  double max_sigma_excess = 0.0;
  std::optional<ChernoffReport> upper;
  std::optional<ChernoffReport> lower;
};

std::vector<GapReport> gap_experiment(const GapExperimentConfig& config);

/// Least-squares slope of log y against log x. Needs two or more positive
/// pairs with distinct x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace chanspec

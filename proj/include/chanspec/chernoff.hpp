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

// Matrix-Chernoff estimates for the ordered singular values of an ensemble
// of superoperators, evaluated on Hermitian dilations.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "chanspec/rng.hpp"
#include "chanspec/spectral.hpp"

namespace chanspec {

/// l_i = #{j : sigma_j > sigma_i + tol} for 1-based i. Throws PreconditionError
/// if the list is not descending (up to `tol`).
std::size_t multiplicity_offset(std::span<const double> descending, std::size_t i,
                                double tol = kClusterTolerance);
/// l_1, ..., l_n in one pass.
std::vector<std::size_t> multiplicity_offsets(std::span<const double> descending,
                                              double tol = kClusterTolerance);

/// lambda_max of the ensemble-averaged positive and negative parts.
struct FluctuationTerms {
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  /// Largest lambda_max over all per-sample parts: an empirical uniform bound.
  double part_bound = 0.0;

  double mu() const { return mu_plus + mu_minus; }
};

FluctuationTerms chernoff_terms(std::span<const ComplexMatrix> ensemble, std::size_t jobs = 1);
double chernoff_mu(std::span<const ComplexMatrix> ensemble);

struct ChernoffInputs {
  double theta = 1.0;
  double L = 0.0;
  std::size_t effective_dimension = 1;
  std::size_t target_index = 1;
  std::optional<SubmatrixStrategy> submatrix_strategy;
};

/// Throws RangeError unless theta > 0, L >= 0 and D >= 1.
void validate(const ChernoffInputs& inputs);

/// (2L / theta) log D.
double log_term(const ChernoffInputs& inputs);
/// mu (e^theta - 1) / theta + (2L / theta) log D.
double expectation_bound(double mu, const ChernoffInputs& inputs);
/// min(1, d' (e^eps / (1 + eps)^(1 + eps))^(mu_max / L)). L must be positive.
double tail_bound(double mu_max, double L, double d_prime, double epsilon);

enum class BoundMode {
  /// Delete l_i rows and columns: lambda_max of the submatrix bounds sigma_i.
  Upper,
  /// Delete one further random row and column.
  Lower,
};

enum class MultiplicitySource { MeanSpectrum, PerSample };

struct PipelineOptions {
  /// 1-based order index i of the singular value being bounded.
  std::size_t target_index = 1;
  double theta = 1.0;
  /// Uniform eigenvalue bound; estimated from the ensemble when empty.
  std::optional<double> L;
  SubmatrixStrategy strategy = SubmatrixStrategy::Deterministic;
  BoundMode mode = BoundMode::Upper;
  /// Replace each sample S by S (I - T_p) and shift the target index down by
  /// rank(T_p), never below 1.
  bool peripheral_projection = false;
  double peripheral_tolerance = 1e-6;
  MultiplicitySource multiplicity = MultiplicitySource::MeanSpectrum;
  double cluster_tolerance = kClusterTolerance;
  double tail_epsilon = 1.0;
  std::size_t jobs = 1;
};

struct ChernoffReport {
  double mu = 0.0;
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  double theta = 1.0;
  double L = 0.0;
  bool L_estimated = false;
  /// Order of the truncated dilation, D_i.
  std::size_t effective_dimension = 0;
  /// Rows and columns deleted per sample (first sample when they vary).
  std::size_t deleted = 0;
  /// Target index after the peripheral shift (first sample).
  std::size_t shifted_index = 0;
  std::size_t peripheral_rank = 0;
  double log_term = 0.0;
  double expectation_bound = 0.0;
  double tail_epsilon = 1.0;
  /// Empty when L = 0, where the tail exponent is undefined.
  std::optional<double> tail_bound;
  /// Direct SVD statistics of sigma_i over the (unprojected) ensemble.
  double sample_mean_sigma_i = 0.0;
  double sample_std = 0.0;
  std::size_t ensemble_size = 0;
};

ChernoffReport singular_bound_pipeline(std::span<const ComplexMatrix> ensemble,
                                       const PipelineOptions& options, const Rng& rng);

}  // namespace chanspec

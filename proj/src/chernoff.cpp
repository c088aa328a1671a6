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

#include "chanspec/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chanspec/errors.hpp"
#include "chanspec/parallel.hpp"
#include "chanspec/peripheral.hpp"

namespace chanspec {
namespace {

void check_descending(std::span<const double> s, double tol) {
  for (std::size_t j = 1; j < s.size(); ++j) {
    if (s[j] > s[j - 1] + tol) throw PreconditionError("multiplicity_offset: spectrum not sorted");
  }
}

double lambda_max(const ComplexMatrix& h) { return hermitian_eigenvalues(h).front(); }

struct SampleParts {
  ComplexMatrix positive;
  ComplexMatrix negative;
  double bound = 0.0;
};

SampleParts split_sample(const ComplexMatrix& h) {
  PsdSplit parts = split_psd(h);
  SampleParts out;
  out.bound = std::max(lambda_max(parts.positive), lambda_max(parts.negative));
  out.positive = std::move(parts.positive);
  out.negative = std::move(parts.negative);
  return out;
}

FluctuationTerms reduce(std::vector<SampleParts>& parts) {
  FluctuationTerms t;
  ComplexMatrix pos = std::move(parts.front().positive);
  ComplexMatrix neg = std::move(parts.front().negative);
  t.part_bound = parts.front().bound;
  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (parts[k].positive.rows() != pos.rows()) {
      throw DimensionError("chernoff: ensemble members have different orders");
    }
    pos += parts[k].positive;
    neg += parts[k].negative;
    t.part_bound = std::max(t.part_bound, parts[k].bound);
  }
  const double inv = 1.0 / static_cast<double>(parts.size());
  t.mu_plus = std::max(0.0, lambda_max(pos * inv));
  t.mu_minus = std::max(0.0, lambda_max(neg * inv));
  return t;
}

}  // namespace

std::size_t multiplicity_offset(std::span<const double> descending, std::size_t i, double tol) {
  if (i == 0 || i > descending.size()) {
    throw RangeError("multiplicity_offset: index " + std::to_string(i) + " outside 1.." +
                     std::to_string(descending.size()));
  }
  check_descending(descending, tol);
  const double target = descending[i - 1];
  return static_cast<std::size_t>(std::count_if(descending.begin(), descending.end(),
                                                [&](double s) { return s > target + tol; }));
}

std::vector<std::size_t> multiplicity_offsets(std::span<const double> descending, double tol) {
  check_descending(descending, tol);
  std::vector<std::size_t> out(descending.size());
  for (std::size_t i = 0; i < descending.size(); ++i) {
    out[i] = multiplicity_offset(descending, i + 1, tol);
  }
  return out;
}

FluctuationTerms chernoff_terms(std::span<const ComplexMatrix> ensemble, std::size_t jobs) {
  if (ensemble.empty()) throw DimensionError("chernoff_mu: empty ensemble");
  for (const auto& m : ensemble) {
    require_square(m, "chernoff_mu");
    if (m.rows() != ensemble.front().rows()) {
      throw DimensionError("chernoff_mu: ensemble members have different orders");
    }
    if (!is_hermitian(m)) throw PreconditionError("chernoff_mu: ensemble member is not Hermitian");
  }
  std::vector<SampleParts> parts(ensemble.size());
  parallel_for(ensemble.size(), jobs, [&](std::size_t k) { parts[k] = split_sample(ensemble[k]); });
  return reduce(parts);
}

double chernoff_mu(std::span<const ComplexMatrix> ensemble) { return chernoff_terms(ensemble).mu(); }

void validate(const ChernoffInputs& inputs) {
  if (!(inputs.theta > 0.0)) throw RangeError("Chernoff theta must be positive");
  if (!(inputs.L >= 0.0)) throw RangeError("Chernoff L must be nonnegative");
  if (inputs.effective_dimension < 1) throw RangeError("Chernoff D must be at least 1");
}

double log_term(const ChernoffInputs& inputs) {
  validate(inputs);
  return 2.0 * inputs.L / inputs.theta * std::log(static_cast<double>(inputs.effective_dimension));
}

double expectation_bound(double mu, const ChernoffInputs& inputs) {
  validate(inputs);
  return mu * std::expm1(inputs.theta) / inputs.theta + log_term(inputs);
}

double tail_bound(double mu_max, double L, double d_prime, double epsilon) {
  if (!(L > 0.0)) throw PreconditionError("tail_bound: L must be positive");
  if (!(epsilon >= 0.0)) throw RangeError("tail_bound: epsilon must be nonnegative");
  if (!(mu_max >= 0.0)) throw RangeError("tail_bound: mu_max must be nonnegative");
  const double exponent = (mu_max / L) * (epsilon - (1.0 + epsilon) * std::log1p(epsilon));
  return std::min(1.0, d_prime * std::exp(exponent));
}

ChernoffReport singular_bound_pipeline(std::span<const ComplexMatrix> ensemble,
                                       const PipelineOptions& options, const Rng& rng) {
  if (ensemble.empty()) throw DimensionError("singular_bound_pipeline: empty ensemble");
  const Eigen::Index order = ensemble.front().rows();
  for (const auto& m : ensemble) {
    require_square(m, "singular_bound_pipeline");
    if (m.rows() != order) {
      throw DimensionError("singular_bound_pipeline: ensemble members have different orders");
    }
  }
  const std::size_t i = options.target_index;
  if (i == 0 || i > static_cast<std::size_t>(order)) {
    throw RangeError("singular_bound_pipeline: target index outside 1..order");
  }
  const std::size_t count = ensemble.size();

  // Pass 1: direct spectra and the matrices the bound is evaluated on.
  struct Sample {
    double sigma_i = 0.0;
    ComplexMatrix work;
    std::vector<double> work_sigma;
    std::size_t shifted = 0;
    std::size_t rank = 0;
  };
  std::vector<Sample> samples(count);
  parallel_for(count, options.jobs, [&](std::size_t k) {
    Sample& s = samples[k];
    const ComplexMatrix& m = ensemble[k];
    std::vector<double> sigma = singular_values(m);
    s.sigma_i = sigma[i - 1];
    if (options.peripheral_projection) {
      PeripheralOptions popt;
      popt.tolerance = options.peripheral_tolerance;
      PeripheralProjection proj = peripheral_projector(m, popt);
      s.rank = proj.rank();
      s.work = std::move(proj.nilpotent_part);
      s.work_sigma = singular_values(s.work);
    } else {
      s.work = m;
      s.work_sigma = std::move(sigma);
    }
    s.shifted = i > s.rank ? i - s.rank : 1;
  });

  std::vector<double> mean_sigma(static_cast<std::size_t>(order), 0.0);
  for (const auto& s : samples) {
    for (std::size_t j = 0; j < mean_sigma.size(); ++j) mean_sigma[j] += s.work_sigma[j];
  }
  for (double& v : mean_sigma) v /= static_cast<double>(count);

  // Pass 2: dilate, truncate, split.
  std::vector<SampleParts> parts(count);
  std::vector<std::size_t> deleted(count);
  parallel_for(count, options.jobs, [&](std::size_t k) {
    Sample& s = samples[k];
    const std::size_t l = options.multiplicity == MultiplicitySource::MeanSpectrum
                              ? multiplicity_offset(mean_sigma, s.shifted, options.cluster_tolerance)
                              : multiplicity_offset(s.work_sigma, s.shifted, options.cluster_tolerance);
    HermitianDilation chi = dilate(s.work);
    s.work.resize(0, 0);
    const std::size_t dim = chi.order();
    Rng stream = rng.derive(k);
    std::vector<std::size_t> removed = deleted_indices(dim, l, options.strategy, stream);
    if (options.mode == BoundMode::Lower) {
      if (l + 1 >= dim) throw RangeError("singular_bound_pipeline: nothing left to bound");
      std::vector<bool> gone(dim, false);
      for (std::size_t r : removed) gone[r] = true;
      std::size_t pick = stream.index(dim - l);
      for (std::size_t r = 0; r < dim; ++r) {
        if (gone[r]) continue;
        if (pick-- == 0) {
          removed.push_back(r);
          break;
        }
      }
      std::sort(removed.begin(), removed.end());
    }
    deleted[k] = removed.size();
    parts[k] = split_sample(remove_rows_and_columns(chi.matrix(), removed));
  });
  for (std::size_t k = 1; k < count; ++k) {
    if (deleted[k] != deleted[0]) {
      throw PreconditionError(
          "singular_bound_pipeline: samples disagree on the truncation size; use the "
          "mean-spectrum multiplicity source");
    }
  }

  FluctuationTerms terms = reduce(parts);
  ChernoffReport r;
  r.mu_plus = terms.mu_plus;
  r.mu_minus = terms.mu_minus;
  r.mu = terms.mu();
  r.theta = options.theta;
  r.L_estimated = !options.L.has_value();
  r.L = options.L.value_or(terms.part_bound);
  r.deleted = deleted[0];
  r.shifted_index = samples[0].shifted;
  r.peripheral_rank = samples[0].rank;
  r.effective_dimension = 2 * static_cast<std::size_t>(order) - deleted[0];

  ChernoffInputs inputs;
  inputs.theta = options.theta;
  inputs.L = r.L;
  inputs.effective_dimension = r.effective_dimension;
  inputs.target_index = i;
  inputs.submatrix_strategy = options.strategy;
  r.log_term = log_term(inputs);
  r.expectation_bound = expectation_bound(r.mu, inputs);
  r.tail_epsilon = options.tail_epsilon;
  if (r.L > 0.0) {
    r.tail_bound = tail_bound(std::max(r.mu_plus, r.mu_minus), r.L,
                              static_cast<double>(r.effective_dimension), options.tail_epsilon);
  }

  double sum = 0.0;
  for (const auto& s : samples) sum += s.sigma_i;
  r.sample_mean_sigma_i = sum / static_cast<double>(count);
  double ss = 0.0;
  for (const auto& s : samples) ss += (s.sigma_i - r.sample_mean_sigma_i) * (s.sigma_i - r.sample_mean_sigma_i);
  r.sample_std = count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
  r.ensemble_size = count;
  return r;
}

}  // namespace chanspec

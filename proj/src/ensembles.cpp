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

#include <algorithm>
#include <bit>
#include <cmath>

#include "chanspec/errors.hpp"
#include "chanspec/parallel.hpp"
#include "chanspec/peripheral.hpp"

namespace chanspec {

std::optional<double> modulus_gap(std::span<const double> descending, double tol) {
  if (descending.empty()) return std::nullopt;
  const double radius = descending.front();
  for (double v : descending) {
    if (v < radius - tol) return radius - v;
  }
  return std::nullopt;
}

SpectralGaps spectral_gap(const SpectralReport& report, double tol) {
  std::vector<double> moduli;
  moduli.reserve(report.eigenvalues.size());
  for (const auto& z : report.eigenvalues) moduli.push_back(std::abs(z));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  return {modulus_gap(moduli, tol), modulus_gap(report.singular_values, tol)};
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

KrausChannel sample_family_channel(ChannelFamily family, std::size_t d, std::size_t kappa,
                                   Rng& rng) {
  switch (family) {
    case ChannelFamily::Kraus: return random_kraus_channel(d, kappa, rng);
    case ChannelFamily::Unitary: return random_unitary_channel(d, kappa, rng);
    case ChannelFamily::Pauli:
      if (!std::has_single_bit(d) || d < 2) {
        throw DimensionError("Pauli family needs a power-of-two dimension");
      }
      return random_pauli_channel(static_cast<std::size_t>(std::countr_zero(d)), kappa, rng);
  }
  throw PreconditionError("unknown channel family");
}

std::vector<GapReport> gap_experiment(const GapExperimentConfig& config) {
  if (config.trials == 0) throw RangeError("gap_experiment: trials must be at least 1");
  if (config.kappa_grid.empty()) throw RangeError("gap_experiment: empty kappa grid");
  const Rng root(config.seed);
  std::vector<GapReport> reports;
  for (std::size_t ki = 0; ki < config.kappa_grid.size(); ++ki) {
    const std::size_t kappa = config.kappa_grid[ki];
    const Rng base = root.derive(ki);

    struct Trial {
      ComplexMatrix superop;
      std::optional<double> gamma_lambda, gamma_sigma;
      double sigma1 = 0, sigma2 = 0, lambda2 = 0, nilpotent = 0;
      std::size_t rank = 0;
    };
    std::vector<Trial> trials(config.trials);
    parallel_for(config.trials, config.jobs, [&](std::size_t t) {
      Rng stream = base.derive(t);
      Trial& tr = trials[t];
      tr.superop = superoperator(sample_family_channel(config.family, config.dimension, kappa,
                                                       stream))
                       .matrix();
      SpectralReport rep = spectral_report(tr.superop, config.cluster_tolerance);
      SpectralGaps gaps = spectral_gap(rep, config.cluster_tolerance);
      tr.gamma_lambda = gaps.gamma_lambda;
      tr.gamma_sigma = gaps.gamma_sigma;
      tr.sigma1 = rep.singular_values[0];
      tr.sigma2 = rep.singular_values.size() > 1 ? rep.singular_values[1] : 0.0;
      tr.lambda2 = rep.eigenvalues.size() > 1 ? std::abs(rep.eigenvalues[1]) : 0.0;
      PeripheralOptions popt;
      popt.tolerance = config.peripheral_tolerance;
      PeripheralProjection proj = peripheral_projector(tr.superop, popt);
      tr.rank = proj.rank();
      tr.nilpotent = std::abs(eigenvalues(proj.nilpotent_part).front());
    });

    GapReport r;
    r.family = config.family;
    r.kappa = kappa;
    r.trials = config.trials;
    std::vector<double> gl, gs, s1, s2, l2, nil, rk;
    for (const auto& tr : trials) {
      if (tr.gamma_lambda) gl.push_back(*tr.gamma_lambda);
      if (tr.gamma_sigma) gs.push_back(*tr.gamma_sigma);
      if (tr.gamma_lambda && tr.gamma_sigma) {
        r.max_gap_difference =
            std::max(r.max_gap_difference, std::abs(*tr.gamma_lambda - *tr.gamma_sigma));
      }
      s1.push_back(tr.sigma1);
      s2.push_back(tr.sigma2);
      l2.push_back(tr.lambda2);
      nil.push_back(tr.nilpotent);
      rk.push_back(static_cast<double>(tr.rank));
      if (tr.sigma1 > 1.0 + config.cluster_tolerance) {
        ++r.sigma_above_one;
        r.max_sigma_excess = std::max(r.max_sigma_excess, tr.sigma1 - 1.0);
      }
    }
    r.gamma_lambda = summarize(gl);
    r.gamma_sigma = summarize(gs);
    r.sigma1 = summarize(s1);
    r.sigma2 = summarize(s2);
    r.lambda2_modulus = summarize(l2);
    r.nilpotent_radius = summarize(nil);
    r.peripheral_rank = summarize(rk);

    if (config.sandwich) {
      std::vector<ComplexMatrix> ensemble;
      ensemble.reserve(trials.size());
      for (auto& tr : trials) ensemble.push_back(std::move(tr.superop));
      PipelineOptions opt;
      opt.target_index = config.target_index;
      opt.theta = config.theta;
      opt.peripheral_projection = true;
      opt.peripheral_tolerance = config.peripheral_tolerance;
      opt.cluster_tolerance = config.cluster_tolerance;
      opt.jobs = config.jobs;
      opt.mode = BoundMode::Upper;
      r.upper = singular_bound_pipeline(ensemble, opt, base.derive(config.trials));
      opt.mode = BoundMode::Lower;
      opt.strategy = SubmatrixStrategy::Random;
      r.lower = singular_bound_pipeline(ensemble, opt, base.derive(config.trials + 1));
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("loglog_slope: length mismatch");
  if (x.size() < 2) throw RangeError("loglog_slope: need at least two points");
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0 && y[k] > 0)) throw RangeError("loglog_slope: values must be positive");
    mx += std::log(x[k]);
    my += std::log(y[k]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = std::log(x[k]) - mx;
    sxy += dx * (std::log(y[k]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw RangeError("loglog_slope: x values must differ");
  return sxy / sxx;
}

}  // namespace chanspec

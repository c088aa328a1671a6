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

// Stabilizer-code recovery channels and repeated noisy correction rounds.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "chanspec/channels.hpp"
#include "chanspec/chernoff.hpp"
#include "chanspec/ensembles.hpp"
#include "chanspec/pauli.hpp"

namespace chanspec {

using Syndrome = std::vector<std::uint8_t>;

struct StabilizerCode {
  std::string name;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<PauliString> generators;
  /// Recovery P_m for syndrome syndromes[m]; recoveries[0] is the identity.
  std::vector<PauliString> recoveries;
  std::vector<Syndrome> syndromes;

  std::size_t num_syndromes() const { return recoveries.size(); }
  std::size_t dimension() const { return std::size_t{1} << n; }
};

/// Generic code: generators and the correctable Pauli set (identity included
/// or added). Syndromes are derived from anticommutation with the generators.
struct CodeSpec {
  std::string name;
  std::vector<std::string> generators;
  std::vector<std::string> correctable;
};

/// "three_qubit_bitflip" or "five_qubit".
StabilizerCode build_code(const std::string& name);
StabilizerCode build_code(const CodeSpec& spec);
std::vector<std::string> builtin_code_names();

/// nu(i) = 1 iff p anticommutes with generator i.
Syndrome syndrome_of(const std::vector<PauliString>& generators, const PauliString& p);

struct SyndromeProjector {
  ComplexMatrix matrix;
  Syndrome syndrome;
};

/// prod_i (I + (-1)^{nu(i)} S_i) / 2.
SyndromeProjector syndrome_projector(const StabilizerCode& code, const Syndrome& syndrome);

/// Kraus set {P_m Pi_m}.
KrausChannel recovery_channel(const StabilizerCode& code);
Superoperator recovery_superoperator(const StabilizerCode& code);

struct SpectrumPrediction {
  std::size_t unit_eigen_multiplicity = 0;  // 4^k
  std::size_t zero_eigen_multiplicity = 0;  // 4^n - 4^k
  std::size_t nonzero_singular_multiplicity = 0;
  /// 2^{(n-k)/2}.
  double theorem_singular_value = 0.0;
  /// Number of generators |G| = n - k.
  double generator_count_value = 0.0;
};

SpectrumPrediction perfect_spectrum_prediction(const StabilizerCode& code);

enum class WellBehavedNoise {
  /// Uniform mixture over the code's recovery set, identity included.
  CorrectableMixture,
  /// Uniform mixture over the non-identity recoveries only.
  ErrorsOnly,
};

KrausChannel well_behaved_noise(const StabilizerCode& code,
                                WellBehavedNoise kind = WellBehavedNoise::CorrectableMixture);

enum class FailureMode { None, ExtraBitflip, FullPauli, AmplitudeDamping };

std::string to_string(FailureMode mode);
FailureMode parse_failure_mode(const std::string& name);

/// The cached superoperators of one correction round.
class QecRound {
 public:
  QecRound(const StabilizerCode& code, FailureMode failure, double damping_strength = 1.0,
           WellBehavedNoise noise = WellBehavedNoise::CorrectableMixture);

  const ComplexMatrix& recovery() const { return recovery_; }
  const ComplexMatrix& noise() const { return noise_; }
  const ComplexMatrix& failure() const { return failure_; }
  /// recovery * [failure] * noise.
  const ComplexMatrix& round(bool with_failure) const {
    return with_failure ? failed_round_ : clean_round_;
  }
  std::size_t dimension() const { return dimension_; }

 private:
  std::size_t dimension_;
  ComplexMatrix recovery_, noise_, failure_, clean_round_, failed_round_;
};

/// One round; the failure channel is inserted with probability epsilon_prime.
Superoperator noisy_round(const QecRound& round, double epsilon_prime, Rng& rng);

enum class FailureInjection { PerRound, PerTrial };

struct QecExperimentConfig {
  std::string code = "three_qubit_bitflip";
  FailureMode failure = FailureMode::FullPauli;
  std::size_t rounds = 25;
  std::vector<double> epsilon_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::size_t ensemble_size = 50;
  std::uint64_t seed = 0;
  double damping_strength = 1.0;
  FailureInjection injection = FailureInjection::PerRound;
  WellBehavedNoise noise = WellBehavedNoise::CorrectableMixture;
  double cluster_tolerance = kClusterTolerance;
  std::size_t jobs = 1;
};

void validate(const QecExperimentConfig& config);

struct QecPoint {
  double epsilon_prime = 0.0;
  Summary spectral_radius;
  Summary singular_radius;
  /// Per-trial counts of |lambda| ~ 1, sigma ~ 1 and sigma ~ 2^{(n-k)/2}.
  Summary unit_eigen_count;
  Summary unit_singular_count;
  Summary code_singular_count;
  /// Fraction of trials whose sigma_1 exceeds the code value by more than tol.
  double radius_exceeds_code_fraction = 0.0;
  ChernoffReport chernoff;
};

std::vector<QecPoint> qec_experiment(const QecExperimentConfig& config);

enum class TableNoise { None, CorrectablePaulis, FullPauli, AmplitudeDamping };

std::string to_string(TableNoise noise);
TableNoise parse_table_noise(const std::string& name);

/// Channel of a table row; `strength` mixes the Pauli noises with the
/// identity and is the damping strength otherwise.
Superoperator table_noise_superoperator(const StabilizerCode& code, TableNoise noise,
                                        double strength);

/// Singular values of recovery * noise (with_code) or of the noise alone.
std::vector<double> table_singular_values(const StabilizerCode& code, TableNoise noise,
                                          double strength, bool with_code);

struct MultiplicityRow {
  std::string value;  // two decimals
  std::size_t count;
};

/// Clusters by `tol`, formats with two decimals, merges equal labels and
/// sorts by value ascending.
std::vector<MultiplicityRow> multiplicity_listing(std::span<const double> descending,
                                                  double tol = kClusterTolerance);
std::string format_listing(const std::vector<MultiplicityRow>& rows);

}  // namespace chanspec

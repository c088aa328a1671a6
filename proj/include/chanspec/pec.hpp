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

// Probabilistic error cancellation on dense superoperators.
//
// A layer is noise * gate * correction: P_j U P_i with P_j drawn from the
// true Pauli noise and P_i from the quasi-probability inverse of the learned
// noise, weighted by gamma * sgn(c_inv_i).

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chanspec/channels.hpp"
#include "chanspec/chernoff.hpp"
#include "chanspec/ensembles.hpp"
#include "chanspec/pauli.hpp"
#include "chanspec/rng.hpp"

namespace chanspec {

/// Pauli channel as a probability vector over the 4^n strings (Pauli index
/// order).
class PauliNoiseModel {
 public:
  PauliNoiseModel(std::size_t num_qubits, const std::vector<std::pair<PauliString, double>>& terms);
  static PauliNoiseModel from_dense(std::size_t num_qubits, std::vector<double> probabilities);
  static PauliNoiseModel noiseless(std::size_t num_qubits);

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<double>& probabilities() const { return probabilities_; }
  double probability(const PauliString& p) const { return probabilities_.at(p.index()); }
  /// (index, probability) for every nonzero entry, ascending index.
  std::vector<std::pair<std::size_t, double>> support() const;
  KrausChannel channel() const;

 private:
  PauliNoiseModel(std::size_t num_qubits, std::vector<double> probabilities, bool);

  std::size_t num_qubits_;
  std::vector<double> probabilities_;
};

/// Pauli fidelities f_b = sum_j c_j (-1)^<b, j>.
std::vector<double> pauli_fidelities(const PauliNoiseModel& model);

struct MitigationDistribution {
  std::size_t num_qubits = 0;
  /// Signed quasi-probabilities c_inv, dense in Pauli index order.
  std::vector<double> coefficients;
  double gamma = 1.0;

  /// sum_i c_inv_i super(P_i).
  Superoperator superoperator() const;
};

/// Exact inverse via the Pauli fidelities; throws NumericalError when some
/// |f_b| <= 1e-12.
MitigationDistribution invert_pauli_noise(const PauliNoiseModel& model);

enum class PerturbationSupport {
  /// Perturb only the Paulis the model already assigns weight to.
  Support,
  /// Perturb every one of the 4^n coefficients.
  Full,
};

/// c_j <- max(0, c_j + epsilon u_j), u_j ~ U[-1, 1], then renormalized.
PauliNoiseModel perturb_noise(const PauliNoiseModel& model, double epsilon, Rng& rng,
                              PerturbationSupport support = PerturbationSupport::Support);

/// Model of U^dagger N U for a Clifford U: the noise seen from before the
/// gate. Throws PreconditionError if U does not map Paulis to Paulis.
PauliNoiseModel conjugate_noise(const PauliNoiseModel& model, const ComplexMatrix& unitary);

struct Circuit {
  std::string name;
  std::size_t num_qubits = 0;
  /// One unitary per layer, applied in order.
  std::vector<ComplexMatrix> layers;
};

Circuit identity_circuit(std::size_t num_qubits, std::size_t layers);
/// Each layer is CX(0,1) CX(1,2) ... CX(n-2,n-1) (control first).
Circuit cx_ladder_circuit(std::size_t num_qubits, std::size_t layers);
Circuit named_circuit(const std::string& name, std::size_t num_qubits, std::size_t layers);
ComplexMatrix cx_gate(std::size_t num_qubits, std::size_t control, std::size_t target);

/// Circuit superoperator with no noise.
Superoperator ideal_superoperator(const Circuit& circuit);

enum class DampingMode {
  /// Amplitude damping of strength alpha on every qubit between layers.
  Channel,
  /// Between layers, each qubit fully decays with probability alpha.
  Bernoulli,
};

struct PecConfig {
  std::string circuit = "identity";
  std::size_t num_qubits = 3;
  std::size_t layers = 3;
  std::size_t kappa = 320;
  double epsilon = 0.0;
  double alpha = 0.0;
  std::size_t ensemble_size = 100;
  std::uint64_t seed = 0;
  /// True intrinsic noise; empty means I:0.9, X on qubit 0: 0.05, Z on qubit 0: 0.05.
  std::vector<std::pair<PauliString, double>> noise;
  DampingMode damping = DampingMode::Channel;
  PerturbationSupport support = PerturbationSupport::Support;
  std::size_t jobs = 1;
};

/// Validates ranges; throws RangeError / PreconditionError.
void validate(const PecConfig& config);
PauliNoiseModel default_noise(std::size_t num_qubits);
PauliNoiseModel true_noise(const PecConfig& config);

/// Draws mitigated circuit instances for one circuit, true noise, learned
/// noise and damping setting. Immutable after construction.
class PecSampler {
 public:
  PecSampler(Circuit circuit, const PauliNoiseModel& true_noise, const PauliNoiseModel& learned,
             double alpha, DampingMode damping);

  /// One instance prod_l [D] gamma_l sgn super(P_j U_l P_i).
  ComplexMatrix instance(Rng& rng) const;
  /// Mean of kappa instances; instance k uses rng.derive(k).
  ComplexMatrix estimator(std::size_t kappa, const Rng& rng) const;

  const std::vector<MitigationDistribution>& distributions() const { return inverse_; }
  std::size_t dimension() const { return dimension_; }

 private:
  struct Layer {
    ComplexMatrix unitary;
    std::vector<double> cdf;  // over |c_inv| / gamma
    double gamma;
  };

  std::size_t dimension_;
  std::size_t num_qubits_;
  std::vector<ComplexMatrix> paulis_;
  std::vector<double> noise_cdf_;
  std::vector<MitigationDistribution> inverse_;
  std::vector<Layer> layers_;
  double alpha_;
  DampingMode damping_;
  SparseComplexMatrix damping_channel_;
  std::vector<SparseComplexMatrix> decay_per_qubit_;
};

/// Estimator for one ensemble slot: learned noise is perturb_noise(true,
/// epsilon, rng.derive(0)) and instances use rng.derive(1).derive(k).
ComplexMatrix mitigated_estimator(const PecConfig& config, const Rng& rng);

enum class SweepVariable { Kappa, Epsilon, Alpha };

std::string to_string(SweepVariable variable);
SweepVariable parse_sweep_variable(const std::string& name);

struct MitigationPoint {
  SweepVariable variable = SweepVariable::Kappa;
  double value = 0.0;
  std::size_t kappa = 0;
  double epsilon = 0.0;
  double alpha = 0.0;
  Summary sigma1;
  Summary lambda1;
  /// Ensemble mean of |sigma_1 - 1|.
  double sigma1_deviation = 0.0;
  /// Largest ||Z Z^dagger - Z^dagger Z||_F / ||Z||_F^2 over the ensemble.
  double max_normality_defect = 0.0;
  /// Largest sorted-moduli vs singular-value mismatch over the ensemble.
  double max_spectrum_mismatch = 0.0;
  Summary gamma;
  ChernoffReport chernoff;
};

/// Ensemble slot e uses Rng(seed).derive(e) at every sweep point, so points
/// differ only through the swept parameter.
std::vector<MitigationPoint> mitigation_experiment(const PecConfig& base, SweepVariable variable,
                                                   const std::vector<double>& values);

}  // namespace chanspec

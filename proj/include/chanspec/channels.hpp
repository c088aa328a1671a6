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

// Kraus channels, their superoperators and the standard channel ensembles.
//
// Vectorization is column-stacking throughout: vec(A X B) = (B^T (x) A) vec(X),
// so a Kraus operator A contributes conj(A) (x) A to the superoperator.

#pragma once

#include <Eigen/SparseCore>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "chanspec/pauli.hpp"
#include "chanspec/rng.hpp"
#include "chanspec/spectral.hpp"

namespace chanspec {

/// Largest system dimension d for which superoperators (order d^2) are built.
inline constexpr std::size_t kMaxSystemDimension = 32;
/// Tolerance on ||sum A^dagger A - I||_F for the trace-preserving flag.
inline constexpr double kTraceTolerance = 1e-8;

using SparseComplexMatrix = Eigen::SparseMatrix<Complex>;

class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> ops);

  const std::vector<ComplexMatrix>& operators() const { return ops_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return ops_.size(); }
  bool trace_preserving() const { return trace_preserving_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const;

 private:
  std::vector<ComplexMatrix> ops_;
  std::size_t dimension_;
  bool trace_preserving_;
};

class Superoperator {
 public:
  Superoperator(ComplexMatrix matrix, std::size_t system_dimension);

  static Superoperator identity(std::size_t system_dimension);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t order() const { return dimension_ * dimension_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const;

 private:
  ComplexMatrix matrix_;
  std::size_t dimension_;
};

ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v, std::size_t d);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// conj(A) (x) A.
ComplexMatrix single_superoperator(const ComplexMatrix& op);
Superoperator superoperator(const KrausChannel& channel);

/// Same matrix as superoperator(channel), stored sparsely. Intended for
/// channels whose Kraus operators have at most one nonzero per column.
SparseComplexMatrix sparse_superoperator(const KrausChannel& channel);

/// S1 * S2: `before` acts first.
Superoperator compose(const Superoperator& after, const Superoperator& before);

/// Channel on the first subsystem tensored with one on the second.
KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);
Superoperator tensor(const Superoperator& a, const Superoperator& b);

/// In place M <- (conj(K) (x) K) M, i.e. every column vec(X) becomes
/// vec(K X K^dagger). Costs O(d^5) instead of O(d^6) for the dense product.
void left_apply_conjugation(const ComplexMatrix& k, ComplexMatrix& m);

ComplexMatrix ginibre(std::size_t d, Rng& rng);
ComplexMatrix haar_unitary(std::size_t d, Rng& rng);

enum class ChannelFamily { Kraus, Unitary, Pauli };

std::string_view to_string(ChannelFamily family);
ChannelFamily parse_channel_family(std::string_view name);

/// kappa Ginibre operators right-multiplied by S^{-1/2}, S = sum A_i^dagger A_i.
KrausChannel random_kraus_channel(std::size_t d, std::size_t kappa, Rng& rng);
/// kappa Haar unitaries, each scaled by 1/sqrt(kappa).
KrausChannel random_unitary_channel(std::size_t d, std::size_t kappa, Rng& rng);
/// kappa Paulis drawn uniformly (with replacement) with Dirichlet(1,...,1)
/// probabilities.
KrausChannel random_pauli_channel(std::size_t num_qubits, std::size_t kappa, Rng& rng);

/// Dispatches on the family; d = 2^num_qubits for every family.
KrausChannel random_channel(ChannelFamily family, std::size_t num_qubits, std::size_t kappa,
                            Rng& rng);

/// n-fold tensor power of {[[1,0],[0,sqrt(1-alpha)]], [[0,sqrt(alpha)],[0,0]]}.
KrausChannel amplitude_damping_channel(std::size_t num_qubits, double alpha);

/// rho -> sum_j p_j P_j rho P_j. Probabilities must be nonnegative and sum
/// to one within 1e-12.
KrausChannel pauli_channel(const std::vector<std::pair<PauliString, double>>& terms);
/// Equal-weight mixture over the given strings.
KrausChannel uniform_pauli_channel(const std::vector<PauliString>& paulis);

}  // namespace chanspec

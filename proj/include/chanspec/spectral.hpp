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

// Dense spectral primitives shared by every other module: ordered spectra,
// Hermitian dilation, positive/negative splitting and principal submatrices.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "chanspec/rng.hpp"

namespace chanspec {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Max-entry deviation from conjugate symmetry accepted as Hermitian.
inline constexpr double kHermitianTolerance = 1e-10;
/// Absolute tolerance for grouping spectral values into multiplicity clusters.
inline constexpr double kClusterTolerance = 1e-6;

void require_finite(const ComplexMatrix& m, std::string_view context);
void require_square(const ComplexMatrix& m, std::string_view context);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTolerance);

/// Sorts by descending modulus; exact modulus ties go to the larger real part,
/// then the larger imaginary part.
void order_eigenvalues(std::vector<Complex>& values);

/// All eigenvalues with multiplicity, ordered as by order_eigenvalues.
std::vector<Complex> eigenvalues(const ComplexMatrix& m);

/// Eigenvalues of a Hermitian matrix, descending. The input is symmetrized
/// as (H + H^dagger) / 2 before the solve.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

/// min(rows, cols) singular values, descending.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Block matrix [[0, M], [M^dagger, 0]] of order 2d'. Its spectrum is
/// {+sigma(M), -sigma(M)}.
class HermitianDilation {
 public:
  explicit HermitianDilation(const ComplexMatrix& source);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t source_order() const { return source_order_; }
  std::size_t order() const { return 2 * source_order_; }

 private:
  ComplexMatrix matrix_;
  std::size_t source_order_;
};

HermitianDilation dilate(const ComplexMatrix& m);

/// H = positive - negative, both positive semidefinite with orthogonal
/// supports, from a full Hermitian eigendecomposition.
struct PsdSplit {
  ComplexMatrix positive;
  ComplexMatrix negative;
};

PsdSplit split_psd(const ComplexMatrix& h);

enum class SubmatrixStrategy { Deterministic, Random };

/// Indices (ascending) removed from a matrix of the given order. Random draws
/// exactly `delete_count` values from `rng`; Deterministic draws none.
std::vector<std::size_t> deleted_indices(std::size_t order, std::size_t delete_count,
                                         SubmatrixStrategy strategy, Rng& rng);

/// Removes the same rows and columns from a square matrix.
ComplexMatrix remove_rows_and_columns(const ComplexMatrix& h,
                                      std::span<const std::size_t> removed);

ComplexMatrix principal_submatrix(const ComplexMatrix& h, std::size_t delete_count,
                                  SubmatrixStrategy strategy, Rng& rng);

/// ||M M^dagger - M^dagger M||_F <= tol * ||M||_F^2.
bool is_normal(const ComplexMatrix& m, double tol = 1e-10);

/// S vec(I) = vec(I) for a superoperator of order d^2.
bool is_unital(const ComplexMatrix& superop, std::size_t d, double tol = 1e-8);

/// S^dagger vec(I) = vec(I), i.e. sum_i A_i^dagger A_i = I.
bool is_trace_preserving(const ComplexMatrix& superop, std::size_t d, double tol = 1e-8);

template <typename T>
struct Cluster {
  T value;  // mean of the members
  std::size_t count;
};

/// Groups a descending real list: a cluster holds every value within `tol`
/// of its first (largest) member.
std::vector<Cluster<double>> cluster_values(std::span<const double> descending, double tol);

/// Groups complex values in the given order: each value joins the first
/// cluster whose anchor lies within `tol`, otherwise it opens a new one.
std::vector<Cluster<Complex>> cluster_eigenvalues(std::span<const Complex> values, double tol);

struct SpectralReport {
  std::vector<Complex> eigenvalues;
  std::vector<double> singular_values;
  std::vector<Cluster<Complex>> eigenvalue_clusters;
  std::vector<Cluster<double>> singular_clusters;
  double cluster_tolerance = kClusterTolerance;

  double spectral_radius() const;
  double singular_radius() const;
  /// Number of eigenvalues with | |lambda| - modulus | <= tol.
  std::size_t count_moduli_near(double modulus, double tol) const;
  /// Number of singular values with |sigma - value| <= tol.
  std::size_t count_singular_near(double value, double tol) const;
};

SpectralReport spectral_report(const ComplexMatrix& m, double cluster_tol = kClusterTolerance);

}  // namespace chanspec

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

#include "chanspec/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "chanspec/errors.hpp"

namespace chanspec {

void require_finite(const ComplexMatrix& m, std::string_view context) {
  if (!m.allFinite()) throw NumericalError(std::string(context) + ": non-finite entry");
}

void require_square(const ComplexMatrix& m, std::string_view context) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(context) + ": expected a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void order_eigenvalues(std::vector<Complex>& values) {
  std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
    double ma = std::abs(a);
    double mb = std::abs(b);
    if (ma != mb) return ma > mb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

namespace {

// Fixed seed: the retry must not depend on caller state.
constexpr std::uint64_t kSimilaritySeed = 0x5eed;

std::vector<Complex> to_vector(const ComplexVector& ev) {
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

}  // namespace

std::vector<Complex> eigenvalues(const ComplexMatrix& m) {
  require_square(m, "eigenvalues");
  require_finite(m, "eigenvalues");
  std::vector<Complex> out;
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    // Superoperators of Pauli, damping and recovery channels are real, and
    // highly degenerate; the real Francis iteration handles them far better.
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m.real(), /*computeEigenvectors=*/false);
    if (solver.info() == Eigen::Success) out = to_vector(solver.eigenvalues());
  } else {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() == Eigen::Success) out = to_vector(solver.eigenvalues());
  }
  if (out.empty()) {
    // Stalled QR sweeps usually recover after a random unitary similarity.
    Rng rng(kSimilaritySeed);
    ComplexMatrix g(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
      for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = rng.complex_normal();
    }
    ComplexMatrix q = Eigen::HouseholderQR<ComplexMatrix>(g).householderQ();
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(q.adjoint() * m * q, false);
    if (solver.info() != Eigen::Success) throw NumericalError("eigenvalues: solver did not converge");
    out = to_vector(solver.eigenvalues());
  }
  order_eigenvalues(out);
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  require_square(h, "hermitian_eigenvalues");
  require_finite(h, "hermitian_eigenvalues");
  ComplexMatrix sym = (h + h.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eigenvalues: solver did not converge");
  }
  const auto& ev = solver.eigenvalues();  // ascending
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) throw DimensionError("singular_values: empty matrix");
  require_finite(m, "singular_values");
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  Eigen::VectorXd sv = svd.singularValues();
  if (svd.info() != Eigen::Success || !sv.allFinite()) {
    // Divide-and-conquer deflation breaks down on some heavily degenerate
    // superoperators (NaN output); one-sided Jacobi does not.
    Eigen::JacobiSVD<ComplexMatrix> jacobi(m);
    sv = jacobi.singularValues();
    if (!sv.allFinite()) throw NumericalError("singular_values: SVD did not converge");
  }
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

HermitianDilation::HermitianDilation(const ComplexMatrix& source)
    : source_order_(static_cast<std::size_t>(source.rows())) {
  require_square(source, "dilate");
  require_finite(source, "dilate");
  const Eigen::Index n = source.rows();
  matrix_ = ComplexMatrix::Zero(2 * n, 2 * n);
  matrix_.topRightCorner(n, n) = source;
  matrix_.bottomLeftCorner(n, n) = source.adjoint();
}

HermitianDilation dilate(const ComplexMatrix& m) { return HermitianDilation(m); }

PsdSplit split_psd(const ComplexMatrix& h) {
  require_square(h, "split_psd");
  require_finite(h, "split_psd");
  if (!is_hermitian(h)) throw PreconditionError("split_psd: input is not Hermitian");
  ComplexMatrix sym = (h + h.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("split_psd: solver did not converge");
  const Eigen::VectorXd& w = solver.eigenvalues();
  const ComplexMatrix& v = solver.eigenvectors();
  const Eigen::Index n = w.size();
  // Eigenvalues ascend, so the negative part is a leading block of columns.
  Eigen::Index first_positive = 0;
  while (first_positive < n && w(first_positive) < 0) ++first_positive;
  const Eigen::Index np = n - first_positive;

  PsdSplit out;
  if (np > 0) {
    auto vp = v.rightCols(np);
    ComplexMatrix scaled = vp * w.tail(np).cast<Complex>().asDiagonal();
    out.positive = scaled * vp.adjoint();
  } else {
    out.positive = ComplexMatrix::Zero(n, n);
  }
  if (first_positive > 0) {
    auto vn = v.leftCols(first_positive);
    ComplexMatrix scaled = vn * (-w.head(first_positive)).cast<Complex>().asDiagonal();
    out.negative = scaled * vn.adjoint();
  } else {
    out.negative = ComplexMatrix::Zero(n, n);
  }
  return out;
}

std::vector<std::size_t> deleted_indices(std::size_t order, std::size_t delete_count,
                                         SubmatrixStrategy strategy, Rng& rng) {
  if (delete_count >= order) {
    throw RangeError("principal_submatrix: delete_count " + std::to_string(delete_count) +
                     " must be below the order " + std::to_string(order));
  }
  std::vector<std::size_t> removed;
  if (strategy == SubmatrixStrategy::Deterministic) {
    removed.resize(delete_count);
    std::iota(removed.begin(), removed.end(), std::size_t{0});
    return removed;
  }
  // Partial Fisher-Yates: one draw per deleted index.
  std::vector<std::size_t> pool(order);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t k = 0; k < delete_count; ++k) {
    std::size_t j = k + rng.index(order - k);
    std::swap(pool[k], pool[j]);
  }
  removed.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(delete_count));
  std::sort(removed.begin(), removed.end());
  return removed;
}

ComplexMatrix remove_rows_and_columns(const ComplexMatrix& h,
                                      std::span<const std::size_t> removed) {
  require_square(h, "principal_submatrix");
  const auto n = static_cast<std::size_t>(h.rows());
  std::vector<bool> drop(n, false);
  for (std::size_t r : removed) {
    if (r >= n) throw RangeError("principal_submatrix: index out of range");
    drop[r] = true;
  }
  std::vector<Eigen::Index> keep;
  keep.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!drop[i]) keep.push_back(static_cast<Eigen::Index>(i));
  }
  return h(keep, keep);
}

ComplexMatrix principal_submatrix(const ComplexMatrix& h, std::size_t delete_count,
                                  SubmatrixStrategy strategy, Rng& rng) {
  require_square(h, "principal_submatrix");
  auto removed = deleted_indices(static_cast<std::size_t>(h.rows()), delete_count, strategy, rng);
  return remove_rows_and_columns(h, removed);
}

bool is_normal(const ComplexMatrix& m, double tol) {
  require_square(m, "is_normal");
  ComplexMatrix commutator = m * m.adjoint() - m.adjoint() * m;
  return commutator.norm() <= tol * m.squaredNorm();
}

namespace {

ComplexVector vec_identity(std::size_t d) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i * d + i)) = 1.0;
  return v;
}

void require_superop_shape(const ComplexMatrix& s, std::size_t d, std::string_view context) {
  require_square(s, context);
  if (static_cast<std::size_t>(s.rows()) != d * d) {
    throw DimensionError(std::string(context) + ": superoperator order is not d^2");
  }
}

}  // namespace

bool is_unital(const ComplexMatrix& superop, std::size_t d, double tol) {
  require_superop_shape(superop, d, "is_unital");
  ComplexVector id = vec_identity(d);
  return (superop * id - id).cwiseAbs().maxCoeff() <= tol;
}

bool is_trace_preserving(const ComplexMatrix& superop, std::size_t d, double tol) {
  require_superop_shape(superop, d, "is_trace_preserving");
  ComplexVector id = vec_identity(d);
  return (superop.adjoint() * id - id).cwiseAbs().maxCoeff() <= tol;
}

std::vector<Cluster<double>> cluster_values(std::span<const double> descending, double tol) {
  if (!(tol >= 0.0)) throw RangeError("cluster_values: tolerance must be nonnegative");
  for (double v : descending) {
    if (!std::isfinite(v)) throw NumericalError("cluster_values: non-finite value");
  }
  std::vector<Cluster<double>> out;
  std::size_t i = 0;
  while (i < descending.size()) {
    const double anchor = descending[i];
    double sum = 0.0;
    std::size_t j = i;
    while (j < descending.size() && std::abs(anchor - descending[j]) <= tol) sum += descending[j++];
    out.push_back({sum / static_cast<double>(j - i), j - i});
    i = j;
  }
  return out;
}

std::vector<Cluster<Complex>> cluster_eigenvalues(std::span<const Complex> values, double tol) {
  std::vector<Complex> anchors;
  std::vector<Complex> sums;
  std::vector<std::size_t> counts;
  for (const Complex& z : values) {
    std::size_t k = 0;
    while (k < anchors.size() && std::abs(anchors[k] - z) > tol) ++k;
    if (k == anchors.size()) {
      anchors.push_back(z);
      sums.push_back(0.0);
      counts.push_back(0);
    }
    sums[k] += z;
    ++counts[k];
  }
  std::vector<Cluster<Complex>> out;
  out.reserve(anchors.size());
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    out.push_back({sums[k] / static_cast<double>(counts[k]), counts[k]});
  }
  return out;
}

double SpectralReport::spectral_radius() const {
  return eigenvalues.empty() ? 0.0 : std::abs(eigenvalues.front());
}

double SpectralReport::singular_radius() const {
  return singular_values.empty() ? 0.0 : singular_values.front();
}

std::size_t SpectralReport::count_moduli_near(double modulus, double tol) const {
  return static_cast<std::size_t>(std::count_if(
      eigenvalues.begin(), eigenvalues.end(),
      [&](const Complex& z) { return std::abs(std::abs(z) - modulus) <= tol; }));
}

std::size_t SpectralReport::count_singular_near(double value, double tol) const {
  return static_cast<std::size_t>(
      std::count_if(singular_values.begin(), singular_values.end(),
                    [&](double s) { return std::abs(s - value) <= tol; }));
}

SpectralReport spectral_report(const ComplexMatrix& m, double cluster_tol) {
  SpectralReport r;
  r.cluster_tolerance = cluster_tol;
  r.eigenvalues = eigenvalues(m);
  r.singular_values = singular_values(m);
  r.eigenvalue_clusters = cluster_eigenvalues(r.eigenvalues, cluster_tol);
  r.singular_clusters = cluster_values(r.singular_values, cluster_tol);
  return r;
}

}  // namespace chanspec

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

#include "chanspec/peripheral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <string>

#include "chanspec/errors.hpp"

namespace chanspec {

PeripheralProjection peripheral_projector(const ComplexMatrix& s,
                                          const PeripheralOptions& options) {
  require_square(s, "peripheral_projector");
  require_finite(s, "peripheral_projector");
  const Eigen::Index n = s.rows();

  PeripheralProjection out;
  out.tolerance = options.tolerance;

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(s, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("peripheral_projector: eigensolver did not converge");
  }
  const ComplexVector& lambda = solver.eigenvalues();
  const ComplexMatrix& v = solver.eigenvectors();

  std::vector<Eigen::Index> peripheral;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(lambda(k)) >= 1.0 - options.tolerance) peripheral.push_back(k);
  }

  if (peripheral.empty()) {
    out.projector = ComplexMatrix::Zero(n, n);
    out.nilpotent_part = s;
    out.eigenvector_condition = 1.0;
    return out;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(v);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  out.eigenvector_condition = smin > 0 ? sv(0) / smin : INFINITY;
  if (!(out.eigenvector_condition <= options.condition_cap)) {
    throw PreconditionError("peripheral_projector: eigenvector matrix condition number " +
                            std::to_string(out.eigenvector_condition) +
                            " exceeds the cap (defective or nearly defective spectrum)");
  }
  const ComplexMatrix w = v.partialPivLu().inverse();

  out.projector = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k : peripheral) {
    // Eigenvalue condition number ||w_k|| ||v_k|| / |w_k v_k|, with w_k v_k = 1.
    const double cond = w.row(k).norm() * v.col(k).norm();
    if (!(cond <= options.condition_cap)) {
      throw PreconditionError("peripheral_projector: defective peripheral block (eigenvalue " +
                              std::to_string(std::abs(lambda(k))) + ", condition " +
                              std::to_string(cond) + ")");
    }
    out.projector.noalias() += v.col(k) * w.row(k);
    out.peripheral_eigenvalues.push_back(lambda(k));
  }
  order_eigenvalues(out.peripheral_eigenvalues);
  out.nilpotent_part = s - s * out.projector;
  return out;
}

}  // namespace chanspec

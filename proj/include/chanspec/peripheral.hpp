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

#pragma once

#include <cstddef>
#include <vector>

#include "chanspec/spectral.hpp"

namespace chanspec {

struct PeripheralOptions {
  /// Eigenvalues with |lambda| >= 1 - tolerance count as peripheral.
  double tolerance = 1e-6;
  /// Largest accepted condition number of the eigenvector matrix, and of any
  /// single peripheral eigenvalue.
  double condition_cap = 1e8;
};

/// Spectral projector onto the peripheral eigenspace and the decaying
/// remainder S (I - T_p).
struct PeripheralProjection {
  ComplexMatrix projector;
  ComplexMatrix nilpotent_part;
  std::vector<Complex> peripheral_eigenvalues;
  double tolerance = 0.0;
  double eigenvector_condition = 0.0;

  std::size_t rank() const { return peripheral_eigenvalues.size(); }
};

/// Builds T_p = sum_k v_k w_k from right eigenvectors v_k and the matching
/// rows w_k of V^{-1}, which makes the pair biorthogonal by construction.
/// Throws NumericalError when V is too ill-conditioned to invert, and
/// PreconditionError when a peripheral eigenvalue looks defective (its left
/// and right eigenvectors are nearly orthogonal).
PeripheralProjection peripheral_projector(const ComplexMatrix& s,
                                          const PeripheralOptions& options = {});

}  // namespace chanspec

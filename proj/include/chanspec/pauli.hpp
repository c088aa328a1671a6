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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chanspec/spectral.hpp"

namespace chanspec {

/// Largest register handled by the dense Pauli helpers.
inline constexpr std::size_t kMaxPauliQubits = 5;

/// A Pauli string i^phase * P_0 (x) P_1 (x) ... with qubit 0 as the most
/// significant tensor factor. Letters are stored as 0=I, 1=X, 2=Y, 3=Z.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t num_qubits);

  /// Parses "XZZXI", optionally prefixed with "+", "-", "i", "+i" or "-i".
  static PauliString from_string(std::string_view text);
  /// Inverse of index(): base-4 digits, qubit 0 most significant.
  static PauliString from_index(std::size_t num_qubits, std::size_t index);

  std::size_t num_qubits() const { return letters_.size(); }
  std::uint8_t letter(std::size_t q) const { return letters_.at(q); }
  void set_letter(std::size_t q, std::uint8_t letter);
  /// Exponent k of the global factor i^k.
  unsigned phase() const { return phase_; }
  PauliString without_phase() const;

  std::size_t weight() const;
  std::size_t index() const;
  std::string str() const;

  bool x_bit(std::size_t q) const { return letters_[q] == 1 || letters_[q] == 2; }
  bool z_bit(std::size_t q) const { return letters_[q] == 2 || letters_[q] == 3; }

  /// 0 if the operators commute, 1 if they anticommute.
  unsigned symplectic_product(const PauliString& other) const;
  bool commutes(const PauliString& other) const { return symplectic_product(other) == 0; }

  /// Dense 2^n x 2^n matrix including the phase.
  ComplexMatrix matrix() const;

  PauliString operator*(const PauliString& rhs) const;
  bool operator==(const PauliString& other) const = default;

 private:
  std::vector<std::uint8_t> letters_;
  unsigned phase_ = 0;
};

/// All 4^n phase-free Pauli strings in lexicographic order with I < X < Y < Z.
std::vector<PauliString> pauli_group(std::size_t num_qubits);

/// Weight-one strings on n qubits: X, Y, Z on each qubit, qubit-major.
std::vector<PauliString> weight_one_paulis(std::size_t num_qubits);

}  // namespace chanspec

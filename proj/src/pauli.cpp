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

#include "chanspec/pauli.hpp"

#include <array>

#include "chanspec/errors.hpp"

namespace chanspec {
namespace {

constexpr std::array<char, 4> kLetters = {'I', 'X', 'Y', 'Z'};

// Phase exponent (of i) of the single-qubit product a * b, indexed [a][b].
constexpr std::array<std::array<unsigned, 4>, 4> kProductPhase = {{
    {0, 0, 0, 0},
    {0, 0, 1, 3},  // XY = iZ, XZ = -iY
    {0, 3, 0, 1},  // YX = -iZ, YZ = iX
    {0, 1, 3, 0},  // ZX = iY, ZY = -iX
}};

void check_qubits(std::size_t n) {
  if (n == 0 || n > kMaxPauliQubits) {
    throw RangeError("Pauli strings support 1.." + std::to_string(kMaxPauliQubits) +
                     " qubits, got " + std::to_string(n));
  }
}

}  // namespace

PauliString::PauliString(std::size_t num_qubits) : letters_(num_qubits, 0) {
  check_qubits(num_qubits);
}

PauliString PauliString::from_string(std::string_view text) {
  unsigned phase = 0;
  if (text.starts_with("+i")) {
    phase = 1;
    text.remove_prefix(2);
  } else if (text.starts_with("-i")) {
    phase = 3;
    text.remove_prefix(2);
  } else if (text.starts_with("+")) {
    text.remove_prefix(1);
  } else if (text.starts_with("-")) {
    phase = 2;
    text.remove_prefix(1);
  } else if (text.starts_with("i")) {
    phase = 1;
    text.remove_prefix(1);
  }
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    switch (text[q]) {
      case 'I': case '_': p.letters_[q] = 0; break;
      case 'X': p.letters_[q] = 1; break;
      case 'Y': p.letters_[q] = 2; break;
      case 'Z': p.letters_[q] = 3; break;
      default:
        throw PreconditionError("PauliString: unexpected character '" + std::string(1, text[q]) +
                                "'");
    }
  }
  p.phase_ = phase;
  return p;
}

PauliString PauliString::from_index(std::size_t num_qubits, std::size_t index) {
  PauliString p(num_qubits);
  if (index >= (std::size_t{1} << (2 * num_qubits))) throw RangeError("PauliString: index");
  for (std::size_t q = num_qubits; q-- > 0;) {
    p.letters_[q] = static_cast<std::uint8_t>(index & 3);
    index >>= 2;
  }
  return p;
}

void PauliString::set_letter(std::size_t q, std::uint8_t letter) {
  if (letter > 3) throw RangeError("PauliString: letter must be 0..3");
  letters_.at(q) = letter;
}

PauliString PauliString::without_phase() const {
  PauliString p = *this;
  p.phase_ = 0;
  return p;
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (auto l : letters_) w += l != 0;
  return w;
}

std::size_t PauliString::index() const {
  std::size_t idx = 0;
  for (auto l : letters_) idx = idx * 4 + l;
  return idx;
}

std::string PauliString::str() const {
  static constexpr std::array<const char*, 4> kPrefix = {"", "i", "-", "-i"};
  std::string s = kPrefix[phase_];
  for (auto l : letters_) s.push_back(kLetters[l]);
  return s;
}

unsigned PauliString::symplectic_product(const PauliString& other) const {
  if (other.num_qubits() != num_qubits()) throw DimensionError("Pauli strings differ in length");
  unsigned s = 0;
  for (std::size_t q = 0; q < num_qubits(); ++q) {
    s ^= static_cast<unsigned>(x_bit(q) && other.z_bit(q)) ^
         static_cast<unsigned>(z_bit(q) && other.x_bit(q));
  }
  return s;
}

ComplexMatrix PauliString::matrix() const {
  // Each row of a Pauli matrix has one nonzero: column = row ^ xmask.
  const std::size_t n = num_qubits();
  const std::size_t d = std::size_t{1} << n;
  static const std::array<Complex, 4> kPhase = {Complex(1, 0), Complex(0, 1), Complex(-1, 0),
                                                Complex(0, -1)};
  std::size_t xmask = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if (x_bit(q)) xmask |= std::size_t{1} << (n - 1 - q);
  }
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t row = col ^ xmask;
    // <row| P |col> as a product of single-qubit entries.
    unsigned k = phase_;
    int sign = 1;
    for (std::size_t q = 0; q < n; ++q) {
      bool c = (col >> (n - 1 - q)) & 1;
      switch (letters_[q]) {
        case 2:  // Y = [[0, -i], [i, 0]]
          k += 1;
          if (c) sign = -sign;
          break;
        case 3:
          if (c) sign = -sign;
          break;
        default:
          break;
      }
    }
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
        kPhase[k % 4] * static_cast<double>(sign);
  }
  return m;
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (rhs.num_qubits() != num_qubits()) throw DimensionError("Pauli strings differ in length");
  PauliString out(num_qubits());
  unsigned phase = phase_ + rhs.phase_;
  for (std::size_t q = 0; q < num_qubits(); ++q) {
    auto a = letters_[q];
    auto b = rhs.letters_[q];
    phase += kProductPhase[a][b];
    out.letters_[q] = a ^ b;  // I=00, X=01, Y=10, Z=11 compose by xor on (x,z) pairs
  }
  out.phase_ = phase % 4;
  return out;
}

std::vector<PauliString> pauli_group(std::size_t num_qubits) {
  check_qubits(num_qubits);
  const std::size_t count = std::size_t{1} << (2 * num_qubits);
  std::vector<PauliString> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(PauliString::from_index(num_qubits, i));
  return out;
}

std::vector<PauliString> weight_one_paulis(std::size_t num_qubits) {
  check_qubits(num_qubits);
  std::vector<PauliString> out;
  for (std::size_t q = 0; q < num_qubits; ++q) {
    for (std::uint8_t l = 1; l <= 3; ++l) {
      PauliString p(num_qubits);
      p.set_letter(q, l);
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace chanspec

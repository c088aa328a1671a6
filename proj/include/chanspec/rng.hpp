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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>

namespace chanspec {

/// Seeded random stream.
///
/// Every stream is identified by a 64-bit key. `derive(k)` builds a child
/// stream from the parent's key and `k` only, never from the parent's engine
/// state, so per-trial streams are independent of scheduling order. Each
/// public sampling call counts as one draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng derive(std::uint64_t stream) const;

  std::uint64_t key() const { return key_; }

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer on [0, n).
  std::size_t index(std::size_t n);
  /// Standard real normal N(0, 1).
  double normal();
  /// Standard complex normal: real and imaginary parts N(0, 1/2), E|z|^2 = 1.
  std::complex<double> complex_normal();
  /// Exponential with unit rate.
  double exponential();
  bool bernoulli(double p);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

}  // namespace chanspec

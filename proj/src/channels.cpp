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

#include "chanspec/channels.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <string>

#include "chanspec/errors.hpp"

namespace chanspec {
namespace {

struct Entry {
  Eigen::Index row;
  Eigen::Index col;
  Complex value;
};

std::vector<Entry> nonzeros(const ComplexMatrix& a) {
  std::vector<Entry> out;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (a(i, j) != Complex(0.0)) out.push_back({i, j, a(i, j)});
    }
  }
  return out;
}

void check_dimension_cap(std::size_t d) {
  if (d > kMaxSystemDimension) {
    throw DimensionError("superoperator: system dimension " + std::to_string(d) +
                         " exceeds the cap of " + std::to_string(kMaxSystemDimension));
  }
}

// Adds conj(A) (x) A into `out` by visiting nonzero pairs only. Pauli and
// damping operators have d nonzeros, so this costs d^2 rather than d^4.
template <typename Sink>
void accumulate_superoperator(const ComplexMatrix& a, Sink&& sink) {
  const Eigen::Index d = a.rows();
  auto nz = nonzeros(a);
  for (const Entry& outer : nz) {
    const Complex c = std::conj(outer.value);
    for (const Entry& inner : nz) {
      sink(outer.row * d + inner.row, outer.col * d + inner.col, c * inner.value);
    }
  }
}

std::size_t qubit_dimension(std::size_t num_qubits) {
  if (num_qubits == 0 || num_qubits > kMaxPauliQubits) {
    throw RangeError("qubit count must be in 1.." + std::to_string(kMaxPauliQubits));
  }
  return std::size_t{1} << num_qubits;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw DimensionError("KrausChannel: empty operator list");
  require_square(ops_.front(), "KrausChannel");
  dimension_ = static_cast<std::size_t>(ops_.front().rows());
  ComplexMatrix sum = ComplexMatrix::Zero(ops_.front().rows(), ops_.front().cols());
  for (const auto& a : ops_) {
    if (a.rows() != ops_.front().rows() || a.cols() != ops_.front().cols()) {
      throw DimensionError("KrausChannel: operators differ in dimension");
    }
    require_finite(a, "KrausChannel");
    sum.noalias() += a.adjoint() * a;
  }
  sum -= ComplexMatrix::Identity(sum.rows(), sum.cols());
  trace_preserving_ = sum.norm() <= kTraceTolerance;
}

ComplexMatrix KrausChannel::apply(const ComplexMatrix& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != dimension_ || rho.rows() != rho.cols()) {
    throw DimensionError("KrausChannel::apply: state dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& a : ops_) out.noalias() += a * rho * a.adjoint();
  return out;
}

Superoperator::Superoperator(ComplexMatrix matrix, std::size_t system_dimension)
    : matrix_(std::move(matrix)), dimension_(system_dimension) {
  const auto order = static_cast<Eigen::Index>(system_dimension * system_dimension);
  if (system_dimension == 0 || matrix_.rows() != order || matrix_.cols() != order) {
    throw DimensionError("Superoperator: matrix order must equal d^2");
  }
}

Superoperator Superoperator::identity(std::size_t system_dimension) {
  const auto order = static_cast<Eigen::Index>(system_dimension * system_dimension);
  return Superoperator(ComplexMatrix::Identity(order, order), system_dimension);
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != dimension_ || rho.rows() != rho.cols()) {
    throw DimensionError("Superoperator::apply: state dimension mismatch");
  }
  return unvectorize(matrix_ * vectorize(rho), dimension_);
}

ComplexVector vectorize(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, std::size_t d) {
  const auto dd = static_cast<Eigen::Index>(d);
  if (v.size() != dd * dd) throw DimensionError("unvectorize: length is not d^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), dd, dd);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix single_superoperator(const ComplexMatrix& op) {
  require_square(op, "superoperator");
  check_dimension_cap(static_cast<std::size_t>(op.rows()));
  const Eigen::Index order = op.rows() * op.rows();
  ComplexMatrix s = ComplexMatrix::Zero(order, order);
  accumulate_superoperator(op, [&](Eigen::Index r, Eigen::Index c, Complex v) { s(r, c) += v; });
  return s;
}

Superoperator superoperator(const KrausChannel& channel) {
  const std::size_t d = channel.dimension();
  check_dimension_cap(d);
  const auto order = static_cast<Eigen::Index>(d * d);
  ComplexMatrix s = ComplexMatrix::Zero(order, order);
  for (const auto& a : channel.operators()) {
    accumulate_superoperator(a, [&](Eigen::Index r, Eigen::Index c, Complex v) { s(r, c) += v; });
  }
  return Superoperator(std::move(s), d);
}

SparseComplexMatrix sparse_superoperator(const KrausChannel& channel) {
  const std::size_t d = channel.dimension();
  check_dimension_cap(d);
  const auto order = static_cast<Eigen::Index>(d * d);
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (const auto& a : channel.operators()) {
    accumulate_superoperator(a, [&](Eigen::Index r, Eigen::Index c, Complex v) {
      triplets.emplace_back(r, c, v);
    });
  }
  SparseComplexMatrix s(order, order);
  s.setFromTriplets(triplets.begin(), triplets.end());
  s.prune(Complex(0.0));
  return s;
}

Superoperator compose(const Superoperator& after, const Superoperator& before) {
  if (after.dimension() != before.dimension()) {
    throw DimensionError("compose: system dimensions differ");
  }
  return Superoperator(after.matrix() * before.matrix(), after.dimension());
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.size() * b.size());
  for (const auto& x : a.operators()) {
    for (const auto& y : b.operators()) ops.push_back(kron(x, y));
  }
  return KrausChannel(std::move(ops));
}

Superoperator tensor(const Superoperator& a, const Superoperator& b) {
  // Index (c, r) of a superoperator on d = da*db splits as c = (ca, cb),
  // r = (ra, rb); the entry factorizes into A[(ca, ra), .] * B[(cb, rb), .].
  const auto da = static_cast<Eigen::Index>(a.dimension());
  const auto db = static_cast<Eigen::Index>(b.dimension());
  const Eigen::Index d = da * db;
  check_dimension_cap(static_cast<std::size_t>(d));
  auto joint = [&](Eigen::Index ia, Eigen::Index ib) {
    Eigen::Index ca = ia / da, ra = ia % da, cb = ib / db, rb = ib % db;
    return (ca * db + cb) * d + (ra * db + rb);
  };
  ComplexMatrix s(d * d, d * d);
  const auto& ma = a.matrix();
  const auto& mb = b.matrix();
  for (Eigen::Index ja = 0; ja < da * da; ++ja) {
    for (Eigen::Index jb = 0; jb < db * db; ++jb) {
      const Eigen::Index col = joint(ja, jb);
      for (Eigen::Index ia = 0; ia < da * da; ++ia) {
        const Complex x = ma(ia, ja);
        for (Eigen::Index ib = 0; ib < db * db; ++ib) s(joint(ia, ib), col) = x * mb(ib, jb);
      }
    }
  }
  return Superoperator(std::move(s), static_cast<std::size_t>(d));
}

void left_apply_conjugation(const ComplexMatrix& k, ComplexMatrix& m) {
  require_square(k, "left_apply_conjugation");
  const Eigen::Index d = k.rows();
  if (m.rows() != d * d) throw DimensionError("left_apply_conjugation: order mismatch");
  const ComplexMatrix kd = k.adjoint();
  ComplexMatrix tmp(d, d);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::Map<ComplexMatrix> x(m.col(j).data(), d, d);
    tmp.noalias() = k * x;
    x.noalias() = tmp * kd;
  }
}

ComplexMatrix ginibre(std::size_t d, Rng& rng) {
  if (d == 0) throw DimensionError("ginibre: d must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  }
  return g;
}

ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
  ComplexMatrix g = ginibre(d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0) q.col(j) *= rjj / mag;
  }
  return q;
}

std::string_view to_string(ChannelFamily family) {
  switch (family) {
    case ChannelFamily::Kraus: return "kraus";
    case ChannelFamily::Unitary: return "unitary";
    case ChannelFamily::Pauli: return "pauli";
  }
  return "unknown";
}

ChannelFamily parse_channel_family(std::string_view name) {
  if (name == "kraus" || name == "ginibre") return ChannelFamily::Kraus;
  if (name == "unitary" || name == "haar") return ChannelFamily::Unitary;
  if (name == "pauli") return ChannelFamily::Pauli;
  throw PreconditionError("unknown channel family '" + std::string(name) +
                          "' (expected kraus, unitary or pauli)");
}

KrausChannel random_kraus_channel(std::size_t d, std::size_t kappa, Rng& rng) {
  if (kappa == 0) throw RangeError("random_kraus_channel: kappa must be at least 1");
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<ComplexMatrix> ops;
    ops.reserve(kappa);
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix s = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < kappa; ++i) {
      ops.push_back(ginibre(d, rng));
      s.noalias() += ops.back().adjoint() * ops.back();
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
    if (es.info() != Eigen::Success) continue;
    const auto& w = es.eigenvalues();
    if (w.minCoeff() <= 1e-12 * w.maxCoeff()) continue;  // singular S: resample
    const ComplexMatrix inv_sqrt = es.operatorInverseSqrt();
    for (auto& a : ops) a = a * inv_sqrt;
    return KrausChannel(std::move(ops));
  }
  throw NumericalError("random_kraus_channel: repeated singular normalization");
}

KrausChannel random_unitary_channel(std::size_t d, std::size_t kappa, Rng& rng) {
  if (kappa == 0) throw RangeError("random_unitary_channel: kappa must be at least 1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(kappa));
  std::vector<ComplexMatrix> ops;
  ops.reserve(kappa);
  for (std::size_t i = 0; i < kappa; ++i) ops.push_back(haar_unitary(d, rng) * scale);
  return KrausChannel(std::move(ops));
}

KrausChannel random_pauli_channel(std::size_t num_qubits, std::size_t kappa, Rng& rng) {
  if (kappa == 0) throw RangeError("random_pauli_channel: kappa must be at least 1");
  const std::size_t group = qubit_dimension(num_qubits) * qubit_dimension(num_qubits);
  std::vector<PauliString> picks;
  std::vector<double> weights;
  picks.reserve(kappa);
  weights.reserve(kappa);
  for (std::size_t i = 0; i < kappa; ++i) {
    picks.push_back(PauliString::from_index(num_qubits, rng.index(group)));
    weights.push_back(rng.exponential());
  }
  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<ComplexMatrix> ops;
  ops.reserve(kappa);
  for (std::size_t i = 0; i < kappa; ++i) {
    ops.push_back(picks[i].matrix() * std::sqrt(weights[i] / total));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel random_channel(ChannelFamily family, std::size_t num_qubits, std::size_t kappa,
                            Rng& rng) {
  const std::size_t d = qubit_dimension(num_qubits);
  switch (family) {
    case ChannelFamily::Kraus: return random_kraus_channel(d, kappa, rng);
    case ChannelFamily::Unitary: return random_unitary_channel(d, kappa, rng);
    case ChannelFamily::Pauli: return random_pauli_channel(num_qubits, kappa, rng);
  }
  throw PreconditionError("random_channel: unknown family");
}

KrausChannel amplitude_damping_channel(std::size_t num_qubits, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw RangeError("amplitude damping strength must lie in [0, 1], got " +
                     std::to_string(alpha));
  }
  qubit_dimension(num_qubits);
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - alpha);
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(alpha);
  KrausChannel single({k0, k1});
  KrausChannel out = single;
  for (std::size_t q = 1; q < num_qubits; ++q) out = tensor(out, single);
  return out;
}

KrausChannel pauli_channel(const std::vector<std::pair<PauliString, double>>& terms) {
  if (terms.empty()) throw DimensionError("pauli_channel: no terms");
  double total = 0.0;
  for (const auto& [p, prob] : terms) {
    if (!(prob >= 0.0)) throw RangeError("pauli_channel: negative probability");
    total += prob;
  }
  if (std::abs(total - 1.0) > 1e-12) throw RangeError("pauli_channel: probabilities must sum to 1");
  std::vector<ComplexMatrix> ops;
  ops.reserve(terms.size());
  for (const auto& [p, prob] : terms) ops.push_back(p.matrix() * std::sqrt(prob));
  return KrausChannel(std::move(ops));
}

KrausChannel uniform_pauli_channel(const std::vector<PauliString>& paulis) {
  std::vector<std::pair<PauliString, double>> terms;
  terms.reserve(paulis.size());
  const double p = 1.0 / static_cast<double>(paulis.size());
  for (const auto& s : paulis) terms.emplace_back(s, p);
  return pauli_channel(terms);
}

}  // namespace chanspec

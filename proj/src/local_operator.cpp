// Copyright 2026 The phv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phv/local_operator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "phv/limits.hpp"

namespace phv {
namespace {

void check_targets(const Qubits& targets, int n_qubits) {
  std::set<Qubit> seen;
  for (Qubit q : targets) {
    if (q < 0 || q >= n_qubits) {
      throw std::out_of_range("qubit index " + std::to_string(q) +
                              " out of range for " + std::to_string(n_qubits) +
                              " qubits");
    }
    if (!seen.insert(q).second) {
      throw std::invalid_argument("duplicate target qubit " + std::to_string(q));
    }
  }
}

void check_dimension(const Matrix& m, std::size_t arity) {
  const auto dim = Eigen::Index{1} << arity;
  if (m.rows() != dim || m.cols() != dim) {
    throw std::invalid_argument("matrix dimension does not match target count");
  }
}

// Offsets of the 2^k local basis states inside the full index space.
std::vector<BasisIndex> local_offsets(std::span<const Qubit> targets) {
  const size_t k = targets.size();
  std::vector<BasisIndex> off(size_t{1} << k, 0);
  for (size_t j = 0; j < off.size(); ++j) {
    for (size_t i = 0; i < k; ++i) {
      if ((j >> i) & 1U) off[j] |= BasisIndex{1} << targets[i];
    }
  }
  return off;
}

}  // namespace

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Matrix d = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

Matrix kron(const Matrix& high, const Matrix& low) {
  Matrix out(high.rows() * low.rows(), high.cols() * low.cols());
  for (Eigen::Index i = 0; i < high.rows(); ++i) {
    for (Eigen::Index j = 0; j < high.cols(); ++j) {
      out.block(i * low.rows(), j * low.cols(), low.rows(), low.cols()) =
          high(i, j) * low;
    }
  }
  return out;
}

LocalKernel::LocalKernel(const Matrix& m, bool try_low_rank) : dim_(m.rows()) {
  if (m.rows() != m.cols()) throw std::invalid_argument("LocalKernel: matrix must be square");
  const Eigen::Index d = dim_;
  std::vector<Entry> nz;
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) {
      if (m(r, c) != Complex(0.0)) nz.push_back({r, c, m(r, c)});
    }
  }
  const auto dense_cost = static_cast<std::size_t>(d * d);
  std::size_t best = dense_cost;
  if (nz.size() * 4 <= dense_cost) {
    form_ = Form::kSparse;
    best = nz.size();
    sparse_ = std::move(nz);
  }
  // Any rank-r form costs at least 2d per chunk.
  if (try_low_rank && d >= 8 && best > static_cast<std::size_t>(2 * d)) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = std::max(sv.size() ? sv[0] : 0.0, 1.0) * 1e-13;
    Eigen::Index r = 0;
    while (r < sv.size() && sv[r] > cut) ++r;
    const auto lr_cost = static_cast<std::size_t>(2 * r * d);
    if (lr_cost < best) {
      form_ = Form::kLowRank;
      left_ = svd.matrixU().leftCols(r) * sv.head(r).asDiagonal();
      right_adjoint_ = svd.matrixV().leftCols(r).adjoint();
      sparse_.clear();
      return;
    }
  }
  if (form_ == Form::kDense) dense_ = m;
}

namespace {

// Calls f(base) for every index whose target bits are all zero.
template <typename F>
void for_each_chunk(BasisIndex dim, std::span<const Qubit> targets, F&& f) {
  std::vector<Qubit> sorted(targets.begin(), targets.end());
  std::sort(sorted.begin(), sorted.end());
  const BasisIndex chunks = dim >> sorted.size();
  for (BasisIndex i = 0; i < chunks; ++i) {
    BasisIndex base = i;
    for (Qubit t : sorted) {
      const BasisIndex low = base & ((BasisIndex{1} << t) - 1);
      base = ((base >> t) << (t + 1)) | low;
    }
    f(base);
  }
}

}  // namespace

void LocalKernel::apply(Vector& amps, std::span<const Qubit> targets) const {
  const auto off = local_offsets(targets);
  const Eigen::Index d = dim_;
  Complex* a = amps.data();
  if (form_ == Form::kSparse) {
    Vector in(d);
    for_each_chunk(static_cast<BasisIndex>(amps.size()), targets, [&](BasisIndex base) {
      for (Eigen::Index j = 0; j < d; ++j) {
        in[j] = a[base | off[static_cast<size_t>(j)]];
        a[base | off[static_cast<size_t>(j)]] = 0.0;
      }
      for (const auto& e : sparse_) a[base | off[static_cast<size_t>(e.row)]] += e.value * in[e.col];
    });
    return;
  }
  // Chunks are processed in batches so the products run as matrix-matrix.
  constexpr Eigen::Index kBatch = 64;
  Matrix in(d, kBatch);
  Matrix out(d, kBatch);
  Matrix mid(form_ == Form::kLowRank ? right_adjoint_.rows() : 0, kBatch);
  std::vector<BasisIndex> bases;
  bases.reserve(kBatch);
  auto flush = [&] {
    const auto n = static_cast<Eigen::Index>(bases.size());
    for (Eigen::Index c = 0; c < n; ++c) {
      for (Eigen::Index j = 0; j < d; ++j) in(j, c) = a[bases[static_cast<size_t>(c)] | off[static_cast<size_t>(j)]];
    }
    if (form_ == Form::kDense) {
      out.leftCols(n).noalias() = dense_ * in.leftCols(n);
    } else {
      mid.leftCols(n).noalias() = right_adjoint_ * in.leftCols(n);
      out.leftCols(n).noalias() = left_ * mid.leftCols(n);
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      for (Eigen::Index j = 0; j < d; ++j) a[bases[static_cast<size_t>(c)] | off[static_cast<size_t>(j)]] = out(j, c);
    }
    bases.clear();
  };
  for_each_chunk(static_cast<BasisIndex>(amps.size()), targets, [&](BasisIndex base) {
    bases.push_back(base);
    if (static_cast<Eigen::Index>(bases.size()) == kBatch) flush();
  });
  flush();
}

Complex LocalKernel::expectation(const Vector& amps, std::span<const Qubit> targets) const {
  const auto off = local_offsets(targets);
  const Eigen::Index d = dim_;
  Vector in(d);
  Vector out(d);
  Vector mid(form_ == Form::kLowRank ? right_adjoint_.rows() : 0);
  Vector lmid(mid.size());
  const Complex* a = amps.data();
  Complex acc = 0.0;
  for_each_chunk(static_cast<BasisIndex>(amps.size()), targets, [&](BasisIndex base) {
    for (Eigen::Index j = 0; j < d; ++j) in[j] = a[base | off[static_cast<size_t>(j)]];
    switch (form_) {
      case Form::kDense:
        out.noalias() = dense_ * in;
        acc += in.dot(out);
        break;
      case Form::kSparse:
        for (const auto& e : sparse_) acc += std::conj(in[e.row]) * e.value * in[e.col];
        break;
      case Form::kLowRank:
        // v^dagger L R^dagger v = (L^dagger v)^dagger (R^dagger v)
        mid.noalias() = right_adjoint_ * in;
        lmid.noalias() = left_.adjoint() * in;
        acc += lmid.dot(mid);
        break;
    }
  });
  return acc;
}

namespace {

// A factorization only pays off when the state has many chunks.
bool worth_factoring(const Vector& amps) { return amps.size() >= (Eigen::Index{1} << 16); }

}  // namespace

void apply_matrix(Vector& amps, const Matrix& u, std::span<const Qubit> targets) {
  LocalKernel(u, worth_factoring(amps)).apply(amps, targets);
}

void apply_unitary_inplace(StateVector& state, const Matrix& u,
                           const Qubits& targets) {
  check_targets(targets, state.n_qubits());
  check_dimension(u, targets.size());
  if (!is_unitary(u, limits().construct_tol)) {
    throw std::invalid_argument("apply_unitary: matrix is not unitary");
  }
  apply_matrix(state.mutable_amplitudes(), u, targets);
}

StateVector apply_unitary(const StateVector& state, const Matrix& u,
                          const Qubits& targets) {
  StateVector out = state;
  apply_unitary_inplace(out, u, targets);
  return out;
}

double expectation(const StateVector& state, const PauliString& obs) {
  if (!obs.is_hermitian()) {
    throw std::invalid_argument("expectation: non-Hermitian Pauli observable");
  }
  if (obs.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("expectation: observable qubit count mismatch");
  }
  const Complex v = pauli_expectation(obs, state.amplitudes());
  if (std::abs(v.imag()) > limits().assert_tol) {
    throw NumericFault("expectation: imaginary residue above tolerance");
  }
  return v.real();
}

double expectation(const StateVector& state, const PauliSum& obs) {
  if (obs.empty()) return 0.0;
  if (obs.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("expectation: observable qubit count mismatch");
  }
  double acc = 0.0;
  for (const auto& t : obs.terms()) {
    acc += t.coefficient * pauli_expectation(t.string, state.amplitudes()).real();
  }
  return acc;
}

double expectation(const StateVector& state, const LocalOperator& obs) {
  check_targets(obs.support, state.n_qubits());
  check_dimension(obs.matrix, obs.support.size());
  if (!is_hermitian(obs.matrix, limits().construct_tol)) {
    throw std::invalid_argument("expectation: non-Hermitian observable");
  }
  const Complex acc = LocalKernel(obs.matrix, worth_factoring(state.amplitudes()))
                            .expectation(state.amplitudes(), obs.support);
  if (std::abs(acc.imag()) > limits().assert_tol) {
    throw NumericFault("expectation: imaginary residue above tolerance");
  }
  return acc.real();
}

Matrix dense_matrix(const LocalOperator& op, int n_qubits) {
  check_matrix_cap(n_qubits);
  check_targets(op.support, n_qubits);
  check_dimension(op.matrix, op.support.size());
  const auto dim = static_cast<Eigen::Index>(BasisIndex{1} << n_qubits);
  Matrix m = Matrix::Zero(dim, dim);
  // Columns are images of basis states: apply the operator to each.
  Vector e(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    e.setZero();
    e[c] = 1.0;
    apply_matrix(e, op.matrix, op.support);
    m.col(c) = e;
  }
  return m;
}

namespace {

// Tr(P M) / 2^k for the k-qubit string with masks (x, z).
Complex trace_coefficient(const Matrix& m, std::uint64_t x, std::uint64_t z) {
  static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto dim = static_cast<std::uint64_t>(m.rows());
  Complex acc = 0.0;
  // P|c> = i^{#Y} (-1)^{|c&z|} |c^x>, so Tr(P M) = sum_c P[c^x, c] M[c, c^x].
  for (std::uint64_t c = 0; c < dim; ++c) {
    const Complex v = m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ x));
    acc += (std::popcount(c & z) & 1) ? -v : v;
  }
  return acc * kIPow[std::popcount(x & z) % 4] / static_cast<double>(dim);
}

}  // namespace

PauliSum pauli_decompose(const LocalOperator& op, int n_qubits) {
  check_targets(op.support, n_qubits);
  check_dimension(op.matrix, op.support.size());
  if (!is_hermitian(op.matrix, limits().construct_tol)) {
    throw std::invalid_argument("pauli_decompose: non-Hermitian operator");
  }
  const int k = op.arity();
  const std::uint64_t n_masks = std::uint64_t{1} << k;
  PauliSum out(n_qubits);
  for (std::uint64_t x = 0; x < n_masks; ++x) {
    for (std::uint64_t z = 0; z < n_masks; ++z) {
      const Complex c = trace_coefficient(op.matrix, x, z);
      if (std::abs(c.real()) <= limits().construct_tol) continue;
      PauliString p(n_qubits);
      for (int i = 0; i < k; ++i) {
        const bool xb = (x >> i) & 1U;
        const bool zb = (z >> i) & 1U;
        p.set(op.support[static_cast<size_t>(i)],
              xb && zb ? PauliLetter::Y
              : xb     ? PauliLetter::X
              : zb     ? PauliLetter::Z
                       : PauliLetter::I);
      }
      out.add(c.real(), p);
    }
  }
  out.prune(limits().construct_tol);
  return out;
}

double max_y_weight(const LocalOperator& op) {
  const std::uint64_t n_masks = std::uint64_t{1} << op.arity();
  double worst = 0.0;
  for (std::uint64_t x = 0; x < n_masks; ++x) {
    for (std::uint64_t z = 0; z < n_masks; ++z) {
      if ((x & z) == 0) continue;
      worst = std::max(worst, std::abs(trace_coefficient(op.matrix, x, z)));
    }
  }
  return worst;
}

}  // namespace phv

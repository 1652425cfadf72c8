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

#include "phv/state.hpp"

#include <cmath>
#include <stdexcept>

#include "phv/limits.hpp"
#include "phv/rng.hpp"

namespace phv {

Limits& limits() {
  static Limits instance;
  return instance;
}

void check_state_cap(int n_qubits) {
  if (n_qubits < 0 || n_qubits > limits().max_state_qubits) {
    throw CapExceeded("state of " + std::to_string(n_qubits) +
                      " qubits exceeds dense state cap of " +
                      std::to_string(limits().max_state_qubits));
  }
}

void check_matrix_cap(int n_qubits) {
  if (n_qubits < 0 || n_qubits > limits().max_matrix_qubits) {
    throw CapExceeded("matrix on " + std::to_string(n_qubits) +
                      " qubits exceeds dense matrix cap of " +
                      std::to_string(limits().max_matrix_qubits));
  }
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  check_state_cap(n_qubits);
  amps_ = Vector::Zero(static_cast<Eigen::Index>(dimension()));
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, Vector amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  check_state_cap(n_qubits);
  if (static_cast<BasisIndex>(amps_.size()) != dimension()) {
    throw std::invalid_argument("amplitude vector length does not match 2^n");
  }
  if (std::abs(amps_.norm() - 1.0) > limits().assert_tol) {
    throw std::invalid_argument("state is not normalized");
  }
}

StateVector StateVector::basis(int n_qubits, BasisIndex index) {
  StateVector s(n_qubits);
  if (index >= s.dimension()) {
    throw std::out_of_range("basis index out of range");
  }
  s.amps_[0] = 0.0;
  s.amps_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

StateVector StateVector::normalized(int n_qubits, Vector amplitudes) {
  const double nrm = amplitudes.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw NumericFault("cannot normalize a zero or non-finite vector");
  }
  amplitudes /= nrm;
  return StateVector(n_qubits, std::move(amplitudes));
}

void StateVector::renormalize() {
  const double nrm = amps_.norm();
  if (!(nrm > 0.0)) throw NumericFault("cannot renormalize a zero vector");
  amps_ /= nrm;
}

StateVector tensor(const StateVector& low, const StateVector& high) {
  const int n = low.n_qubits_ + high.n_qubits_;
  check_state_cap(n);
  Vector out(static_cast<Eigen::Index>(BasisIndex{1} << n));
  const Eigen::Index dl = low.amps_.size();
  for (Eigen::Index h = 0; h < high.amps_.size(); ++h) {
    out.segment(h * dl, dl) = high.amps_[h] * low.amps_;
  }
  StateVector s;
  s.n_qubits_ = n;
  s.amps_ = std::move(out);
  return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("fidelity: qubit count mismatch");
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

StateVector random_state(int n_qubits, Rng& rng) {
  check_state_cap(n_qubits);
  const auto dim = static_cast<Eigen::Index>(BasisIndex{1} << n_qubits);
  Vector v(dim);
  // Box-Muller on our own uniforms keeps the draw platform independent.
  auto gauss = [&rng]() {
    double u1 = rng.uniform();
    while (u1 <= 0.0) u1 = rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  };
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex(gauss(), gauss());
  return StateVector::normalized(n_qubits, std::move(v));
}

std::string basis_label(BasisIndex index, int n_qubits) {
  std::string s(static_cast<size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if ((index >> q) & 1U) s[static_cast<size_t>(q)] = '1';
  }
  return s;
}

}  // namespace phv

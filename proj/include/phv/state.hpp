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

#ifndef PHV_STATE_HPP
#define PHV_STATE_HPP

#include <string>

#include "phv/types.hpp"

namespace phv {

// Dense pure state on n qubits. Amplitude index bit q is qubit q.
class StateVector {
 public:
  StateVector() = default;

  // |0...0> on n qubits.
  explicit StateVector(int n_qubits);

  // Takes ownership of amplitudes; they must have length 2^n and unit norm.
  StateVector(int n_qubits, Vector amplitudes);

  static StateVector basis(int n_qubits, BasisIndex index);

  // Normalizes the given amplitudes. Throws NumericFault on a zero vector.
  static StateVector normalized(int n_qubits, Vector amplitudes);

  int n_qubits() const { return n_qubits_; }
  BasisIndex dimension() const { return BasisIndex{1} << n_qubits_; }

  const Vector& amplitudes() const { return amps_; }
  // Callers that write through this are responsible for the norm invariant.
  Vector& mutable_amplitudes() { return amps_; }

  Complex operator[](BasisIndex i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amps_.norm(); }
  void renormalize();

  // |a> (x) |b>, with `low` on qubits 0..n_low-1 and `high` above it.
  friend StateVector tensor(const StateVector& low, const StateVector& high);

 private:
  int n_qubits_ = 0;
  Vector amps_;
};

StateVector tensor(const StateVector& low, const StateVector& high);

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

// Haar-ish random state from normally distributed amplitudes.
class Rng;
StateVector random_state(int n_qubits, Rng& rng);

std::string basis_label(BasisIndex index, int n_qubits);

}  // namespace phv

#endif  // PHV_STATE_HPP

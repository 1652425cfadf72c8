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

#ifndef PHV_LOCAL_OPERATOR_HPP
#define PHV_LOCAL_OPERATOR_HPP

#include <span>
#include <vector>

#include "phv/pauli.hpp"
#include "phv/state.hpp"
#include "phv/types.hpp"

namespace phv {

// Dense operator on a few qubits. Matrix index bit i is the value of
// support[i], so support {3, 1} puts qubit 3 in the low bit.
struct LocalOperator {
  Qubits support;
  Matrix matrix;

  int arity() const { return static_cast<int>(support.size()); }
};

bool is_hermitian(const Matrix& m, double tol);
bool is_unitary(const Matrix& m, double tol);

// Kronecker product with `low` acting on the low index bits.
Matrix kron(const Matrix& high, const Matrix& low);

// A local matrix prepared for repeated use on large states. It is stored
// dense, as nonzero entries, or as a low-rank product L R^dagger, whichever
// touches the fewest entries per 2^k-amplitude chunk.
class LocalKernel {
 public:
  enum class Form { kDense, kSparse, kLowRank };

  explicit LocalKernel(const Matrix& m, bool try_low_rank = true);

  Form form() const { return form_; }
  // In place, unchecked: amps <- (m on targets) amps.
  void apply(Vector& amps, std::span<const Qubit> targets) const;
  // Sum over chunks of v^dagger m v, i.e. <psi| m on targets |psi>.
  Complex expectation(const Vector& amps, std::span<const Qubit> targets) const;

 private:
  struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    Complex value;
  };
  Form form_ = Form::kDense;
  Eigen::Index dim_ = 0;
  Matrix dense_;
  std::vector<Entry> sparse_;
  Matrix left_;
  Matrix right_adjoint_;
};

// In place, unchecked: amps <- (u on targets) amps.
void apply_matrix(Vector& amps, const Matrix& u, std::span<const Qubit> targets);

// Checked application of a unitary; norm is preserved within tolerance.
StateVector apply_unitary(const StateVector& state, const Matrix& u,
                          const Qubits& targets);
void apply_unitary_inplace(StateVector& state, const Matrix& u,
                           const Qubits& targets);

double expectation(const StateVector& state, const PauliString& obs);
double expectation(const StateVector& state, const PauliSum& obs);
double expectation(const StateVector& state, const LocalOperator& obs);

// Full 2^n matrix of a local operator embedded in n qubits.
Matrix dense_matrix(const LocalOperator& op, int n_qubits);

// c_P = Tr(P op) / 2^k for every P on the support, embedded into n_qubits.
// Coefficients at or below the construction tolerance are dropped.
PauliSum pauli_decompose(const LocalOperator& op, int n_qubits);

// Largest absolute coefficient of a Y-containing string before pruning.
double max_y_weight(const LocalOperator& op);

}  // namespace phv

#endif  // PHV_LOCAL_OPERATOR_HPP

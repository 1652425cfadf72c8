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

#ifndef PHV_CODE5_HPP
#define PHV_CODE5_HPP

#include <array>
#include <vector>

#include "phv/local_operator.hpp"
#include "phv/pauli.hpp"
#include "phv/rng.hpp"
#include "phv/state.hpp"

namespace phv {

inline constexpr int kCodeLength = 5;

// Stabilizer description of the [[5,1,3]] code with a chosen special share t.
// Every generator acts on share t with X or Z. Generators come in the order
// (X-type, Z-type, X-type, Z-type) at share t; the first pair feeds the
// unprimed CHSH expression and the second pair the primed one.
struct CodeSpec {
  std::array<PauliString, 4> generators;
  PauliString logical_x;
  PauliString logical_z;
  int special_index = 4;

  // X or Z: the letter generator i carries on the special share.
  PauliLetter special_letter(int i) const;
};

// The four cyclic shifts of XZZXI that are nontrivial on share t (0-based).
CodeSpec default_code(int t);

// 32x32 encoder. Local bit 0 (share 0) carries the logical input and bits
// 1..4 the ancillas; ancilla value a maps to the single-qubit Pauli frame
// whose syndrome against the canonical generators (shifts 0..3 of XZZXI) is
// a, so |b>|0000> lands in the code space.
const Matrix& encoding_unitary();

// Code-space projector prod_i (I + g_i)/2 as a dense 32x32 matrix.
const Matrix& codespace_projector_matrix();

// The sixteen stabilizer group elements on 5 qubits.
const std::vector<PauliString>& stabilizer_group();

// Logical qubit l lives on physical qubits 5l + p, share p held by prover p.
class ShareMap {
 public:
  explicit ShareMap(int n_logical) : n_logical_(n_logical) {}

  int n_logical() const { return n_logical_; }
  int n_physical() const { return kCodeLength * n_logical_; }
  Qubit address(int logical, int prover) const { return kCodeLength * logical + prover; }
  Qubits block(int logical) const;
  int logical_of(Qubit address) const { return address / kCodeLength; }
  int prover_of(Qubit address) const { return address % kCodeLength; }

 private:
  int n_logical_;
};

// Encodes every qubit of `logical` into its own block.
StateVector encode_state(const StateVector& logical, const ShareMap& shares);

// Inverse of encode_state for states in the code space of every block.
// Throws NumericFault when the weight outside the code space exceeds tolerance.
StateVector decode_state(const StateVector& physical, const ShareMap& shares);

struct DecodeResult {
  StateVector state;  // logical content on block[0], ancillas collapsed
  bool in_code_space;
};

// Applies the inverse encoder to one block and measures its ancillas.
DecodeResult decode_block(const StateVector& state, const Qubits& block, Rng& rng);

// <Pi_code> on the given 5 addresses (share order).
double codespace_projector_expectation(const StateVector& state, const Qubits& block);

// Single-qubit X (or Z) on each of the five shares of `block`, as strings over
// n_qubits. The product of their outcomes is the logical outcome.
std::vector<PauliString> transversal_logical_measurement(const CodeSpec& spec,
                                                         PauliLetter which,
                                                         const Qubits& block, int n_qubits);

}  // namespace phv

#endif  // PHV_CODE5_HPP

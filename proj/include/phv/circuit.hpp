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

#ifndef PHV_CIRCUIT_HPP
#define PHV_CIRCUIT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "phv/limits.hpp"
#include "phv/rng.hpp"
#include "phv/state.hpp"
#include "phv/types.hpp"

namespace phv {

// The real gate set plus two macro-gates used by the verification circuits.
// kI only appears as padding of an otherwise empty circuit.
enum class GateKind { kI, kX, kZ, kH, kCnot, kCz, kAnd, kThreshold };

struct Gate {
  GateKind kind;
  // kCnot: {control, target}. kAnd / kThreshold: {controls..., target}.
  Qubits targets;
  // kThreshold: flips the target when at least this many controls are 1.
  int threshold = 0;

  static Gate identity(Qubit q) { return {GateKind::kI, {q}}; }
  static Gate x(Qubit q) { return {GateKind::kX, {q}}; }
  static Gate z(Qubit q) { return {GateKind::kZ, {q}}; }
  static Gate h(Qubit q) { return {GateKind::kH, {q}}; }
  static Gate cnot(Qubit c, Qubit t) { return {GateKind::kCnot, {c, t}}; }
  static Gate cz(Qubit a, Qubit b) { return {GateKind::kCz, {a, b}}; }
  static Gate and_into(Qubits controls, Qubit target);
  static Gate at_least(Qubits controls, Qubit target, int threshold);

  bool is_macro() const { return kind == GateKind::kAnd || kind == GateKind::kThreshold; }
  int arity() const { return static_cast<int>(targets.size()); }

  friend bool operator==(const Gate&, const Gate&) = default;
};

std::string_view gate_name(GateKind kind);

// Real matrix of a non-macro gate, in the LocalOperator bit convention
// (targets[0] is the low bit). For kCnot the control is targets[0].
RealMatrix gate_matrix(const Gate& g);

class Circuit {
 public:
  // Validates every gate and the output register. An empty gate list is
  // padded with one identity step on qubit 0 so that T >= 1.
  Circuit(int n_qubits, std::vector<Gate> gates, Qubits output_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  int depth() const { return static_cast<int>(gates_.size()); }
  const Qubits& output_qubits() const { return outputs_; }
  bool has_macros() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
  Qubits outputs_;
};

// In place on a state of at least c.n_qubits() qubits (extra qubits idle).
void apply_gate(Vector& amps, const Gate& g);

StateVector simulate(const Circuit& c);

// Parses a bit string; only '0' and '1' are allowed.
std::vector<int> parse_bits(std::string_view s);

// Born probability of every output string, indexed by the value whose
// most significant bit is output_qubits[0].
std::vector<double> output_distribution(const Circuit& c);

// Exact probability of reading `s` on the output register; s[j] is the bit
// of output_qubits[j].
double output_probability(const Circuit& c, std::string_view s);

std::string sample_output(const Circuit& c, Rng& rng);

// Rewrites macro-gates into the real gate set where an exact rewrite exists
// (zero or one effective control). Wider macros have no Clifford
// decomposition and raise std::invalid_argument.
Circuit expand_macros(const Circuit& c);

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

Circuit parse_circuit(std::string_view text);
std::string serialize_circuit(const Circuit& c);
Circuit load_circuit(const std::string& path);

}  // namespace phv

#endif  // PHV_CIRCUIT_HPP

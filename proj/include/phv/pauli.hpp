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

#ifndef PHV_PAULI_HPP
#define PHV_PAULI_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phv/types.hpp"

namespace phv {

enum class PauliLetter : std::uint8_t { I, X, Y, Z };

char letter_char(PauliLetter l);

// Pauli string in symplectic form: bit q of x_mask / z_mask marks an X / Z
// component on qubit q, a qubit with both bits set carries the Y matrix.
// The overall factor is i^phase.
class PauliString {
 public:
  static constexpr int kMaxQubits = 64;

  PauliString() = default;
  explicit PauliString(int n_qubits);

  // Accepts an optional sign prefix (+, -, i, +i, -i) followed by one letter
  // per qubit, leftmost letter on qubit 0: "-IXZZI".
  static PauliString parse(std::string_view text);
  static PauliString single(int n_qubits, Qubit q, PauliLetter letter);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  int phase() const { return phase_; }
  void set_phase(int phase) { phase_ = ((phase % 4) + 4) % 4; }

  PauliLetter letter(Qubit q) const;
  void set(Qubit q, PauliLetter letter);

  Qubits support() const;
  int weight() const;
  bool is_identity() const { return x_ == 0 && z_ == 0; }
  bool is_hermitian() const { return phase_ % 2 == 0; }
  bool has_y() const { return (x_ & z_) != 0; }
  // Sign for Hermitian strings: +1 or -1.
  double sign() const;
  Complex factor() const;

  bool commutes_with(const PauliString& other) const;

  // Letters only, e.g. "IXZZI".
  std::string letters() const;
  // With the phase prefix when it is not +1.
  std::string to_string() const;

  // Restriction to the given qubits, in that order; phase kept.
  PauliString restricted(const Qubits& qubits) const;
  // Relabels qubit i of this string onto positions[i] of an n-qubit string.
  PauliString embedded(int n_qubits, const Qubits& positions) const;

  friend PauliString operator*(const PauliString& a, const PauliString& b);
  friend bool operator==(const PauliString& a, const PauliString& b) = default;

 private:
  int n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

// Real linear combination of phase-free Pauli strings in canonical merged
// form: at most one entry per letter pattern, kept in a fixed order.
class PauliSum {
 public:
  struct Term {
    double coefficient;
    PauliString string;
  };

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}

  // A sign on `p` is folded into the coefficient; p must be Hermitian.
  void add(double coefficient, const PauliString& p);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(double s);

  // Removes entries with |coefficient| <= tol.
  void prune(double tol);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::vector<Term> terms() const;
  double coefficient(const PauliString& p) const;

  // Sum of |c| over non-identity strings.
  double weight_norm() const;
  double identity_coefficient() const;

 private:
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  int n_qubits_ = 0;
  std::map<Key, double> terms_;
};

PauliSum operator+(PauliSum a, const PauliSum& b);
PauliSum operator*(double s, PauliSum a);

// out = P in, where P acts on an n-qubit register.
void apply_pauli(const PauliString& p, const Vector& in, Vector& out);

// <psi|P|psi> as a complex number.
Complex pauli_expectation(const PauliString& p, const Vector& psi);

// Dense 2^n x 2^n matrix of a Pauli string.
Matrix dense_matrix(const PauliString& p);
Matrix dense_matrix(const PauliSum& s, int n_qubits);

}  // namespace phv

#endif  // PHV_PAULI_HPP

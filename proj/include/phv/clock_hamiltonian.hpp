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

#ifndef PHV_CLOCK_HAMILTONIAN_HPP
#define PHV_CLOCK_HAMILTONIAN_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phv/circuit.hpp"
#include "phv/local_operator.hpp"
#include "phv/pauli.hpp"
#include "phv/verifier_circuit.hpp"

namespace phv {

enum class HamiltonianPart { kOut, kIn, kProp1, kProp2, kClock };

std::string_view part_name(HamiltonianPart part);

// Weights of the five parts; H_out is unweighted.
struct HamiltonianWeights {
  double j_in = 1.0;
  double j_1 = 1.0;
  double j_2 = 1.0;
  double j_clock = 1.0;

  // j_in <= j_2 <= j_1 <= j_clock, the ordering the weights are meant to have.
  bool ordered() const { return j_in <= j_2 && j_2 <= j_1 && j_1 <= j_clock; }
  double weight(HamiltonianPart part) const;
};

struct Thresholds {
  double a;
  double b;
};

// One weighted projector: coefficient * op.
struct HamiltonianTerm {
  HamiltonianPart part;
  double coefficient;
  LocalOperator op;

  Matrix matrix() const { return coefficient * op.matrix; }
};

// Unary-clock history Hamiltonian. Logical qubits 0..T-1 are the clock,
// T..T+n-1 the computational register.
struct LocalHamiltonian {
  int n_clock = 0;
  int n_comp = 0;
  std::vector<HamiltonianTerm> terms;
  HamiltonianWeights weights;
  std::optional<Thresholds> thresholds;

  int n_total() const { return n_clock + n_comp; }
  int m() const { return static_cast<int>(terms.size()); }
  int locality() const;
  int count(HamiltonianPart part) const;
  // The same Hamiltonian keeping only the given part.
  LocalHamiltonian only(HamiltonianPart part) const;
};

LocalHamiltonian build_clock_hamiltonian(const Circuit& c,
                                         const HamiltonianWeights& weights = {});

struct Witness {
  StateVector state;                 // normalized history state
  std::vector<StateVector> history;  // |psi(t)>, t = 0..T
  int n_clock = 0;
};

// Unary clock value t as a basis index of the clock register.
inline BasisIndex unary_clock(int t) { return (BasisIndex{1} << t) - 1; }

Witness build_witness(const Circuit& c);

// Independent preparation: uniform clock superposition followed by each gate
// controlled on its clock qubit.
StateVector prepare_witness_by_controlled_gates(const Circuit& c);

double energy(const LocalHamiltonian& h, const StateVector& s);
double part_energy(const LocalHamiltonian& h, const StateVector& s, HamiltonianPart part);

Matrix dense_hamiltonian(const LocalHamiltonian& h);
std::vector<double> spectrum(const LocalHamiltonian& h);
double ground_energy(const LocalHamiltonian& h);

// a = e/m, b = (1 - 2e)/(2m) with e = exp(-N gamma^2 / 2). Throws when a >= b.
Thresholds instance_thresholds(const VerificationParams& p, int m);
Thresholds thresholds_from_tail(double tail, int m);

PauliSum hamiltonian_pauli_terms(const LocalHamiltonian& h);

// Term j scaled by 1 / max(1, lambda_max) so it is a valid POVM element.
Matrix normalized_term(const LocalHamiltonian& h, int j);
// Normalization divisor max(1, lambda_max) of every term.
std::vector<double> term_scales(const LocalHamiltonian& h);
// Sum over terms of <term>/scale.
double normalized_energy(const LocalHamiltonian& h, const StateVector& s);

// Header line (JSON) followed by "<part> <coefficient> <pauli>" lines.
std::string export_hamiltonian(const LocalHamiltonian& h);

}  // namespace phv

#endif  // PHV_CLOCK_HAMILTONIAN_HPP

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

#ifndef PHV_MEASUREMENT_HPP
#define PHV_MEASUREMENT_HPP

#include <utility>

#include "phv/local_operator.hpp"
#include "phv/pauli.hpp"
#include "phv/rng.hpp"
#include "phv/state.hpp"

namespace phv {

struct MeasureResult {
  int outcome;  // +1 or -1
  StateVector state;
};

// Projective measurement of a Hermitian Pauli string.
MeasureResult measure_projective(const StateVector& state, const PauliString& obs,
                                 Rng& rng);

// Projective measurement of a Hermitian involution (O^2 = I) on `obs.support`,
// e.g. (X + Z)/sqrt(2).
MeasureResult measure_involution(const StateVector& state, const LocalOperator& obs,
                                 Rng& rng);

// (1 + sign <O>)/2 clamped to [0, 1].
double outcome_probability(double expectation_value, int outcome);

// Projects onto the `outcome` eigenspace of an involution and renormalizes.
// Throws NumericFault when the branch has probability below the degenerate
// threshold.
StateVector collapse_involution(const StateVector& state, const PauliString& obs,
                                int outcome);
StateVector collapse_involution(const StateVector& state, const LocalOperator& obs,
                                int outcome);

enum class PovmOutcome { kElement, kComplement };

struct PovmResult {
  PovmOutcome outcome;
  StateVector state;
};

// Two-outcome POVM {E, I - E} with Lueders (square root) collapse. `element`
// must be Hermitian with spectrum in [0, 1].
PovmResult povm_two_outcome(const StateVector& state, const LocalOperator& element,
                            Rng& rng);

// sqrt(E) or sqrt(I - E) for a validated POVM element.
Matrix povm_kraus(const Matrix& element, PovmOutcome outcome);

// Throws std::invalid_argument unless `m` is Hermitian with spectrum in [0,1].
void validate_povm_element(const Matrix& m);

}  // namespace phv

#endif  // PHV_MEASUREMENT_HPP

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

#ifndef PHV_VERIFIER_CIRCUIT_HPP
#define PHV_VERIFIER_CIRCUIT_HPP

#include <string_view>

#include "phv/circuit.hpp"

namespace phv {

// Promise parameters: p_S >= 1 - delta (yes) or p_S <= 1 - delta - gamma (no).
struct VerificationParams {
  double delta = 0.1;
  double gamma = 0.8;
  int n_reps = 6;
  double game_C = 1.0;
  double game_c = 1.0;
  double gamma_floor = 1e-3;

  // The no-case bound; fixed to 1 - delta - gamma.
  double epsilon() const { return 1.0 - delta - gamma; }
  void validate() const;
};

// Circuit on n+1 qubits whose last qubit (the flag, the single output) reads 1
// with probability exactly p_S: run c, flip the outputs where s has a 0, then
// AND the output register into the flag.
Circuit build_single_check(const Circuit& c, std::string_view s);

// ceil(N (1 - delta - gamma/2)), the number of set flags U_SUM requires.
int amplifier_threshold(const VerificationParams& p);

// N disjoint copies of build_single_check followed by U_SUM onto a final
// qubit. Copy r occupies qubits r(n+1) .. r(n+1)+n; the final qubit is
// N(n+1) and is the single output.
Circuit build_amplified(const Circuit& c, std::string_view s, const VerificationParams& p);

// The circuit compiled into the Hamiltonian. With one repetition U_SUM only
// copies the flag, so the single-check circuit is used directly.
Circuit build_verification_circuit(const Circuit& c, std::string_view s,
                                   const VerificationParams& p, int executed_reps);

// P[Bin(n, p) >= k], summed in log space.
double binomial_tail(int n, double p, int k);

// exp(-N gamma^2 / 2)
double hoeffding_bound(int n_reps, double gamma);

// 2 gamma^-2 log(n^c / C + 1), before rounding.
double repetition_bound(const VerificationParams& p, int n_for_soundness);

// Smallest integer N strictly above repetition_bound.
int required_repetitions(const VerificationParams& p, int n_for_soundness);

}  // namespace phv

#endif  // PHV_VERIFIER_CIRCUIT_HPP

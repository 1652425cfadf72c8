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

#include "phv/strategy.hpp"

#include <cmath>
#include <stdexcept>

namespace phv {

Matrix basis_observable(const std::string& basis) {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  if (basis == "X") {
    m << 0, 1, 1, 0;
  } else if (basis == "Z") {
    m << 1, 0, 0, -1;
  } else if (basis == "H+") {
    m << r, r, r, -r;
  } else if (basis == "H-") {
    m << -r, r, r, r;
  } else if (basis == "I") {
    m << 1, 0, 0, 1;
  } else {
    throw std::invalid_argument("unknown measurement basis '" + basis + "'");
  }
  return m;
}

bool is_basis_name(const std::string& basis) {
  return basis == "X" || basis == "Z" || basis == "H+" || basis == "H-" || basis == "I";
}

Qubits ProverStrategy::answer_registers(Environment&, int prover,
                                        const std::vector<int>& logical,
                                        const ShareMap& shares) const {
  Qubits out;
  for (int l : logical) out.push_back(shares.address(l, prover));
  return out;
}

void ProverStrategy::submit_measurements(Environment& env, int prover,
                                         const std::vector<MeasureInstruction>& instructions,
                                         const ShareMap& shares) const {
  std::vector<LocalMeasurement> ms;
  for (const auto& in : instructions) {
    if (in.basis == "I") continue;
    ms.push_back({shares.address(in.logical, prover), basis_observable(in.basis), in.basis});
  }
  env.prover_submit(prover, std::move(ms));
}

std::vector<int> ProverStrategy::report_bits(
    Environment& env, int prover, const std::vector<MeasureInstruction>& instructions) const {
  const std::vector<int> outcomes = env.prover_results(prover);
  std::vector<int> bits;
  size_t next = 0;
  for (const auto& in : instructions) {
    if (in.basis == "I") {
      bits.push_back(0);
      continue;
    }
    if (next >= outcomes.size()) throw std::logic_error("missing measurement outcome");
    bits.push_back(outcomes[next++] == -1 ? 1 : 0);
  }
  return bits;
}

StateVector WrongStateStrategy::prepare(const StateVector& encoded) const {
  Rng rng(seed_);
  StateVector out = random_state(1, rng);
  for (int q = 1; q < encoded.n_qubits(); ++q) out = tensor(out, random_state(1, rng));
  return out;
}

void SharePauliStrategy::corrupt(Environment& env, Qubit address) const {
  const PauliString p = PauliString::single(1, 0, letter_);
  env.adversarial_hook(prover_, dense_matrix(p), Qubits{address},
                       std::string("pauli-") + letter_char(letter_));
}

Qubits SharePauliStrategy::answer_registers(Environment& env, int prover,
                                            const std::vector<int>& logical,
                                            const ShareMap& shares) const {
  Qubits regs = ProverStrategy::answer_registers(env, prover, logical, shares);
  if (prover == prover_) {
    for (Qubit q : regs) corrupt(env, q);
  }
  return regs;
}

void SharePauliStrategy::submit_measurements(Environment& env, int prover,
                                             const std::vector<MeasureInstruction>& instructions,
                                             const ShareMap& shares) const {
  if (prover == prover_) {
    for (const auto& in : instructions) corrupt(env, shares.address(in.logical, prover));
  }
  ProverStrategy::submit_measurements(env, prover, instructions, shares);
}

Qubits ShareSwapStrategy::answer_registers(Environment& env, int prover,
                                           const std::vector<int>& logical,
                                           const ShareMap& shares) const {
  if (prover != prover_) return ProverStrategy::answer_registers(env, prover, logical, shares);
  Qubits out;
  for (int l : logical) out.push_back(shares.address((l + 1) % shares.n_logical(), prover));
  return out;
}

void ShareSwapStrategy::submit_measurements(Environment& env, int prover,
                                            const std::vector<MeasureInstruction>& instructions,
                                            const ShareMap& shares) const {
  if (prover != prover_) {
    ProverStrategy::submit_measurements(env, prover, instructions, shares);
    return;
  }
  std::vector<MeasureInstruction> shifted = instructions;
  for (auto& in : shifted) in.logical = (in.logical + 1) % shares.n_logical();
  ProverStrategy::submit_measurements(env, prover, shifted, shares);
}

Qubits TamperStrategy::answer_registers(Environment& env, int prover,
                                        const std::vector<int>& logical,
                                        const ShareMap& shares) const {
  Qubits regs = ProverStrategy::answer_registers(env, prover, logical, shares);
  if (prover == prover_) {
    for (Qubit q : regs) {
      env.prover_measure_local(prover, {q, basis_observable("Z"), "Z"});
    }
  }
  return regs;
}

void TamperStrategy::submit_measurements(Environment& env, int prover,
                                         const std::vector<MeasureInstruction>& instructions,
                                         const ShareMap& shares) const {
  if (prover != prover_) {
    ProverStrategy::submit_measurements(env, prover, instructions, shares);
    return;
  }
  std::vector<MeasureInstruction> forced = instructions;
  for (auto& in : forced) {
    if (in.basis != "I") in.basis = "Z";
  }
  ProverStrategy::submit_measurements(env, prover, forced, shares);
}

const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names = {"honest", "wrong-state", "share-pauli",
                                                 "share-swap", "tamper"};
  return names;
}

std::unique_ptr<ProverStrategy> make_strategy(const std::string& name, std::uint64_t seed,
                                              int prover) {
  if (prover < 0 || prover >= kNumProvers) throw std::out_of_range("no such prover");
  if (name == "honest") return std::make_unique<HonestStrategy>();
  if (name == "wrong-state") return std::make_unique<WrongStateStrategy>(seed);
  if (name == "share-pauli") return std::make_unique<SharePauliStrategy>(prover, PauliLetter::X);
  if (name == "share-swap") return std::make_unique<ShareSwapStrategy>(prover);
  if (name == "tamper") return std::make_unique<TamperStrategy>(prover);
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

}  // namespace phv

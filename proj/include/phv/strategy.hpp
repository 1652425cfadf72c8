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

#ifndef PHV_STRATEGY_HPP
#define PHV_STRATEGY_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "phv/code5.hpp"
#include "phv/environment.hpp"

namespace phv {

// One Ji-variant instruction: measure the prover's share of `logical` in
// `basis` (X, Z, H+, H- or I for "report 0").
struct MeasureInstruction {
  int logical;
  std::string basis;
};

// 2x2 observable for a basis name.
Matrix basis_observable(const std::string& basis);
bool is_basis_name(const std::string& basis);

// Prover behaviour shared by both games. The strategy only sees the
// environment through its prover-side, locality-checked operations.
class ProverStrategy {
 public:
  virtual ~ProverStrategy() = default;
  virtual std::string name() const = 0;
  // Joint state the provers start from, given the honest encoding.
  virtual StateVector prepare(const StateVector& encoded) const { return encoded; }
  // Quantum variant: registers prover `prover` hands over for the requested
  // logical qubits, one per entry.
  virtual Qubits answer_registers(Environment& env, int prover, const std::vector<int>& logical,
                                  const ShareMap& shares) const;
  // Classical variant, phase one: queue the measurements.
  virtual void submit_measurements(Environment& env, int prover,
                                   const std::vector<MeasureInstruction>& instructions,
                                   const ShareMap& shares) const;
  // Classical variant, phase two (after settle): one bit per instruction,
  // 1 meaning outcome -1.
  virtual std::vector<int> report_bits(Environment& env, int prover,
                                       const std::vector<MeasureInstruction>& instructions) const;
  // False when answers involve the strategy's own random measurements.
  virtual bool deterministic() const { return true; }
};

class HonestStrategy : public ProverStrategy {
 public:
  std::string name() const override { return "honest"; }
};

// Replaces the witness by a seeded random product state.
class WrongStateStrategy : public ProverStrategy {
 public:
  explicit WrongStateStrategy(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "wrong-state"; }
  StateVector prepare(const StateVector& encoded) const override;

 private:
  std::uint64_t seed_;
};

// One prover applies a Pauli to every share before handing it over or
// measuring it.
class SharePauliStrategy : public ProverStrategy {
 public:
  SharePauliStrategy(int prover, PauliLetter letter) : prover_(prover), letter_(letter) {}
  std::string name() const override { return "share-pauli"; }
  Qubits answer_registers(Environment& env, int prover, const std::vector<int>& logical,
                          const ShareMap& shares) const override;
  void submit_measurements(Environment& env, int prover,
                           const std::vector<MeasureInstruction>& instructions,
                           const ShareMap& shares) const override;

 private:
  void corrupt(Environment& env, Qubit address) const;
  int prover_;
  PauliLetter letter_;
};

// One prover answers for logical qubit l + 1 (mod L) whenever asked about l.
class ShareSwapStrategy : public ProverStrategy {
 public:
  explicit ShareSwapStrategy(int prover) : prover_(prover) {}
  std::string name() const override { return "share-swap"; }
  Qubits answer_registers(Environment& env, int prover, const std::vector<int>& logical,
                          const ShareMap& shares) const override;
  void submit_measurements(Environment& env, int prover,
                           const std::vector<MeasureInstruction>& instructions,
                           const ShareMap& shares) const override;

 private:
  int prover_;
};

// One prover measures its requested shares in the computational basis before
// answering: the quantum variant receives the collapsed shares, the classical
// variant receives the Z outcomes whatever basis was asked.
class TamperStrategy : public ProverStrategy {
 public:
  explicit TamperStrategy(int prover) : prover_(prover) {}
  std::string name() const override { return "tamper"; }
  Qubits answer_registers(Environment& env, int prover, const std::vector<int>& logical,
                          const ShareMap& shares) const override;
  void submit_measurements(Environment& env, int prover,
                           const std::vector<MeasureInstruction>& instructions,
                           const ShareMap& shares) const override;
  bool deterministic() const override { return false; }

 private:
  int prover_;
};

// honest, wrong-state, share-pauli, share-swap, tamper.
std::unique_ptr<ProverStrategy> make_strategy(const std::string& name, std::uint64_t seed = 7,
                                              int prover = 0);
const std::vector<std::string>& strategy_names();

}  // namespace phv

#endif  // PHV_STRATEGY_HPP

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

#ifndef PHV_PROTOCOL_HPP
#define PHV_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "phv/circuit.hpp"
#include "phv/clock_hamiltonian.hpp"
#include "phv/environment.hpp"
#include "phv/verifier_circuit.hpp"

namespace phv {

enum class Variant { kFv, kJi };

Variant parse_variant(const std::string& name);
std::string variant_name(Variant v);

struct ProtocolRun {
  explicit ProtocolRun(Circuit c) : circuit(std::move(c)) {}

  Circuit circuit;
  // Empty: the prover samples S from the circuit.
  std::string claimed;
  VerificationParams params;
  Variant variant = Variant::kFv;
  std::uint64_t seed = 1;
  // 0 selects the variant default.
  std::size_t rounds = 0;
  std::string strategy = "honest";
  int executed_reps = 1;
  // Dense spectra are computed up to this many logical qubits.
  int spectrum_qubits = 12;
  // The exact FV acceptance is computed up to this many physical qubits.
  int exhaustive_qubits = 20;
};

std::size_t default_rounds(Variant v);

// The instance the verifier runs on: verification circuit, Hamiltonian with
// thresholds, and the history-state witness.
struct PosthocInstance {
  std::string claimed;
  double p_claimed = 0.0;
  Circuit verification;
  LocalHamiltonian hamiltonian;
  Witness witness;
  int required_reps = 0;
  // Energy midway between the yes-case and no-case history-state energies.
  double energy_cutoff = 0.0;
};

PosthocInstance build_instance(const ProtocolRun& run, Rng& prover_rng);

struct PosthocResult {
  Json report;
  bool accept = false;
};

// Runs the four protocol steps and returns the report. Transcript lines are
// streamed to `transcript` when given: a setup line fixing S and the witness
// digest, then every round.
PosthocResult run_posthoc(const ProtocolRun& run, std::ostream* transcript = nullptr);

}  // namespace phv

#endif  // PHV_PROTOCOL_HPP

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

#ifndef PHV_ENVIRONMENT_HPP
#define PHV_ENVIRONMENT_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "phv/code5.hpp"
#include "phv/limits.hpp"
#include "phv/rng.hpp"
#include "phv/state.hpp"

namespace phv {

using Json = nlohmann::ordered_json;

inline constexpr int kVerifier = -1;
inline constexpr int kNumProvers = 5;

// One transcript line. Wire messages use the directions "verifier->prover"
// and "prover->verifier"; referee-side events use "prover-local" and
// "verifier-local".
struct Message {
  int round = 0;
  std::string direction;
  int prover = kVerifier;
  Json payload;
  Json outcome;

  Json to_json() const;
};

// True when the payload carries only classical data: no register handles,
// leaves are numbers, booleans or short strings.
bool is_classical_payload(const Json& payload);
bool is_wire_message(const Message& m);

// A single-qubit Hermitian involution to measure on one owned register.
struct LocalMeasurement {
  Qubit address;
  Matrix observable;  // 2x2, eigenvalues +1 and -1
  std::string label;
};

// Referee holding the provers' joint state. Provers and the verifier touch
// it only through locality-checked operations; every operation is logged.
//
// The state is kept as the shared initial state plus the list of operations
// applied since. It is materialized on demand, and every probability the
// environment needs is memoized by the operation history, so replaying an
// identical history in a later round costs no state-vector work. Caches
// affect speed only, never results.
class Environment {
 public:
  struct Options {
    // Private |0> ancillas allocated to each prover after the shared registers.
    int ancillas_per_prover = 0;
    // Budget for cached joint outcome distributions.
    std::size_t distribution_cache_bytes = std::size_t{1} << 30;
  };

  // owner[q] is the prover (0..4) holding register q, or kVerifier.
  Environment(StateVector joint, std::vector<int> owner, std::uint64_t seed);
  Environment(StateVector joint, std::vector<int> owner, std::uint64_t seed,
              const Options& options);

  // New game instance over the same initial state: ownership, transcript,
  // one-round bookkeeping and rng are reset; caches are shared.
  Environment fresh(int round, std::uint64_t seed) const;

  int n_qubits() const { return static_cast<int>(owner_.size()); }
  int owner(Qubit q) const;
  Qubits owned_by(int party) const;
  int round() const { return round_; }
  Rng& rng() { return rng_; }

  // Wire traffic. Each prover receives at most one query and sends at most
  // one response per instance.
  void send_query(int prover, Json payload);
  void send_response(int prover, Json payload);
  void log_event(int party, Json payload, Json outcome);

  // Prover-side operations.
  int prover_measure(int prover, const PauliString& obs);
  int prover_measure_local(int prover, const LocalMeasurement& m);
  void adversarial_hook(int prover, const Matrix& u, const Qubits& targets,
                        const std::string& label);
  void surrender_registers(int prover, const Qubits& addresses);

  // Deferred measurements: provers submit commuting single-register
  // measurements on distinct registers; settle() samples all of them jointly
  // from the Born distribution, which equals any sequential order.
  void prover_submit(int prover, std::vector<LocalMeasurement> measurements);
  void settle();
  std::vector<int> prover_results(int prover) const;

  // Verifier-side operations on surrendered registers.
  void verifier_apply(const Matrix& u, const Qubits& targets, const std::string& label);
  // Two-outcome instrument {accept_kraus, reject_kraus}; returns true on accept.
  bool verifier_measure(const Matrix& accept_kraus, const Matrix& reject_kraus,
                        const Qubits& targets, const std::string& label);
  // Exact mode: returns the accept-branch probability and collapses onto it.
  // A branch of vanishing probability returns 0 and leaves the state alone.
  double verifier_force(const Matrix& accept_kraus, const Qubits& targets,
                        const std::string& label);
  double verifier_expectation(const Matrix& observable, const Qubits& targets);

  // Referee view of the current joint state.
  const StateVector& state() const;

  const std::vector<Message>& transcript() const { return transcript_; }
  std::string transcript_jsonl() const;
  std::uint64_t transcript_hash() const;

 private:
  struct StateOp {
    Qubits targets;
    Matrix matrix;
    double scale = 1.0;  // 1/sqrt(p) after a Kraus branch
    // Z-basis projection: targets must read `bits`.
    bool basis_projection = false;
    std::uint64_t bits = 0;
  };

  struct Shared;

  Environment() = default;

  void check_owned(int party, const Qubits& targets, const char* what) const;
  void push_op(StateOp op, const std::string& key);
  double memo_expectation(const Matrix& observable, const Qubits& targets,
                          const std::string& key);
  void apply_op(Vector& amps, const StateOp& op) const;

  std::shared_ptr<Shared> shared_;
  std::vector<int> owner_;
  std::vector<StateOp> ops_;
  std::string fingerprint_;
  mutable std::optional<StateVector> state_;
  mutable std::size_t applied_ = 0;
  std::vector<Message> transcript_;
  std::map<int, int> queries_;
  std::map<int, int> responses_;
  std::map<int, std::vector<LocalMeasurement>> pending_;
  std::map<int, std::vector<int>> results_;
  int round_ = 0;
  Rng rng_{0};
};

// Encodes the logical state and hands share p of every logical qubit to
// prover p.
Environment init_environment(const StateVector& logical, const CodeSpec& spec,
                             std::uint64_t seed, const Environment::Options& options = {});

// Ownership vector for an encoded layout: address 5l + p belongs to prover p.
std::vector<int> share_ownership(const ShareMap& shares);

}  // namespace phv

#endif  // PHV_ENVIRONMENT_HPP

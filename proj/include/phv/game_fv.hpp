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

#ifndef PHV_GAME_FV_HPP
#define PHV_GAME_FV_HPP

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "phv/clock_hamiltonian.hpp"
#include "phv/environment.hpp"
#include "phv/stats.hpp"
#include "phv/strategy.hpp"

namespace phv {

// Term indices and logical indices are 0-based.
struct EnergyTest {
  int j;
};
struct CodeTest1 {
  int i;
};
struct CodeTest2 {
  int i;
  std::array<int, 3> s;  // sorted, contains i
  int special;
};
using VerifierQuery = std::variant<EnergyTest, CodeTest1, CodeTest2>;

std::string query_kind(const VerifierQuery& q);
Json query_to_json(const VerifierQuery& q);

struct WeightedQuery {
  double probability;
  VerifierQuery query;
};

// Quantum-verifier game for a local Hamiltonian and a logical witness.
class FvGame {
 public:
  FvGame(LocalHamiltonian h, const StateVector& logical_witness);

  const LocalHamiltonian& hamiltonian() const { return h_; }
  const ShareMap& shares() const { return shares_; }
  int n_logical() const { return shares_.n_logical(); }
  // CodeTest2 needs three distinct logical qubits; below that its weight
  // moves to CodeTest1.
  bool code_test2_enabled() const { return n_logical() >= 3; }
  const StateVector& encoded_witness() const { return encoded_; }
  const Matrix& energy_element(int j) const { return elements_.at(static_cast<size_t>(j)); }

  std::vector<WeightedQuery> query_distribution() const;
  VerifierQuery sample_query(Rng& rng) const;
  // Initial environment for a strategy; rounds are fresh() copies of it.
  Environment prototype(const ProverStrategy& strategy) const;

  // Plays one query. Sampled mode returns 1 or 0; exact mode forces the
  // accepting branch at every verifier measurement and returns its
  // probability.
  double play(Environment& env, const ProverStrategy& strategy, const VerifierQuery& q,
              bool exact) const;

 private:
  LocalHamiltonian h_;
  ShareMap shares_;
  StateVector encoded_;
  std::vector<Matrix> elements_;
};

VerifierQuery sample_query(const LocalHamiltonian& h, int n_logical, Rng& rng);

// Independent rounds seeded by round_seed(seed, r). Transcript lines are
// streamed to `transcript` when given.
GameStats play_rounds(const FvGame& game, const ProverStrategy& strategy, std::size_t rounds,
                      std::uint64_t seed, std::ostream* transcript = nullptr,
                      const Environment* prototype = nullptr);

// Sum over all queries of P(query) P(accept | query). Throws for strategies
// that are not deterministic given the query.
double exhaustive_acceptance(const FvGame& game, const ProverStrategy& strategy,
                             const Environment* prototype = nullptr);

// 1 - E_norm / (2m): honest acceptance on a code state whose decoded content
// has normalized energy E_norm.
double honest_acceptance(const LocalHamiltonian& h, const StateVector& logical);

}  // namespace phv

#endif  // PHV_GAME_FV_HPP

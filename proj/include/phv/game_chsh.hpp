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

#ifndef PHV_GAME_CHSH_HPP
#define PHV_GAME_CHSH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "phv/clock_hamiltonian.hpp"
#include "phv/code5.hpp"
#include "phv/environment.hpp"
#include "phv/stats.hpp"
#include "phv/strategy.hpp"

namespace phv {

// Stabilizer generators of one CodeSpec recast as CHSH tests between the four
// ordinary provers (side A) and the special prover t (side B).
struct ChshCompilation {
  int t = 4;
  Matrix w;        // cos(pi/8) X + sin(pi/8) Z
  Matrix h_plus;   // W X W = (X + Z)/sqrt(2)
  Matrix h_minus;  // W Z W = (X - Z)/sqrt(2)
  // X-bar, Z-bar, X-bar', Z-bar': generators with position t set to I.
  std::array<PauliString, 4> barred;
  // Generator index each barred operator came from.
  std::array<int, 4> source;
  // Per generator: +1 for X-type, -1 for Z-type (sign of the H- element).
  std::array<double, 4> pair_sign;
  // h_{2i}, h_{2i+1} for generator i, as 32x32 operators on the block.
  std::array<Matrix, 8> h_ops;
};

ChshCompilation compile_chsh(const CodeSpec& spec);

// C = A0 H+ + A0 H- + A1 H+ - A1 H-, with (A0, A1) = (X-bar, Z-bar) or the
// primed pair.
Matrix chsh_operator(const ChshCompilation& comp, bool primed);
std::pair<double, double> chsh_expectations(const ChshCompilation& comp, const StateVector& state,
                                            const Qubits& block);

// x picks A0/A1, y picks H+/H-; a, b are +-1. The (A1, H-) question needs
// a b = -1, every other question a b = +1.
bool chsh_win(int x, int y, int a, int b);
inline double chsh_win_probability(double c_value) { return 0.5 + c_value / 8.0; }

struct ChshRound {
  bool win;
  int x;
  int y;
  bool primed;
};

// One CHSH round on logical qubit `logical` with special prover comp.t.
ChshRound play_codespace_chsh(Environment& env, const ChshCompilation& comp,
                              const ProverStrategy& strategy, const ShareMap& shares,
                              int logical, Rng& rng);

// Term sampler for the transversal energy test.
class EnergySampler {
 public:
  explicit EnergySampler(const PauliSum& h);
  const std::vector<PauliSum::Term>& terms() const { return terms_; }
  double weight() const { return weight_; }
  double identity() const { return identity_; }
  std::size_t sample(Rng& rng) const;
  int n_logical() const { return n_logical_; }

 private:
  std::vector<PauliSum::Term> terms_;
  std::vector<double> cumulative_;
  double weight_ = 0.0;
  double identity_ = 0.0;
  int n_logical_ = 0;
};

struct EnergyRound {
  bool accept;  // per-round rule: reject iff sign(c) * outcome = +1
  double sample;  // c_I + W sign(c) outcome, unbiased for <H>
  std::size_t term;
  int outcome;
};

EnergyRound play_energy_test(Environment& env, const EnergySampler& sampler,
                             const ProverStrategy& strategy, const ShareMap& shares, Rng& rng);

struct EnergyBatch {
  std::size_t rounds = 0;
  double estimate = 0.0;
  double standard_error = 0.0;
  double threshold = 0.0;
  bool accept = false;
};

// R independent energy rounds; accepts iff the mean estimate <= threshold.
EnergyBatch run_energy_test(const Environment& prototype, const EnergySampler& sampler,
                            const ProverStrategy& strategy, const ShareMap& shares,
                            std::size_t rounds, std::uint64_t seed, double threshold);

// Classical-verifier game for a local Hamiltonian and a logical witness.
class JiGame {
 public:
  JiGame(const LocalHamiltonian& h, const StateVector& logical_witness);
  JiGame(const PauliSum& h, const StateVector& logical_witness);

  const ShareMap& shares() const { return shares_; }
  const EnergySampler& sampler() const { return sampler_; }
  const ChshCompilation& compilation(int t) const { return comps_.at(static_cast<size_t>(t)); }
  const StateVector& encoded_witness() const { return encoded_; }
  Environment prototype(const ProverStrategy& strategy) const;

  // 1/2 + (<H> - c_I) / (2W) rejection in the energy half: the per-round
  // energy acceptance for a state of energy `e`.
  double energy_accept_probability(double e) const;

 private:
  ShareMap shares_;
  EnergySampler sampler_;
  StateVector encoded_;
  std::array<ChshCompilation, kCodeLength> comps_;
};

struct JiReport {
  GameStats stats;
  Tally chsh;
  Tally energy;
  double energy_estimate = 0.0;  // mean of the energy-round samples
  double energy_standard_error = 0.0;
};

// Each round flips a fair coin between the energy test and a CHSH round on a
// uniformly chosen logical qubit and special prover.
JiReport play_ji_protocol(const JiGame& game, const ProverStrategy& strategy, std::size_t rounds,
                          std::uint64_t seed, std::ostream* transcript = nullptr,
                          const Environment* prototype = nullptr);

}  // namespace phv

#endif  // PHV_GAME_CHSH_HPP

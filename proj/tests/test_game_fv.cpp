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

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phv/circuit.hpp"
#include "phv/clock_hamiltonian.hpp"
#include "phv/game_fv.hpp"
#include "phv/log.hpp"
#include "phv/strategy.hpp"

namespace phv {
namespace {

// Three logical qubits, zero-energy history state.
struct Instance {
  LocalHamiltonian h;
  StateVector witness;
};

Instance designed_instance() {
  const Circuit c = parse_circuit("qubits 1\noutputs 0\nx 0\nz 0\n");
  Instance inst{build_clock_hamiltonian(c), build_witness(c).state};
  inst.h.thresholds = instance_thresholds(VerificationParams{}, inst.h.m());
  return inst;
}

const FvGame& designed_game() {
  static const FvGame game = [] {
    const Instance inst = designed_instance();
    return FvGame(inst.h, inst.witness);
  }();
  return game;
}

// Sum over terms of the normalized term embedded into the logical register.
Matrix normalized_sum(const LocalHamiltonian& h) {
  Matrix sum = Matrix::Zero(Eigen::Index{1} << h.n_total(), Eigen::Index{1} << h.n_total());
  for (int j = 0; j < h.m(); ++j) {
    sum += oracle::embed(normalized_term(h, j), h.terms[static_cast<size_t>(j)].op.support,
                         h.n_total());
  }
  return sum;
}

LocalHamiltonian projector_hamiltonian(int n_logical, int m) {
  LocalHamiltonian h;
  h.n_comp = n_logical;
  Matrix p1 = Matrix::Zero(2, 2);
  p1(1, 1) = 1;
  for (int j = 0; j < m; ++j) h.terms.push_back({HamiltonianPart::kIn, 1.0, {{j % n_logical}, p1}});
  return h;
}

// Registers each prover surrendered, read from the transcript.
std::map<int, std::size_t> surrendered_counts(const Environment& env) {
  std::map<int, std::size_t> out;
  for (const auto& m : env.transcript()) {
    if (m.direction == "prover-local" && m.payload.contains("surrender")) {
      out[m.prover] += m.payload["registers"].size();
    }
  }
  return out;
}

class ShortAnswer : public ProverStrategy {
 public:
  std::string name() const override { return "short"; }
  Qubits answer_registers(Environment& env, int prover, const std::vector<int>& logical,
                          const ShareMap& shares) const override {
    Qubits r = ProverStrategy::answer_registers(env, prover, logical, shares);
    if (prover == 3) r.pop_back();
    return r;
  }
};

class ForeignAnswer : public ProverStrategy {
 public:
  std::string name() const override { return "foreign"; }
  Qubits answer_registers(Environment&, int prover, const std::vector<int>& logical,
                          const ShareMap& shares) const override {
    Qubits r;
    for (int l : logical) r.push_back(shares.address(l, (prover + 1) % kNumProvers));
    return r;
  }
};

TEST(SampleQuery, DistributionMatchesSpecification) {
  const LocalHamiltonian h = projector_hamiltonian(5, 4);
  Rng rng(80);
  const std::size_t n = 100000;
  std::map<std::string, std::size_t> kinds;
  std::vector<std::size_t> per_term(4, 0);
  std::vector<std::size_t> special(5, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const VerifierQuery q = sample_query(h, 5, rng);
    ++kinds[query_kind(q)];
    if (const auto* e = std::get_if<EnergyTest>(&q)) ++per_term[static_cast<size_t>(e->j)];
    if (const auto* c2 = std::get_if<CodeTest2>(&q)) {
      ++special[static_cast<size_t>(c2->special)];
      EXPECT_TRUE(std::is_sorted(c2->s.begin(), c2->s.end()));
      EXPECT_NE(std::find(c2->s.begin(), c2->s.end(), c2->i), c2->s.end());
      EXPECT_TRUE(c2->s[0] != c2->s[1] && c2->s[1] != c2->s[2]);
    }
  }
  auto freq = [&](std::size_t k) { return static_cast<double>(k) / n; };
  EXPECT_NEAR(freq(kinds["energy"]), 0.5, oracle::four_sigma(0.5, n));
  EXPECT_NEAR(freq(kinds["code1"]), 0.25, oracle::four_sigma(0.25, n));
  EXPECT_NEAR(freq(kinds["code2"]), 0.25, oracle::four_sigma(0.25, n));
  for (std::size_t c : per_term) EXPECT_NEAR(freq(c), 0.125, oracle::four_sigma(0.125, n));
  for (std::size_t c : special) EXPECT_NEAR(freq(c), 0.05, oracle::four_sigma(0.05, n));
}

TEST(SampleQuery, ThreeLogicalQubitsForceTheTriple) {
  const LocalHamiltonian h = projector_hamiltonian(3, 2);
  Rng rng(81);
  for (int i = 0; i < 2000; ++i) {
    const VerifierQuery q = sample_query(h, 3, rng);
    if (const auto* c2 = std::get_if<CodeTest2>(&q)) {
      EXPECT_EQ(c2->s, (std::array<int, 3>{0, 1, 2}));
    }
  }
}

TEST(SampleQuery, TwoLogicalQubitsDisableCodeTest2) {
  std::vector<std::string> warnings;
  LogSink previous = set_log_sink([&](const std::string& m) { warnings.push_back(m); });
  const LocalHamiltonian h = projector_hamiltonian(2, 2);
  const FvGame game(h, StateVector(2));
  set_log_sink(previous);
  EXPECT_FALSE(game.code_test2_enabled());
  ASSERT_EQ(warnings.size(), 1u);
  double code1 = 0, total = 0;
  for (const auto& wq : game.query_distribution()) {
    EXPECT_NE(query_kind(wq.query), "code2");
    if (query_kind(wq.query) == "code1") code1 += wq.probability;
    total += wq.probability;
  }
  EXPECT_NEAR(code1, 0.5, 1e-15);
  EXPECT_NEAR(total, 1.0, 1e-15);
  Rng rng(82);
  for (int i = 0; i < 1000; ++i) EXPECT_NE(query_kind(sample_query(h, 2, rng)), "code2");
}

TEST(QueryDistribution, SumsToOne) {
  double total = 0;
  for (const auto& wq : designed_game().query_distribution()) total += wq.probability;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Construction, RejectsEmptyHamiltonian) {
  LocalHamiltonian h;
  h.n_comp = 1;
  EXPECT_THROW(FvGame(h, StateVector(1)), std::invalid_argument);
}

TEST(Honest, ShareCountsPerQuery) {
  const FvGame& game = designed_game();
  const HonestStrategy honest;
  const Environment proto = game.prototype(honest);
  int j2 = -1;
  for (int j = 0; j < game.hamiltonian().m(); ++j) {
    if (game.hamiltonian().terms[static_cast<size_t>(j)].op.arity() == 2) j2 = j;
  }
  ASSERT_GE(j2, 0);
  Environment e1 = proto.fresh(0, 1);
  game.play(e1, honest, EnergyTest{j2}, true);
  for (const auto& [p, n] : surrendered_counts(e1)) EXPECT_EQ(n, 2u) << p;
  Environment e2 = proto.fresh(0, 2);
  EXPECT_NEAR(game.play(e2, honest, CodeTest1{1}, true), 1.0, 1e-12);
  for (const auto& [p, n] : surrendered_counts(e2)) EXPECT_EQ(n, 1u) << p;
  Environment e3 = proto.fresh(0, 3);
  EXPECT_NEAR(game.play(e3, honest, CodeTest2{1, {0, 1, 2}, 3}, true), 1.0, 1e-12);
  const auto counts = surrendered_counts(e3);
  EXPECT_EQ(counts.size(), 5u);
  for (const auto& [p, n] : counts) EXPECT_EQ(n, p == 3 ? 3u : 1u) << p;
}

TEST(Verdict, FlippedShareFailsTheCodeTest) {
  const FvGame& game = designed_game();
  const SharePauliStrategy flip(2, PauliLetter::X);
  const Environment proto = game.prototype(flip);
  for (int i = 0; i < game.n_logical(); ++i) {
    Environment env = proto.fresh(0, 1);
    EXPECT_NEAR(game.play(env, flip, CodeTest1{i}, true), 0.0, 1e-12);
    Environment sampled = proto.fresh(0, 2);
    EXPECT_EQ(game.play(sampled, flip, CodeTest1{i}, false), 0.0);
  }
}

TEST(Verdict, MalformedAndForeignResponsesReject) {
  const FvGame& game = designed_game();
  for (const ProverStrategy* s :
       std::initializer_list<const ProverStrategy*>{new ShortAnswer, new ForeignAnswer}) {
    const Environment proto = game.prototype(*s);
    Environment env = proto.fresh(0, 4);
    EXPECT_EQ(game.play(env, *s, CodeTest1{0}, false), 0.0);
    bool flagged = false;
    for (const auto& m : env.transcript()) {
      if (m.direction == "verifier-local" && m.payload.contains("flag")) flagged = true;
    }
    EXPECT_TRUE(flagged) << s->name();
    delete s;
  }
}

TEST(Verdict, EveryStrategyAnswersEveryQuery) {
  const FvGame& game = designed_game();
  for (const auto& name : strategy_names()) {
    const auto s = make_strategy(name, 5, 1);
    const Environment proto = game.prototype(*s);
    int k = 0;
    for (const auto& wq : game.query_distribution()) {
      Environment env = proto.fresh(0, static_cast<std::uint64_t>(k++));
      const double v = game.play(env, *s, wq.query, false);
      EXPECT_TRUE(v == 0.0 || v == 1.0) << name << " " << query_to_json(wq.query).dump();
    }
  }
}

TEST(Exhaustive, ZeroEnergyWitnessIsAcceptedWithCertainty) {
  const FvGame& game = designed_game();
  const HonestStrategy honest;
  EXPECT_NEAR(exhaustive_acceptance(game, honest), 1.0, 1e-12);
  const Instance inst = designed_instance();
  EXPECT_NEAR(honest_acceptance(inst.h, inst.witness), 1.0, 1e-12);
}

TEST(Exhaustive, EqualityAtTheCompletenessBound) {
  const Instance inst = designed_instance();
  const double a = inst.h.thresholds->a;
  const int m = inst.h.m();
  Eigen::SelfAdjointEigenSolver<Matrix> es(normalized_sum(inst.h));
  const double top = es.eigenvalues().maxCoeff();
  ASSERT_GT(top, a * m);
  Eigen::Index arg;
  es.eigenvalues().maxCoeff(&arg);
  const Vector phi = es.eigenvectors().col(arg);
  const double s2 = a * m / top;
  const Vector mixed = std::sqrt(1 - s2) * inst.witness.amplitudes() + std::sqrt(s2) * phi;
  const StateVector psi = StateVector::normalized(inst.h.n_total(), mixed);
  EXPECT_NEAR(normalized_energy(inst.h, psi), a * m, 1e-9);
  const FvGame game(inst.h, psi);
  EXPECT_NEAR(exhaustive_acceptance(game, HonestStrategy()), 1 - a / 2, 1e-9);
}

TEST(Exhaustive, PerturbedWitnessesStayAboveCompleteness) {
  const Instance inst = designed_instance();
  const double a = inst.h.thresholds->a;
  const int m = inst.h.m();
  Rng rng(83);
  int trials = 0;
  while (trials < 10) {
    const double eps = 0.05 + 0.3 * rng.uniform();
    const Vector v = inst.witness.amplitudes() + eps * random_state(inst.h.n_total(), rng).amplitudes();
    const StateVector psi = StateVector::normalized(inst.h.n_total(), v);
    const double e = normalized_energy(inst.h, psi);
    if (e > a * m) continue;
    const FvGame game(inst.h, psi);
    const double exact = exhaustive_acceptance(game, HonestStrategy());
    EXPECT_GE(exact, 1 - a / 2 - 1e-12);
    EXPECT_NEAR(exact, 1 - e / (2 * m), 1e-9);
    EXPECT_NEAR(exact, honest_acceptance(inst.h, psi), 1e-9);
    ++trials;
  }
}

TEST(Exhaustive, RandomisedStrategiesAreNotEnumerable) {
  EXPECT_THROW(exhaustive_acceptance(designed_game(), TamperStrategy(0)), std::invalid_argument);
}

TEST(PlayRounds, SamplingAgreesWithExhaustive) {
  const Instance inst = designed_instance();
  Rng rng(84);
  const Vector v = inst.witness.amplitudes() + 0.4 * random_state(inst.h.n_total(), rng).amplitudes();
  const FvGame game(inst.h, StateVector::normalized(inst.h.n_total(), v));
  const HonestStrategy honest;
  const double exact = exhaustive_acceptance(game, honest);
  const std::size_t n = 10000;
  const GameStats st = play_rounds(game, honest, n, 85);
  EXPECT_EQ(st.rounds, n);
  EXPECT_NEAR(st.frequency, exact, oracle::four_sigma(exact, n));
  EXPECT_LE(st.wilson.low, st.frequency);
  EXPECT_GE(st.wilson.high, st.frequency);
  std::size_t per_test_total = 0;
  for (const auto& [kind, tally] : st.per_test) per_test_total += tally.rounds;
  EXPECT_EQ(per_test_total, n);
}

TEST(PlayRounds, HonestZeroEnergyAlwaysWins) {
  const GameStats st = play_rounds(designed_game(), HonestStrategy(), 10000, 86);
  EXPECT_EQ(st.accepted, st.rounds);
}

TEST(PlayRounds, WrongStateScoresBelowHonest) {
  const GameStats honest = play_rounds(designed_game(), HonestStrategy(), 10000, 87);
  const GameStats wrong = play_rounds(designed_game(), WrongStateStrategy(3), 10000, 87);
  EXPECT_LT(wrong.frequency + oracle::four_sigma(wrong.frequency, 10000), honest.frequency);
}

TEST(PlayRounds, SeedDeterminesFrequencyAndTranscript) {
  std::ostringstream ta, tb, tc;
  const TamperStrategy tamper(1);
  const GameStats a = play_rounds(designed_game(), tamper, 500, 88, &ta);
  const GameStats b = play_rounds(designed_game(), tamper, 500, 88, &tb);
  const GameStats c = play_rounds(designed_game(), tamper, 500, 89, &tc);
  EXPECT_EQ(a.frequency, b.frequency);
  EXPECT_EQ(a.transcript_digest, b.transcript_digest);
  EXPECT_EQ(ta.str(), tb.str());
  EXPECT_NE(ta.str(), tc.str());
}

}  // namespace
}  // namespace phv

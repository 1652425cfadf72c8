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

#include "phv/game_chsh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "phv/hash.hpp"
#include "phv/local_operator.hpp"

namespace phv {
namespace {

Matrix pauli2(PauliLetter l) { return dense_matrix(PauliString::single(1, 0, l)); }

Matrix on_share(const Matrix& m, int t) {
  return dense_matrix(LocalOperator{Qubits{t}, m}, kCodeLength);
}

std::string letter_name(PauliLetter l) { return std::string(1, letter_char(l)); }

int product_sign(const std::vector<int>& bits) {
  int s = 1;
  for (int b : bits) {
    if (b) s = -s;
  }
  return s;
}

}  // namespace

ChshCompilation compile_chsh(const CodeSpec& spec) {
  ChshCompilation c;
  c.t = spec.special_index;
  const double k = kPi / 8.0;
  c.w = std::cos(k) * pauli2(PauliLetter::X) + std::sin(k) * pauli2(PauliLetter::Z);
  c.h_plus = c.w * pauli2(PauliLetter::X) * c.w;
  c.h_minus = c.w * pauli2(PauliLetter::Z) * c.w;

  std::vector<int> x_type;
  std::vector<int> z_type;
  for (int i = 0; i < 4; ++i) {
    const PauliLetter l = spec.special_letter(i);
    if (l == PauliLetter::X) {
      x_type.push_back(i);
    } else if (l == PauliLetter::Z) {
      z_type.push_back(i);
    }
  }
  if (x_type.size() != 2 || z_type.size() != 2) {
    throw std::invalid_argument("compile_chsh: special-share letters must be two X and two Z");
  }
  c.source = {x_type[0], z_type[0], x_type[1], z_type[1]};
  for (int r = 0; r < 4; ++r) {
    PauliString b = spec.generators[static_cast<size_t>(c.source[static_cast<size_t>(r)])];
    b.set(c.t, PauliLetter::I);
    c.barred[static_cast<size_t>(r)] = b;
  }
  const Matrix hp = on_share(c.h_plus, c.t);
  const Matrix hm = on_share(c.h_minus, c.t);
  for (int i = 0; i < 4; ++i) {
    PauliString a = spec.generators[static_cast<size_t>(i)];
    const bool x = spec.special_letter(i) == PauliLetter::X;
    a.set(c.t, PauliLetter::I);
    const Matrix ad = dense_matrix(a);
    c.pair_sign[static_cast<size_t>(i)] = x ? 1.0 : -1.0;
    c.h_ops[static_cast<size_t>(2 * i)] = ad * hp;
    c.h_ops[static_cast<size_t>(2 * i + 1)] = c.pair_sign[static_cast<size_t>(i)] * (ad * hm);
  }
  return c;
}

Matrix chsh_operator(const ChshCompilation& comp, bool primed) {
  const Matrix a0 = dense_matrix(comp.barred[primed ? 2 : 0]);
  const Matrix a1 = dense_matrix(comp.barred[primed ? 3 : 1]);
  const Matrix hp = on_share(comp.h_plus, comp.t);
  const Matrix hm = on_share(comp.h_minus, comp.t);
  return a0 * hp + a0 * hm + a1 * hp - a1 * hm;
}

std::pair<double, double> chsh_expectations(const ChshCompilation& comp, const StateVector& state,
                                            const Qubits& block) {
  return {expectation(state, LocalOperator{block, chsh_operator(comp, false)}),
          expectation(state, LocalOperator{block, chsh_operator(comp, true)})};
}

bool chsh_win(int x, int y, int a, int b) {
  const int target = (x == 1 && y == 1) ? -1 : 1;
  return a * b == target;
}

ChshRound play_codespace_chsh(Environment& env, const ChshCompilation& comp,
                              const ProverStrategy& strategy, const ShareMap& shares,
                              int logical, Rng& rng) {
  if (logical < 0 || logical >= shares.n_logical()) {
    throw std::out_of_range("play_codespace_chsh: logical index");
  }
  ChshRound round{};
  round.primed = rng.coin();
  round.x = rng.coin() ? 1 : 0;
  round.y = rng.coin() ? 1 : 0;
  const PauliString& a_op = comp.barred[static_cast<size_t>((round.primed ? 2 : 0) + round.x)];

  std::array<std::vector<MeasureInstruction>, kNumProvers> instr;
  for (int p = 0; p < kNumProvers; ++p) {
    const std::string basis =
        p == comp.t ? (round.y == 0 ? "H+" : "H-") : letter_name(a_op.letter(p));
    instr[static_cast<size_t>(p)] = {{logical, basis}};
  }
  for (int p = 0; p < kNumProvers; ++p) {
    Json list = Json::array();
    for (const auto& in : instr[static_cast<size_t>(p)]) {
      list.push_back({{"logical", in.logical}, {"basis", in.basis}});
    }
    env.send_query(p, Json{{"measure", list}});
  }
  for (int p = 0; p < kNumProvers; ++p) {
    strategy.submit_measurements(env, p, instr[static_cast<size_t>(p)], shares);
  }
  env.settle();
  int a = static_cast<int>(a_op.sign());
  int b = 1;
  for (int p = 0; p < kNumProvers; ++p) {
    const std::vector<int> bits = strategy.report_bits(env, p, instr[static_cast<size_t>(p)]);
    env.send_response(p, Json{{"bits", bits}});
    if (p == comp.t) {
      b = product_sign(bits);
    } else {
      a *= product_sign(bits);
    }
  }
  round.win = chsh_win(round.x, round.y, a, b);
  return round;
}

EnergySampler::EnergySampler(const PauliSum& h) : n_logical_(h.n_qubits()) {
  for (const auto& term : h.terms()) {
    if (term.string.has_y()) {
      throw std::invalid_argument("energy test: Pauli term " + term.string.letters() +
                                  " contains Y");
    }
    if (term.string.is_identity()) {
      identity_ += term.coefficient;
      continue;
    }
    terms_.push_back(term);
    weight_ += std::abs(term.coefficient);
    cumulative_.push_back(weight_);
  }
}

std::size_t EnergySampler::sample(Rng& rng) const {
  if (terms_.empty()) throw std::logic_error("energy test: no non-identity terms");
  const double u = rng.uniform() * weight_;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

EnergyRound play_energy_test(Environment& env, const EnergySampler& sampler,
                             const ProverStrategy& strategy, const ShareMap& shares, Rng& rng) {
  if (sampler.n_logical() != shares.n_logical()) {
    throw std::invalid_argument("energy test: Hamiltonian width does not match the layout");
  }
  EnergyRound round{};
  round.term = sampler.sample(rng);
  const auto& term = sampler.terms()[round.term];
  std::vector<MeasureInstruction> instr;
  for (Qubit l : term.string.support()) {
    instr.push_back({l, letter_name(term.string.letter(l))});
  }
  Json list = Json::array();
  for (const auto& in : instr) list.push_back({{"logical", in.logical}, {"basis", in.basis}});
  for (int p = 0; p < kNumProvers; ++p) env.send_query(p, Json{{"measure", list}});
  for (int p = 0; p < kNumProvers; ++p) strategy.submit_measurements(env, p, instr, shares);
  env.settle();
  int outcome = 1;
  for (int p = 0; p < kNumProvers; ++p) {
    const std::vector<int> bits = strategy.report_bits(env, p, instr);
    env.send_response(p, Json{{"bits", bits}});
    outcome *= product_sign(bits);
  }
  const double sign = term.coefficient >= 0 ? 1.0 : -1.0;
  round.outcome = outcome;
  round.accept = sign * outcome != 1;
  round.sample = sampler.identity() + sampler.weight() * sign * outcome;
  return round;
}

EnergyBatch run_energy_test(const Environment& prototype, const EnergySampler& sampler,
                            const ProverStrategy& strategy, const ShareMap& shares,
                            std::size_t rounds, std::uint64_t seed, double threshold) {
  if (rounds == 0) throw std::invalid_argument("run_energy_test: rounds must be positive");
  EnergyBatch out;
  out.rounds = rounds;
  out.threshold = threshold;
  double sum = 0.0;
  double sum2 = 0.0;
  for (std::size_t r = 0; r < rounds; ++r) {
    const std::uint64_t rs = round_seed(seed, r);
    Rng rng(rs);
    Environment env = prototype.fresh(static_cast<int>(r), mix_seed(rs));
    const EnergyRound er = play_energy_test(env, sampler, strategy, shares, rng);
    sum += er.sample;
    sum2 += er.sample * er.sample;
  }
  const double n = static_cast<double>(rounds);
  out.estimate = sum / n;
  const double var = std::max(sum2 / n - out.estimate * out.estimate, 0.0);
  out.standard_error = std::sqrt(var / n);
  out.accept = out.estimate <= threshold;
  return out;
}

JiGame::JiGame(const LocalHamiltonian& h, const StateVector& logical_witness)
    : JiGame(hamiltonian_pauli_terms(h), logical_witness) {}

JiGame::JiGame(const PauliSum& h, const StateVector& logical_witness)
    : shares_(logical_witness.n_qubits()), sampler_(h) {
  if (h.n_qubits() != logical_witness.n_qubits()) {
    throw std::invalid_argument("witness width does not match the Hamiltonian");
  }
  check_state_cap(shares_.n_physical());
  encoded_ = encode_state(logical_witness, shares_);
  for (int t = 0; t < kCodeLength; ++t) comps_[static_cast<size_t>(t)] = compile_chsh(default_code(t));
}

Environment JiGame::prototype(const ProverStrategy& strategy) const {
  StateVector joint = strategy.prepare(encoded_);
  if (joint.n_qubits() != shares_.n_physical()) {
    throw std::invalid_argument("strategy prepared a state of the wrong width");
  }
  return Environment(std::move(joint), share_ownership(shares_), 0);
}

double JiGame::energy_accept_probability(double e) const {
  if (sampler_.weight() == 0.0) return 1.0;
  return 0.5 - (e - sampler_.identity()) / (2.0 * sampler_.weight());
}

JiReport play_ji_protocol(const JiGame& game, const ProverStrategy& strategy, std::size_t rounds,
                          std::uint64_t seed, std::ostream* transcript,
                          const Environment* prototype) {
  if (rounds == 0) throw std::invalid_argument("play_ji_protocol: rounds must be positive");
  const Environment proto = prototype ? *prototype : game.prototype(strategy);
  JiReport rep;
  rep.stats.strategy = strategy.name();
  Fnv1a digest;
  double sum = 0.0;
  double sum2 = 0.0;
  for (std::size_t r = 0; r < rounds; ++r) {
    const std::uint64_t rs = round_seed(seed, r);
    Rng rng(rs);
    Environment env = proto.fresh(static_cast<int>(r), mix_seed(rs));
    bool accept = false;
    if (rng.coin()) {
      env.log_event(kVerifier, Json{{"query", {{"test", "energy"}}}}, nullptr);
      const EnergyRound er = play_energy_test(env, game.sampler(), strategy, game.shares(), rng);
      accept = er.accept;
      sum += er.sample;
      sum2 += er.sample * er.sample;
      ++rep.energy.rounds;
      if (accept) ++rep.energy.accepted;
    } else {
      const int logical = static_cast<int>(rng.below(static_cast<std::uint64_t>(game.shares().n_logical())));
      const int t = static_cast<int>(rng.below(kCodeLength));
      env.log_event(kVerifier, Json{{"query", {{"test", "chsh"}, {"logical", logical}, {"t", t}}}},
                    nullptr);
      const ChshRound cr =
          play_codespace_chsh(env, game.compilation(t), strategy, game.shares(), logical, rng);
      accept = cr.win;
      ++rep.chsh.rounds;
      if (accept) ++rep.chsh.accepted;
    }
    env.log_event(kVerifier, Json{{"verdict", accept ? "accept" : "reject"}}, nullptr);
    ++rep.stats.rounds;
    if (accept) ++rep.stats.accepted;
    const std::string lines = env.transcript_jsonl();
    digest.update(lines);
    if (transcript) *transcript << lines;
  }
  rep.stats.per_test["energy"] = rep.energy;
  rep.stats.per_test["chsh"] = rep.chsh;
  rep.stats.transcript_digest = digest.digest();
  rep.stats.finish();
  if (rep.energy.rounds > 0) {
    const double n = static_cast<double>(rep.energy.rounds);
    rep.energy_estimate = sum / n;
    rep.energy_standard_error =
        std::sqrt(std::max(sum2 / n - rep.energy_estimate * rep.energy_estimate, 0.0) / n);
  }
  return rep;
}

}  // namespace phv

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

#include "phv/game_fv.hpp"

#include <algorithm>
#include <stdexcept>

#include "phv/hash.hpp"
#include "phv/log.hpp"
#include "phv/measurement.hpp"

namespace phv {
namespace {

const Matrix& decoder() {
  static const Matrix d = encoding_unitary().adjoint();
  return d;
}

// |0000><0000| on the four ancilla shares and its complement.
const Matrix& ancilla_pass() {
  static const Matrix m = [] {
    Matrix p = Matrix::Zero(16, 16);
    p(0, 0) = 1.0;
    return p;
  }();
  return m;
}

const Matrix& ancilla_fail() {
  static const Matrix m = Matrix::Identity(16, 16) - ancilla_pass();
  return m;
}

const Matrix& code_fail() {
  static const Matrix m = Matrix::Identity(32, 32) - codespace_projector_matrix();
  return m;
}

int choose_excluding(Rng& rng, int n, const std::vector<int>& excluded) {
  int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - static_cast<int>(excluded.size()))));
  for (int v = 0; v < n; ++v) {
    if (std::find(excluded.begin(), excluded.end(), v) != excluded.end()) continue;
    if (r-- == 0) return v;
  }
  throw std::logic_error("choose_excluding: empty range");
}

// Applies one verifier instrument, sampled or forced.
bool instrument(Environment& env, const Matrix& pass, const Matrix& fail, const Qubits& targets,
                const std::string& label, bool exact, double& weight) {
  if (exact) {
    weight *= env.verifier_force(pass, targets, label);
    return weight > 0.0;
  }
  return env.verifier_measure(pass, fail, targets, label);
}

}  // namespace

std::string query_kind(const VerifierQuery& q) {
  switch (q.index()) {
    case 0: return "energy";
    case 1: return "code1";
    default: return "code2";
  }
}

Json query_to_json(const VerifierQuery& q) {
  Json j;
  j["test"] = query_kind(q);
  if (const auto* e = std::get_if<EnergyTest>(&q)) {
    j["j"] = e->j;
  } else if (const auto* c1 = std::get_if<CodeTest1>(&q)) {
    j["i"] = c1->i;
  } else {
    const auto& c2 = std::get<CodeTest2>(q);
    j["i"] = c2.i;
    j["S"] = c2.s;
    j["special_prover"] = c2.special;
  }
  return j;
}

FvGame::FvGame(LocalHamiltonian h, const StateVector& logical_witness)
    : h_(std::move(h)), shares_(h_.n_total()) {
  if (h_.m() == 0) throw std::invalid_argument("game needs at least one Hamiltonian term");
  if (logical_witness.n_qubits() != h_.n_total()) {
    throw std::invalid_argument("witness width does not match the Hamiltonian");
  }
  check_state_cap(shares_.n_physical());
  encoded_ = encode_state(logical_witness, shares_);
  for (int j = 0; j < h_.m(); ++j) elements_.push_back(normalized_term(h_, j));
  if (!code_test2_enabled()) {
    log_warning("fewer than 3 logical qubits: CodeTest2 disabled, weight moved to CodeTest1");
  }
}

std::vector<WeightedQuery> FvGame::query_distribution() const {
  std::vector<WeightedQuery> out;
  const int m = h_.m();
  const int n = n_logical();
  for (int j = 0; j < m; ++j) out.push_back({0.5 / m, EnergyTest{j}});
  const double code1 = (code_test2_enabled() ? 0.25 : 0.5) / n;
  for (int i = 0; i < n; ++i) out.push_back({code1, CodeTest1{i}});
  if (code_test2_enabled()) {
    const int pairs = (n - 1) * (n - 2) / 2;
    const double w = 0.25 / (static_cast<double>(n) * pairs * kNumProvers);
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          if (a == i || b == i) continue;
          std::array<int, 3> s{i, a, b};
          std::sort(s.begin(), s.end());
          for (int p = 0; p < kNumProvers; ++p) out.push_back({w, CodeTest2{i, s, p}});
        }
      }
    }
  }
  return out;
}

VerifierQuery sample_query(const LocalHamiltonian& h, int n_logical, Rng& rng) {
  if (h.m() == 0) throw std::invalid_argument("sample_query: Hamiltonian has no terms");
  if (n_logical < 1) throw std::invalid_argument("sample_query: no logical qubits");
  const auto branch = rng.below(4);
  if (branch < 2) return EnergyTest{static_cast<int>(rng.below(static_cast<std::uint64_t>(h.m())))};
  const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_logical)));
  if (branch == 2 || n_logical < 3) return CodeTest1{i};
  const int a = choose_excluding(rng, n_logical, {i});
  const int b = choose_excluding(rng, n_logical, {i, a});
  std::array<int, 3> s{i, a, b};
  std::sort(s.begin(), s.end());
  return CodeTest2{i, s, static_cast<int>(rng.below(kNumProvers))};
}

VerifierQuery FvGame::sample_query(Rng& rng) const { return phv::sample_query(h_, n_logical(), rng); }

Environment FvGame::prototype(const ProverStrategy& strategy) const {
  StateVector joint = strategy.prepare(encoded_);
  if (joint.n_qubits() != shares_.n_physical()) {
    throw std::invalid_argument("strategy prepared a state of the wrong width");
  }
  return Environment(std::move(joint), share_ownership(shares_), 0);
}

double FvGame::play(Environment& env, const ProverStrategy& strategy, const VerifierQuery& q,
                    bool exact) const {
  std::array<std::vector<int>, kNumProvers> asked;
  std::vector<int> checked;
  if (const auto* e = std::get_if<EnergyTest>(&q)) {
    if (e->j < 0 || e->j >= h_.m()) throw std::out_of_range("EnergyTest term index");
    const Qubits& support = h_.terms[static_cast<size_t>(e->j)].op.support;
    for (auto& a : asked) a.assign(support.begin(), support.end());
    checked.assign(support.begin(), support.end());
  } else if (const auto* c1 = std::get_if<CodeTest1>(&q)) {
    for (auto& a : asked) a = {c1->i};
    checked = {c1->i};
  } else {
    const auto& c2 = std::get<CodeTest2>(q);
    for (int p = 0; p < kNumProvers; ++p) {
      if (p == c2.special) {
        asked[static_cast<size_t>(p)].assign(c2.s.begin(), c2.s.end());
      } else {
        asked[static_cast<size_t>(p)] = {c2.i};
      }
    }
    checked = {c2.i};
  }
  for (int l : checked) {
    if (l < 0 || l >= n_logical()) throw std::out_of_range("query names a missing logical qubit");
  }

  for (int p = 0; p < kNumProvers; ++p) {
    env.send_query(p, Json{{"logical", asked[static_cast<size_t>(p)]}});
  }
  std::array<Qubits, kNumProvers> regs;
  bool malformed = false;
  for (int p = 0; p < kNumProvers; ++p) {
    const auto& want = asked[static_cast<size_t>(p)];
    auto& got = regs[static_cast<size_t>(p)];
    try {
      got = strategy.answer_registers(env, p, want, shares_);
      env.surrender_registers(p, got);
    } catch (const LocalityViolation& err) {
      env.log_event(kVerifier, Json{{"flag", "locality"}, {"prover", p}, {"detail", err.what()}},
                    "reject");
      got.clear();
      malformed = true;
    }
    env.send_response(p, Json{{"registers", got}});
    if (got.size() != want.size()) malformed = true;
  }
  if (malformed) {
    env.log_event(kVerifier, Json{{"flag", "malformed-response"}}, "reject");
    return 0.0;
  }

  auto block_of = [&](int l) {
    Qubits blk;
    for (int p = 0; p < kNumProvers; ++p) {
      const auto& want = asked[static_cast<size_t>(p)];
      const auto k = std::find(want.begin(), want.end(), l) - want.begin();
      blk.push_back(regs[static_cast<size_t>(p)][static_cast<size_t>(k)]);
    }
    return blk;
  };

  double weight = 1.0;
  if (const auto* e = std::get_if<EnergyTest>(&q)) {
    std::vector<Qubits> blocks;
    for (int l : checked) blocks.push_back(block_of(l));
    for (const auto& blk : blocks) env.verifier_apply(decoder(), blk, "decode");
    Qubits logical_regs;
    for (const auto& blk : blocks) {
      const Qubits anc(blk.begin() + 1, blk.end());
      if (!instrument(env, ancilla_pass(), ancilla_fail(), anc, "ancilla-check", exact, weight)) {
        return 0.0;
      }
      logical_regs.push_back(blk[0]);
    }
    const Matrix& element = elements_[static_cast<size_t>(e->j)];
    const Matrix pass = povm_kraus(element, PovmOutcome::kComplement);
    const Matrix fail = povm_kraus(element, PovmOutcome::kElement);
    if (!instrument(env, pass, fail, logical_regs, "energy-" + std::to_string(e->j), exact,
                    weight)) {
      return 0.0;
    }
    return exact ? weight : 1.0;
  }
  const Qubits blk = block_of(checked.front());
  if (!instrument(env, codespace_projector_matrix(), code_fail(), blk, "code-check", exact,
                  weight)) {
    return 0.0;
  }
  return exact ? weight : 1.0;
}

GameStats play_rounds(const FvGame& game, const ProverStrategy& strategy, std::size_t rounds,
                      std::uint64_t seed, std::ostream* transcript,
                      const Environment* prototype) {
  if (rounds == 0) throw std::invalid_argument("play_rounds: rounds must be positive");
  const Environment proto = prototype ? *prototype : game.prototype(strategy);
  GameStats st;
  st.strategy = strategy.name();
  Fnv1a digest;
  for (std::size_t r = 0; r < rounds; ++r) {
    const std::uint64_t rs = round_seed(seed, r);
    Rng verifier_rng(rs);
    Environment env = proto.fresh(static_cast<int>(r), mix_seed(rs));
    const VerifierQuery q = game.sample_query(verifier_rng);
    env.log_event(kVerifier, Json{{"query", query_to_json(q)}}, nullptr);
    const bool accept = game.play(env, strategy, q, false) > 0.5;
    env.log_event(kVerifier, Json{{"verdict", accept ? "accept" : "reject"}}, nullptr);
    auto& t = st.per_test[query_kind(q)];
    ++t.rounds;
    ++st.rounds;
    if (accept) {
      ++t.accepted;
      ++st.accepted;
    }
    const std::string lines = env.transcript_jsonl();
    digest.update(lines);
    if (transcript) *transcript << lines;
  }
  st.transcript_digest = digest.digest();
  st.finish();
  return st;
}

double exhaustive_acceptance(const FvGame& game, const ProverStrategy& strategy,
                             const Environment* prototype) {
  if (!strategy.deterministic()) {
    throw std::invalid_argument("exhaustive_acceptance: strategy '" + strategy.name() +
                                "' is not enumerable");
  }
  const Environment proto = prototype ? *prototype : game.prototype(strategy);
  double total = 0.0;
  for (const auto& wq : game.query_distribution()) {
    Environment env = proto.fresh(0, 0);
    total += wq.probability * game.play(env, strategy, wq.query, true);
  }
  return total;
}

double honest_acceptance(const LocalHamiltonian& h, const StateVector& logical) {
  return 1.0 - normalized_energy(h, logical) / (2.0 * h.m());
}

}  // namespace phv

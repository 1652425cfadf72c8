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

#include "phv/protocol.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <streambuf>

#include "phv/game_chsh.hpp"
#include "phv/game_fv.hpp"
#include "phv/hash.hpp"
#include "phv/report.hpp"
#include "phv/strategy.hpp"

namespace phv {
namespace {

// Forwards to an optional stream while hashing every byte.
class HashingBuf : public std::streambuf {
 public:
  explicit HashingBuf(std::ostream* sink) : sink_(sink) {}
  std::uint64_t digest() const { return fnv_.digest(); }

 protected:
  int_type overflow(int_type ch) override {
    if (ch == traits_type::eof()) return traits_type::not_eof(ch);
    const char c = traits_type::to_char_type(ch);
    xsputn(&c, 1);
    return ch;
  }
  std::streamsize xsputn(const char* s, std::streamsize n) override {
    fnv_.update(s, static_cast<std::size_t>(n));
    if (sink_) sink_->write(s, n);
    return n;
  }

 private:
  std::ostream* sink_;
  Fnv1a fnv_;
};

std::uint64_t state_digest(const StateVector& s) {
  Fnv1a f;
  f.update(s.amplitudes().data(), sizeof(Complex) * static_cast<std::size_t>(s.amplitudes().size()));
  return f.digest();
}

constexpr double kHonestChsh = (2.0 + 1.4142135623730951) / 4.0;

}  // namespace

Variant parse_variant(const std::string& name) {
  if (name == "fv") return Variant::kFv;
  if (name == "ji") return Variant::kJi;
  throw std::invalid_argument("unknown game variant '" + name + "' (expected fv or ji)");
}

std::string variant_name(Variant v) { return v == Variant::kFv ? "fv" : "ji"; }

std::size_t default_rounds(Variant v) { return v == Variant::kFv ? 10000 : 200000; }

PosthocInstance build_instance(const ProtocolRun& run, Rng& prover_rng) {
  run.params.validate();
  if (run.circuit.output_qubits().size() != 1) {
    throw std::invalid_argument(
        "post hoc instances need a single-output circuit: the multi-output AND check has no "
        "exact decomposition into the supported gate set");
  }
  std::string claimed = run.claimed.empty() ? sample_output(run.circuit, prover_rng) : run.claimed;
  const double p = output_probability(run.circuit, claimed);
  Circuit v = expand_macros(build_verification_circuit(run.circuit, claimed, run.params,
                                                       run.executed_reps));
  LocalHamiltonian h = build_clock_hamiltonian(v);
  h.thresholds = instance_thresholds(run.params, h.m());
  Witness w = build_witness(v);
  const double cutoff = (run.params.delta + run.params.gamma / 2.0) / (v.depth() + 1);
  const int reqd = required_repetitions(run.params, run.circuit.n_qubits());
  return PosthocInstance{std::move(claimed), p, std::move(v), std::move(h), std::move(w), reqd,
                         cutoff};
}

PosthocResult run_posthoc(const ProtocolRun& run, std::ostream* transcript) {
  Rng prover_rng(round_seed(run.seed, 0));
  const PosthocInstance inst = build_instance(run, prover_rng);
  const LocalHamiltonian& h = inst.hamiltonian;
  const Thresholds th = *h.thresholds;
  const std::size_t rounds = run.rounds == 0 ? default_rounds(run.variant) : run.rounds;
  const auto strategy = make_strategy(run.strategy, mix_seed(run.seed));

  HashingBuf hbuf(transcript);
  std::ostream tout(&hbuf);
  // Steps 1-3 are complete before the first query: the setup line fixes S
  // and the witness.
  Message setup{-1, "setup", kVerifier,
                Json{{"claimed", inst.claimed},
                     {"witness_digest", digest_string(state_digest(inst.witness.state))},
                     {"n_logical", h.n_total()},
                     {"m", h.m()}},
                nullptr};
  tout << setup.to_json().dump() << '\n';

  const double e_raw = energy(h, inst.witness.state);
  const double e_norm = normalized_energy(h, inst.witness.state);
  const std::uint64_t game_seed = round_seed(run.seed, 1);

  Json report;
  report["protocol"] = {{"variant", variant_name(run.variant)},
                        {"strategy", strategy->name()},
                        {"seed", run.seed},
                        {"rounds", rounds}};
  report["claim"] = {{"S", inst.claimed},
                     {"sampled", run.claimed.empty()},
                     {"p_S", inst.p_claimed}};
  report["instance"] = {{"circuit_qubits", run.circuit.n_qubits()},
                        {"verification_qubits", inst.verification.n_qubits()},
                        {"T", inst.verification.depth()},
                        {"n_logical", h.n_total()},
                        {"n_physical", kCodeLength * h.n_total()},
                        {"m", h.m()},
                        {"k", h.locality()},
                        {"a", th.a},
                        {"b", th.b},
                        {"delta", run.params.delta},
                        {"gamma", run.params.gamma},
                        {"executed_reps", run.executed_reps},
                        {"threshold_reps", run.params.n_reps},
                        {"required_reps", inst.required_reps}};
  Json energies;
  energies["witness_raw"] = e_raw;
  energies["witness_normalized"] = e_norm;
  energies["ground"] = h.n_total() <= run.spectrum_qubits ? Json(ground_energy(h)) : Json(nullptr);
  energies["cutoff"] = inst.energy_cutoff;
  report["energies"] = energies;

  double frequency = 0.0;
  double threshold = 0.0;
  Json game;
  if (run.variant == Variant::kFv) {
    const FvGame g(h, inst.witness.state);
    const Environment proto = g.prototype(*strategy);
    const GameStats st = play_rounds(g, *strategy, rounds, game_seed, &tout, &proto);
    game = stats_to_json(st);
    const bool enumerable =
        strategy->deterministic() && g.shares().n_physical() <= run.exhaustive_qubits;
    game["exhaustive"] =
        enumerable ? Json(exhaustive_acceptance(g, *strategy, &proto)) : Json(nullptr);
    game["honest_prediction"] = honest_acceptance(h, inst.witness.state);
    game["code_test2"] = g.code_test2_enabled();
    frequency = st.frequency;
    threshold = 1.0 - inst.energy_cutoff / (2.0 * h.m());
  } else {
    const JiGame g(h, inst.witness.state);
    const Environment proto = g.prototype(*strategy);
    const JiReport rep = play_ji_protocol(g, *strategy, rounds, game_seed, &tout, &proto);
    game = ji_report_to_json(rep);
    game["exhaustive"] = nullptr;
    game["honest_prediction"] = 0.5 * g.energy_accept_probability(e_raw) + 0.5 * kHonestChsh;
    game["pauli_weight"] = g.sampler().weight();
    frequency = rep.stats.frequency;
    threshold = 0.5 * g.energy_accept_probability(inst.energy_cutoff) + 0.5 * kHonestChsh;
  }
  tout.flush();
  game["transcript_hash"] = digest_string(hbuf.digest());
  report["game"] = game;

  const bool accept = frequency > threshold;
  const double n = std::max(1, run.circuit.n_qubits());
  report["verdict"] = {
      {"threshold", threshold},
      {"completeness_target", 1.0 - th.a / 2.0},
      {"soundness_target", 1.0 - run.params.game_C * th.b * std::pow(n, -run.params.game_c)},
      {"accept", accept}};
  return {std::move(report), accept};
}

}  // namespace phv

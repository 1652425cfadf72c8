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

// Command-line driver: circuit simulation, Hamiltonian export, games and the
// post hoc protocol.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "phv/clock_hamiltonian.hpp"
#include "phv/protocol.hpp"
#include "phv/strategy.hpp"
#include "phv/sweep.hpp"

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;

struct Globals {
  std::uint64_t seed = 1;
  std::string caps;
  std::string out;
  std::string format;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void apply_caps(const std::string& caps) {
  if (caps.empty()) return;
  const auto comma = caps.find(',');
  phv::limits().max_state_qubits = std::stoi(caps.substr(0, comma));
  if (comma != std::string::npos) phv::limits().max_matrix_qubits = std::stoi(caps.substr(comma + 1));
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
}

std::string dump(const phv::Json& j) { return j.dump(2) + "\n"; }

struct InstanceArgs {
  std::string circuit;
  std::string claimed;
  int n_reps = phv::VerificationParams{}.n_reps;
  double delta = phv::VerificationParams{}.delta;
  double gamma = phv::VerificationParams{}.gamma;

  void add(CLI::App* sub, bool claim_required) {
    sub->add_option("circuit", circuit, "circuit file")->required()->check(CLI::ExistingFile);
    auto* s = sub->add_option("S", claimed, "claimed output bit string");
    if (claim_required) s->required();
    sub->add_option("--N", n_reps, "repetitions behind the thresholds a, b")
        ->check(CLI::PositiveNumber);
    sub->add_option("--delta", delta, "yes-case failure bound");
    sub->add_option("--gamma", gamma, "promise gap");
  }

  phv::ProtocolRun run(std::uint64_t seed) const {
    phv::ProtocolRun r(phv::load_circuit(circuit));
    r.claimed = claimed;
    r.params.n_reps = n_reps;
    r.params.delta = delta;
    r.params.gamma = gamma;
    r.seed = seed;
    return r;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Post hoc verification of quantum computations: circuits, clock Hamiltonians, "
               "five-prover games"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("--caps", g.caps, "qubit caps: STATE[,MATRIX]");
  app.add_option("--out", g.out, "write the result to this file");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* simulate = app.add_subcommand("simulate", "sample output strings of a circuit");
  std::string sim_circuit;
  int shots = 1;
  simulate->add_option("circuit", sim_circuit, "circuit file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--shots", shots, "number of samples")->check(CLI::PositiveNumber);

  auto* prob = app.add_subcommand("prob", "exact probability of an output string");
  std::string prob_circuit;
  std::string prob_s;
  prob->add_option("circuit", prob_circuit, "circuit file")->required()->check(CLI::ExistingFile);
  prob->add_option("S", prob_s, "output bit string")->required();

  auto* ham = app.add_subcommand("hamiltonian", "export the clock Hamiltonian of the check circuit");
  InstanceArgs ham_args;
  ham_args.add(ham, true);

  auto* wit = app.add_subcommand("witness-energy", "energy of the history-state witness");
  InstanceArgs wit_args;
  wit_args.add(wit, true);

  auto* game = app.add_subcommand("game", "play a verification game");
  InstanceArgs game_args;
  std::string game_variant;
  std::string strategy = "honest";
  std::size_t rounds = 0;
  std::string transcript;
  game->add_option("variant", game_variant, "fv or ji")->required()->check(CLI::IsMember({"fv", "ji"}));
  game_args.add(game, true);
  game->add_option("--strategy", strategy, "prover strategy")
      ->check(CLI::IsMember(phv::strategy_names()));
  game->add_option("--rounds", rounds, "rounds (0 rejected)");
  game->add_option("--transcript", transcript, "write JSON-lines transcript here");

  auto* posthoc = app.add_subcommand("posthoc", "run the full protocol; exit 0 accept, 1 reject");
  InstanceArgs post_args;
  std::string post_variant = "fv";
  post_args.add(posthoc, false);
  posthoc->add_option("--variant", post_variant, "fv or ji")->check(CLI::IsMember({"fv", "ji"}));
  posthoc->add_option("--strategy", strategy, "prover strategy")
      ->check(CLI::IsMember(phv::strategy_names()));
  posthoc->add_option("--rounds", rounds, "rounds; default depends on the variant");
  posthoc->add_option("--transcript", transcript, "write JSON-lines transcript here");

  auto* sweep = app.add_subcommand("sweep", "run a parameter grid and write CSV");
  std::string sweep_config;
  sweep->add_option("config", sweep_config, "JSON grid config")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    apply_caps(g.caps);
    if (*simulate) {
      const phv::Circuit c = phv::load_circuit(sim_circuit);
      phv::Rng rng(phv::round_seed(g.seed, 0));
      std::vector<std::string> samples;
      for (int i = 0; i < shots; ++i) samples.push_back(phv::sample_output(c, rng));
      if (g.format == "json") {
        emit(g, dump(phv::Json{{"samples", samples}}));
      } else {
        std::string text = g.format == "csv" ? "sample\n" : "";
        for (const auto& s : samples) text += s + "\n";
        emit(g, text);
      }
      return 0;
    }
    if (*prob) {
      const double p = phv::output_probability(phv::load_circuit(prob_circuit), prob_s);
      if (g.format == "json") {
        emit(g, dump(phv::Json{{"S", prob_s}, {"p", p}}));
      } else if (g.format == "csv") {
        emit(g, "S,p\n" + prob_s + "," + fmt(p) + "\n");
      } else {
        std::ostringstream os;
        os << p << '\n';
        emit(g, os.str());
      }
      return 0;
    }
    if (*ham || *wit) {
      const InstanceArgs& ia = *ham ? ham_args : wit_args;
      phv::Rng rng(phv::round_seed(g.seed, 0));
      const phv::PosthocInstance inst = phv::build_instance(ia.run(g.seed), rng);
      const auto& h = inst.hamiltonian;
      if (*ham) {
        std::string text = phv::export_hamiltonian(h);
        if (h.n_total() <= 12) {
          const auto spec = phv::spectrum(h);
          phv::Json s = phv::Json::array();
          for (size_t i = 0; i < spec.size() && i < 8; ++i) s.push_back(spec[i]);
          text += "# spectrum_lowest " + s.dump() + "\n";
        }
        emit(g, text);
        return 0;
      }
      const double e = phv::energy(h, inst.witness.state);
      phv::Json j;
      j["S"] = inst.claimed;
      j["p_S"] = inst.p_claimed;
      j["T"] = inst.verification.depth();
      j["energy"] = e;
      j["normalized_energy"] = phv::normalized_energy(h, inst.witness.state);
      j["predicted_out_energy"] = (1.0 - inst.p_claimed) / (inst.verification.depth() + 1);
      phv::Json parts;
      for (auto part : {phv::HamiltonianPart::kIn, phv::HamiltonianPart::kOut,
                        phv::HamiltonianPart::kProp1, phv::HamiltonianPart::kProp2,
                        phv::HamiltonianPart::kClock}) {
        parts[std::string(phv::part_name(part))] = phv::part_energy(h, inst.witness.state, part);
      }
      j["parts"] = parts;
      emit(g, dump(j));
      return 0;
    }
    if (*game || *posthoc) {
      if (rounds == 0 && *game) {
        std::cerr << "error: --rounds must be a positive integer\n";
        return kExitError;
      }
      const InstanceArgs& ia = *game ? game_args : post_args;
      phv::ProtocolRun run = ia.run(g.seed);
      run.variant = phv::parse_variant(*game ? game_variant : post_variant);
      run.strategy = strategy;
      run.rounds = rounds;
      std::ofstream tfile;
      if (!transcript.empty()) {
        tfile.open(transcript, std::ios::binary);
        if (!tfile) throw std::runtime_error("cannot write " + transcript);
      }
      const phv::PosthocResult res = phv::run_posthoc(run, transcript.empty() ? nullptr : &tfile);
      emit(g, dump(res.report));
      if (*game) return 0;
      return res.accept ? kExitAccept : kExitReject;
    }
    if (*sweep) {
      std::ifstream f(sweep_config);
      const phv::Json config = phv::Json::parse(f);
      const auto base = std::filesystem::path(sweep_config).parent_path().string();
      const auto rows = phv::run_sweep(phv::expand_sweep(config, base.empty() ? "." : base));
      if (g.format == "json") {
        emit(g, dump(phv::Json(phv::parse_csv(phv::sweep_csv(rows)))));
      } else {
        emit(g, phv::sweep_csv(rows));
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

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

// Acceptance driver: prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "phv/circuit.hpp"
#include "phv/clock_hamiltonian.hpp"
#include "phv/code5.hpp"
#include "phv/environment.hpp"
#include "phv/game_chsh.hpp"
#include "phv/game_fv.hpp"
#include "phv/limits.hpp"
#include "phv/protocol.hpp"
#include "phv/strategy.hpp"
#include "phv/verifier_circuit.hpp"

namespace {

using namespace phv;

const std::string kDir = PHV_CIRCUIT_DIR;
const double kSqrt2 = std::sqrt(2.0);

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "failed: ";
      detail << what << "; ";
      ok = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CorpusCase {
  std::string file;
  std::string true_s;
  std::string false_s;
};

const std::vector<CorpusCase>& corpus() {
  static const std::vector<CorpusCase> cases = {
      {"not.circ", "1", "0"}, {"hh.circ", "0", "1"}, {"hzh.circ", "1", "0"}, {"copy.circ", "1", "0"}};
  return cases;
}

LocalHamiltonian instance_for(const Circuit& c, const std::string& s, Witness* witness = nullptr) {
  const Circuit v = expand_macros(build_verification_circuit(c, s, VerificationParams{}, 1));
  if (witness) *witness = build_witness(v);
  return build_clock_hamiltonian(v);
}

Circuit random_circuit(Rng& rng, int n, int depth) {
  std::vector<Gate> gates;
  for (int i = 0; i < depth; ++i) {
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const auto kind = rng.below(n > 1 ? 5 : 3);
    if (kind == 0) gates.push_back(Gate::x(a));
    if (kind == 1) gates.push_back(Gate::z(a));
    if (kind == 2) gates.push_back(Gate::h(a));
    if (kind >= 3) {
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
      if (b >= a) ++b;
      gates.push_back(kind == 3 ? Gate::cnot(a, b) : Gate::cz(a, b));
    }
  }
  return Circuit(n, gates, {static_cast<Qubit>(rng.below(static_cast<std::uint64_t>(n)))});
}

LocalHamiltonian designed_hamiltonian(StateVector* witness) {
  const Circuit c = parse_circuit("qubits 1\noutputs 0\nx 0\nz 0\n");
  LocalHamiltonian h = build_clock_hamiltonian(c);
  h.thresholds = instance_thresholds(VerificationParams{}, h.m());
  *witness = build_witness(c).state;
  return h;
}

void criterion1(Check& c) {
  double worst_time = 0;
  for (const auto& cc : corpus()) {
    const auto t0 = std::chrono::steady_clock::now();
    Witness w;
    const LocalHamiltonian h = instance_for(load_circuit(kDir + "/" + cc.file), cc.true_s, &w);
    const double e = energy(h, w.state);
    const double g = ground_energy(h);
    const double dt = seconds_since(t0);
    worst_time = std::max(worst_time, dt);
    c.require(std::abs(e) <= 1e-9, cc.file + " witness energy " + std::to_string(e));
    c.require(std::abs(g) <= 1e-9, cc.file + " ground energy " + std::to_string(g));
    c.require(dt < 10, cc.file + " runtime " + std::to_string(dt));
  }
  c.detail << corpus().size() << " corpus instances, slowest " << worst_time << " s";
}

void criterion2(Check& c) {
  for (const auto& cc : corpus()) {
    const Circuit circ = load_circuit(kDir + "/" + cc.file);
    const double gap = ground_energy(instance_for(circ, cc.false_s)) -
                       ground_energy(instance_for(circ, cc.true_s));
    c.require(gap > 0, cc.file + " gap " + std::to_string(gap));
    c.detail << cc.file << " gap " << gap << "; ";
  }
}

void criterion3(Check& c) {
  Rng rng(301);
  double worst = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Circuit circ = random_circuit(rng, 1 + static_cast<int>(rng.below(2)), 1 + static_cast<int>(rng.below(4)));
    const LocalHamiltonian h = build_clock_hamiltonian(circ);
    const StateVector w = build_witness(circ).state;
    const double p = output_probability(circ, "1");
    const double got = energy(h.only(HamiltonianPart::kOut), w);
    worst = std::max(worst, std::abs(got - (1 - p) / (circ.depth() + 1)));
  }
  c.require(worst <= 1e-9, "deviation " + std::to_string(worst));
  c.detail << "10 random circuits, max deviation " << worst;
}

void criterion4(Check& c) {
  std::size_t strings = 0;
  for (const auto& cc : corpus()) {
    const Circuit circ = load_circuit(kDir + "/" + cc.file);
    for (const std::string& s : {cc.true_s, cc.false_s}) {
      const PauliSum ps = hamiltonian_pauli_terms(instance_for(circ, s));
      for (const auto& term : ps.terms()) {
        ++strings;
        c.require(term.string.letters().find('Y') == std::string::npos,
                  cc.file + " has " + term.string.letters());
      }
    }
  }
  c.detail << strings << " Pauli strings over " << 2 * corpus().size() << " Hamiltonians, none with Y";
}

void criterion5(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const Circuit coin = load_circuit(kDir + "/coin.circ");
  double worst = 0;
  for (int n = 1; n <= 4; ++n) {
    for (double delta : {0.1, 0.3}) {
      VerificationParams p;
      p.delta = delta;
      p.gamma = 0.2;
      p.n_reps = n;
      const int k = static_cast<int>(std::ceil(n * (1 - p.delta - p.gamma / 2)));
      const double got = output_probability(build_amplified(coin, "0", p), "1");
      worst = std::max(worst, std::abs(got - oracle::binomial_tail(n, 0.5, k)));
    }
  }
  c.require(worst <= 1e-9, "amplifier deviation " + std::to_string(worst));
  std::size_t points = 0;
  for (int n : {1, 2, 3, 5, 8, 13, 21, 34, 55, 89}) {
    for (double delta : {0.05, 0.15}) {
      for (double gamma : {0.1, 0.3, 0.5, 0.7, 0.85}) {
        if (delta + gamma >= 1) continue;
        for (double frac : {0.0, 0.5}) {
          VerificationParams p;
          p.delta = delta;
          p.gamma = gamma;
          p.n_reps = n;
          const int k = amplifier_threshold(p);
          const double bound = std::exp(-n * gamma * gamma / 2);
          // One yes-side and one no-side probability per point.
          const double yes = 1 - delta + frac * delta;
          const double no = (1 - delta - gamma) * (1 - frac);
          c.require(oracle::binomial_tail(n, yes, k) >= 1 - bound - 1e-12, "yes envelope");
          c.require(oracle::binomial_tail(n, no, k) <= bound + 1e-12, "no envelope");
          points += 2;
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  c.require(points >= 200, "grid has " + std::to_string(points) + " points");
  c.require(dt < 5, "runtime " + std::to_string(dt));
  c.detail << "N<=4 max deviation " << worst << ", " << points << " envelope points, " << dt << " s";
}

void criterion6(Check& c) {
  VerificationParams p;
  p.gamma = 0.1;
  p.game_C = 1;
  p.game_c = 1;
  const int n322 = required_repetitions(p, 4);
  c.require(n322 == 322, "got " + std::to_string(n322));
  c.require(200 * std::log(5.0) < 322 && 200 * std::log(5.0) > 321, "322 is not the next integer");
  struct Point {
    double gamma, C, c;
    int n;
  };
  for (const Point& pt : {Point{0.2, 1, 1, 9}, Point{0.05, 2, 2, 3}, Point{0.5, 0.5, 1.5, 16}}) {
    VerificationParams q;
    q.gamma = pt.gamma;
    q.delta = 0.05;
    q.game_C = pt.C;
    q.game_c = pt.c;
    const double direct = 2 / (pt.gamma * pt.gamma) * std::log(std::pow(pt.n, pt.c) / pt.C + 1);
    const int expect = static_cast<int>(std::floor(direct)) + 1;
    const int got = required_repetitions(q, pt.n);
    c.require(got == expect, "grid point gives " + std::to_string(got) + " vs " + std::to_string(expect));
    c.detail << got << " ";
  }
  c.detail << "and N=" << n322;
}

void criterion7(Check& c) {
  Rng rng(307);
  double worst_fid = 1;
  for (int n = 1; n <= 3; ++n) {
    const ShareMap shares(n);
    const StateVector psi = random_state(n, rng);
    worst_fid = std::min(worst_fid, fidelity(decode_state(encode_state(psi, shares), shares), psi));
  }
  c.require(worst_fid >= 1 - 1e-10, "fidelity " + std::to_string(worst_fid));
  double worst_err = 0;
  int errors = 0;
  for (int t = 0; t < 5; ++t) {
    const StateVector enc = encode_state(random_state(1, rng), ShareMap(1));
    for (int share = 0; share < 5; ++share) {
      for (char letter : {'X', 'Y', 'Z'}) {
        std::string s = "IIIII";
        s[static_cast<size_t>(share)] = letter;
        const StateVector bad = apply_unitary(enc, dense_matrix(PauliString::parse(s)), {0, 1, 2, 3, 4});
        worst_err = std::max(worst_err, std::abs(codespace_projector_expectation(bad, {0, 1, 2, 3, 4})));
        ++errors;
      }
    }
  }
  c.require(worst_err <= 1e-10, "error residue " + std::to_string(worst_err));
  const ChshCompilation comp = compile_chsh(default_code(4));
  const std::vector<std::string> want = {"IXZZI", "XIXZI", "ZZXII", "ZXIXI"};
  for (int i = 0; i < 4; ++i) {
    c.require(comp.barred[static_cast<size_t>(i)].to_string() == want[static_cast<size_t>(i)],
              "barred " + comp.barred[static_cast<size_t>(i)].to_string());
  }
  c.detail << "fidelity " << worst_fid << ", " << errors << " single errors (max residue " << worst_err
           << "), barred operators IXZZI XIXZI ZZXII ZXIXI";
}

void criterion8(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  StateVector w;
  const LocalHamiltonian h = designed_hamiltonian(&w);
  const double a = h.thresholds->a;
  const int m = h.m();
  const HonestStrategy honest;
  const double exact0 = exhaustive_acceptance(FvGame(h, w), honest);
  c.require(std::abs(exact0 - 1) <= 1e-12, "zero-energy exhaustive " + std::to_string(exact0));
  const GameStats st0 = play_rounds(FvGame(h, w), honest, 10000, 801);
  c.require(st0.frequency == 1.0, "zero-energy sampled " + std::to_string(st0.frequency));
  Rng rng(802);
  int trials = 0;
  double lowest = 1;
  double worst_z = 0;
  while (trials < 10) {
    const double eps = 0.05 + 0.3 * rng.uniform();
    const Vector v = w.amplitudes() + eps * random_state(h.n_total(), rng).amplitudes();
    const StateVector psi = StateVector::normalized(h.n_total(), v);
    if (normalized_energy(h, psi) > a * m) continue;
    const FvGame game(h, psi);
    const double exact = exhaustive_acceptance(game, honest);
    lowest = std::min(lowest, exact);
    c.require(exact >= 1 - a / 2 - 1e-12, "perturbed exhaustive " + std::to_string(exact));
    if (trials < 3) {
      const GameStats st = play_rounds(game, honest, 10000, 803 + static_cast<std::uint64_t>(trials));
      const double sigma = binomial_sigma(exact, 10000);
      worst_z = std::max(worst_z, std::abs(st.frequency - exact) / sigma);
      c.require(std::abs(st.frequency - exact) <= 4 * sigma, "sampled vs exhaustive");
    }
    ++trials;
  }
  const double dt = seconds_since(t0);
  c.require(dt < 60, "runtime " + std::to_string(dt));
  c.detail << "exhaustive 1 at zero energy, lowest perturbed " << lowest << " >= " << 1 - a / 2
           << ", sampling within " << worst_z << " sigma, " << dt << " s";
}

void criterion9(Check& c) {
  Rng rng(309);
  double worst_c = 0, worst_sum = 0, worst_pair = 0;
  for (int t = 0; t < 5; ++t) {
    const CodeSpec spec = default_code(t);
    const ChshCompilation comp = compile_chsh(spec);
    for (int i = 0; i < 4; ++i) {
      const Matrix sum = comp.h_ops[static_cast<size_t>(2 * i)] + comp.h_ops[static_cast<size_t>(2 * i + 1)];
      worst_pair = std::max(
          worst_pair,
          (sum - kSqrt2 * oracle::pauli_string(spec.generators[static_cast<size_t>(i)].letters())).norm());
    }
    for (int k = 0; k < 4; ++k) {
      const StateVector code = encode_state(random_state(1, rng), ShareMap(1));
      const auto [cv, cp] = chsh_expectations(comp, code, {0, 1, 2, 3, 4});
      worst_c = std::max({worst_c, std::abs(cv - 2 * kSqrt2), std::abs(cp - 2 * kSqrt2)});
      double total = 0;
      for (const Matrix& hm : comp.h_ops) total += expectation(code, LocalOperator{{0, 1, 2, 3, 4}, hm});
      worst_sum = std::max(worst_sum, std::abs(total - 4 * kSqrt2));
    }
  }
  c.require(worst_c <= 1e-9, "CHSH value deviation");
  c.require(worst_sum <= 1e-9, "sum deviation");
  c.require(worst_pair <= 1e-12, "pair deviation");

  const std::size_t rounds = 100000;
  StateVector w;
  const LocalHamiltonian h = designed_hamiltonian(&w);
  const JiGame game(h, w);
  const HonestStrategy honest;
  const Environment proto = game.prototype(honest);
  Rng r(310);
  std::size_t wins = 0;
  for (std::size_t i = 0; i < rounds; ++i) {
    Environment env = proto.fresh(static_cast<int>(i), r.next());
    const int t = static_cast<int>(r.below(5));
    const int l = static_cast<int>(r.below(static_cast<std::uint64_t>(game.shares().n_logical())));
    wins += play_codespace_chsh(env, game.compilation(t), honest, game.shares(), l, r).win;
  }
  const double rate = static_cast<double>(wins) / static_cast<double>(rounds);
  const double target = (2 + kSqrt2) / 4;
  c.require(std::abs(rate - target) <= 4 * binomial_sigma(target, rounds), "win rate " + std::to_string(rate));
  c.detail << "max |C-2sqrt2| " << worst_c << ", max |sum-4sqrt2| " << worst_sum << ", max pair residue "
           << worst_pair << ", win rate " << rate << " vs " << target;
}

void criterion10(Check& c) {
  StateVector w;
  const LocalHamiltonian h = designed_hamiltonian(&w);
  const JiGame game(h, w);
  std::size_t total = 0, wire = 0;
  for (const std::string& name : strategy_names()) {
    std::ostringstream t;
    play_ji_protocol(game, *make_strategy(name), 1000, 1001, &t);
    std::istringstream lines(t.str());
    std::string line;
    while (std::getline(lines, line)) {
      const Json j = Json::parse(line);
      ++total;
      const std::string dir = j["direction"];
      if (dir == "verifier->prover" || dir == "prover->verifier") {
        ++wire;
        c.require(is_classical_payload(j["payload"]), name + ": " + line);
      }
    }
  }
  c.require(wire > 0, "no wire messages");
  c.detail << wire << " wire messages of " << total << " transcript lines, all classical";
}

void criterion11(Check& c) {
  StateVector w;
  const LocalHamiltonian h = designed_hamiltonian(&w);
  const FvGame fv(h, w);
  const JiGame ji(h, w);
  const std::size_t rounds = 10000;
  const HonestStrategy honest;
  const double fv_honest = play_rounds(fv, honest, rounds, 1101).frequency;
  const double ji_honest = play_ji_protocol(ji, honest, rounds, 1101).stats.frequency;
  c.detail << "honest fv " << fv_honest << " ji " << ji_honest;
  for (const char* name : {"wrong-state", "share-pauli", "share-swap", "tamper"}) {
    const auto s = make_strategy(name);
    const double f = play_rounds(fv, *s, rounds, 1102).frequency;
    const double j = play_ji_protocol(ji, *s, rounds, 1102).stats.frequency;
    const double sf = std::hypot(binomial_sigma(f, rounds), binomial_sigma(fv_honest, rounds));
    const double sj = std::hypot(binomial_sigma(j, rounds), binomial_sigma(ji_honest, rounds));
    c.require(fv_honest - f > 4 * sf, std::string(name) + " fv gap");
    c.require(ji_honest - j > 4 * sj, std::string(name) + " ji gap");
    c.detail << "; " << name << " fv " << f << " ji " << j;
  }
}

void criterion12(Check& c) {
  Vector plus = Vector::Constant(4, Complex(1.0));
  Environment env = init_environment(StateVector::normalized(2, plus), default_code(4), 13);
  const std::size_t before = env.transcript().size();
  const Vector amps = env.state().amplitudes();
  const int n = env.n_qubits();
  Rng rng(1201);
  std::size_t rejected = 0, silent = 0;
  const std::size_t attempts = 10000;
  for (std::size_t i = 0; i < attempts; ++i) {
    const int prover = static_cast<int>(rng.below(kNumProvers));
    Qubit foreign;
    do {
      foreign = static_cast<Qubit>(rng.below(static_cast<std::uint64_t>(n)));
    } while (env.owner(foreign) == prover);
    Qubits targets{foreign};
    if (rng.coin()) targets.insert(targets.begin(), env.owned_by(prover)[rng.below(2)]);
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    try {
      switch (rng.below(6)) {
        case 0: {
          PauliString obs(n);
          for (Qubit q : targets) obs.set(q, rng.coin() ? PauliLetter::X : PauliLetter::Z);
          env.prover_measure(prover, obs);
          break;
        }
        case 1: env.prover_measure_local(prover, {foreign, x, "X"}); break;
        case 2: {
          const auto d = Eigen::Index{1} << targets.size();
          env.adversarial_hook(prover, Matrix::Identity(d, d), targets, "fuzz");
          break;
        }
        case 3: env.surrender_registers(prover, targets); break;
        case 4: {
          std::vector<LocalMeasurement> ms;
          for (Qubit q : targets) ms.push_back({q, x, "X"});
          env.prover_submit(prover, ms);
          break;
        }
        default: env.verifier_apply(Matrix::Identity(2, 2), {foreign}, "fuzz"); break;
      }
      ++silent;
    } catch (const LocalityViolation&) {
      ++rejected;
    }
  }
  c.require(silent == 0, std::to_string(silent) + " silent violations");
  c.require(rejected == attempts, "rejections " + std::to_string(rejected));
  c.require(env.transcript().size() == before, "transcript changed");
  c.require((env.state().amplitudes() - amps).norm() < 1e-15, "state changed");
  c.detail << rejected << " of " << attempts << " attempts rejected, " << silent << " silent";
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void criterion13(Check& c) {
  const std::string tmp = std::filesystem::temp_directory_path().string() + "/phv_acceptance_";
  for (const std::string variant : {"fv", "ji"}) {
    std::vector<std::string> reports, transcripts;
    for (int rep = 0; rep < 2; ++rep) {
      const std::string out = tmp + variant + std::to_string(rep) + ".json";
      const std::string tr = tmp + variant + std::to_string(rep) + ".jsonl";
      const std::string cmd = std::string(PHV_CLI_PATH) + " --seed 13 --out " + out + " posthoc " + kDir +
                              "/not.circ 1 --variant " + variant + " --rounds 2000 --transcript " + tr;
      const int status = std::system(cmd.c_str());
      c.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, variant + " exit status");
      reports.push_back(slurp(out));
      transcripts.push_back(slurp(tr));
      std::remove(out.c_str());
      std::remove(tr.c_str());
    }
    c.require(!reports[0].empty() && reports[0] == reports[1], variant + " reports differ");
    c.require(!transcripts[0].empty() && transcripts[0] == transcripts[1], variant + " transcripts differ");
    const Json j = Json::parse(reports[0]);
    c.detail << variant << " hash " << j["game"]["transcript_hash"].get<std::string>() << " ("
             << reports[0].size() << " report bytes); ";
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"witness zero-mode", criterion1},     {"spectral ordering", criterion2},
      {"output-branch energy", criterion3},  {"no-Y expansion", criterion4},
      {"amplifier exactness", criterion5},   {"repetition bound", criterion6},
      {"code integrity", criterion7},        {"FV completeness", criterion8},
      {"CHSH values", criterion9},           {"classical wire", criterion10},
      {"adversary gallery", criterion11},    {"isolation fuzzing", criterion12},
      {"determinism", criterion13}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << "exception: " << e.what();
    }
    failures += !c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << c.detail.str() << ") [" << seconds_since(t0) << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}

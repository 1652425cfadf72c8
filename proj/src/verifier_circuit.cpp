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

#include "phv/verifier_circuit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace phv {

void VerificationParams::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(delta + gamma < 1.0)) throw std::invalid_argument("delta + gamma must be below 1");
  if (gamma < gamma_floor) throw std::invalid_argument("gamma below configured floor");
  if (n_reps < 1) throw std::invalid_argument("n_reps must be at least 1");
  if (!(game_C > 0.0)) throw std::invalid_argument("soundness constant C must be positive");
  if (!(game_c >= 0.0)) throw std::invalid_argument("soundness exponent c must be >= 0");
}

Circuit build_single_check(const Circuit& c, std::string_view s) {
  const auto bits = parse_bits(s);
  const auto& outs = c.output_qubits();
  if (bits.size() != outs.size()) {
    throw std::invalid_argument("claimed string length does not match output register");
  }
  const Qubit flag = c.n_qubits();
  std::vector<Gate> gates = c.gates();
  for (size_t j = 0; j < outs.size(); ++j) {
    if (bits[j] == 0) gates.push_back(Gate::x(outs[j]));
  }
  gates.push_back(Gate::and_into(outs, flag));
  return Circuit(c.n_qubits() + 1, std::move(gates), {flag});
}

int amplifier_threshold(const VerificationParams& p) {
  const double raw = p.n_reps * (1.0 - p.delta - p.gamma / 2.0);
  // Absorb representation error so that e.g. 5 * 0.6 does not round up to 4.
  return static_cast<int>(std::ceil(raw - 1e-9));
}

Circuit build_amplified(const Circuit& c, std::string_view s, const VerificationParams& p) {
  p.validate();
  const Circuit single = build_single_check(c, s);
  const int width = single.n_qubits();
  const int n_reps = p.n_reps;
  const int threshold = amplifier_threshold(p);
  if (threshold > n_reps) {
    throw std::invalid_argument("amplifier threshold exceeds the number of copies");
  }
  const int total = n_reps * width + 1;
  check_state_cap(total);

  std::vector<Gate> gates;
  Qubits flags;
  for (int r = 0; r < n_reps; ++r) {
    const int base = r * width;
    for (Gate g : single.gates()) {
      for (Qubit& q : g.targets) q += base;
      gates.push_back(std::move(g));
    }
    flags.push_back(base + single.output_qubits()[0]);
  }
  const Qubit final_qubit = n_reps * width;
  gates.push_back(Gate::at_least(flags, final_qubit, std::max(threshold, 0)));
  return Circuit(total, std::move(gates), {final_qubit});
}

Circuit build_verification_circuit(const Circuit& c, std::string_view s,
                                   const VerificationParams& p, int executed_reps) {
  if (executed_reps < 1) throw std::invalid_argument("executed_reps must be at least 1");
  if (executed_reps == 1) return build_single_check(c, s);
  VerificationParams q = p;
  q.n_reps = executed_reps;
  return build_amplified(c, s, q);
}

double binomial_tail(int n, double p, int k) {
  if (n < 0 || p < 0.0 || p > 1.0) throw std::invalid_argument("binomial_tail: bad arguments");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lgn = std::lgamma(n + 1.0);
  // Sum from the largest term outwards in log space.
  std::vector<double> logs;
  logs.reserve(static_cast<size_t>(n - k + 1));
  double peak = -std::numeric_limits<double>::infinity();
  for (int j = k; j <= n; ++j) {
    const double l = lgn - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) + j * lp + (n - j) * lq;
    logs.push_back(l);
    peak = std::max(peak, l);
  }
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - peak);
  return std::min(1.0, acc * std::exp(peak));
}

double hoeffding_bound(int n_reps, double gamma) {
  return std::exp(-n_reps * gamma * gamma / 2.0);
}

double repetition_bound(const VerificationParams& p, int n_for_soundness) {
  if (!(p.gamma > 0.0) || !(p.game_C > 0.0)) {
    throw std::invalid_argument("repetition_bound: gamma and C must be positive");
  }
  if (n_for_soundness < 1) throw std::invalid_argument("repetition_bound: n must be >= 1");
  return 2.0 / (p.gamma * p.gamma) *
         std::log(std::pow(static_cast<double>(n_for_soundness), p.game_c) / p.game_C + 1.0);
}

int required_repetitions(const VerificationParams& p, int n_for_soundness) {
  const double bound = repetition_bound(p, n_for_soundness);
  const double n = std::floor(bound) + 1.0;
  if (!(n < 2147483648.0)) throw std::overflow_error("required repetitions exceed 2^31");
  return static_cast<int>(n);
}

}  // namespace phv

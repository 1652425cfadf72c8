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

#include "phv/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "phv/local_operator.hpp"

namespace phv {

Gate Gate::and_into(Qubits controls, Qubit target) {
  controls.push_back(target);
  return {GateKind::kAnd, std::move(controls)};
}

Gate Gate::at_least(Qubits controls, Qubit target, int threshold) {
  controls.push_back(target);
  return {GateKind::kThreshold, std::move(controls), threshold};
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kI: return "id";
    case GateKind::kX: return "x";
    case GateKind::kZ: return "z";
    case GateKind::kH: return "h";
    case GateKind::kCnot: return "cnot";
    case GateKind::kCz: return "cz";
    case GateKind::kAnd: return "and";
    case GateKind::kThreshold: return "threshold";
  }
  return "?";
}

RealMatrix gate_matrix(const Gate& g) {
  const double r = 1.0 / std::sqrt(2.0);
  RealMatrix m;
  switch (g.kind) {
    case GateKind::kI: m = RealMatrix::Identity(2, 2); break;
    case GateKind::kX: m.resize(2, 2); m << 0, 1, 1, 0; break;
    case GateKind::kZ: m.resize(2, 2); m << 1, 0, 0, -1; break;
    case GateKind::kH: m.resize(2, 2); m << r, r, r, -r; break;
    case GateKind::kCnot:
      // Index = control + 2 * target.
      m = RealMatrix::Zero(4, 4);
      m(0, 0) = 1; m(2, 2) = 1; m(3, 1) = 1; m(1, 3) = 1;
      break;
    case GateKind::kCz:
      m = RealMatrix::Identity(4, 4);
      m(3, 3) = -1;
      break;
    case GateKind::kAnd:
    case GateKind::kThreshold:
      throw std::invalid_argument("macro-gate has no fixed-size matrix");
  }
  return m;
}

namespace {

int expected_arity(GateKind k) {
  switch (k) {
    case GateKind::kCnot:
    case GateKind::kCz: return 2;
    case GateKind::kAnd:
    case GateKind::kThreshold: return -1;
    default: return 1;
  }
}

void validate_gate(const Gate& g, int n_qubits) {
  const int want = expected_arity(g.kind);
  if (want > 0 && g.arity() != want) {
    throw std::invalid_argument(std::string(gate_name(g.kind)) + " expects " +
                                std::to_string(want) + " target(s)");
  }
  if (want < 0 && g.arity() < 1) {
    throw std::invalid_argument("macro-gate needs a target");
  }
  std::set<Qubit> seen;
  for (Qubit q : g.targets) {
    if (q < 0 || q >= n_qubits) {
      throw std::out_of_range("gate target " + std::to_string(q) + " out of range");
    }
    if (!seen.insert(q).second) throw std::invalid_argument("duplicate target");
  }
  if (g.kind == GateKind::kThreshold && g.threshold < 0) {
    throw std::invalid_argument("threshold must be non-negative");
  }
}

}  // namespace

Circuit::Circuit(int n_qubits, std::vector<Gate> gates, Qubits output_qubits)
    : n_qubits_(n_qubits), gates_(std::move(gates)), outputs_(std::move(output_qubits)) {
  if (n_qubits_ < 1) throw std::invalid_argument("circuit needs at least one qubit");
  if (outputs_.empty()) throw std::invalid_argument("circuit needs an output register");
  std::set<Qubit> seen;
  for (Qubit q : outputs_) {
    if (q < 0 || q >= n_qubits_) throw std::out_of_range("output qubit out of range");
    if (!seen.insert(q).second) throw std::invalid_argument("duplicate output qubit");
  }
  for (const Gate& g : gates_) validate_gate(g, n_qubits_);
  if (gates_.empty()) gates_.push_back(Gate::identity(0));
}

bool Circuit::has_macros() const {
  return std::any_of(gates_.begin(), gates_.end(),
                     [](const Gate& g) { return g.is_macro(); });
}

void apply_gate(Vector& amps, const Gate& g) {
  if (!g.is_macro()) {
    const RealMatrix m = gate_matrix(g);
    apply_matrix(amps, m.cast<Complex>(), g.targets);
    return;
  }
  // Macro-gates are permutations: swap amplitude pairs differing in the target.
  const Qubit target = g.targets.back();
  BasisIndex cmask = 0;
  for (size_t i = 0; i + 1 < g.targets.size(); ++i) cmask |= BasisIndex{1} << g.targets[i];
  const int n_controls = static_cast<int>(g.targets.size()) - 1;
  const BasisIndex tbit = BasisIndex{1} << target;
  const auto dim = static_cast<BasisIndex>(amps.size());
  for (BasisIndex b = 0; b < dim; ++b) {
    if (b & tbit) continue;
    const int ones = std::popcount(b & cmask);
    const bool fire = g.kind == GateKind::kAnd ? ones == n_controls : ones >= g.threshold;
    if (fire) {
      std::swap(amps[static_cast<Eigen::Index>(b)], amps[static_cast<Eigen::Index>(b | tbit)]);
    }
  }
}

StateVector simulate(const Circuit& c) {
  StateVector s(c.n_qubits());
  for (const Gate& g : c.gates()) apply_gate(s.mutable_amplitudes(), g);
  return s;
}

std::vector<int> parse_bits(std::string_view s) {
  std::vector<int> bits;
  bits.reserve(s.size());
  for (char ch : s) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("bit string may only contain 0 and 1");
    }
    bits.push_back(ch - '0');
  }
  return bits;
}

std::vector<double> output_distribution(const Circuit& c) {
  const StateVector s = simulate(c);
  const auto& outs = c.output_qubits();
  const size_t k = outs.size();
  std::vector<double> dist(size_t{1} << k, 0.0);
  for (BasisIndex b = 0; b < s.dimension(); ++b) {
    size_t v = 0;
    for (size_t j = 0; j < k; ++j) {
      v = (v << 1) | ((b >> outs[j]) & 1U);
    }
    dist[v] += std::norm(s[b]);
  }
  return dist;
}

double output_probability(const Circuit& c, std::string_view s) {
  const auto bits = parse_bits(s);
  if (bits.size() != c.output_qubits().size()) {
    throw std::invalid_argument("bit string length does not match output register");
  }
  size_t v = 0;
  for (int b : bits) v = (v << 1) | static_cast<size_t>(b);
  return output_distribution(c)[v];
}

std::string sample_output(const Circuit& c, Rng& rng) {
  const auto dist = output_distribution(c);
  const double u = rng.uniform();
  double acc = 0.0;
  size_t pick = dist.size() - 1;
  for (size_t v = 0; v < dist.size(); ++v) {
    acc += dist[v];
    if (u < acc) {
      pick = v;
      break;
    }
  }
  // Guard against rounding leaving u past the last nonzero bucket.
  while (dist[pick] <= 0.0 && pick > 0) --pick;
  const size_t k = c.output_qubits().size();
  std::string out(k, '0');
  for (size_t j = 0; j < k; ++j) {
    if ((pick >> (k - 1 - j)) & 1U) out[j] = '1';
  }
  return out;
}

Circuit expand_macros(const Circuit& c) {
  std::vector<Gate> gates;
  for (const Gate& g : c.gates()) {
    if (!g.is_macro()) {
      gates.push_back(g);
      continue;
    }
    const Qubit target = g.targets.back();
    const Qubits controls(g.targets.begin(), g.targets.end() - 1);
    const int n_controls = static_cast<int>(controls.size());
    // Number of controls that must be 1 for the flip; above n_controls the
    // gate never fires.
    const int needed = g.kind == GateKind::kAnd ? n_controls : g.threshold;
    if (needed > n_controls) continue;
    if (needed == 0) {
      gates.push_back(Gate::x(target));
    } else if (n_controls == 1) {
      gates.push_back(Gate::cnot(controls[0], target));
    } else {
      throw std::invalid_argument(
          std::string(gate_name(g.kind)) + " with " + std::to_string(n_controls) +
          " controls has no exact decomposition into the real Clifford gate set");
    }
  }
  return Circuit(c.n_qubits(), std::move(gates), c.output_qubits());
}

}  // namespace phv

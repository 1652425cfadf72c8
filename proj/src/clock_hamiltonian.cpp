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

#include "phv/clock_hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include "json.hpp"

#include "phv/limits.hpp"

namespace phv {

std::string_view part_name(HamiltonianPart part) {
  switch (part) {
    case HamiltonianPart::kOut: return "out";
    case HamiltonianPart::kIn: return "in";
    case HamiltonianPart::kProp1: return "prop1";
    case HamiltonianPart::kProp2: return "prop2";
    case HamiltonianPart::kClock: return "clock";
  }
  return "?";
}

double HamiltonianWeights::weight(HamiltonianPart part) const {
  switch (part) {
    case HamiltonianPart::kOut: return 1.0;
    case HamiltonianPart::kIn: return j_in;
    case HamiltonianPart::kProp1: return j_1;
    case HamiltonianPart::kProp2: return j_2;
    case HamiltonianPart::kClock: return j_clock;
  }
  return 0.0;
}

int LocalHamiltonian::locality() const {
  int k = 0;
  for (const auto& t : terms) k = std::max(k, t.op.arity());
  return k;
}

int LocalHamiltonian::count(HamiltonianPart part) const {
  return static_cast<int>(std::count_if(terms.begin(), terms.end(),
                                        [part](const auto& t) { return t.part == part; }));
}

LocalHamiltonian LocalHamiltonian::only(HamiltonianPart part) const {
  LocalHamiltonian h = *this;
  std::erase_if(h.terms, [part](const auto& t) { return t.part != part; });
  return h;
}

namespace {

// |v><w| on `bits.size()` qubits; bits[i] is the value of the i-th qubit.
Matrix ket_bra(const std::vector<int>& v, const std::vector<int>& w) {
  auto index = [](const std::vector<int>& bits) {
    Eigen::Index i = 0;
    for (size_t q = 0; q < bits.size(); ++q) i |= static_cast<Eigen::Index>(bits[q]) << q;
    return i;
  };
  const auto dim = Eigen::Index{1} << v.size();
  Matrix m = Matrix::Zero(dim, dim);
  m(index(v), index(w)) = 1.0;
  return m;
}

// Projector on qubits `low` tensored with `high_matrix` on `high` qubits.
LocalOperator combine(const Qubits& low, const Matrix& low_matrix, const Qubits& high,
                      const Matrix& high_matrix) {
  LocalOperator op;
  op.support = low;
  op.support.insert(op.support.end(), high.begin(), high.end());
  op.matrix = kron(high_matrix, low_matrix);
  return op;
}

struct ClockWindow {
  Qubits qubits;
  std::vector<int> before;  // local pattern of clock value t-1
  std::vector<int> after;   // local pattern of clock value t
};

// The clock qubits that distinguish values t-1 and t among legal states.
ClockWindow clock_window(int t, int n_clock) {
  if (n_clock == 1) return {{0}, {0}, {1}};
  if (t == 1) return {{0, 1}, {0, 0}, {1, 0}};
  if (t == n_clock) return {{n_clock - 2, n_clock - 1}, {1, 0}, {1, 1}};
  return {{t - 2, t - 1, t}, {1, 0, 0}, {1, 1, 0}};
}

}  // namespace

LocalHamiltonian build_clock_hamiltonian(const Circuit& c, const HamiltonianWeights& weights) {
  if (c.has_macros()) {
    throw std::invalid_argument("build_clock_hamiltonian: circuit contains unexpanded macro-gates");
  }
  if (c.output_qubits().size() != 1) {
    throw std::invalid_argument("build_clock_hamiltonian: circuit must designate one output qubit");
  }
  if (!(weights.j_in > 0 && weights.j_1 > 0 && weights.j_2 > 0 && weights.j_clock > 0)) {
    throw std::invalid_argument("build_clock_hamiltonian: weights must be positive");
  }
  const int n_clock = c.depth();
  const int n_comp = c.n_qubits();
  LocalHamiltonian h;
  h.n_clock = n_clock;
  h.n_comp = n_comp;
  h.weights = weights;
  auto comp = [n_clock](Qubit q) { return n_clock + q; };
  const Matrix p0 = ket_bra({0}, {0});
  const Matrix p1 = ket_bra({1}, {1});

  for (Qubit q = 0; q < n_comp; ++q) {
    h.terms.push_back({HamiltonianPart::kIn, weights.j_in, combine({0}, p0, {comp(q)}, p1)});
  }
  h.terms.push_back({HamiltonianPart::kOut, 1.0,
                     combine({n_clock - 1}, p1, {comp(c.output_qubits()[0])}, p0)});
  for (int i = 0; i + 1 < n_clock; ++i) {
    h.terms.push_back({HamiltonianPart::kClock, weights.j_clock,
                       combine({i, i + 1}, ket_bra({0, 1}, {0, 1}), {}, Matrix::Identity(1, 1))});
  }
  for (int t = 1; t <= n_clock; ++t) {
    const Gate& g = c.gates()[static_cast<size_t>(t - 1)];
    const ClockWindow w = clock_window(t, n_clock);
    const Matrix u = gate_matrix(g).cast<Complex>();
    const Matrix id = Matrix::Identity(u.rows(), u.cols());
    Qubits targets;
    for (Qubit q : g.targets) targets.push_back(comp(q));
    // Each clock pattern projector must be combined before the kron.
    const Matrix m = 0.5 * (kron(id, ket_bra(w.after, w.after)) +
                            kron(id, ket_bra(w.before, w.before)) -
                            kron(u, ket_bra(w.after, w.before)) -
                            kron(u.adjoint(), ket_bra(w.before, w.after)));
    LocalOperator op;
    op.support = w.qubits;
    op.support.insert(op.support.end(), targets.begin(), targets.end());
    op.matrix = m;
    const HamiltonianPart part = g.arity() == 1 ? HamiltonianPart::kProp1 : HamiltonianPart::kProp2;
    h.terms.push_back({part, weights.weight(part), std::move(op)});
  }
  return h;
}

Witness build_witness(const Circuit& c) {
  const int n_clock = c.depth();
  const int n_comp = c.n_qubits();
  check_state_cap(n_clock + n_comp);
  Witness w;
  w.n_clock = n_clock;
  w.history.reserve(static_cast<size_t>(n_clock) + 1);
  w.history.emplace_back(n_comp);
  for (const Gate& g : c.gates()) {
    StateVector next = w.history.back();
    apply_gate(next.mutable_amplitudes(), g);
    w.history.push_back(std::move(next));
  }
  const int n_total = n_clock + n_comp;
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(BasisIndex{1} << n_total));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_clock + 1));
  for (int t = 0; t <= n_clock; ++t) {
    const StateVector& psi = w.history[static_cast<size_t>(t)];
    for (BasisIndex b = 0; b < psi.dimension(); ++b) {
      amps[static_cast<Eigen::Index>(unary_clock(t) | (b << n_clock))] = scale * psi[b];
    }
  }
  w.state = StateVector::normalized(n_total, std::move(amps));
  return w;
}

StateVector prepare_witness_by_controlled_gates(const Circuit& c) {
  const int n_clock = c.depth();
  const int n_total = n_clock + c.n_qubits();
  check_state_cap(n_total);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(BasisIndex{1} << n_total));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_clock + 1));
  for (int t = 0; t <= n_clock; ++t) amps[static_cast<Eigen::Index>(unary_clock(t))] = scale;
  for (int t = 1; t <= n_clock; ++t) {
    const Gate& g = c.gates()[static_cast<size_t>(t - 1)];
    // Clock qubit t-1 is set exactly on the branches with clock value >= t.
    const BasisIndex control = BasisIndex{1} << (t - 1);
    Vector branch = amps;
    Gate shifted = g;
    for (Qubit& q : shifted.targets) q += n_clock;
    apply_gate(branch, shifted);
    for (BasisIndex b = 0; b < static_cast<BasisIndex>(amps.size()); ++b) {
      if (b & control) amps[static_cast<Eigen::Index>(b)] = branch[static_cast<Eigen::Index>(b)];
    }
  }
  return StateVector::normalized(n_total, std::move(amps));
}

double energy(const LocalHamiltonian& h, const StateVector& s) {
  if (s.n_qubits() != h.n_total()) throw std::invalid_argument("energy: dimension mismatch");
  double e = 0.0;
  for (const auto& t : h.terms) e += t.coefficient * expectation(s, t.op);
  return e;
}

double part_energy(const LocalHamiltonian& h, const StateVector& s, HamiltonianPart part) {
  return energy(h.only(part), s);
}

Matrix dense_hamiltonian(const LocalHamiltonian& h) {
  check_matrix_cap(h.n_total());
  const auto dim = static_cast<Eigen::Index>(BasisIndex{1} << h.n_total());
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : h.terms) m += t.coefficient * dense_matrix(t.op, h.n_total());
  return m;
}

std::vector<double> spectrum(const LocalHamiltonian& h) {
  const Matrix m = dense_hamiltonian(h);
  std::vector<double> out;
  if (m.imag().cwiseAbs().maxCoeff() <= limits().construct_tol) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(m.real(), Eigen::EigenvaluesOnly);
    out.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    out.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  }
  return out;
}

double ground_energy(const LocalHamiltonian& h) { return spectrum(h).front(); }

Thresholds thresholds_from_tail(double tail, int m) {
  if (m < 1) throw std::invalid_argument("instance_thresholds: m must be >= 1");
  const Thresholds t{tail / m, (1.0 - 2.0 * tail) / (2.0 * m)};
  if (!(t.a < t.b)) {
    throw std::invalid_argument(
        "instance_thresholds: a >= b; increase the repetition count N");
  }
  return t;
}

Thresholds instance_thresholds(const VerificationParams& p, int m) {
  return thresholds_from_tail(hoeffding_bound(p.n_reps, p.gamma), m);
}

PauliSum hamiltonian_pauli_terms(const LocalHamiltonian& h) {
  PauliSum sum(h.n_total());
  for (const auto& t : h.terms) sum += t.coefficient * pauli_decompose(t.op, h.n_total());
  sum.prune(limits().construct_tol);
  return sum;
}

std::vector<double> term_scales(const LocalHamiltonian& h) {
  std::vector<double> scales;
  scales.reserve(h.terms.size());
  for (const auto& t : h.terms) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(t.matrix(), Eigen::EigenvaluesOnly);
    scales.push_back(std::max(1.0, es.eigenvalues().maxCoeff()));
  }
  return scales;
}

Matrix normalized_term(const LocalHamiltonian& h, int j) {
  const auto& t = h.terms.at(static_cast<size_t>(j));
  Eigen::SelfAdjointEigenSolver<Matrix> es(t.matrix(), Eigen::EigenvaluesOnly);
  return t.matrix() / std::max(1.0, es.eigenvalues().maxCoeff());
}

double normalized_energy(const LocalHamiltonian& h, const StateVector& s) {
  const auto scales = term_scales(h);
  double e = 0.0;
  for (size_t j = 0; j < h.terms.size(); ++j) {
    e += h.terms[j].coefficient * expectation(s, h.terms[j].op) / scales[j];
  }
  return e;
}

std::string export_hamiltonian(const LocalHamiltonian& h) {
  nlohmann::ordered_json header;
  header["n_total"] = h.n_total();
  header["n_clock"] = h.n_clock;
  header["m"] = h.m();
  header["k"] = h.locality();
  header["weights"] = {{"J_in", h.weights.j_in},
                       {"J_1", h.weights.j_1},
                       {"J_2", h.weights.j_2},
                       {"J_clock", h.weights.j_clock}};
  if (h.thresholds) {
    header["a"] = h.thresholds->a;
    header["b"] = h.thresholds->b;
  } else {
    header["a"] = nullptr;
    header["b"] = nullptr;
  }
  std::ostringstream os;
  os << header.dump() << '\n';
  char buf[64];
  for (const auto& t : h.terms) {
    const PauliSum expansion = t.coefficient * pauli_decompose(t.op, h.n_total());
    for (const auto& term : expansion.terms()) {
      std::snprintf(buf, sizeof(buf), "%.17g", term.coefficient);
      os << part_name(t.part) << ' ' << buf << ' ' << term.string.letters() << '\n';
    }
  }
  return os.str();
}

}  // namespace phv

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

#include "phv/environment.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "phv/hash.hpp"
#include "phv/local_operator.hpp"

namespace phv {

struct Environment::Shared {
  StateVector initial;
  std::vector<int> initial_owner;
  std::unordered_map<std::string, double> expectations;
  std::unordered_map<std::string, std::shared_ptr<const std::vector<double>>> distributions;
  std::size_t distribution_bytes = 0;
  std::size_t distribution_budget = 0;
};

namespace {

std::string party_name(int party) {
  return party == kVerifier ? "verifier" : "prover " + std::to_string(party);
}

std::string op_key(char kind, const std::string& label, const Qubits& targets,
                   const Matrix& m) {
  std::string key(1, kind);
  key += label;
  key += '@';
  for (Qubit q : targets) {
    key += std::to_string(q);
    key += ',';
  }
  key += '#';
  key += hex64(hash_matrix(m));
  key += '|';
  return key;
}

Matrix involution_projector(const Matrix& o, int sign) {
  const Matrix id = Matrix::Identity(o.rows(), o.cols());
  return 0.5 * (id + static_cast<double>(sign) * o);
}

void check_involution(const Matrix& o) {
  if (o.rows() != 2 || o.cols() != 2) {
    throw std::invalid_argument("local measurement must be a 2x2 observable");
  }
  const double tol = limits().construct_tol * 100;
  if (!is_hermitian(o, tol) || !is_unitary(o, tol)) {
    throw std::invalid_argument("local measurement observable is not a Hermitian involution");
  }
}

// Columns are the +1 and -1 eigenvectors of a 2x2 involution.
Matrix eigenframe(const Matrix& o) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(o);
  Matrix v(2, 2);
  v.col(0) = es.eigenvectors().col(1);
  v.col(1) = es.eigenvectors().col(0);
  return v;
}

}  // namespace

Json Message::to_json() const {
  Json j;
  j["round"] = round;
  j["direction"] = direction;
  j["prover"] = prover;
  j["payload"] = payload;
  j["outcome"] = outcome;
  return j;
}

bool is_classical_payload(const Json& payload) {
  if (payload.is_object()) {
    if (payload.contains("registers")) return false;
    for (const auto& item : payload.items()) {
      if (!is_classical_payload(item.value())) return false;
    }
    return true;
  }
  if (payload.is_array()) {
    return std::all_of(payload.begin(), payload.end(),
                       [](const Json& v) { return is_classical_payload(v); });
  }
  if (payload.is_string()) return payload.get_ref<const std::string&>().size() <= 64;
  return payload.is_number() || payload.is_boolean() || payload.is_null();
}

bool is_wire_message(const Message& m) {
  return m.direction == "verifier->prover" || m.direction == "prover->verifier";
}

Environment::Environment(StateVector joint, std::vector<int> owner, std::uint64_t seed)
    : Environment(std::move(joint), std::move(owner), seed, Options{}) {}

Environment::Environment(StateVector joint, std::vector<int> owner, std::uint64_t seed,
                         const Options& options)
    : rng_(seed) {
  if (static_cast<int>(owner.size()) != joint.n_qubits()) {
    throw std::invalid_argument("ownership map does not cover the joint state");
  }
  for (int o : owner) {
    if (o != kVerifier && (o < 0 || o >= kNumProvers)) {
      throw std::invalid_argument("owner must be a prover id 0..4 or the verifier");
    }
  }
  if (options.ancillas_per_prover < 0) {
    throw std::invalid_argument("ancillas_per_prover must be non-negative");
  }
  if (options.ancillas_per_prover > 0) {
    const int extra = options.ancillas_per_prover * kNumProvers;
    check_state_cap(joint.n_qubits() + extra);
    joint = tensor(joint, StateVector(extra));
    for (int p = 0; p < kNumProvers; ++p) {
      for (int i = 0; i < options.ancillas_per_prover; ++i) owner.push_back(p);
    }
  }
  shared_ = std::make_shared<Shared>();
  shared_->initial = std::move(joint);
  shared_->initial_owner = owner;
  shared_->distribution_budget = options.distribution_cache_bytes;
  owner_ = std::move(owner);
}

Environment Environment::fresh(int round, std::uint64_t seed) const {
  Environment env;
  env.shared_ = shared_;
  env.owner_ = shared_->initial_owner;
  env.round_ = round;
  env.rng_ = Rng(seed);
  return env;
}

int Environment::owner(Qubit q) const {
  if (q < 0 || q >= n_qubits()) {
    throw std::out_of_range("register " + std::to_string(q) + " does not exist");
  }
  return owner_[static_cast<size_t>(q)];
}

Qubits Environment::owned_by(int party) const {
  Qubits out;
  for (int q = 0; q < n_qubits(); ++q) {
    if (owner_[static_cast<size_t>(q)] == party) out.push_back(q);
  }
  return out;
}

void Environment::check_owned(int party, const Qubits& targets, const char* what) const {
  std::set<Qubit> seen;
  for (Qubit q : targets) {
    if (q < 0 || q >= n_qubits()) {
      throw std::out_of_range(std::string(what) + ": register " + std::to_string(q) +
                              " does not exist");
    }
    if (!seen.insert(q).second) {
      throw std::invalid_argument(std::string(what) + ": duplicate register " +
                                  std::to_string(q));
    }
    if (owner_[static_cast<size_t>(q)] != party) {
      throw LocalityViolation(std::string(what) + ": " + party_name(party) +
                              " does not hold register " + std::to_string(q));
    }
  }
}

void Environment::send_query(int prover, Json payload) {
  if (prover < 0 || prover >= kNumProvers) throw std::out_of_range("no such prover");
  if (queries_[prover]++ > 0) {
    throw std::logic_error("prover " + std::to_string(prover) +
                           " already received its query this round");
  }
  transcript_.push_back({round_, "verifier->prover", prover, std::move(payload), nullptr});
}

void Environment::send_response(int prover, Json payload) {
  if (prover < 0 || prover >= kNumProvers) throw std::out_of_range("no such prover");
  if (queries_[prover] == 0) {
    throw std::logic_error("prover " + std::to_string(prover) + " responded without a query");
  }
  if (responses_[prover]++ > 0) {
    throw std::logic_error("prover " + std::to_string(prover) +
                           " already responded this round");
  }
  transcript_.push_back({round_, "prover->verifier", prover, std::move(payload), nullptr});
}

void Environment::log_event(int party, Json payload, Json outcome) {
  transcript_.push_back({round_, party == kVerifier ? "verifier-local" : "prover-local",
                         party, std::move(payload), std::move(outcome)});
}

void Environment::push_op(StateOp op, const std::string& key) {
  ops_.push_back(std::move(op));
  fingerprint_ += key;
}

void Environment::apply_op(Vector& amps, const StateOp& op) const {
  if (op.basis_projection) {
    BasisIndex mask = 0;
    BasisIndex want = 0;
    for (size_t i = 0; i < op.targets.size(); ++i) {
      mask |= BasisIndex{1} << op.targets[i];
      if ((op.bits >> i) & 1U) want |= BasisIndex{1} << op.targets[i];
    }
    for (Eigen::Index b = 0; b < amps.size(); ++b) {
      if ((static_cast<BasisIndex>(b) & mask) == want) {
        amps[b] *= op.scale;
      } else {
        amps[b] = 0.0;
      }
    }
    return;
  }
  apply_matrix(amps, op.matrix, op.targets);
  if (op.scale != 1.0) amps *= op.scale;
}

const StateVector& Environment::state() const {
  if (!state_ || applied_ > ops_.size()) {
    state_ = shared_->initial;
    applied_ = 0;
  }
  for (; applied_ < ops_.size(); ++applied_) {
    apply_op(state_->mutable_amplitudes(), ops_[applied_]);
  }
  return *state_;
}

double Environment::memo_expectation(const Matrix& observable, const Qubits& targets,
                                     const std::string& key) {
  const std::string full = fingerprint_ + "E" + key;
  auto it = shared_->expectations.find(full);
  if (it != shared_->expectations.end()) return it->second;
  const double v = expectation(state(), LocalOperator{targets, observable});
  shared_->expectations.emplace(full, v);
  return v;
}

int Environment::prover_measure(int prover, const PauliString& obs) {
  if (obs.n_qubits() != n_qubits()) {
    throw std::invalid_argument("prover_measure: observable width mismatch");
  }
  if (!obs.is_hermitian()) {
    throw std::invalid_argument("prover_measure: observable is not Hermitian");
  }
  const Qubits support = obs.support();
  check_owned(prover, support, "prover_measure");
  if (support.empty()) {
    const int v = static_cast<int>(obs.sign());
    log_event(prover, Json{{"measure", obs.to_string()}}, v);
    return v;
  }
  const Matrix local = dense_matrix(obs.restricted(support));
  const Matrix plus = involution_projector(local, +1);
  const double p_plus = std::clamp(
      memo_expectation(plus, support, op_key('P', "pauli", support, plus)), 0.0, 1.0);
  const int outcome = rng_.uniform() < p_plus ? +1 : -1;
  const double p = outcome == 1 ? p_plus : 1.0 - p_plus;
  const Matrix proj = outcome == 1 ? plus : involution_projector(local, -1);
  StateOp op{support, proj, 1.0 / std::sqrt(p)};
  push_op(std::move(op), op_key('K', "pauli", support, proj));
  log_event(prover, Json{{"measure", obs.to_string()}}, outcome);
  return outcome;
}

int Environment::prover_measure_local(int prover, const LocalMeasurement& m) {
  check_involution(m.observable);
  const Qubits target{m.address};
  check_owned(prover, target, "prover_measure");
  const Matrix plus = involution_projector(m.observable, +1);
  const double p_plus = std::clamp(
      memo_expectation(plus, target, op_key('P', m.label, target, plus)), 0.0, 1.0);
  const int outcome = rng_.uniform() < p_plus ? +1 : -1;
  const double p = outcome == 1 ? p_plus : 1.0 - p_plus;
  const Matrix proj = outcome == 1 ? plus : involution_projector(m.observable, -1);
  push_op(StateOp{target, proj, 1.0 / std::sqrt(p)}, op_key('K', m.label, target, proj));
  log_event(prover, Json{{"measure", Json::array({{{"register", m.address},
                                                   {"basis", m.label}}})}},
            Json::array({outcome}));
  return outcome;
}

void Environment::adversarial_hook(int prover, const Matrix& u, const Qubits& targets,
                                   const std::string& label) {
  check_owned(prover, targets, "adversarial_hook");
  if (u.rows() != (Eigen::Index{1} << targets.size()) || u.rows() != u.cols()) {
    throw std::invalid_argument("adversarial_hook: matrix dimension mismatch");
  }
  if (!is_unitary(u, limits().construct_tol * 100)) {
    throw std::invalid_argument("adversarial_hook: matrix is not unitary");
  }
  push_op(StateOp{targets, u, 1.0}, op_key('U', label, targets, u));
  log_event(prover, Json{{"apply", label}, {"registers", targets}}, nullptr);
}

void Environment::surrender_registers(int prover, const Qubits& addresses) {
  check_owned(prover, addresses, "surrender_registers");
  for (Qubit q : addresses) owner_[static_cast<size_t>(q)] = kVerifier;
  log_event(prover, Json{{"surrender", true}, {"registers", addresses}}, nullptr);
}

void Environment::prover_submit(int prover, std::vector<LocalMeasurement> measurements) {
  Qubits targets;
  for (const auto& m : measurements) {
    check_involution(m.observable);
    targets.push_back(m.address);
  }
  check_owned(prover, targets, "prover_submit");
  for (const auto& [other, list] : pending_) {
    for (const auto& m : list) {
      if (std::find(targets.begin(), targets.end(), m.address) != targets.end()) {
        throw std::invalid_argument("prover_submit: register already has a pending measurement");
      }
    }
  }
  auto& slot = pending_[prover];
  for (auto& m : measurements) slot.push_back(std::move(m));
}

void Environment::settle() {
  if (pending_.empty()) return;
  // Rotate every measured register so its observable becomes Z.
  Qubits measured;
  std::vector<Matrix> frames;
  for (const auto& [prover, list] : pending_) {
    for (const auto& m : list) {
      Matrix v = eigenframe(m.observable);
      const Qubits t{m.address};
      const Matrix vd = v.adjoint();
      push_op(StateOp{t, vd, 1.0}, op_key('U', "frame:" + m.label, t, vd));
      measured.push_back(m.address);
      frames.push_back(std::move(v));
    }
  }
  const size_t k = measured.size();
  check_state_cap(static_cast<int>(k));
  std::string key = fingerprint_ + "D";
  for (Qubit q : measured) key += std::to_string(q) + ",";

  std::shared_ptr<const std::vector<double>> cdf;
  auto it = shared_->distributions.find(key);
  if (it != shared_->distributions.end()) {
    cdf = it->second;
  } else {
    const Vector& amps = state().amplitudes();
    std::vector<double> acc(size_t{1} << k, 0.0);
    for (Eigen::Index b = 0; b < amps.size(); ++b) {
      const double w = std::norm(amps[b]);
      if (w == 0.0) continue;
      size_t idx = 0;
      for (size_t i = 0; i < k; ++i) {
        idx |= ((static_cast<size_t>(b) >> measured[i]) & 1U) << i;
      }
      acc[idx] += w;
    }
    for (size_t i = 1; i < acc.size(); ++i) acc[i] += acc[i - 1];
    cdf = std::make_shared<const std::vector<double>>(std::move(acc));
    const size_t bytes = cdf->size() * sizeof(double) + key.size();
    if (shared_->distribution_bytes + bytes <= shared_->distribution_budget) {
      shared_->distributions.emplace(key, cdf);
      shared_->distribution_bytes += bytes;
    }
  }
  const double total = cdf->back();
  const double u = rng_.uniform() * total;
  auto pos = std::upper_bound(cdf->begin(), cdf->end(), u);
  if (pos == cdf->end()) --pos;
  // Skip zero-weight entries the search can land on at the boundary.
  while (pos != cdf->begin() && *pos == *(pos - 1)) --pos;
  const auto bits = static_cast<std::uint64_t>(pos - cdf->begin());
  const double p = *pos - (pos == cdf->begin() ? 0.0 : *(pos - 1));
  if (p <= 0.0) throw NumericFault("settle: sampled a zero-probability outcome");

  StateOp proj;
  proj.targets = measured;
  proj.basis_projection = true;
  proj.bits = bits;
  proj.scale = 1.0 / std::sqrt(p / total);
  std::string pkey = "B";
  for (Qubit q : measured) pkey += std::to_string(q) + ",";
  pkey += "=" + std::to_string(bits) + "|";
  push_op(std::move(proj), pkey);
  size_t i = 0;
  for (const auto& [prover, list] : pending_) {
    Json reqs = Json::array();
    Json outs = Json::array();
    auto& res = results_[prover];
    for (const auto& m : list) {
      const Qubits t{m.address};
      push_op(StateOp{t, frames[i], 1.0}, op_key('U', "unframe:" + m.label, t, frames[i]));
      const int outcome = ((bits >> i) & 1U) ? -1 : +1;
      res.push_back(outcome);
      reqs.push_back({{"register", m.address}, {"basis", m.label}});
      outs.push_back(outcome);
      ++i;
    }
    log_event(prover, Json{{"measure", reqs}}, outs);
  }
  pending_.clear();
}

std::vector<int> Environment::prover_results(int prover) const {
  if (!pending_.empty()) throw std::logic_error("prover_results: measurements not settled");
  auto it = results_.find(prover);
  return it == results_.end() ? std::vector<int>{} : it->second;
}

void Environment::verifier_apply(const Matrix& u, const Qubits& targets,
                                 const std::string& label) {
  check_owned(kVerifier, targets, "verifier_apply");
  if (u.rows() != (Eigen::Index{1} << targets.size()) || u.rows() != u.cols()) {
    throw std::invalid_argument("verifier_apply: matrix dimension mismatch");
  }
  push_op(StateOp{targets, u, 1.0}, op_key('U', label, targets, u));
  log_event(kVerifier, Json{{"apply", label}, {"registers", targets}}, nullptr);
}

bool Environment::verifier_measure(const Matrix& accept_kraus, const Matrix& reject_kraus,
                                   const Qubits& targets, const std::string& label) {
  check_owned(kVerifier, targets, "verifier_measure");
  const Matrix effect = accept_kraus.adjoint() * accept_kraus;
  const double p_acc = std::clamp(
      memo_expectation(effect, targets, op_key('P', label, targets, effect)), 0.0, 1.0);
  const bool accept = rng_.uniform() < p_acc;
  const double p = accept ? p_acc : 1.0 - p_acc;
  if (p <= limits().degenerate_prob) {
    throw NumericFault("verifier_measure: sampled a vanishing branch");
  }
  const Matrix& k = accept ? accept_kraus : reject_kraus;
  push_op(StateOp{targets, k, 1.0 / std::sqrt(p)},
          op_key('K', label + (accept ? ":accept" : ":reject"), targets, k));
  log_event(kVerifier, Json{{"measure", label}, {"registers", targets}},
            accept ? "accept" : "reject");
  return accept;
}

double Environment::verifier_force(const Matrix& accept_kraus, const Qubits& targets,
                                   const std::string& label) {
  check_owned(kVerifier, targets, "verifier_force");
  const Matrix effect = accept_kraus.adjoint() * accept_kraus;
  const double p = std::clamp(
      memo_expectation(effect, targets, op_key('P', label, targets, effect)), 0.0, 1.0);
  if (p <= limits().degenerate_prob) return 0.0;
  push_op(StateOp{targets, accept_kraus, 1.0 / std::sqrt(p)},
          op_key('K', label + ":accept", targets, accept_kraus));
  Json out;
  out["branch"] = "accept";
  out["probability"] = p;
  log_event(kVerifier, Json{{"measure", label}, {"registers", targets}}, out);
  return p;
}

double Environment::verifier_expectation(const Matrix& observable, const Qubits& targets) {
  check_owned(kVerifier, targets, "verifier_expectation");
  return memo_expectation(observable, targets, op_key('O', "obs", targets, observable));
}

std::string Environment::transcript_jsonl() const {
  std::string out;
  for (const auto& m : transcript_) {
    out += m.to_json().dump();
    out += '\n';
  }
  return out;
}

std::uint64_t Environment::transcript_hash() const {
  Fnv1a f;
  f.update(transcript_jsonl());
  return f.digest();
}

std::vector<int> share_ownership(const ShareMap& shares) {
  std::vector<int> owner(static_cast<size_t>(shares.n_physical()));
  for (int q = 0; q < shares.n_physical(); ++q) {
    owner[static_cast<size_t>(q)] = shares.prover_of(q);
  }
  return owner;
}

Environment init_environment(const StateVector& logical, const CodeSpec& spec,
                             std::uint64_t seed, const Environment::Options& options) {
  (void)spec;  // the encoder is fixed; spec only selects the CHSH presentation
  const ShareMap shares(logical.n_qubits());
  return Environment(encode_state(logical, shares), share_ownership(shares), seed, options);
}

}  // namespace phv

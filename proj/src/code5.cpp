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

#include "phv/code5.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "phv/limits.hpp"
#include "phv/measurement.hpp"

namespace phv {
namespace {

// Generators nontrivial on share 4, in CHSH order.
constexpr std::array<const char*, 4> kGeneratorsAtFour = {"IXZZX", "XIXZZ", "ZZXIX",
                                                          "ZXIXZ"};

std::array<PauliString, 4> canonical_generators() {
  return {PauliString::parse("XZZXI"), PauliString::parse("IXZZX"),
          PauliString::parse("XIXZZ"), PauliString::parse("ZXIXZ")};
}

int syndrome(const PauliString& e) {
  const auto gens = canonical_generators();
  int s = 0;
  for (int i = 0; i < 4; ++i) {
    if (!gens[static_cast<size_t>(i)].commutes_with(e)) s |= 1 << i;
  }
  return s;
}

Matrix build_encoder() {
  const Matrix& proj = codespace_projector_matrix();
  Vector zero_l = proj.col(0);
  zero_l /= zero_l.norm();
  Vector one_l;
  apply_pauli(PauliString::parse("XXXXX"), zero_l, one_l);

  // Error frame for each syndrome: identity plus the 15 single-qubit Paulis.
  std::array<PauliString, 16> frame;
  std::array<bool, 16> seen{};
  frame[0] = PauliString(kCodeLength);
  seen[0] = true;
  for (int q = 0; q < kCodeLength; ++q) {
    for (PauliLetter l : {PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
      const PauliString e = PauliString::single(kCodeLength, q, l);
      const int s = syndrome(e);
      if (seen[static_cast<size_t>(s)]) throw std::logic_error("code is not perfect");
      seen[static_cast<size_t>(s)] = true;
      frame[static_cast<size_t>(s)] = e;
    }
  }

  Matrix u(32, 32);
  Vector col;
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 2; ++b) {
      apply_pauli(frame[static_cast<size_t>(a)], b == 0 ? zero_l : one_l, col);
      u.col(b | (a << 1)) = col;
    }
  }
  return u;
}

}  // namespace

PauliLetter CodeSpec::special_letter(int i) const {
  return generators.at(static_cast<size_t>(i)).letter(special_index);
}

CodeSpec default_code(int t) {
  if (t < 0 || t >= kCodeLength) {
    throw std::out_of_range("special index must lie in 0..4");
  }
  CodeSpec spec;
  spec.special_index = t;
  for (size_t i = 0; i < 4; ++i) {
    const std::string base = kGeneratorsAtFour[i];
    std::string shifted(kCodeLength, 'I');
    for (int p = 0; p < kCodeLength; ++p) {
      shifted[static_cast<size_t>(p)] = base[static_cast<size_t>((p + 4 - t) % kCodeLength)];
    }
    spec.generators[i] = PauliString::parse(shifted);
  }
  spec.logical_x = PauliString::parse("XXXXX");
  spec.logical_z = PauliString::parse("ZZZZZ");
  return spec;
}

const std::vector<PauliString>& stabilizer_group() {
  static const std::vector<PauliString> group = [] {
    const auto gens = canonical_generators();
    std::vector<PauliString> g;
    for (int mask = 0; mask < 16; ++mask) {
      PauliString p(kCodeLength);
      for (int i = 0; i < 4; ++i) {
        if ((mask >> i) & 1) p = p * gens[static_cast<size_t>(i)];
      }
      g.push_back(p);
    }
    return g;
  }();
  return group;
}

const Matrix& codespace_projector_matrix() {
  static const Matrix proj = [] {
    Matrix p = Matrix::Zero(32, 32);
    for (const auto& s : stabilizer_group()) p += dense_matrix(s);
    return Matrix(p / 16.0);
  }();
  return proj;
}

const Matrix& encoding_unitary() {
  static const Matrix u = build_encoder();
  return u;
}

Qubits ShareMap::block(int logical) const {
  if (logical < 0 || logical >= n_logical_) throw std::out_of_range("logical index out of range");
  Qubits b;
  for (int p = 0; p < kCodeLength; ++p) b.push_back(address(logical, p));
  return b;
}

StateVector encode_state(const StateVector& logical, const ShareMap& shares) {
  if (logical.n_qubits() != shares.n_logical()) {
    throw std::invalid_argument("encode_state: logical qubit count mismatch");
  }
  const int n_phys = shares.n_physical();
  check_state_cap(n_phys);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(BasisIndex{1} << n_phys));
  for (BasisIndex b = 0; b < logical.dimension(); ++b) {
    BasisIndex phys = 0;
    for (int l = 0; l < shares.n_logical(); ++l) {
      if ((b >> l) & 1U) phys |= BasisIndex{1} << shares.address(l, 0);
    }
    amps[static_cast<Eigen::Index>(phys)] = logical[b];
  }
  for (int l = 0; l < shares.n_logical(); ++l) {
    const Qubits blk = shares.block(l);
    apply_matrix(amps, encoding_unitary(), blk);
  }
  return StateVector(n_phys, std::move(amps));
}

StateVector decode_state(const StateVector& physical, const ShareMap& shares) {
  if (physical.n_qubits() != shares.n_physical()) {
    throw std::invalid_argument("decode_state: physical qubit count mismatch");
  }
  Vector amps = physical.amplitudes();
  const Matrix dec = encoding_unitary().adjoint();
  for (int l = 0; l < shares.n_logical(); ++l) {
    const Qubits blk = shares.block(l);
    apply_matrix(amps, dec, blk);
  }
  const int n_log = shares.n_logical();
  Vector out(static_cast<Eigen::Index>(BasisIndex{1} << n_log));
  for (BasisIndex b = 0; b < (BasisIndex{1} << n_log); ++b) {
    BasisIndex phys = 0;
    for (int l = 0; l < n_log; ++l) {
      if ((b >> l) & 1U) phys |= BasisIndex{1} << shares.address(l, 0);
    }
    out[static_cast<Eigen::Index>(b)] = amps[static_cast<Eigen::Index>(phys)];
  }
  if (std::abs(out.norm() - 1.0) > limits().assert_tol) {
    throw NumericFault("decode_state: state has weight outside the code space");
  }
  return StateVector::normalized(n_log, std::move(out));
}

DecodeResult decode_block(const StateVector& state, const Qubits& block, Rng& rng) {
  if (block.size() != kCodeLength) throw std::invalid_argument("decode_block: need 5 addresses");
  StateVector s = apply_unitary(state, encoding_unitary().adjoint(), block);
  // Ancillas all |0> is the +1 outcome of the projector onto |0000>.
  LocalOperator anc;
  anc.support.assign(block.begin() + 1, block.end());
  anc.matrix = Matrix::Zero(16, 16);
  anc.matrix(0, 0) = 1.0;
  const double p_in = std::clamp(expectation(s, anc), 0.0, 1.0);
  const bool in_code = rng.uniform() < p_in;
  Vector v = s.amplitudes();
  const Matrix kraus = in_code ? anc.matrix : Matrix(Matrix::Identity(16, 16) - anc.matrix);
  apply_matrix(v, kraus, anc.support);
  const double prob = in_code ? p_in : 1.0 - p_in;
  if (prob < limits().degenerate_prob) throw NumericFault("decode_block: vanishing branch");
  return {StateVector::normalized(s.n_qubits(), std::move(v)), in_code};
}

double codespace_projector_expectation(const StateVector& state, const Qubits& block) {
  if (block.size() != kCodeLength) {
    throw std::invalid_argument("codespace_projector_expectation: need 5 addresses");
  }
  double acc = 0.0;
  for (const auto& s : stabilizer_group()) {
    acc += expectation(state, s.embedded(state.n_qubits(), block));
  }
  return acc / 16.0;
}

std::vector<PauliString> transversal_logical_measurement(const CodeSpec& spec,
                                                         PauliLetter which,
                                                         const Qubits& block, int n_qubits) {
  if (which != PauliLetter::X && which != PauliLetter::Z) {
    throw std::invalid_argument("transversal logical measurement supports X and Z");
  }
  const PauliString& logical = which == PauliLetter::X ? spec.logical_x : spec.logical_z;
  std::vector<PauliString> out;
  for (int p = 0; p < kCodeLength; ++p) {
    out.push_back(PauliString::single(n_qubits, block.at(static_cast<size_t>(p)),
                                      logical.letter(p)));
  }
  return out;
}

}  // namespace phv

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

#include "phv/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "phv/limits.hpp"

namespace phv {
namespace {

const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::uint64_t bit(Qubit q) { return std::uint64_t{1} << q; }

}  // namespace

char letter_char(PauliLetter l) {
  switch (l) {
    case PauliLetter::I: return 'I';
    case PauliLetter::X: return 'X';
    case PauliLetter::Y: return 'Y';
    case PauliLetter::Z: return 'Z';
  }
  return '?';
}

PauliString::PauliString(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("PauliString: qubit count out of range");
  }
}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    if (text[0] == '-') phase = 2;
    text.remove_prefix(1);
  }
  if (!text.empty() && text[0] == 'i') {
    phase += 1;
    text.remove_prefix(1);
  }
  PauliString p(static_cast<int>(text.size()));
  for (size_t q = 0; q < text.size(); ++q) {
    PauliLetter l;
    switch (text[q]) {
      case 'I': l = PauliLetter::I; break;
      case 'X': l = PauliLetter::X; break;
      case 'Y': l = PauliLetter::Y; break;
      case 'Z': l = PauliLetter::Z; break;
      default:
        throw std::invalid_argument("PauliString: bad letter '" +
                                    std::string(1, text[q]) + "'");
    }
    p.set(static_cast<Qubit>(q), l);
  }
  p.set_phase(phase);
  return p;
}

PauliString PauliString::single(int n_qubits, Qubit q, PauliLetter letter) {
  PauliString p(n_qubits);
  p.set(q, letter);
  return p;
}

PauliLetter PauliString::letter(Qubit q) const {
  const bool x = (x_ >> q) & 1U;
  const bool z = (z_ >> q) & 1U;
  if (x && z) return PauliLetter::Y;
  if (x) return PauliLetter::X;
  if (z) return PauliLetter::Z;
  return PauliLetter::I;
}

void PauliString::set(Qubit q, PauliLetter letter) {
  if (q < 0 || q >= n_qubits_) {
    throw std::out_of_range("PauliString: qubit index out of range");
  }
  x_ &= ~bit(q);
  z_ &= ~bit(q);
  if (letter == PauliLetter::X || letter == PauliLetter::Y) x_ |= bit(q);
  if (letter == PauliLetter::Z || letter == PauliLetter::Y) z_ |= bit(q);
}

Qubits PauliString::support() const {
  Qubits s;
  const std::uint64_t m = x_ | z_;
  for (int q = 0; q < n_qubits_; ++q) {
    if ((m >> q) & 1U) s.push_back(q);
  }
  return s;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

double PauliString::sign() const {
  if (!is_hermitian()) throw std::logic_error("sign of non-Hermitian Pauli");
  return phase_ == 0 ? 1.0 : -1.0;
}

Complex PauliString::factor() const { return kIPow[phase_]; }

bool PauliString::commutes_with(const PauliString& other) const {
  const int s = std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_);
  return s % 2 == 0;
}

std::string PauliString::letters() const {
  std::string s;
  s.reserve(static_cast<size_t>(n_qubits_));
  for (int q = 0; q < n_qubits_; ++q) s.push_back(letter_char(letter(q)));
  return s;
}

std::string PauliString::to_string() const {
  static const char* kPrefix[4] = {"", "i", "-", "-i"};
  return kPrefix[phase_] + letters();
}

PauliString PauliString::restricted(const Qubits& qubits) const {
  PauliString out(static_cast<int>(qubits.size()));
  for (size_t i = 0; i < qubits.size(); ++i) {
    out.set(static_cast<Qubit>(i), letter(qubits[i]));
  }
  out.phase_ = phase_;
  return out;
}

PauliString PauliString::embedded(int n_qubits, const Qubits& positions) const {
  if (static_cast<int>(positions.size()) != n_qubits_) {
    throw std::invalid_argument("PauliString::embedded: position count mismatch");
  }
  PauliString out(n_qubits);
  for (int q = 0; q < n_qubits_; ++q) out.set(positions[static_cast<size_t>(q)], letter(q));
  out.phase_ = phase_;
  return out;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  if (a.n_qubits_ != b.n_qubits_) {
    throw std::invalid_argument("Pauli product: qubit count mismatch");
  }
  // Write each string as i^{#Y} X^x Z^z. Then
  // (X^x1 Z^z1)(X^x2 Z^z2) = (-1)^{|z1 & x2|} X^{x1^x2} Z^{z1^z2}.
  PauliString out(a.n_qubits_);
  out.x_ = a.x_ ^ b.x_;
  out.z_ = a.z_ ^ b.z_;
  int e = a.phase_ + b.phase_ + std::popcount(a.x_ & a.z_) +
          std::popcount(b.x_ & b.z_) + 2 * std::popcount(a.z_ & b.x_) -
          std::popcount(out.x_ & out.z_);
  out.set_phase(e);
  return out;
}

void PauliSum::add(double coefficient, const PauliString& p) {
  if (!p.is_hermitian()) {
    throw std::invalid_argument("PauliSum: non-Hermitian Pauli string");
  }
  if (n_qubits_ == 0 && terms_.empty()) n_qubits_ = p.n_qubits();
  if (p.n_qubits() != n_qubits_) {
    throw std::invalid_argument("PauliSum: qubit count mismatch");
  }
  terms_[{p.x_mask(), p.z_mask()}] += coefficient * p.sign();
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.terms_.empty()) return *this;
  if (n_qubits_ == 0 && terms_.empty()) n_qubits_ = other.n_qubits_;
  if (other.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("PauliSum: qubit count mismatch");
  }
  for (const auto& [k, c] : other.terms_) terms_[k] += c;
  return *this;
}

PauliSum& PauliSum::operator*=(double s) {
  for (auto& kv : terms_) kv.second *= s;
  return *this;
}

void PauliSum::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

std::vector<PauliSum::Term> PauliSum::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) {
    PauliString p(n_qubits_);
    for (int q = 0; q < n_qubits_; ++q) {
      const bool x = (k.first >> q) & 1U;
      const bool z = (k.second >> q) & 1U;
      p.set(q, x && z ? PauliLetter::Y
               : x    ? PauliLetter::X
               : z    ? PauliLetter::Z
                      : PauliLetter::I);
    }
    out.push_back({c, p});
  }
  return out;
}

double PauliSum::coefficient(const PauliString& p) const {
  auto it = terms_.find({p.x_mask(), p.z_mask()});
  return it == terms_.end() ? 0.0 : it->second;
}

double PauliSum::weight_norm() const {
  double w = 0.0;
  for (const auto& [k, c] : terms_) {
    if (k.first != 0 || k.second != 0) w += std::abs(c);
  }
  return w;
}

double PauliSum::identity_coefficient() const {
  auto it = terms_.find({0, 0});
  return it == terms_.end() ? 0.0 : it->second;
}

PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
PauliSum operator*(double s, PauliSum a) { return a *= s; }

void apply_pauli(const PauliString& p, const Vector& in, Vector& out) {
  const auto dim = static_cast<BasisIndex>(in.size());
  if (dim != (BasisIndex{1} << p.n_qubits())) {
    throw std::invalid_argument("apply_pauli: dimension mismatch");
  }
  out.resize(in.size());
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const Complex f = p.factor() * kIPow[std::popcount(x & z) % 4];
  for (BasisIndex b = 0; b < dim; ++b) {
    const Complex v = (std::popcount(b & z) & 1) ? -in[static_cast<Eigen::Index>(b)]
                                                : in[static_cast<Eigen::Index>(b)];
    out[static_cast<Eigen::Index>(b ^ x)] = f * v;
  }
}

Complex pauli_expectation(const PauliString& p, const Vector& psi) {
  const auto dim = static_cast<BasisIndex>(psi.size());
  if (dim != (BasisIndex{1} << p.n_qubits())) {
    throw std::invalid_argument("pauli_expectation: dimension mismatch");
  }
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  Complex acc = 0.0;
  for (BasisIndex b = 0; b < dim; ++b) {
    const Complex t = std::conj(psi[static_cast<Eigen::Index>(b ^ x)]) *
                      psi[static_cast<Eigen::Index>(b)];
    acc += (std::popcount(b & z) & 1) ? -t : t;
  }
  return acc * p.factor() * kIPow[std::popcount(x & z) % 4];
}

Matrix dense_matrix(const PauliString& p) {
  check_matrix_cap(p.n_qubits());
  const auto dim = static_cast<Eigen::Index>(BasisIndex{1} << p.n_qubits());
  Matrix m = Matrix::Zero(dim, dim);
  const Complex f = p.factor() * kIPow[std::popcount(p.x_mask() & p.z_mask()) % 4];
  for (BasisIndex b = 0; b < static_cast<BasisIndex>(dim); ++b) {
    const double s = (std::popcount(b & p.z_mask()) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(b ^ p.x_mask()), static_cast<Eigen::Index>(b)) = s * f;
  }
  return m;
}

Matrix dense_matrix(const PauliSum& s, int n_qubits) {
  check_matrix_cap(n_qubits);
  if (!s.empty() && s.n_qubits() != n_qubits) {
    throw std::invalid_argument("dense_matrix: qubit count mismatch");
  }
  const auto dim = static_cast<Eigen::Index>(BasisIndex{1} << n_qubits);
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : s.terms()) {
    const std::uint64_t x = t.string.x_mask();
    const std::uint64_t z = t.string.z_mask();
    const Complex f = t.coefficient * kIPow[std::popcount(x & z) % 4];
    for (BasisIndex b = 0; b < static_cast<BasisIndex>(dim); ++b) {
      const double sg = (std::popcount(b & z) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) += sg * f;
    }
  }
  return m;
}

}  // namespace phv

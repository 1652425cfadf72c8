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

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phv/limits.hpp"
#include "phv/local_operator.hpp"
#include "phv/measurement.hpp"
#include "phv/pauli.hpp"
#include "phv/rng.hpp"
#include "phv/state.hpp"

namespace phv {
namespace {

const double kR = 1.0 / std::sqrt(2.0);

Matrix hadamard() {
  Matrix h(2, 2);
  h << kR, kR, kR, -kR;
  return h;
}

Matrix cnot() {
  // Control on local bit 0, target on local bit 1.
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(3, 1) = 1;
  m(2, 2) = 1;
  m(1, 3) = 1;
  return m;
}

TEST(StateVector, ZeroStateAndBasis) {
  StateVector s(3);
  EXPECT_EQ(s.dimension(), 8u);
  EXPECT_DOUBLE_EQ(std::abs(s[0]), 1.0);
  StateVector b = StateVector::basis(3, 5);
  EXPECT_DOUBLE_EQ(std::abs(b[5]), 1.0);
  EXPECT_EQ(basis_label(5, 3), basis_label(5, 3));
}

TEST(StateVector, RejectsUnnormalizedAmplitudes) {
  Vector v = Vector::Zero(2);
  v[0] = 2.0;
  EXPECT_THROW(StateVector(1, v), std::invalid_argument);
  EXPECT_THROW(StateVector::normalized(1, Vector::Zero(2)), NumericFault);
}

TEST(StateVector, StateCapIsEnforced) {
  EXPECT_THROW(check_state_cap(limits().max_state_qubits + 1), CapExceeded);
  EXPECT_NO_THROW(check_state_cap(limits().max_state_qubits));
}

TEST(ApplyUnitary, PauliXFlipsZero) {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  StateVector s = apply_unitary(StateVector(1), x, {0});
  EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-15);
}

TEST(ApplyUnitary, HadamardIsAnInvolution) {
  StateVector s = apply_unitary(apply_unitary(StateVector(1), hadamard(), {0}), hadamard(), {0});
  EXPECT_NEAR(fidelity(s, StateVector(1)), 1.0, 1e-12);
}

TEST(ApplyUnitary, CnotOnPlusZeroMatchesHandOracle) {
  StateVector plus = apply_unitary(StateVector(2), hadamard(), {0});
  StateVector bell = apply_unitary(plus, cnot(), {0, 1});
  oracle::Vec in(4);
  in << kR, kR, 0, 0;
  oracle::Mat cn = oracle::Mat::Zero(4, 4);
  cn(0, 0) = cn(3, 1) = cn(2, 2) = cn(1, 3) = 1;
  const oracle::Vec expect = cn * in;
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(bell[i] - expect[i]), 0.0, 1e-15) << i;
  EXPECT_NEAR(bell[0].real(), kR, 1e-15);
  EXPECT_NEAR(bell[3].real(), kR, 1e-15);
  EXPECT_NEAR(std::abs(bell[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(bell[2]), 0.0, 1e-15);
}

TEST(ApplyUnitary, ErrorsAreReported) {
  Matrix bad(2, 2);
  bad << 1, 1, 0, 1;
  EXPECT_THROW(apply_unitary(StateVector(1), bad, {0}), std::invalid_argument);
  EXPECT_THROW(apply_unitary(StateVector(1), hadamard(), {1}), std::out_of_range);
  EXPECT_THROW(apply_unitary(StateVector(2), hadamard(), {0, 1}), std::invalid_argument);
  EXPECT_THROW(apply_unitary(StateVector(2), cnot(), {0, 0}), std::invalid_argument);
}

TEST(ApplyUnitary, NormPreservedOverLongSequences) {
  Rng rng(3);
  StateVector s = random_state(6, rng);
  for (int step = 0; step < 500; ++step) {
    const int a = static_cast<int>(rng.below(6));
    int b = static_cast<int>(rng.below(5));
    if (b >= a) ++b;
    if (rng.coin()) {
      apply_unitary_inplace(s, hadamard(), {a});
    } else {
      apply_unitary_inplace(s, cnot(), {a, b});
    }
  }
  EXPECT_NEAR(s.norm(), 1.0, 1e-9);
}

TEST(LocalKernel, AllFormsAgreeWithEmbeddedOracle) {
  Rng rng(17);
  for (int k = 1; k <= 4; ++k) {
    const Eigen::Index d = Eigen::Index{1} << k;
    Matrix dense = Matrix::Random(d, d);
    Matrix sparse = Matrix::Zero(d, d);
    sparse(0, d - 1) = Complex(0.5, -0.25);
    Matrix low = Matrix::Random(d, 1) * Matrix::Random(1, d);
    for (const Matrix* m : {&dense, &sparse, &low}) {
      const int n = 6;
      StateVector s = random_state(n, rng);
      const Qubits order = {4, 1, 5, 2};
      const Qubits targets(order.begin(), order.begin() + k);
      Vector got = s.amplitudes();
      LocalKernel kern(*m);
      kern.apply(got, targets);
      const oracle::Mat full = oracle::embed(*m, targets, n);
      const oracle::Vec expect = full * s.amplitudes();
      EXPECT_LT((got - expect).norm(), 1e-12) << "k=" << k;
      const Complex e = kern.expectation(s.amplitudes(), targets);
      const Complex e_ref = s.amplitudes().dot(expect);
      EXPECT_LT(std::abs(e - e_ref), 1e-12) << "k=" << k;
    }
  }
}

TEST(Pauli, ParseAndAlgebra) {
  PauliString p = PauliString::parse("-IXZZI");
  EXPECT_EQ(p.letters(), "IXZZI");
  EXPECT_EQ(p.to_string(), "-IXZZI");
  EXPECT_EQ(p.support(), (Qubits{1, 2, 3}));
  EXPECT_TRUE(p.is_hermitian());
  EXPECT_DOUBLE_EQ(p.sign(), -1.0);
  EXPECT_FALSE(PauliString::parse("iXZ").is_hermitian());
  const PauliString xy = PauliString::parse("X") * PauliString::parse("Z");
  // XZ = -iY
  EXPECT_EQ(xy.letters(), "Y");
  const oracle::Mat ref = oracle::pauli('X') * oracle::pauli('Z');
  EXPECT_LT((dense_matrix(xy) - ref).norm(), 1e-15);
  EXPECT_FALSE(PauliString::parse("XI").commutes_with(PauliString::parse("ZI")));
  EXPECT_TRUE(PauliString::parse("XX").commutes_with(PauliString::parse("ZZ")));
}

TEST(Pauli, DenseMatricesMatchKroneckerOracle) {
  for (const char* s : {"Z", "XX", "XIZ", "YZXI", "IYYZ"}) {
    const PauliString p = PauliString::parse(s);
    EXPECT_LT((dense_matrix(p) - oracle::pauli_string(s)).norm(), 1e-15) << s;
  }
  Matrix z = dense_matrix(PauliString::parse("Z"));
  EXPECT_EQ(z(0, 0), Complex(1));
  EXPECT_EQ(z(1, 1), Complex(-1));
  Matrix xx = dense_matrix(PauliString::parse("XX"));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(xx(i, 3 - i), Complex(1));
}

TEST(Pauli, SumMergesAndDenseMatchesExpectation) {
  Rng rng(5);
  PauliSum sum(3);
  sum.add(0.5, PauliString::parse("XIZ"));
  sum.add(-1.25, PauliString::parse("-YYI"));
  sum.add(0.75, PauliString::parse("IZZ"));
  sum.add(0.25, PauliString::parse("XIZ"));
  EXPECT_EQ(sum.size(), 3u);
  EXPECT_DOUBLE_EQ(sum.coefficient(PauliString::parse("XIZ")), 0.75);
  EXPECT_DOUBLE_EQ(sum.coefficient(PauliString::parse("YYI")), 1.25);
  const Matrix m = dense_matrix(sum, 3);
  EXPECT_TRUE(is_hermitian(m, 1e-12));
  for (int trial = 0; trial < 10; ++trial) {
    StateVector s = random_state(3, rng);
    const double dense = (s.amplitudes().adjoint() * m * s.amplitudes())(0, 0).real();
    EXPECT_NEAR(expectation(s, sum), dense, 1e-10);
  }
}

TEST(Expectation, SimpleCases) {
  EXPECT_DOUBLE_EQ(expectation(StateVector(1), PauliString::parse("Z")), 1.0);
  StateVector pp = apply_unitary(apply_unitary(StateVector(2), hadamard(), {0}), hadamard(), {1});
  PauliSum xs(2);
  xs.add(1.0, PauliString::parse("XI"));
  xs.add(1.0, PauliString::parse("IX"));
  EXPECT_NEAR(expectation(pp, xs), 2.0, 1e-12);
  LocalOperator bad{{0}, Matrix::Zero(2, 2)};
  bad.matrix(0, 1) = 1.0;
  EXPECT_THROW(expectation(pp, bad), std::invalid_argument);
}

TEST(Expectation, OracleAgreementOnRandomSums) {
  Rng rng(99);
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(10));
    PauliSum sum(n);
    for (int t = 0; t < 3; ++t) {
      std::string s;
      for (int q = 0; q < n; ++q) s += letters[rng.below(4)];
      sum.add(rng.uniform() - 0.5, PauliString::parse(s));
    }
    StateVector st = random_state(n, rng);
    const Matrix m = dense_matrix(sum, n);
    const double dense = (st.amplitudes().adjoint() * m * st.amplitudes())(0, 0).real();
    EXPECT_NEAR(expectation(st, sum), dense, 1e-10) << "n=" << n;
  }
}

TEST(DenseMatrix, CapIsEnforced) {
  EXPECT_THROW(dense_matrix(PauliSum(limits().max_matrix_qubits + 1),
                            limits().max_matrix_qubits + 1),
               CapExceeded);
}

TEST(PauliDecompose, ProjectorAndHadamard) {
  Matrix p1 = Matrix::Zero(2, 2);
  p1(1, 1) = 1;
  PauliSum d = pauli_decompose(LocalOperator{{0}, p1}, 1);
  EXPECT_NEAR(d.coefficient(PauliString::parse("I")), 0.5, 1e-15);
  EXPECT_NEAR(d.coefficient(PauliString::parse("Z")), -0.5, 1e-15);
  PauliSum hd = pauli_decompose(LocalOperator{{0}, hadamard()}, 1);
  EXPECT_EQ(hd.size(), 2u);
  EXPECT_NEAR(hd.coefficient(PauliString::parse("X")), kR, 1e-15);
  EXPECT_NEAR(hd.coefficient(PauliString::parse("Z")), kR, 1e-15);
  Matrix nh = Matrix::Zero(2, 2);
  nh(0, 1) = 1;
  EXPECT_THROW(pauli_decompose(LocalOperator{{0}, nh}, 1), std::invalid_argument);
}

TEST(PauliDecompose, RoundTripOnRandomHermitian) {
  for (int k = 1; k <= 3; ++k) {
    const Eigen::Index d = Eigen::Index{1} << k;
    for (int trial = 0; trial < 5; ++trial) {
      Matrix a = Matrix::Random(d, d);
      Matrix h = a + a.adjoint();
      Qubits support;
      for (int i = 0; i < k; ++i) support.push_back(i);
      const PauliSum s = pauli_decompose(LocalOperator{support, h}, k);
      EXPECT_LT((dense_matrix(s, k) - h).norm(), 1e-10);
      for (const auto& t : s.terms()) EXPECT_EQ(t.string.phase(), 0);
    }
  }
}

TEST(Measurement, EigenstatesAreDeterministic) {
  Rng rng(1);
  StateVector one = StateVector::basis(1, 1);
  for (int i = 0; i < 20; ++i) {
    MeasureResult r = measure_projective(one, PauliString::parse("Z"), rng);
    EXPECT_EQ(r.outcome, -1);
    EXPECT_NEAR(fidelity(r.state, one), 1.0, 1e-15);
  }
  StateVector bell = apply_unitary(apply_unitary(StateVector(2), hadamard(), {0}), cnot(), {0, 1});
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(measure_projective(bell, PauliString::parse("ZZ"), rng).outcome, 1);
  }
}

TEST(Measurement, RepeatedMeasurementIsStable) {
  Rng rng(2);
  StateVector plus = apply_unitary(StateVector(1), hadamard(), {0});
  MeasureResult first = measure_projective(plus, PauliString::parse("Z"), rng);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(measure_projective(first.state, PauliString::parse("Z"), rng).outcome,
              first.outcome);
  }
}

TEST(Measurement, BornStatisticsForXOnZero) {
  Rng rng(12345);
  const std::size_t n = 100000;
  std::size_t plus = 0;
  for (std::size_t i = 0; i < n; ++i) {
    plus += measure_projective(StateVector(1), PauliString::parse("X"), rng).outcome == 1;
  }
  EXPECT_NEAR(static_cast<double>(plus) / n, 0.5, oracle::four_sigma(0.5, n));
}

TEST(Measurement, FrequenciesMatchExpectationOnRandomState) {
  Rng rng(77);
  StateVector s = random_state(3, rng);
  const PauliString obs = PauliString::parse("XZY");
  const double p_plus = outcome_probability(expectation(s, obs), 1);
  const std::size_t n = 100000;
  std::size_t plus = 0;
  for (std::size_t i = 0; i < n; ++i) plus += measure_projective(s, obs, rng).outcome == 1;
  EXPECT_NEAR(static_cast<double>(plus) / n, p_plus, oracle::four_sigma(p_plus, n));
}

TEST(Measurement, DegenerateBranchIsANumericFault) {
  EXPECT_THROW(collapse_involution(StateVector(1), PauliString::parse("Z"), -1), NumericFault);
}

TEST(Povm, ProjectorOnItsEigenstate) {
  Rng rng(4);
  Matrix e = Matrix::Zero(2, 2);
  e(1, 1) = 1;
  for (int i = 0; i < 10; ++i) {
    PovmResult r = povm_two_outcome(StateVector::basis(1, 1), LocalOperator{{0}, e}, rng);
    EXPECT_EQ(r.outcome, PovmOutcome::kElement);
  }
}

TEST(Povm, HalfIdentityIsStateIndependent) {
  Rng rng(8);
  StateVector s = random_state(2, rng);
  const Matrix e = 0.5 * Matrix::Identity(2, 2);
  const std::size_t n = 100000;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    hits += povm_two_outcome(s, LocalOperator{{1}, e}, rng).outcome == PovmOutcome::kElement;
  }
  EXPECT_NEAR(static_cast<double>(hits) / n, 0.5, oracle::four_sigma(0.5, n));
}

TEST(Povm, LuedersCollapseAndValidation) {
  Rng rng(6);
  Matrix e(2, 2);
  e << 0.75, 0.25, 0.25, 0.25;
  StateVector s = random_state(1, rng);
  const Matrix k = povm_kraus(e, PovmOutcome::kElement);
  EXPECT_LT((k * k - e).norm(), 1e-12);
  const Matrix kc = povm_kraus(e, PovmOutcome::kComplement);
  EXPECT_LT((kc * kc - (Matrix::Identity(2, 2) - e)).norm(), 1e-12);
  Matrix big = 2.0 * Matrix::Identity(2, 2);
  EXPECT_THROW(validate_povm_element(big), std::invalid_argument);
  EXPECT_THROW(povm_two_outcome(s, LocalOperator{{0}, big}, rng), std::invalid_argument);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(round_seed(1, 0), round_seed(1, 1));
  EXPECT_NE(round_seed(1, 0), round_seed(2, 0));
}

}  // namespace
}  // namespace phv

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

#include "phv/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "phv/limits.hpp"

namespace phv {
namespace {

StateVector finish_collapse(int n_qubits, Vector v, double prob) {
  if (prob < limits().degenerate_prob) {
    throw NumericFault("measurement branch has vanishing probability");
  }
  v /= std::sqrt(prob);
  StateVector s = StateVector::normalized(n_qubits, std::move(v));
  return s;
}

}  // namespace

double outcome_probability(double expectation_value, int outcome) {
  const double p = 0.5 * (1.0 + outcome * expectation_value);
  return std::clamp(p, 0.0, 1.0);
}

StateVector collapse_involution(const StateVector& state, const PauliString& obs,
                                int outcome) {
  Vector ov;
  apply_pauli(obs, state.amplitudes(), ov);
  Vector v = 0.5 * (state.amplitudes() + static_cast<double>(outcome) * ov);
  const double prob = v.squaredNorm();
  return finish_collapse(state.n_qubits(), std::move(v), prob);
}

StateVector collapse_involution(const StateVector& state, const LocalOperator& obs,
                                int outcome) {
  Vector ov = state.amplitudes();
  apply_matrix(ov, obs.matrix, obs.support);
  Vector v = 0.5 * (state.amplitudes() + static_cast<double>(outcome) * ov);
  const double prob = v.squaredNorm();
  return finish_collapse(state.n_qubits(), std::move(v), prob);
}

MeasureResult measure_projective(const StateVector& state, const PauliString& obs,
                                 Rng& rng) {
  const double p_plus = outcome_probability(expectation(state, obs), +1);
  const int outcome = rng.uniform() < p_plus ? +1 : -1;
  return {outcome, collapse_involution(state, obs, outcome)};
}

MeasureResult measure_involution(const StateVector& state, const LocalOperator& obs,
                                 Rng& rng) {
  const Matrix sq = obs.matrix * obs.matrix;
  if (!is_unitary(obs.matrix, limits().construct_tol) ||
      (sq - Matrix::Identity(sq.rows(), sq.cols())).cwiseAbs().maxCoeff() >
          limits().construct_tol) {
    throw std::invalid_argument("measure_involution: observable is not an involution");
  }
  const double p_plus = outcome_probability(expectation(state, obs), +1);
  const int outcome = rng.uniform() < p_plus ? +1 : -1;
  return {outcome, collapse_involution(state, obs, outcome)};
}

void validate_povm_element(const Matrix& m) {
  if (!is_hermitian(m, limits().construct_tol)) {
    throw std::invalid_argument("POVM element is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() < -limits().assert_tol || ev.maxCoeff() > 1.0 + limits().assert_tol) {
    throw std::invalid_argument("POVM element spectrum outside [0, 1]");
  }
}

Matrix povm_kraus(const Matrix& element, PovmOutcome outcome) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(element);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double lam = std::clamp(ev[i], 0.0, 1.0);
    ev[i] = std::sqrt(outcome == PovmOutcome::kElement ? lam : 1.0 - lam);
  }
  const Matrix& u = es.eigenvectors();
  return u * ev.cast<Complex>().asDiagonal() * u.adjoint();
}

PovmResult povm_two_outcome(const StateVector& state, const LocalOperator& element,
                            Rng& rng) {
  validate_povm_element(element.matrix);
  const double p_e = std::clamp(expectation(state, element), 0.0, 1.0);
  const PovmOutcome outcome =
      rng.uniform() < p_e ? PovmOutcome::kElement : PovmOutcome::kComplement;
  const double prob = outcome == PovmOutcome::kElement ? p_e : 1.0 - p_e;
  Vector v = state.amplitudes();
  apply_matrix(v, povm_kraus(element.matrix, outcome), element.support);
  return {outcome, finish_collapse(state.n_qubits(), std::move(v), prob)};
}

}  // namespace phv

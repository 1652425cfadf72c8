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

#ifndef PHV_LIMITS_HPP
#define PHV_LIMITS_HPP

#include <stdexcept>
#include <string>

namespace phv {

// Process-wide resource caps and numeric tolerances. The CLI exposes them
// through --caps; library users may adjust them before building instances.
struct Limits {
  int max_state_qubits = 26;
  int max_matrix_qubits = 14;
  double assert_tol = 1e-10;
  double construct_tol = 1e-12;
  double degenerate_prob = 1e-14;
};

Limits& limits();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class LocalityViolation : public Error {
 public:
  using Error::Error;
};

class NumericFault : public Error {
 public:
  using Error::Error;
};

void check_state_cap(int n_qubits);
void check_matrix_cap(int n_qubits);

}  // namespace phv

#endif  // PHV_LIMITS_HPP

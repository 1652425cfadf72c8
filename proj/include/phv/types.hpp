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

#ifndef PHV_TYPES_HPP
#define PHV_TYPES_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace phv {

template <typename Scalar>
using BasicComplex = std::complex<Scalar>;

template <typename Scalar>
using BasicVector = Eigen::Matrix<BasicComplex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using BasicMatrix =
    Eigen::Matrix<BasicComplex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = BasicComplex<double>;
using Vector = BasicVector<double>;
using Matrix = BasicMatrix<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

using Qubit = int;
using Qubits = std::vector<Qubit>;

// Basis index: bit q of the index is the value of qubit q.
using BasisIndex = std::uint64_t;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace phv

#endif  // PHV_TYPES_HPP

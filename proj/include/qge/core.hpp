// Copyright 2026 The qge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qge {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Basis index convention: site j of the chain is bit j of the computational
/// basis index, and bit value 0 is the sigma^z = +1 state |0>.
using BasisIndex = std::uint64_t;

inline constexpr double kPi = 3.14159265358979323846;

/// Invalid argument or configuration (negative broadening, unsupported order, ...).
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Request would exceed the dense-matrix size limit.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numerical routine failed (eigensolver non-convergence, zero variance, ...).
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Inconsistent input data (mismatched grids, malformed files).
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The gap search found no peak inside the largest allowed window.
class SearchFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace qge

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

#include <bit>
#include <initializer_list>
#include <utility>
#include <vector>

#include "qge/core.hpp"

namespace qge {

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

/// A weighted Pauli string, stored as x/z bit masks. Y on a site sets both bits.
struct PauliTerm {
    Complex coefficient{1.0, 0.0};
    BasisIndex x_mask = 0;
    BasisIndex z_mask = 0;

    PauliTerm() = default;
    PauliTerm(Complex coeff, std::initializer_list<std::pair<int, Pauli>> ops) : coefficient(coeff) {
        for (auto [site, p] : ops) {
            const BasisIndex bit = BasisIndex{1} << site;
            if (p == Pauli::X || p == Pauli::Y) x_mask |= bit;
            if (p == Pauli::Z || p == Pauli::Y) z_mask |= bit;
        }
    }

    int y_count() const { return std::popcount(x_mask & z_mask); }
};

using PauliSum = std::vector<PauliTerm>;

/// Dense 2^n x 2^n matrix of a Pauli sum.
///
/// Column x of a single string has one nonzero at row x ^ x_mask with phase
/// i^{#Y} (-1)^{popcount(x & z_mask)}; Y = iXZ reproduces Y|0> = i|1>, Y|1> = -i|0>.
inline CMatrix to_dense(const PauliSum& sum, int n_spins) {
    const BasisIndex dim = BasisIndex{1} << n_spins;
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    static constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const auto& term : sum) {
        const Complex base = term.coefficient * kIPowers[term.y_count() % 4];
        for (BasisIndex x = 0; x < dim; ++x) {
            const double sign = (std::popcount(x & term.z_mask) % 2 == 0) ? 1.0 : -1.0;
            out(static_cast<Eigen::Index>(x ^ term.x_mask), static_cast<Eigen::Index>(x)) += sign * base;
        }
    }
    return out;
}

}  // namespace qge

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

// Open-boundary transverse-field Ising chain
//
//   H1 = -J sum_{j=0}^{N-2} Z_j Z_{j+1},    H2 = -h sum_{j=0}^{N-1} X_j,
//
// with its exact-diagonalization oracle, nested-commutator norms and bounds,
// and the reference gap formulas.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qge/core.hpp"
#include "qge/pauli.hpp"

namespace qge {

inline constexpr int kDefaultMaxSpins = 12;

struct SpinModel {
    int n_spins = 4;
    double coupling = 0.4;  // J
    double field = 1.0;     // h
};

inline void validate(const SpinModel& model) {
    if (model.n_spins < 2) throw ParameterError("spin chain needs at least 2 spins");
}

inline void validate_dense(const SpinModel& model, int max_spins) {
    validate(model);
    if (model.n_spins > max_spins || model.n_spins > 30) {
        throw ResourceError("dense 2^N representation requested for N=" + std::to_string(model.n_spins) +
                            " exceeds the limit of " + std::to_string(std::min(max_spins, 30)));
    }
}

inline Eigen::Index hilbert_dim(const SpinModel& model) { return Eigen::Index{1} << model.n_spins; }

/// Diagonal of H1 in the computational basis.
inline RVector ising_diagonal(const SpinModel& model, int max_spins = kDefaultMaxSpins) {
    validate_dense(model, max_spins);
    const Eigen::Index dim = hilbert_dim(model);
    RVector diag(dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        double sum = 0.0;
        for (int j = 0; j + 1 < model.n_spins; ++j) {
            const bool a = (x >> j) & 1;
            const bool b = (x >> (j + 1)) & 1;
            sum += (a == b) ? 1.0 : -1.0;
        }
        diag(x) = -model.coupling * sum;
    }
    return diag;
}

struct Hamiltonians {
    CMatrix h1;
    CMatrix h2;

    CMatrix total() const { return h1 + h2; }
};

inline Hamiltonians build_hamiltonians(const SpinModel& model, int max_spins = kDefaultMaxSpins) {
    validate_dense(model, max_spins);
    Hamiltonians out;
    out.h1 = ising_diagonal(model, max_spins).cast<Complex>().asDiagonal();
    PauliSum field;
    for (int j = 0; j < model.n_spins; ++j) field.emplace_back(Complex{-model.field, 0.0}, std::initializer_list<std::pair<int, Pauli>>{{j, Pauli::X}});
    out.h2 = to_dense(field, model.n_spins);
    return out;
}

/// Largest singular value, from the largest eigenvalue of A^dagger A.
inline double spectral_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    const CMatrix gram = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed in spectral_norm");
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

struct EigenDecomposition {
    RVector energies;  // ascending
    CMatrix states;    // column u is |u>

    double gap(Eigen::Index u, Eigen::Index v) const { return energies(u) - energies(v); }
    /// E_1 - E_0.
    double lowest_gap() const { return energies(1) - energies(0); }
};

inline EigenDecomposition exact_diagonalize(const SpinModel& model, int max_spins = kDefaultMaxSpins) {
    const Hamiltonians hs = build_hamiltonians(model, max_spins);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hs.total());
    if (solver.info() != Eigen::Success) throw NumericError("exact diagonalization did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// ---------------------------------------------------------------------------
// Nested commutators
// ---------------------------------------------------------------------------

/// Index 0 stands for H1 and 1 for H2.
///   first                 = [H1, H2]
///   second[g]             = [H_g, [H1, H2]]
///   fourth[g][l][m]       = [H_g, [H_l, [H_m, [H1, H2]]]]
struct CommutatorTable {
    CMatrix first;
    std::array<CMatrix, 2> second;
    std::array<std::array<std::array<CMatrix, 2>, 2>, 2> fourth;
};

struct CommutatorSet {
    CommutatorTable by_matrix;
    CommutatorTable by_pauli;

    /// max over all entries of ||a - b|| / max(||a||, 1e-300); zero matrices compare absolutely.
    double max_relative_mismatch() const {
        double worst = 0.0;
        auto cmp = [&worst](const CMatrix& a, const CMatrix& b) {
            const double scale = spectral_norm(a);
            const double diff = spectral_norm(a - b);
            worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
        };
        cmp(by_matrix.first, by_pauli.first);
        for (int g = 0; g < 2; ++g) cmp(by_matrix.second[g], by_pauli.second[g]);
        for (int g = 0; g < 2; ++g)
            for (int l = 0; l < 2; ++l)
                for (int m = 0; m < 2; ++m) cmp(by_matrix.fourth[g][l][m], by_pauli.fourth[g][l][m]);
        return worst;
    }
};

namespace detail {

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

using Ops = std::initializer_list<std::pair<int, Pauli>>;

// Neighbour counts of the open chain: sites have 1 (ends) or 2 neighbours, bond
// (j, j+1) has 0, 1 or 2 adjacent bonds. They carry the boundary corrections.
inline int site_neighbours(int j, int n) { return (j > 0 ? 1 : 0) + (j + 1 < n ? 1 : 0); }
inline int bond_neighbours(int j, int n) { return (j > 0 ? 1 : 0) + (j + 2 < n ? 1 : 0); }

// sum_j w_j X_j + c sum_j Z_j X_{j+1} Z_{j+2}, overall factor `scale`
template <typename SiteWeight>
PauliSum field_like(int n, double scale, SiteWeight site_weight, double zxz) {
    PauliSum s;
    for (int j = 0; j < n; ++j) s.emplace_back(Complex{scale * site_weight(j), 0.0}, Ops{{j, Pauli::X}});
    for (int j = 0; j + 2 < n; ++j)
        s.emplace_back(Complex{scale * zxz, 0.0}, Ops{{j, Pauli::Z}, {j + 1, Pauli::X}, {j + 2, Pauli::Z}});
    return s;
}

// sum_b w_b (Y_b Y_{b+1} + zz * Z_b Z_{b+1})
template <typename BondWeight>
PauliSum bond_like(int n, double scale, BondWeight bond_weight, double zz) {
    PauliSum s;
    for (int j = 0; j + 1 < n; ++j) {
        const double w = scale * bond_weight(j);
        s.emplace_back(Complex{w, 0.0}, Ops{{j, Pauli::Y}, {j + 1, Pauli::Y}});
        if (zz != 0.0) s.emplace_back(Complex{w * zz, 0.0}, Ops{{j, Pauli::Z}, {j + 1, Pauli::Z}});
    }
    return s;
}

}  // namespace detail

/// Closed Pauli-string forms of the nested commutators on the open chain.
inline CommutatorTable closed_form_commutators(const SpinModel& model, int max_spins = 10) {
    validate_dense(model, max_spins);
    using detail::Ops;
    const int n = model.n_spins;
    const double J = model.coupling;
    const double h = model.field;
    auto ns = [n](int j) { return static_cast<double>(detail::site_neighbours(j, n)); };
    auto nb = [n](int j) { return static_cast<double>(detail::bond_neighbours(j, n)); };
    auto one = [](int) { return 1.0; };

    CommutatorTable t;

    // [H1,H2] = 2iJh sum_b (Y_b Z_{b+1} + Z_b Y_{b+1})
    PauliSum c1;
    for (int j = 0; j + 1 < n; ++j) {
        c1.emplace_back(Complex{0.0, 2.0 * J * h}, Ops{{j, Pauli::Y}, {j + 1, Pauli::Z}});
        c1.emplace_back(Complex{0.0, 2.0 * J * h}, Ops{{j, Pauli::Z}, {j + 1, Pauli::Y}});
    }
    t.first = to_dense(c1, n);

    // [H1,[H1,H2]] = -4J^2 h [sum_j n_j X_j + 2 sum ZXZ]
    const PauliSum c11 = detail::field_like(n, -4.0 * J * J * h, ns, 2.0);
    // [H2,[H1,H2]] = -8J h^2 sum_b (YY - ZZ)
    const PauliSum c21 = detail::bond_like(n, -8.0 * J * h * h, one, -1.0);
    t.second[0] = to_dense(c11, n);
    t.second[1] = to_dense(c21, n);

    auto& f = t.fourth;
    // [H1,[H1,[H1,C]]] = -16J^4 h [sum_j n_j^3 X_j + 8 sum ZXZ]
    f[0][0][0] = to_dense(detail::field_like(n, -16.0 * std::pow(J, 4) * h, [&](int j) { return std::pow(ns(j), 3); }, 8.0), n);

    // [H1,[H1,[H2,C]]] = [H1,[H2,[H1,C]]] = -32J^3 h^2 [sum_b m_b YY - 2 sum ZXXZ]
    PauliSum mixed_h1 = detail::bond_like(n, -32.0 * std::pow(J, 3) * h * h, nb, 0.0);
    for (int j = 0; j + 3 < n; ++j)
        mixed_h1.emplace_back(Complex{64.0 * std::pow(J, 3) * h * h, 0.0},
                              Ops{{j, Pauli::Z}, {j + 1, Pauli::X}, {j + 2, Pauli::X}, {j + 3, Pauli::Z}});
    f[0][0][1] = to_dense(mixed_h1, n);
    f[0][1][0] = f[0][0][1];

    // [H_g,[H2,[H2,C]]] = 16 h^2 [H_g, C]
    f[0][1][1] = 16.0 * h * h * t.second[0];
    f[1][1][1] = 16.0 * h * h * t.second[1];

    // [H2,[H1,[H1,C]]] = -16J^3 h^2 sum_b (2 + 3 m_b)(YY - ZZ)
    f[1][0][0] = to_dense(detail::bond_like(n, -16.0 * std::pow(J, 3) * h * h, [&](int j) { return 2.0 + 3.0 * nb(j); }, -1.0), n);

    // [H2,[H1,[H2,C]]] = [H2,[H2,[H1,C]]] = 64J^2 h^3 sum (YXY - ZXZ)
    PauliSum mixed_h2;
    for (int j = 0; j + 2 < n; ++j) {
        const double w = 64.0 * J * J * std::pow(h, 3);
        mixed_h2.emplace_back(Complex{w, 0.0}, Ops{{j, Pauli::Y}, {j + 1, Pauli::X}, {j + 2, Pauli::Y}});
        mixed_h2.emplace_back(Complex{-w, 0.0}, Ops{{j, Pauli::Z}, {j + 1, Pauli::X}, {j + 2, Pauli::Z}});
    }
    f[1][0][1] = to_dense(mixed_h2, n);
    f[1][1][0] = f[1][0][1];
    return t;
}

inline CommutatorTable matrix_commutators(const SpinModel& model, int max_spins = 10) {
    const Hamiltonians hs = build_hamiltonians(model, max_spins);
    const std::array<const CMatrix*, 2> H = {&hs.h1, &hs.h2};
    CommutatorTable t;
    t.first = detail::commutator(hs.h1, hs.h2);
    for (int g = 0; g < 2; ++g) t.second[g] = detail::commutator(*H[g], t.first);
    for (int m = 0; m < 2; ++m) {
        const CMatrix inner = t.second[m];
        for (int l = 0; l < 2; ++l) {
            const CMatrix middle = detail::commutator(*H[l], inner);
            for (int g = 0; g < 2; ++g) t.fourth[g][l][m] = detail::commutator(*H[g], middle);
        }
    }
    return t;
}

inline CommutatorSet explicit_commutators(const SpinModel& model, int max_spins = 10) {
    return {matrix_commutators(model, max_spins), closed_form_commutators(model, max_spins)};
}

// ---------------------------------------------------------------------------
// Norm bounds and Trotter prefactors
// ---------------------------------------------------------------------------

/// Upper bounds on the normalized commutators, H~1 = H1/|J| and H~2 = H2/|h|.
struct NormalizedBounds {
    double first = 0.0;          // ||[H~1,H~2]||                          <= 4(N-1)
    double second = 0.0;         // ||[H~g,[H~1,H~2]]||                    <= 16(N-1)
    double mixed_fourth = 0.0;   // ||[H~g,[H~l,[H~m,[H~1,H~2]]]]||, l != m <= 128(N-2)
    std::array<double, 2> repeated_fourth{};  // l == m, index l-1        <= 128 l (N-1)

    double fourth(int l, int m) const { return l == m ? repeated_fourth[l] : mixed_fourth; }
};

inline NormalizedBounds normalized_bounds(int n_spins) {
    const double n = n_spins;
    NormalizedBounds b;
    b.first = 4.0 * (n - 1.0);
    b.second = 16.0 * (n - 1.0);
    b.mixed_fourth = 128.0 * std::max(0.0, n - 2.0);
    b.repeated_fourth = {128.0 * 1.0 * (n - 1.0), 128.0 * 2.0 * (n - 1.0)};
    return b;
}

/// Second-order constants, indexed by gamma-1 (pairs with [H_gamma,[H1,H2]]).
inline constexpr std::array<double, 2> kSecondOrderConstants = {0.083, 0.167};

/// Fourth-order constants c_{gamma lambda, mu}, indexed [gamma-1][lambda-1][mu-1].
inline constexpr std::array<std::array<std::array<double, 2>, 2>, 2> kFourthOrderConstants = {{
    {{{0.0094, 0.0114}, {0.0092, 0.0148}}},
    {{{0.0194, 0.0194}, {0.0346, 0.0568}}},
}};

inline bool is_supported_order(int order) { return order == 1 || order == 2 || order == 4; }

struct BoundSet {
    int order = 1;
    NormalizedBounds normalized;
    double prefactor = 0.0;  // C^(p), units energy^{p+1}
};

/// Analytic commutator bounds and the Trotter prefactor C^(p). Valid for any
/// N >= 2 (no matrices are built).
inline BoundSet commutator_norm_bounds(const SpinModel& model, int order) {
    validate(model);
    if (!is_supported_order(order)) throw ParameterError("Trotter order must be 1, 2 or 4");
    const double aj = std::abs(model.coupling);
    const double ah = std::abs(model.field);
    BoundSet out;
    out.order = order;
    out.normalized = normalized_bounds(model.n_spins);
    const auto& b = out.normalized;

    // Each H1 (H2) in a nested commutator contributes a factor |J| (|h|).
    auto scale = [&](int count_h1, int count_h2) { return std::pow(aj, count_h1) * std::pow(ah, count_h2); };

    switch (order) {
        case 1:
            out.prefactor = b.first * scale(1, 1);
            break;
        case 2:
            out.prefactor = kSecondOrderConstants[0] * b.second * scale(2, 1) +
                            kSecondOrderConstants[1] * b.second * scale(1, 2);
            break;
        case 4:
            for (int g = 0; g < 2; ++g)
                for (int l = 0; l < 2; ++l)
                    for (int m = 0; m < 2; ++m) {
                        const int h1_count = 1 + (g == 0) + (l == 0) + (m == 0);
                        const int h2_count = 1 + (g == 1) + (l == 1) + (m == 1);
                        out.prefactor += kFourthOrderConstants[g][l][m] * b.fourth(l, m) * scale(h1_count, h2_count);
                    }
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reference gaps
// ---------------------------------------------------------------------------

/// Averaged single-flip excitation energy, 2h[1 - (1 - 1/N) J/h].
inline double perturbative_gap_guess(const SpinModel& model) {
    validate(model);
    const double n = model.n_spins;
    return 2.0 * model.field - 2.0 * model.coupling * (1.0 - 1.0 / n);
}

/// N -> infinity limit of the perturbative guess, 2(h - J).
inline double perturbative_gap_guess_bulk(double coupling, double field) { return 2.0 * (field - coupling); }

/// Upper and lower quasiparticle bands of the periodic chain (lattice constant 1).
inline std::pair<double, double> dispersion(double k, double coupling, double field) {
    const double e = std::sqrt(coupling * coupling + field * field - 2.0 * coupling * field * std::cos(k));
    return {e, -e};
}

inline double exact_gap_thermodynamic(double coupling, double field) {
    const auto [upper, lower] = dispersion(0.0, coupling, field);
    return upper - lower;
}

}  // namespace qge

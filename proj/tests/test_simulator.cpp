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

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qge/simulator.hpp"

namespace {

using qge::CMatrix;
using qge::CVector;
using qge::InputOrientation;
using qge::SpinModel;

TEST(PrepareInput, ComputationalAndFlipped) {
    const CVector zero = qge::prepare_input(InputOrientation::uniform(3, 0.0));
    EXPECT_NEAR(std::abs(zero(0)), 1.0, 1e-15);
    EXPECT_NEAR(zero.norm(), 1.0, 1e-15);
    const CVector flipped = qge::prepare_input(InputOrientation::uniform(3, qge::kPi));
    EXPECT_NEAR(std::abs(flipped(7)), 1.0, 1e-15);
}

TEST(PrepareInput, MatchesKroneckerProduct) {
    for (double theta : {0.1, 0.27 * qge::kPi, 2.0}) {
        const CVector psi = qge::prepare_input(InputOrientation::uniform(4, theta));
        EXPECT_LT((psi - oracle::product_state(4, theta)).norm(), 1e-14);
    }
}

TEST(PrepareInput, SiteResolvedAngles) {
    const CVector psi = qge::prepare_input({{qge::kPi, 0.0}});
    EXPECT_NEAR(std::abs(psi(1)), 1.0, 1e-15);
    EXPECT_THROW(qge::validate(InputOrientation{{0.1, 0.2}}, SpinModel{3, 0.4, 1.0}), qge::ParameterError);
}

TEST(Gates, SingleQubitMatrices) {
    const double a = 0.731;
    for (auto [kind, pauli] : {std::pair{qge::GateKind::Rx, 'X'}, std::pair{qge::GateKind::Ry, 'Y'}}) {
        const CMatrix ref = oracle::expm(qge::Complex(0, -a / 2) * oracle::string({{1, pauli}}, 3));
        for (int col = 0; col < 8; ++col) {
            CVector e = CVector::Zero(8);
            e(col) = 1.0;
            qge::apply_gate(e, {kind, 1, a});
            EXPECT_LT((e - ref.col(col)).norm(), 1e-14);
        }
    }
}

TEST(Gates, ZZRotation) {
    const double a = -1.13;
    const CMatrix ref = oracle::expm(qge::Complex(0, -a / 2) * oracle::string({{1, 'Z'}, {2, 'Z'}}, 3));
    for (int col = 0; col < 8; ++col) {
        CVector e = CVector::Zero(8);
        e(col) = 1.0;
        qge::apply_gate(e, {qge::GateKind::Rzz, 1, a});
        EXPECT_LT((e - ref.col(col)).norm(), 1e-14);
    }
}

TEST(Gates, Counts) {
    for (int n : {2, 4, 7}) {
        EXPECT_EQ(qge::literal_gates_per_iteration(1, n), 2 * n - 1);
        EXPECT_EQ(qge::literal_gates_per_iteration(2, n), 3 * n - 2);
        EXPECT_EQ(qge::literal_gates_per_iteration(4, n), 11 * n - 6);
        for (int p : {1, 2, 4})
            EXPECT_EQ(qge::gate_sequence({n, 0.4, 1.0}, {p, 5}, 1.0).size(),
                      static_cast<std::size_t>(5 * qge::literal_gates_per_iteration(p, n)));
    }
}

TEST(Gates, AnglesFollowCouplings) {
    const auto gates = qge::gate_sequence({3, 0.4, 1.0}, {1, 2}, 1.5);
    ASSERT_EQ(gates.size(), 10u);
    EXPECT_EQ(gates[0].kind, qge::GateKind::Rx);
    EXPECT_NEAR(gates[0].angle, -2.0 * 1.5 / 2, 1e-15);
    EXPECT_EQ(gates[3].kind, qge::GateKind::Rzz);
    EXPECT_NEAR(gates[3].angle, -2.0 * 0.4 * 1.5 / 2, 1e-15);
}

TEST(Overlap, CircuitMatchesDensePropagator) {
    for (int n = 2; n <= 5; ++n)
        for (int p : {1, 2, 4})
            for (double t : {0.37, -2.1, 6.0}) {
                const SpinModel m{n, 0.4, 1.0};
                const auto o = InputOrientation::uniform(n, 0.27 * qge::kPi);
                EXPECT_NEAR(qge::circuit_overlap(m, {p, 7}, o, t), qge::propagator_overlap(m, {p, 7}, o, t), 1e-10);
            }
}

TEST(Overlap, FreeSpinsClosedForm) {
    // J = 0: P(t) = (cos^2 ht + sin^2 theta sin^2 ht)^N
    const double theta = 0.27 * qge::kPi;
    for (int p : {1, 2, 4})
        for (double t : {0.2, 1.0, 3.3}) {
            const double single = std::pow(std::cos(t), 2) + std::pow(std::sin(theta) * std::sin(t), 2);
            EXPECT_NEAR(qge::circuit_overlap({4, 0.0, 1.0}, {p, 3}, InputOrientation::uniform(4, theta), t), std::pow(single, 4), 1e-12);
        }
}

TEST(Overlap, ZeroTimeIsOne) {
    for (int p : {1, 2, 4}) EXPECT_NEAR(qge::circuit_overlap({4, 0.4, 1.0}, {p, 3}, InputOrientation::uniform(4, 1.0), 0.0), 1.0, 1e-14);
}

TEST(Overlap, FrozenReference) {
    // numpy: p = 1, M = 35, N = 4, theta = 0.27 pi, ht = 1
    const SpinModel m{4, 0.4, 1.0};
    const auto o = InputOrientation::uniform(4, 0.27 * qge::kPi);
    EXPECT_NEAR(qge::circuit_overlap(m, {1, 35}, o, 1.0), 0.5247794174086412, 1e-12);
    const CMatrix u = qge::exact_propagator(qge::exact_diagonalize(m), 1.0);
    EXPECT_NEAR(qge::overlap_probability(qge::prepare_input(o), u), 0.5249865596508445, 1e-12);
}

TEST(Overlap, NormPreservedByGates) {
    CVector state = qge::prepare_input(InputOrientation::uniform(5, 0.9));
    qge::apply_gates(state, qge::gate_sequence({5, 0.8, 1.0}, {4, 20}, 9.0));
    EXPECT_NEAR(state.norm(), 1.0, 1e-12);
}

TEST(Overlap, TimeReversalWithinBound) {
    const SpinModel m{4, 0.4, 1.0};
    const auto o = InputOrientation::uniform(4, 0.27 * qge::kPi);
    for (int p : {1, 2, 4})
        for (double t : {0.5, 2.0, 5.0}) {
            const double diff = std::abs(qge::propagator_overlap(m, {p, 6}, o, t) - qge::propagator_overlap(m, {p, 6}, o, -t));
            EXPECT_LE(diff, 2.0 * qge::truncation_error_bound(m, {p, 6}, qge::Filter::none(), t) + 1e-14);
        }
}

// ---------------------------------------------------------------------------

TEST(TimeGridTest, DefaultGrid) {
    const auto g = qge::default_grid(0.3);
    EXPECT_EQ(g.length, 188);
    EXPECT_NEAR(g.d_omega(), 0.075, 1e-15);
    EXPECT_NEAR(g.dt * g.length * g.d_omega(), 2 * qge::kPi, 1e-12);
    EXPECT_THROW(qge::default_grid(0.0), qge::ParameterError);
    EXPECT_THROW(qge::validate(qge::TimeGrid{0.1, 7}), qge::ParameterError);
}

TEST(RunTimeSeries, EnginesAgree) {
    const SpinModel m{3, 0.6, 1.0};
    const auto o = InputOrientation::uniform(3, 0.4);
    const qge::TimeGrid g{0.2, 16};
    const auto dense = qge::run_time_series(m, {2, 4}, o, g, {}, qge::Engine::Dense);
    const auto gates = qge::run_time_series(m, {2, 4}, o, g, {}, qge::Engine::Gates);
    for (int n = 0; n < g.length; ++n) {
        EXPECT_NEAR(dense.plus[n], gates.plus[n], 1e-12);
        EXPECT_NEAR(dense.minus[n], gates.minus[n], 1e-12);
        EXPECT_NEAR(dense.plus[n], qge::propagator_overlap(m, {2, 4}, o, g.time(n)), 1e-12);
    }
    EXPECT_EQ(dense.plus[0], 1.0);
    EXPECT_EQ(dense.minus[0], 1.0);
}

TEST(RunTimeSeries, BatchMatchesSingle) {
    const SpinModel m{3, 0.6, 1.0};
    const std::vector<InputOrientation> os{InputOrientation::uniform(3, 0.2), InputOrientation::uniform(3, 1.1)};
    const qge::TimeGrid g{0.3, 10};
    const auto batch = qge::run_time_series_batch(m, {1, 3}, os, g, {});
    for (std::size_t k = 0; k < os.size(); ++k) {
        const auto single = qge::run_time_series(m, {1, 3}, os[k], g, {});
        EXPECT_EQ(batch[k].plus, single.plus);
        EXPECT_EQ(batch[k].minus, single.minus);
    }
}

TEST(RunTimeSeries, ShotsAreSeedDeterministic) {
    const SpinModel m{3, 0.4, 1.0};
    const auto o = InputOrientation::uniform(3, 0.9);
    const qge::TimeGrid g{0.25, 20};
    const auto a = qge::run_time_series(m, {1, 4}, o, g, {256, 99});
    const auto b = qge::run_time_series(m, {1, 4}, o, g, {256, 99});
    const auto c = qge::run_time_series(m, {1, 4}, o, g, {256, 100});
    EXPECT_EQ(a.plus, b.plus);
    EXPECT_EQ(a.minus, b.minus);
    EXPECT_NE(a.plus, c.plus);
    for (double v : a.plus) {
        const double counts = v * 256;
        EXPECT_NEAR(counts, std::round(counts), 1e-9);
    }
}

TEST(RunTimeSeries, ShotNoiseScale) {
    const SpinModel m{3, 0.4, 1.0};
    const auto o = InputOrientation::uniform(3, 0.9);
    const qge::TimeGrid g{0.1, 200};
    const long long shots = 1000;
    const auto exact = qge::run_time_series(m, {1, 4}, o, g, {});
    const auto noisy = qge::run_time_series(m, {1, 4}, o, g, {shots, 5});
    double z2 = 0.0;
    int count = 0;
    for (int n = 1; n < g.length; ++n)
        for (int b = 0; b < 2; ++b) {
            const double p = (b ? exact.minus : exact.plus)[n];
            const double q = (b ? noisy.minus : noisy.plus)[n];
            const double var = p * (1 - p) / shots;
            if (var < 1e-8) continue;
            z2 += (q - p) * (q - p) / var;
            ++count;
        }
    // mean squared z-score of binomial draws is 1
    EXPECT_NEAR(z2 / count, 1.0, 0.2);
}

TEST(RunTimeSeries, LargeShotCountsConverge) {
    const SpinModel m{3, 0.4, 1.0};
    const auto o = InputOrientation::uniform(3, 0.9);
    const qge::TimeGrid g{0.3, 12};
    const auto exact = qge::run_time_series(m, {2, 4}, o, g, {});
    const auto noisy = qge::run_time_series(m, {2, 4}, o, g, {1000000, 3});
    for (int n = 0; n < g.length; ++n) EXPECT_NEAR(noisy.plus[n], exact.plus[n], 5 * 0.5 / 1000.0);
}

TEST(RunTimeSeries, RejectsBadInput) {
    const SpinModel m{3, 0.4, 1.0};
    const auto o = InputOrientation::uniform(3, 0.9);
    EXPECT_THROW(qge::run_time_series(m, {3, 4}, o, {0.1, 10}, {}), qge::ParameterError);
    EXPECT_THROW(qge::run_time_series(m, {1, 0}, o, {0.1, 10}, {}), qge::ParameterError);
    EXPECT_THROW(qge::run_time_series(m, {1, 4}, o, {0.1, 10}, {-1, 0}), qge::ParameterError);
    EXPECT_THROW(qge::run_time_series(m, {1, 4}, InputOrientation::uniform(2, 0.9), {0.1, 10}, {}), qge::ParameterError);
}

}  // namespace

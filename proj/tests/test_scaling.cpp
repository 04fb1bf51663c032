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
#include <vector>

#include <gtest/gtest.h>

#include "qge/model.hpp"
#include "qge/scaling.hpp"

namespace {

using qge::ScalingSample;

TEST(Extrapolate, ThreePointsAgainstStatsmodels) {
    // statsmodels OLS on x = 1/N; t from scipy.stats.t.ppf(0.975, 1)
    const auto e = qge::extrapolate({{2, 3, 4}, {1.5, 1.37, 1.33}, 0.4, 0.3});
    EXPECT_NEAR(e.intercept, 1.1492857142857138, 1e-12);
    EXPECT_NEAR(e.slope, 0.6942857142857155, 1e-12);
    EXPECT_NEAR(e.intercept_stderr, 0.027893748842523505, 1e-12);
    EXPECT_NEAR(e.t_quantile, 12.706204736432095, 1e-9);
    EXPECT_NEAR(e.lower(), 0.7948620306259944, 1e-9);
    EXPECT_NEAR(e.upper(), 1.5037093979454332, 1e-9);
    EXPECT_EQ(e.points, 3u);
}

TEST(Extrapolate, FourPointsAgainstStatsmodels) {
    const auto e = qge::extrapolate({{2, 3, 4, 5}, {1.62, 1.52, 1.47, 1.43}, 0.4, 0.3});
    EXPECT_NEAR(e.intercept, 1.310026773761713, 1e-12);
    EXPECT_NEAR(e.slope, 0.6232931726907647, 1e-12);
    EXPECT_NEAR(e.intercept_stderr, 0.007234801015423506, 1e-12);
    EXPECT_NEAR(e.t_quantile, 4.302652729696142, 1e-9);
}

TEST(Extrapolate, ExactLineHasZeroWidth) {
    for (double j : {0.2, 0.4, 0.6, 0.8}) {
        ScalingSample s{{4, 5, 6, 7, 8}, {}, j, 0.3};
        for (int n : s.sizes) s.gaps.push_back(qge::perturbative_gap_guess({n, j, 1.0}));
        const auto e = qge::extrapolate(s);
        EXPECT_NEAR(e.intercept, 2.0 * (1.0 - j), 1e-12);
        EXPECT_NEAR(e.slope, 2.0 * j, 1e-12);
        EXPECT_NEAR(e.upper() - e.lower(), 0.0, 1e-10);
    }
}

TEST(Extrapolate, ConstantGapsGiveZeroSlope) {
    const auto e = qge::extrapolate({{3, 5, 9}, {1.2, 1.2, 1.2}, 0.5, 0.3});
    EXPECT_NEAR(e.slope, 0.0, 1e-13);
    EXPECT_NEAR(e.intercept, 1.2, 1e-13);
}

TEST(Extrapolate, BandIsNarrowestAtTheMean) {
    const auto e = qge::extrapolate({{2, 3, 4, 5}, {1.62, 1.52, 1.47, 1.43}, 0.4, 0.3});
    auto width = [&](double x) {
        const auto [lo, hi] = e.band(x);
        return hi - lo;
    };
    EXPECT_LT(width(e.x_mean), width(0.0));
    EXPECT_LT(width(e.x_mean), width(0.5));
    const auto [lo0, hi0] = e.band(0.0);
    EXPECT_NEAR(lo0, e.lower(), 1e-12);
    EXPECT_NEAR(hi0, e.upper(), 1e-12);
    const auto wider = qge::extrapolate({{2, 3, 4, 5}, {1.62, 1.52, 1.47, 1.43}, 0.4, 0.3}, 0.99);
    EXPECT_GT(wider.upper() - wider.lower(), e.upper() - e.lower());
}

TEST(Extrapolate, MoreSizesTightenTheInterval) {
    // residual pattern repeated, so s stays comparable while t and Sxx improve
    const auto few = qge::extrapolate({{4, 6, 8}, {1.32, 1.25, 1.22}, 0.4, 0.3});
    const auto many = qge::extrapolate({{4, 5, 6, 7, 8, 9, 10}, {1.32, 1.279, 1.25, 1.231, 1.22, 1.213, 1.2}, 0.4, 0.3});
    EXPECT_LT(many.upper() - many.lower(), few.upper() - few.lower());
}

TEST(Extrapolate, RejectsBadSamples) {
    EXPECT_THROW(qge::extrapolate({{4, 5}, {1.0, 1.1}, 0.4, 0.3}), qge::DataError);
    EXPECT_THROW(qge::extrapolate({{4, 5, 6}, {1.0, 1.1}, 0.4, 0.3}), qge::DataError);
    EXPECT_THROW(qge::extrapolate({{4, 4, 4}, {1.0, 1.1, 1.2}, 0.4, 0.3}), qge::DataError);
    EXPECT_THROW(qge::extrapolate({{4, 5, 6}, {1.0, -1.1, 1.2}, 0.4, 0.3}), qge::DataError);
    EXPECT_THROW(qge::extrapolate({{4, 5, 6}, {1.0, 1.1, 1.2}, 0.4, 0.3}, 1.0), qge::ParameterError);
}

TEST(PhaseDiagram, RowsSortedAndInterpolated) {
    std::vector<ScalingSample> samples;
    for (double j : {0.8, 0.2, 0.4, 0.6}) {
        ScalingSample s{{4, 5, 6}, {}, j, 0.3};
        for (int n : s.sizes) s.gaps.push_back(qge::perturbative_gap_guess({n, j, 1.0}));
        samples.push_back(s);
    }
    const auto d = qge::phase_diagram(samples);
    ASSERT_EQ(d.rows.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(d.rows[i].coupling, 0.2 * (i + 1), 1e-15);
        EXPECT_NEAR(d.rows[i].delta_inf, d.rows[i].exact_ref, 1e-12);
    }
    const auto mid = d.interpolate(0.5);
    EXPECT_NEAR(mid.delta_inf, 1.0, 1e-12);
    EXPECT_NEAR(mid.exact_ref, 1.0, 1e-15);
    EXPECT_NEAR(d.interpolate(0.0).coupling, 0.2, 1e-15);

    samples.push_back(samples.front());
    EXPECT_THROW(qge::phase_diagram(samples), qge::DataError);
}

TEST(ExactGap, ThermodynamicLimit) {
    EXPECT_NEAR(qge::exact_gap_thermodynamic(0.4, 1.0), 1.2, 1e-15);
    EXPECT_NEAR(qge::exact_gap_thermodynamic(1.0, 1.0), 0.0, 1e-15);
}

}  // namespace

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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "qge/toymodel.hpp"

namespace {

using qge::FilterFamily;
using qge::TwoPeakModel;

TwoPeakModel model(double lambda, FilterFamily family) { return {1.0, 0.6, lambda, family}; }

/// 2 eta / delta at which the Lorentzian and Gaussian shifts coincide.
double crossing(double lambda) {
    auto diff = [&](double x) {
        return qge::peak_shift(model(lambda, FilterFamily::Lorentzian), 0.3 * x).shift -
               qge::peak_shift(model(lambda, FilterFamily::Gaussian), 0.3 * x).shift;
    };
    double lo = 0.7, hi = 1.0;
    const bool lo_sign = diff(lo) > 0;
    EXPECT_NE(lo_sign, diff(hi) > 0);
    while (hi - lo > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        ((diff(mid) > 0) == lo_sign ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

TEST(TwoPeak, NoSecondPeakMeansNoShift) {
    for (auto fam : {FilterFamily::Lorentzian, FilterFamily::Gaussian})
        for (double eta : {0.05, 0.3, 1.0}) EXPECT_NEAR(qge::peak_shift(model(0.0, fam), eta).shift, 0.0, 1e-8);
}

TEST(TwoPeak, VanishingBroadening) {
    for (auto fam : {FilterFamily::Lorentzian, FilterFamily::Gaussian}) {
        EXPECT_EQ(qge::peak_shift(model(0.5, fam), 0.0).shift, 0.0);
        EXPECT_LT(qge::peak_shift(model(0.5, fam), 1e-3).shift, 1e-6);
    }
}

TEST(TwoPeak, ScipyReferenceShifts) {
    // scipy bounded minimization of the negated two-peak shape
    EXPECT_NEAR(qge::peak_shift(model(0.25, FilterFamily::Lorentzian), 0.15).shift, 0.0005202899448308873, 1e-8);
    EXPECT_NEAR(qge::peak_shift(model(0.25, FilterFamily::Gaussian), 0.15).shift, 2.289e-06, 1e-8);
    EXPECT_NEAR(qge::peak_shift(model(0.5, FilterFamily::Lorentzian), 0.3).shift, 0.012615134590186372, 1e-8);
    EXPECT_NEAR(qge::peak_shift(model(0.5, FilterFamily::Gaussian), 0.3).shift, 0.022161971000093095, 1e-8);
}

TEST(TwoPeak, MonotoneInBroadening) {
    for (double lambda : {0.25, 0.5, 1.0})
        for (auto fam : {FilterFamily::Lorentzian, FilterFamily::Gaussian}) {
            double prev = 0.0;
            for (int k = 1; k <= 40; ++k) {
                const double s = qge::peak_shift(model(lambda, fam), 0.015 * k).shift;
                EXPECT_GE(s, prev - 1e-9) << lambda << " " << k;
                prev = s;
            }
        }
}

TEST(TwoPeak, MonotoneInRelativeHeight) {
    for (auto fam : {FilterFamily::Lorentzian, FilterFamily::Gaussian}) {
        double prev = 0.0;
        for (double lambda : {0.1, 0.25, 0.5, 0.75, 1.0}) {
            const double s = qge::peak_shift(model(lambda, fam), 0.2).shift;
            EXPECT_GT(s, prev);
            prev = s;
        }
    }
}

TEST(TwoPeak, GaussianStartsLowerThenOvertakes) {
    for (double lambda : {0.25, 0.5, 1.0}) {
        EXPECT_LT(qge::peak_shift(model(lambda, FilterFamily::Gaussian), 0.1).shift,
                  qge::peak_shift(model(lambda, FilterFamily::Lorentzian), 0.1).shift);
    }
    EXPECT_NEAR(crossing(0.25), 0.8618, 1e-3);
    EXPECT_NEAR(crossing(0.5), 0.8566, 1e-3);
    EXPECT_NEAR(crossing(1.0), 0.8467, 1e-3);
}

TEST(TwoPeak, AbsorbedShiftIsFrozenAtMerge) {
    const auto a = qge::peak_shift(model(1.0, FilterFamily::Gaussian), 0.45);
    const auto b = qge::peak_shift(model(1.0, FilterFamily::Gaussian), 0.6);
    ASSERT_TRUE(a.absorbed);
    ASSERT_TRUE(b.absorbed);
    EXPECT_EQ(a.shift, b.shift);
    EXPECT_EQ(a.merge_eta, b.merge_eta);
    EXPECT_NEAR(a.shift, 0.299901, 1e-5);
    EXPECT_LT(a.merge_eta, 0.45);
    EXPECT_FALSE(qge::peak_shift(model(1.0, FilterFamily::Gaussian), 0.5 * a.merge_eta).absorbed);
}

TEST(TwoPeak, SpectrumNormalized) {
    std::vector<double> w;
    for (int k = 0; k <= 800; ++k) w.push_back(0.5 + k * 0.0025);
    for (auto fam : {FilterFamily::Lorentzian, FilterFamily::Gaussian}) {
        const auto s = qge::two_peak_spectrum(model(0.5, fam), 0.2, w);
        EXPECT_DOUBLE_EQ(*std::max_element(s.values.begin(), s.values.end()), 1.0);
        EXPECT_NEAR(s.d_omega, 0.0025, 1e-15);
        EXPECT_EQ(s.size(), w.size());
    }
}

TEST(TwoPeak, RejectsBadModels) {
    EXPECT_THROW(qge::peak_shift({1.0, 0.6, 0.5, FilterFamily::None}, 0.1), qge::ParameterError);
    EXPECT_THROW(qge::peak_shift({1.0, 0.0, 0.5, FilterFamily::Gaussian}, 0.1), qge::ParameterError);
    EXPECT_THROW(qge::peak_shift({1.0, 0.6, -0.5, FilterFamily::Gaussian}, 0.1), qge::ParameterError);
    EXPECT_THROW(qge::peak_shift(model(0.5, FilterFamily::Gaussian), -0.1), qge::ParameterError);
}

}  // namespace

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

// Finite-size extrapolation Delta(N) = Delta_inf + slope / N by ordinary least
// squares, with Student-t confidence bands, and the paramagnetic phase diagram
// assembled from extrapolations at several couplings.

#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "qge/core.hpp"

namespace qge {

struct ScalingSample {
    std::vector<int> sizes;    // N
    std::vector<double> gaps;  // Delta_N
    double coupling = 0.0;     // J/h
    double eta = 0.0;          // fence half-width
};

inline void validate(const ScalingSample& s) {
    if (s.sizes.size() != s.gaps.size()) throw DataError("scaling sample needs one gap per size");
    if (s.sizes.size() < 3) throw DataError("extrapolation needs at least three sizes");
    for (int n : s.sizes)
        if (n < 1) throw DataError("system sizes must be positive");
    for (double g : s.gaps)
        if (!(g > 0.0)) throw DataError("gap estimates must be positive");
}

struct Extrapolation {
    double intercept = 0.0;  // Delta_inf
    double slope = 0.0;
    double intercept_stderr = 0.0;
    double residual_sd = 0.0;
    double t_quantile = 0.0;
    double confidence = 0.95;
    std::size_t points = 0;
    double x_mean = 0.0;
    double sxx = 0.0;

    double lower() const { return intercept - t_quantile * intercept_stderr; }
    double upper() const { return intercept + t_quantile * intercept_stderr; }
    double predict(double inv_n) const { return intercept + slope * inv_n; }

    /// Confidence band of the fitted line at abscissa 1/N.
    std::pair<double, double> band(double inv_n) const {
        const double d = inv_n - x_mean;
        const double half =
            t_quantile * residual_sd * std::sqrt(1.0 / static_cast<double>(points) + d * d / sxx);
        return {predict(inv_n) - half, predict(inv_n) + half};
    }
};

inline Extrapolation extrapolate(const ScalingSample& sample, double confidence = 0.95) {
    validate(sample);
    if (!(confidence > 0.0 && confidence < 1.0)) throw ParameterError("confidence level must lie in (0, 1)");
    const std::size_t n = sample.sizes.size();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 / sample.sizes[i];

    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xm += x[i];
        ym += sample.gaps[i];
    }
    xm /= static_cast<double>(n);
    ym /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (sample.gaps[i] - ym);
    }
    if (!(sxx > 1e-14 * std::max(1.0, xm * xm))) throw DataError("regressors 1/N are degenerate");

    Extrapolation e;
    e.points = n;
    e.x_mean = xm;
    e.sxx = sxx;
    e.confidence = confidence;
    e.slope = sxy / sxx;
    e.intercept = ym - e.slope * xm;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = sample.gaps[i] - e.predict(x[i]);
        ssr += r * r;
    }
    const auto dof = static_cast<double>(n - 2);
    e.residual_sd = std::sqrt(ssr / dof);
    e.intercept_stderr = e.residual_sd * std::sqrt(1.0 / static_cast<double>(n) + xm * xm / sxx);
    e.t_quantile = boost::math::quantile(boost::math::students_t(dof), 0.5 + 0.5 * confidence);
    return e;
}

struct PhaseDiagramRow {
    double coupling;  // J/h
    double delta_inf;
    double band_lo;
    double band_hi;
    double exact_ref;  // 2|h - J|
};

struct PhaseDiagram {
    std::vector<PhaseDiagramRow> rows;  // ascending coupling

    /// Linear interpolation of Delta_inf and band edges between neighbouring couplings.
    PhaseDiagramRow interpolate(double coupling) const {
        if (rows.empty()) throw DataError("empty phase diagram");
        if (coupling <= rows.front().coupling) return rows.front();
        if (coupling >= rows.back().coupling) return rows.back();
        const auto hi = std::upper_bound(rows.begin(), rows.end(), coupling,
                                         [](double c, const PhaseDiagramRow& r) { return c < r.coupling; });
        const auto lo = hi - 1;
        const double w = (coupling - lo->coupling) / (hi->coupling - lo->coupling);
        auto mix = [w](double a, double b) { return a + w * (b - a); };
        return {coupling, mix(lo->delta_inf, hi->delta_inf), mix(lo->band_lo, hi->band_lo),
                mix(lo->band_hi, hi->band_hi), 2.0 * std::abs(1.0 - coupling)};
    }
};

/// Rows (J/h, Delta_inf, CI) in units of h, sorted by coupling.
inline PhaseDiagram phase_diagram(const std::vector<ScalingSample>& samples, double confidence = 0.95) {
    PhaseDiagram d;
    for (const auto& s : samples) {
        const Extrapolation e = extrapolate(s, confidence);
        d.rows.push_back({s.coupling, e.intercept, e.lower(), e.upper(), 2.0 * std::abs(1.0 - s.coupling)});
    }
    std::sort(d.rows.begin(), d.rows.end(), [](const auto& a, const auto& b) { return a.coupling < b.coupling; });
    for (std::size_t i = 1; i < d.rows.size(); ++i)
        if (d.rows[i].coupling == d.rows[i - 1].coupling) throw DataError("duplicate coupling in phase diagram");
    return d;
}

}  // namespace qge

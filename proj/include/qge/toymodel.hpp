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

// Two broadened peaks A0(w - Delta0) + lambda A0(w - Delta0 - delta) and the
// shift of the first peak's center as the broadening grows.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "qge/core.hpp"
#include "qge/filter.hpp"
#include "qge/spectral.hpp"

namespace qge {

struct TwoPeakModel {
    double center = 1.0;           // Delta0
    double separation = 0.6;       // delta
    double relative_height = 0.5;  // lambda
    FilterFamily family = FilterFamily::Lorentzian;
};

inline void validate(const TwoPeakModel& m) {
    if (!(m.center > 0.0) || !std::isfinite(m.center)) throw ParameterError("peak center must be positive");
    if (!(m.separation > 0.0) || !std::isfinite(m.separation)) throw ParameterError("peak separation must be positive");
    if (!(m.relative_height >= 0.0)) throw ParameterError("relative height must be non-negative");
    if (m.family == FilterFamily::None) throw ParameterError("toy peaks need a Lorentzian or Gaussian line shape");
}

/// Unnormalized two-peak line shape at broadening eta.
inline double two_peak_value(const TwoPeakModel& m, double eta, double omega) {
    const Filter f{m.family, eta};
    return filter_fourier(f, omega - m.center) + m.relative_height * filter_fourier(f, omega - m.center - m.separation);
}

/// Line shape on an arbitrary grid, scaled so its largest sample is 1.
inline Spectrum two_peak_spectrum(const TwoPeakModel& m, double eta, std::span<const double> omega) {
    validate(m);
    Spectrum s;
    s.filter = Filter{m.family, eta};
    s.omega.assign(omega.begin(), omega.end());
    if (s.omega.size() > 1) s.d_omega = s.omega[1] - s.omega[0];
    s.values.reserve(s.omega.size());
    for (double w : s.omega) s.values.push_back(two_peak_value(m, eta, w));
    const double top = s.values.empty() ? 0.0 : *std::max_element(s.values.begin(), s.values.end());
    if (top > 0.0)
        for (double& v : s.values) v /= top;
    return s;
}

struct PeakShift {
    double shift = 0.0;     // |Delta0' - Delta0| / Delta0
    double position = 0.0;  // Delta0'
    bool absorbed = false;
    double merge_eta = 0.0;  // broadening at which the first peak disappears (absorbed only)
};

namespace detail {

/// Golden-section maximization on [a, b].
template <typename F>
double golden_max(F&& f, double a, double b, double tol) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Local maxima of the two-peak shape. Both line shapes are unimodal and
/// symmetric, so every maximum lies in [Delta0, Delta0 + delta].
inline std::vector<double> two_peak_maxima(const TwoPeakModel& m, double eta) {
    const double lo = m.center - 0.05 * m.separation;
    const double hi = m.center + 1.05 * m.separation;
    const double step = std::min(eta / 8.0, m.separation / 4000.0);
    const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
    const double h = (hi - lo) / static_cast<double>(count - 1);
    auto f = [&](double w) { return two_peak_value(m, eta, w); };
    std::vector<double> peaks;
    double prev = f(lo), cur = f(lo + h);
    for (std::size_t i = 2; i < count; ++i) {
        const double next = f(lo + static_cast<double>(i) * h);
        if (cur > prev && cur >= next) {
            const double w = lo + static_cast<double>(i - 1) * h;
            peaks.push_back(golden_max(f, w - h, w + h, 1e-8 * m.center));
        }
        prev = cur;
        cur = next;
    }
    return peaks;
}

inline double nearest_peak(const TwoPeakModel& m, double eta) {
    const auto peaks = two_peak_maxima(m, eta);
    if (peaks.empty()) throw NumericError("two-peak shape has no interior maximum");
    return *std::min_element(peaks.begin(), peaks.end(), [&](double a, double b) {
        return std::abs(a - m.center) < std::abs(b - m.center);
    });
}

}  // namespace detail

/// Shift of the maximum nearest Delta0. Once that maximum sits past the
/// midpoint Delta0 + delta/2 the first peak has merged into the second; the
/// shift is then reported at the merge broadening, located by bisection.
inline PeakShift peak_shift(const TwoPeakModel& m, double eta) {
    validate(m);
    if (!(eta >= 0.0)) throw ParameterError("broadening must be non-negative");
    PeakShift out;
    if (eta == 0.0 || m.relative_height == 0.0) {
        out.position = m.center;
        if (eta > 0.0) out.position = detail::nearest_peak(m, eta);
        out.shift = std::abs(out.position - m.center) / m.center;
        return out;
    }
    const double midpoint = m.center + 0.5 * m.separation - 1e-6 * m.separation;
    auto separate = [&](double e) { return detail::nearest_peak(m, e) < midpoint; };
    double at = eta;
    if (!separate(eta)) {
        // The bracket does not depend on the requested eta, so every absorbed
        // query reports the same merge point.
        out.absorbed = true;
        double lo = 0.0, hi = m.separation;
        while (separate(hi)) {
            lo = hi;
            hi *= 2.0;
        }
        while (hi - lo > 1e-10 * m.separation) {
            const double mid = 0.5 * (lo + hi);
            (separate(mid) ? lo : hi) = mid;
        }
        at = lo;
        out.merge_eta = lo;
    }
    out.position = at > 0.0 ? detail::nearest_peak(m, at) : m.center;
    out.shift = std::abs(out.position - m.center) / m.center;
    return out;
}

}  // namespace qge

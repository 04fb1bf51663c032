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

// Spectral function of a filtered propagator-overlap series,
//
//   A(w_m) = (dt / 2pi) Re sum_{s=+-} sum_n e^{i w_m t_{sn}} F_n P_{sn},
//
// evaluated as a literal O(L^2) sum on w_m = m dw, dw dt = 2pi/L, and the
// exact line-shape oracle built from an eigendecomposition.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "qge/core.hpp"
#include "qge/filter.hpp"
#include "qge/model.hpp"
#include "qge/parallel.hpp"
#include "qge/simulator.hpp"

namespace qge {

struct Spectrum {
    double d_omega = 0.0;
    std::vector<double> omega;   // w_m = m d_omega, m in [0, L)
    std::vector<double> values;  // A_m
    Filter filter;
    /// max_m |Im sum| before the Re projection; zero when P(-t) = P(t).
    double imag_residue = 0.0;

    std::size_t size() const { return values.size(); }
};

/// Fourier-space line shape: (1/pi) eta/(w^2 + eta^2) or
/// exp(-w^2 / 2 sigma^2) / (sqrt(2 pi) sigma). Both have FWHM 2 eta.
inline double filter_fourier(const Filter& f, double omega) {
    validate(f);
    if (f.family == FilterFamily::None || f.eta == 0.0)
        throw ParameterError("line shape of an unbroadened filter is a delta function");
    if (f.family == FilterFamily::Lorentzian) return f.eta / (kPi * (omega * omega + f.eta * f.eta));
    const double s = f.sigma();
    return std::exp(-omega * omega / (2.0 * s * s)) / (std::sqrt(2.0 * kPi) * s);
}

/// sum_k filter_fourier(w + k period): the line shape seen on a discrete grid
/// whose frequencies are only defined modulo L dw.
inline double periodized_filter_fourier(const Filter& f, double omega, double period) {
    validate(f);
    if (f.family == FilterFamily::None || f.eta == 0.0)
        throw ParameterError("line shape of an unbroadened filter is a delta function");
    if (f.family == FilterFamily::Lorentzian) {
        const double a = 2.0 * kPi * f.eta / period;
        return std::sinh(a) / (period * (std::cosh(a) - std::cos(2.0 * kPi * omega / period)));
    }
    const double w = std::remainder(omega, period);
    double sum = filter_fourier(f, w);
    for (int k = 1;; ++k) {
        const double term = filter_fourier(f, w + k * period) + filter_fourier(f, w - k * period);
        sum += term;
        if (term <= 1e-18 * sum || k > 64) break;
    }
    return sum;
}

namespace detail {

/// Literal transform of a two-branch series. The shared n = 0 sample enters
/// once (weight 1/2 in each branch).
inline std::vector<double> two_branch_transform(std::span<const double> plus, std::span<const double> minus,
                                                const TimeGrid& grid, const Filter& filter,
                                                double* imag_residue = nullptr) {
    validate(grid);
    const auto length = static_cast<std::size_t>(grid.length);
    if (plus.size() != length || minus.size() != length)
        throw DataError("time series length does not match its grid");

    std::vector<double> sum(length), diff(length);
    for (std::size_t n = 0; n < length; ++n) {
        const double w = filter_value(filter, grid.time(static_cast<int>(n))) * (n == 0 ? 0.5 : 1.0);
        sum[n] = w * (plus[n] + minus[n]);
        diff[n] = w * (plus[n] - minus[n]);
    }
    // w_m t_n = 2 pi m n / L exactly, so the kernel is a table of roots of unity.
    std::vector<double> cos_table(length), sin_table(length);
    for (std::size_t k = 0; k < length; ++k) {
        const double a = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(length);
        cos_table[k] = std::cos(a);
        sin_table[k] = std::sin(a);
    }
    const double norm = grid.dt / (2.0 * kPi);
    std::vector<double> out(length), imag(length);
    parallel_for(length, [&](std::size_t m) {
        double re = 0.0, im = 0.0;
        std::size_t phase = 0;
        for (std::size_t n = 0; n < length; ++n) {
            re += cos_table[phase] * sum[n];
            im += sin_table[phase] * diff[n];
            phase += m;
            if (phase >= length) phase -= length;
        }
        out[m] = norm * re;
        imag[m] = norm * im;
    });
    if (imag_residue) {
        double worst = 0.0;
        for (double v : imag) worst = std::max(worst, std::abs(v));
        *imag_residue = worst;
    }
    return out;
}

inline std::vector<double> frequency_axis(const TimeGrid& grid) {
    std::vector<double> w(static_cast<std::size_t>(grid.length));
    const double dw = grid.d_omega();
    for (std::size_t m = 0; m < w.size(); ++m) w[m] = static_cast<double>(m) * dw;
    return w;
}

}  // namespace detail

inline Spectrum spectral_function(const TimeSeries& series, const Filter& filter) {
    Spectrum s;
    s.d_omega = series.grid.d_omega();
    s.omega = detail::frequency_axis(series.grid);
    s.filter = filter;
    s.values = detail::two_branch_transform(series.plus, series.minus, series.grid, filter, &s.imag_residue);
    return s;
}

/// A(w) = sum_{u,v} |c_u|^2 |c_v|^2 F~(w - (E_u - E_v)), c_u = <u|psi_I>,
/// with line shapes periodized over L dw to match the discrete transform.
inline Spectrum exact_spectrum_oracle(const EigenDecomposition& eig, const InputOrientation& orientation,
                                      const Filter& filter, const TimeGrid& grid) {
    validate(grid);
    const CVector psi = prepare_input(orientation);
    if (psi.size() != eig.states.rows()) throw DataError("orientation does not match the eigenbasis dimension");
    const RVector weights = (eig.states.adjoint() * psi).cwiseAbs2();

    Spectrum s;
    s.d_omega = grid.d_omega();
    s.omega = detail::frequency_axis(grid);
    s.filter = filter;
    s.values.assign(s.omega.size(), 0.0);
    const double period = grid.length * s.d_omega;
    const Eigen::Index dim = weights.size();
    parallel_for(s.omega.size(), [&](std::size_t m) {
        double acc = 0.0;
        for (Eigen::Index u = 0; u < dim; ++u) {
            if (weights(u) == 0.0) continue;
            for (Eigen::Index v = 0; v < dim; ++v) {
                const double w = weights(u) * weights(v);
                if (w == 0.0) continue;
                acc += w * periodized_filter_fourier(filter, s.omega[m] - eig.gap(u, v), period);
            }
        }
        s.values[m] = acc;
    });
    return s;
}

/// Peak positions and weights of the unfiltered spectrum: every pair gap
/// E_u - E_v (u > v) with weight |c_u|^2 |c_v|^2 above `min_weight`.
struct SpectralLine {
    double gap;
    double weight;
};

inline std::vector<SpectralLine> spectral_lines(const EigenDecomposition& eig, const InputOrientation& orientation,
                                                double min_weight = 0.0) {
    const CVector psi = prepare_input(orientation);
    const RVector weights = (eig.states.adjoint() * psi).cwiseAbs2();
    std::vector<SpectralLine> lines;
    for (Eigen::Index u = 0; u < weights.size(); ++u)
        for (Eigen::Index v = 0; v < u; ++v) {
            const double w = weights(u) * weights(v);
            if (w > min_weight) lines.push_back({eig.gap(u, v), w});
        }
    return lines;
}

}  // namespace qge

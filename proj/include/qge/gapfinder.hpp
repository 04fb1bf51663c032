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

// Windowed peak search around an initial guess, error measures against exact
// references, and the orientation and depth sweeps built on them.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qge/core.hpp"
#include "qge/filter.hpp"
#include "qge/model.hpp"
#include "qge/simulator.hpp"
#include "qge/spectral.hpp"
#include "qge/trotter.hpp"

namespace qge {

inline constexpr double kUnfavoredThreshold = 1e-2;

struct GapSearchConfig {
    double initial_guess = 0.0;   // Delta_0
    double initial_window = 0.0;  // full width dDelta
    double widen_factor = 1.5;
    double max_window = 0.0;
    bool require_local_max = true;
    bool parabolic_refine = false;

    /// dDelta = 2 eta, widened up to 10 eta.
    static GapSearchConfig around(double guess, double eta) {
        GapSearchConfig c;
        c.initial_guess = guess;
        c.initial_window = 2.0 * eta;
        c.max_window = 10.0 * eta;
        return c;
    }
};

inline void validate(const GapSearchConfig& c) {
    if (!(c.initial_window > 0.0)) throw ParameterError("search window must be positive");
    if (!(c.max_window >= c.initial_window)) throw ParameterError("window cap must be >= the initial window");
    if (!(c.widen_factor > 1.0)) throw ParameterError("widen factor must exceed 1");
    if (!std::isfinite(c.initial_guess)) throw ParameterError("initial gap guess must be finite");
}

struct GapEstimate {
    double gap = 0.0;
    double peak_height = 0.0;  // A(w = gap)
    double window_used = 0.0;
    double theta = std::numeric_limits<double>::quiet_NaN();
    std::size_t index = 0;
};

namespace detail {

inline bool strict_local_max(const std::vector<double>& a, std::size_t m) {
    return m > 0 && m + 1 < a.size() && a[m - 1] < a[m] && a[m + 1] < a[m];
}

}  // namespace detail

/// Grid argmax of A on [Delta_0 - dDelta/2, Delta_0 + dDelta/2], restricted to
/// 0 < w_m < w_{L/2}. The window grows by widen_factor (last try exactly at the
/// cap) until the argmax is a strict local maximum.
inline GapEstimate find_gap(const Spectrum& s, const GapSearchConfig& config,
                            double theta = std::numeric_limits<double>::quiet_NaN()) {
    validate(config);
    if (s.values.size() < 4 || !(s.d_omega > 0.0)) throw DataError("spectrum too short for a gap search");
    const auto half = static_cast<long long>(s.values.size() / 2);
    double window = config.initial_window;
    for (;;) {
        const double lo = config.initial_guess - 0.5 * window;
        const double hi = config.initial_guess + 0.5 * window;
        const long long first = std::max(1LL, static_cast<long long>(std::ceil(lo / s.d_omega)));
        const long long last = std::min(half - 1, static_cast<long long>(std::floor(hi / s.d_omega)));
        if (first <= last) {
            auto best = static_cast<std::size_t>(first);
            for (auto m = static_cast<std::size_t>(first); m <= static_cast<std::size_t>(last); ++m)
                if (s.values[m] > s.values[best]) best = m;
            if (!config.require_local_max || detail::strict_local_max(s.values, best)) {
                GapEstimate e;
                e.index = best;
                e.gap = s.omega[best];
                e.peak_height = s.values[best];
                e.window_used = window;
                e.theta = theta;
                if (config.parabolic_refine && detail::strict_local_max(s.values, best)) {
                    const double a = s.values[best - 1], b = s.values[best], c = s.values[best + 1];
                    e.gap += 0.5 * (a - c) / (a - 2.0 * b + c) * s.d_omega;
                }
                return e;
            }
        }
        if (window >= config.max_window) break;
        window = std::min(window * config.widen_factor, config.max_window);
    }
    throw SearchFailure("no peak within a window of " + std::to_string(config.max_window) + " around " +
                        std::to_string(config.initial_guess));
}

/// |Delta - Delta_exact| / Delta_exact
inline double gap_error(double gap, double exact_gap) {
    if (exact_gap == 0.0 || !std::isfinite(exact_gap)) throw ParameterError("relative gap error needs a nonzero exact gap");
    return std::abs(gap - exact_gap) / std::abs(exact_gap);
}

inline double gap_error(const GapEstimate& e, double exact_gap) { return gap_error(e.gap, exact_gap); }

/// sqrt(sum (A - A_exact)^2 / sum (A - mean A)^2)
inline double spectral_error(std::span<const double> sim, std::span<const double> exact) {
    if (sim.size() != exact.size() || sim.empty()) throw DataError("spectra must share one frequency grid");
    double mean = 0.0;
    for (double v : sim) mean += v;
    mean /= static_cast<double>(sim.size());
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < sim.size(); ++m) {
        num += (sim[m] - exact[m]) * (sim[m] - exact[m]);
        den += (sim[m] - mean) * (sim[m] - mean);
    }
    if (!(den > 0.0)) throw NumericError("spectral error undefined for a flat spectrum");
    return std::sqrt(num / den);
}

inline double spectral_error(const Spectrum& sim, const Spectrum& exact) {
    return spectral_error(std::span<const double>(sim.values), std::span<const double>(exact.values));
}

/// Same ratio for the norm-based spectra: A^_exact transforms the series 1 and
/// dA^ the series C |t|^{p+1} / M^p, both with F_n.
inline double spectral_error_bound(double prefactor, const TrotterPlan& plan, const Filter& filter, const TimeGrid& grid) {
    validate(plan);
    validate(grid);
    const auto length = static_cast<std::size_t>(grid.length);
    const std::vector<double> ones(length, 1.0);
    std::vector<double> trunc(length);
    for (std::size_t n = 0; n < length; ++n)
        trunc[n] = prefactor * std::pow(grid.time(static_cast<int>(n)), plan.order + 1) / std::pow(plan.depth, plan.order);
    const auto exact = detail::two_branch_transform(ones, ones, grid, filter);
    const auto delta = detail::two_branch_transform(trunc, trunc, grid, filter);
    std::vector<double> total(length);
    for (std::size_t m = 0; m < length; ++m) total[m] = exact[m] + delta[m];
    return spectral_error(std::span<const double>(total), std::span<const double>(exact));
}

inline double spectral_error_bound(const SpinModel& model, const TrotterPlan& plan, const Filter& filter,
                                   const TimeGrid& grid) {
    return spectral_error_bound(commutator_norm_bounds(model, plan.order).prefactor, plan, filter, grid);
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

/// One point of an orientation or depth sweep. Failed searches leave gap,
/// eps_gap and peak_height as NaN and carry the message in `failure`.
struct SweepRecord {
    double theta = 0.0;
    Filter filter;
    int order = 1;
    int depth = 1;
    double circuit_depth = 0.0;  // D = N_g M
    double gap = std::numeric_limits<double>::quiet_NaN();
    double eps_gap = std::numeric_limits<double>::quiet_NaN();
    double eps_spect = std::numeric_limits<double>::quiet_NaN();
    double eps_bound = std::numeric_limits<double>::quiet_NaN();
    double peak_height = std::numeric_limits<double>::quiet_NaN();
    double window_used = std::numeric_limits<double>::quiet_NaN();
    bool unfavored = true;
    std::string failure;

    bool ok() const { return failure.empty(); }
};

struct SweepOptions {
    Sampling sampling;
    Engine engine = Engine::Auto;
    /// NaN selects the perturbative guess.
    double initial_guess = std::numeric_limits<double>::quiet_NaN();
    /// NaN selects the lowest ED gap.
    double exact_gap = std::numeric_limits<double>::quiet_NaN();
    /// Window for filters without broadening; NaN selects 8 d_omega.
    double unfiltered_window = std::numeric_limits<double>::quiet_NaN();
    double unfavored_threshold = kUnfavoredThreshold;
    bool with_oracle = true;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<Spectrum> spectra;
    std::vector<Spectrum> oracle;  // empty unless SweepOptions::with_oracle
    std::optional<std::size_t> best;  // argmax peak_height over successful records

    std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.ok(); }));
    }
};

/// Window 2 eta around the perturbative guess unless SweepOptions overrides it;
/// an unbroadened filter gets 8 d_omega.
inline GapSearchConfig default_search_config(const SpinModel& model, const Filter& filter, const TimeGrid& grid,
                                             const SweepOptions& opt) {
    const double guess = std::isnan(opt.initial_guess) ? perturbative_gap_guess(model) : opt.initial_guess;
    if (filter.family != FilterFamily::None && filter.eta > 0.0) return GapSearchConfig::around(guess, filter.eta);
    const double w = std::isnan(opt.unfiltered_window) ? 8.0 * grid.d_omega() : opt.unfiltered_window;
    GapSearchConfig c;
    c.initial_guess = guess;
    c.initial_window = w;
    c.max_window = 5.0 * w;
    return c;
}

namespace detail {

inline void finish_record(SweepRecord& r, const Spectrum& s, const GapSearchConfig& cfg, double exact_gap,
                          double threshold) {
    try {
        const GapEstimate e = find_gap(s, cfg, r.theta);
        r.gap = e.gap;
        r.peak_height = e.peak_height;
        r.window_used = e.window_used;
        r.eps_gap = gap_error(e, exact_gap);
        r.unfavored = !(r.eps_gap < threshold);
    } catch (const SearchFailure& ex) {
        r.failure = ex.what();
        r.unfavored = true;
    }
}

}  // namespace detail

/// Gap estimates over input orientations theta (uniform over sites). All
/// orientations share one propagator per time point.
inline SweepResult theta_sweep(const SpinModel& model, const TrotterPlan& plan, const Filter& filter,
                               const TimeGrid& grid, std::span<const double> thetas, const SweepOptions& opt = {}) {
    validate(model);
    validate(plan);
    validate(filter);
    const EigenDecomposition eig = exact_diagonalize(model);
    const double exact_gap = std::isnan(opt.exact_gap) ? eig.lowest_gap() : opt.exact_gap;
    const GapSearchConfig cfg = default_search_config(model, filter, grid, opt);
    const bool oracle = opt.with_oracle && filter.family != FilterFamily::None && filter.eta > 0.0;
    const double eps_bound = spectral_error_bound(model, plan, filter, grid);

    std::vector<InputOrientation> inputs;
    for (double th : thetas) inputs.push_back(InputOrientation::uniform(model.n_spins, th));
    const auto series = run_time_series_batch(model, plan, inputs, grid, opt.sampling, opt.engine);

    SweepResult out;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        SweepRecord r;
        r.theta = thetas[k];
        r.filter = filter;
        r.order = plan.order;
        r.depth = plan.depth;
        r.circuit_depth = gates_per_iteration(plan.order, model.n_spins) * plan.depth;
        r.eps_bound = eps_bound;
        out.spectra.push_back(spectral_function(series[k], filter));
        if (oracle) {
            out.oracle.push_back(exact_spectrum_oracle(eig, inputs[k], filter, grid));
            r.eps_spect = spectral_error(out.spectra.back(), out.oracle.back());
        }
        detail::finish_record(r, out.spectra.back(), cfg, exact_gap, opt.unfavored_threshold);
        if (r.ok() && (!out.best || r.peak_height > out.records[*out.best].peak_height)) out.best = k;
        out.records.push_back(std::move(r));
    }
    return out;
}

/// Gap and line-shape errors against Trotter depth M at fixed orientation.
inline SweepResult depth_sweep(const SpinModel& model, int order, const Filter& filter, const InputOrientation& input,
                               const TimeGrid& grid, std::span<const int> depths, const SweepOptions& opt = {}) {
    validate(model);
    validate(input, model);
    validate(filter);
    const EigenDecomposition eig = exact_diagonalize(model);
    const double exact_gap = std::isnan(opt.exact_gap) ? eig.lowest_gap() : opt.exact_gap;
    const GapSearchConfig cfg = default_search_config(model, filter, grid, opt);
    const bool oracle = opt.with_oracle && filter.family != FilterFamily::None && filter.eta > 0.0;
    const double prefactor = commutator_norm_bounds(model, order).prefactor;

    SweepResult out;
    if (oracle) out.oracle.push_back(exact_spectrum_oracle(eig, input, filter, grid));
    for (std::size_t k = 0; k < depths.size(); ++k) {
        const TrotterPlan plan{order, depths[k]};
        SweepRecord r;
        r.theta = input.angles.empty() ? 0.0 : input.angles.front();
        r.filter = filter;
        r.order = order;
        r.depth = plan.depth;
        r.circuit_depth = gates_per_iteration(order, model.n_spins) * plan.depth;
        r.eps_bound = spectral_error_bound(prefactor, plan, filter, grid);
        out.spectra.push_back(spectral_function(run_time_series(model, plan, input, grid, opt.sampling, opt.engine), filter));
        if (oracle) r.eps_spect = spectral_error(out.spectra.back(), out.oracle.front());
        detail::finish_record(r, out.spectra.back(), cfg, exact_gap, opt.unfavored_threshold);
        if (r.ok() && (!out.best || r.peak_height > out.records[*out.best].peak_height)) out.best = k;
        out.records.push_back(std::move(r));
    }
    return out;
}

/// Smallest circuit depth from which eps_gap stays within `tolerance` (relative)
/// of its value at the deepest point. Inputs must be sorted by depth.
inline double empirical_depth_cutoff(std::span<const double> circuit_depths, std::span<const double> eps_gap,
                                     double tolerance = 0.1) {
    if (circuit_depths.size() != eps_gap.size() || eps_gap.empty()) throw DataError("depth and error sweeps differ in length");
    const double terminal = eps_gap.back();
    std::size_t first = eps_gap.size() - 1;
    for (std::size_t k = eps_gap.size(); k-- > 0;) {
        if (!(std::abs(eps_gap[k] - terminal) <= tolerance * std::abs(terminal))) break;
        first = k;
    }
    return circuit_depths[first];
}

struct GapRun {
    TimeSeries series;
    Spectrum spectrum;
    GapEstimate estimate;
};

/// Circuit runs, filtered transform and windowed search in one call.
inline GapRun estimate_gap(const SpinModel& model, const TrotterPlan& plan, const Filter& filter,
                           const InputOrientation& input, const TimeGrid& grid, const Sampling& sampling,
                           const GapSearchConfig& config, Engine engine = Engine::Auto) {
    GapRun run;
    run.series = run_time_series(model, plan, input, grid, sampling, engine);
    run.spectrum = spectral_function(run.series, filter);
    run.estimate = find_gap(run.spectrum, config, input.angles.empty() ? 0.0 : input.angles.front());
    return run;
}

}  // namespace qge

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

// Statevector execution of the gap-estimation circuit: product-state input
// U_I = prod_j R^y_j(theta_j), Trotterized evolution, rotation back by U_I^dagger
// and the probability of the all-zeros outcome,
//
//   P(t) = |<psi_I| U_M^(p)(t) |psi_I>|^2.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qge/core.hpp"
#include "qge/model.hpp"
#include "qge/parallel.hpp"
#include "qge/trotter.hpp"

namespace qge {

struct InputOrientation {
    std::vector<double> angles;  // theta_j, radians

    static InputOrientation uniform(int n_spins, double theta) {
        return {std::vector<double>(static_cast<std::size_t>(n_spins), theta)};
    }
};

inline void validate(const InputOrientation& o, const SpinModel& model) {
    if (static_cast<int>(o.angles.size()) != model.n_spins)
        throw ParameterError("input orientation needs one angle per spin");
    for (double a : o.angles)
        if (!std::isfinite(a)) throw ParameterError("input orientation angles must be finite");
}

/// prod_j (cos(theta_j/2)|0> + sin(theta_j/2)|1>)
inline CVector prepare_input(const InputOrientation& o) {
    const int n = static_cast<int>(o.angles.size());
    const Eigen::Index dim = Eigen::Index{1} << n;
    CVector psi(dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        double amp = 1.0;
        for (int j = 0; j < n; ++j) amp *= ((x >> j) & 1) ? std::sin(0.5 * o.angles[j]) : std::cos(0.5 * o.angles[j]);
        psi(x) = amp;
    }
    return psi;
}

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

enum class GateKind { Rx, Ry, Rzz };

/// R^a(angle) = exp(-i angle/2 sigma^a). Rzz acts on (qubit, qubit + 1).
struct Gate {
    GateKind kind;
    int qubit;
    double angle;
};

using GateList = std::vector<Gate>;

inline void apply_gate(CVector& state, const Gate& g) {
    const Eigen::Index dim = state.size();
    const Eigen::Index bit = Eigen::Index{1} << g.qubit;
    const double c = std::cos(0.5 * g.angle);
    const double s = std::sin(0.5 * g.angle);
    switch (g.kind) {
        case GateKind::Rx: {
            const Complex mis{0.0, -s};
            for (Eigen::Index x = 0; x < dim; ++x) {
                if (x & bit) continue;
                const Complex a0 = state(x), a1 = state(x | bit);
                state(x) = c * a0 + mis * a1;
                state(x | bit) = mis * a0 + c * a1;
            }
            break;
        }
        case GateKind::Ry: {
            for (Eigen::Index x = 0; x < dim; ++x) {
                if (x & bit) continue;
                const Complex a0 = state(x), a1 = state(x | bit);
                state(x) = c * a0 - s * a1;
                state(x | bit) = s * a0 + c * a1;
            }
            break;
        }
        case GateKind::Rzz: {
            const Complex same{c, -s}, diff{c, s};
            const Eigen::Index next = bit << 1;
            for (Eigen::Index x = 0; x < dim; ++x) state(x) *= (((x & bit) != 0) == ((x & next) != 0)) ? same : diff;
            break;
        }
    }
}

inline void apply_gates(CVector& state, std::span<const Gate> gates) {
    for (const auto& g : gates) apply_gate(state, g);
}

/// Circuit for U_M^(p)(t) in application order, with chi = -2Jt and phi = -2ht:
/// an Ising factor of weight f becomes R^zz_{j,j+1}(f chi / M) on every bond and
/// a field factor R^x_j(f phi / M) on every site.
inline GateList gate_sequence(const SpinModel& model, const TrotterPlan& plan, double t) {
    validate(model);
    validate(plan);
    const double chi = -2.0 * model.coupling * t;
    const double phi = -2.0 * model.field * t;
    auto factors = step_factors(plan.order);
    std::reverse(factors.begin(), factors.end());
    GateList gates;
    for (int rep = 0; rep < plan.depth; ++rep) {
        for (const auto& f : factors) {
            if (f.term == SplitTerm::Ising) {
                for (int j = 0; j + 1 < model.n_spins; ++j) gates.push_back({GateKind::Rzz, j, f.fraction * chi / plan.depth});
            } else {
                for (int j = 0; j < model.n_spins; ++j) gates.push_back({GateKind::Rx, j, f.fraction * phi / plan.depth});
            }
        }
    }
    return gates;
}

/// Literal gate count of one Trotter step (as opposed to gates_per_iteration()).
inline int literal_gates_per_iteration(int order, int n_spins) {
    int count = 0;
    for (const auto& f : step_factors(order)) count += (f.term == SplitTerm::Ising) ? n_spins - 1 : n_spins;
    return count;
}

// ---------------------------------------------------------------------------
// Overlaps
// ---------------------------------------------------------------------------

inline double overlap_probability(const CVector& psi, const CMatrix& u) {
    return std::norm(psi.dot(u * psi));
}

/// |<psi_I| U_M^(p)(t) |psi_I>|^2 from the dense propagator.
inline double propagator_overlap(const SpinModel& model, const TrotterPlan& plan, const InputOrientation& o, double t) {
    validate(o, model);
    return overlap_probability(prepare_input(o), trotter_propagator(model, plan, t));
}

/// Same quantity from the circuit: |0..0> -> U_I -> gates -> U_I^dagger, then
/// the all-zeros probability.
inline double circuit_overlap(const SpinModel& model, const TrotterPlan& plan, const InputOrientation& o, double t) {
    validate(o, model);
    CVector state = CVector::Zero(hilbert_dim(model));
    state(0) = 1.0;
    for (int j = 0; j < model.n_spins; ++j) apply_gate(state, {GateKind::Ry, j, o.angles[j]});
    apply_gates(state, gate_sequence(model, plan, t));
    for (int j = model.n_spins - 1; j >= 0; --j) apply_gate(state, {GateKind::Ry, j, -o.angles[j]});
    return std::norm(state(0));
}

// ---------------------------------------------------------------------------
// Time series
// ---------------------------------------------------------------------------

/// t_n = n dt for n in [0, length). length is even and >= 2.
struct TimeGrid {
    double dt = 0.0;
    int length = 0;

    double time(int n) const { return n * dt; }
    /// d_omega with d_omega * dt = 2 pi / L.
    double d_omega() const { return 2.0 * kPi / (length * dt); }
};

inline void validate(const TimeGrid& g) {
    if (g.length < 2 || g.length % 2 != 0) throw ParameterError("time grid length must be even and >= 2");
    if (!(g.dt > 0.0)) throw ParameterError("time step must be positive");
}

/// Grid with frequency step d_omega and L = 2 ceil(window / d_omega) (window in units of h).
inline TimeGrid grid_from_resolution(double d_omega, double window = 7.0) {
    if (!(d_omega > 0.0)) throw ParameterError("frequency step must be positive");
    const int length = 2 * static_cast<int>(std::ceil(window / d_omega - 1e-12));
    TimeGrid g{2.0 * kPi / (length * d_omega), length};
    validate(g);
    return g;
}

/// Default grid for broadening eta: d_omega = eta / 4, L = 2 ceil(7h / d_omega).
inline TimeGrid default_grid(double eta) {
    if (!(eta > 0.0)) throw ParameterError("default grid needs eta > 0");
    return grid_from_resolution(eta / 4.0);
}

/// shots == 0 selects exact probabilities.
struct Sampling {
    long long shots = 0;
    std::uint64_t seed = 0;

    bool exact() const { return shots == 0; }
    static Sampling exact_mode() { return {}; }
};

struct TimeSeries {
    TimeGrid grid;
    std::vector<double> plus;   // P_n,  t_n  = +n dt
    std::vector<double> minus;  // P_-n, t_-n = -n dt
    Sampling sampling;
};

enum class Engine { Auto, Dense, Gates };

namespace detail {

inline double sample_fraction(double p, long long shots, std::uint64_t seed, std::uint64_t series, int n, int branch) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(series), static_cast<std::uint32_t>(n),
                      static_cast<std::uint32_t>(branch)};
    std::mt19937_64 rng(seq);
    std::binomial_distribution<long long> draw(shots, std::clamp(p, 0.0, 1.0));
    return static_cast<double>(draw(rng)) / static_cast<double>(shots);
}

}  // namespace detail

/// Time series for several input orientations sharing one propagator per time
/// point. In shot mode every (orientation k, n, branch) gets its own generator
/// seeded from (seed, k, n, branch), so results do not depend on scheduling.
inline std::vector<TimeSeries> run_time_series_batch(const SpinModel& model, const TrotterPlan& plan,
                                                     std::span<const InputOrientation> orientations,
                                                     const TimeGrid& grid, const Sampling& sampling,
                                                     Engine engine = Engine::Auto) {
    validate(model);
    validate(plan);
    validate(grid);
    if (sampling.shots < 0) throw ParameterError("shots must be >= 1 (or 0 for exact mode)");
    std::vector<CVector> inputs;
    for (const auto& o : orientations) {
        validate(o, model);
        inputs.push_back(prepare_input(o));
    }
    if (engine == Engine::Auto) engine = model.n_spins <= 8 ? Engine::Dense : Engine::Gates;

    const std::size_t count = orientations.size();
    const auto length = static_cast<std::size_t>(grid.length);
    std::vector<TimeSeries> out(count);
    for (auto& s : out) {
        s.grid = grid;
        s.plus.assign(length, 0.0);
        s.minus.assign(length, 0.0);
        s.sampling = sampling;
    }

    std::optional<SplitExponentials> split;
    if (engine == Engine::Dense) split.emplace(model);

    parallel_for(length, [&](std::size_t n) {
        const double t = grid.time(static_cast<int>(n));
        for (int branch = 0; branch < 2; ++branch) {
            const double ts = branch == 0 ? t : -t;
            CMatrix u;
            if (split) u = split->propagator(plan, ts);
            for (std::size_t k = 0; k < count; ++k) {
                double p;
                if (n == 0) {
                    p = 1.0;
                } else if (split) {
                    p = overlap_probability(inputs[k], u);
                } else {
                    p = circuit_overlap(model, plan, orientations[k], ts);
                }
                if (!sampling.exact())
                    p = detail::sample_fraction(p, sampling.shots, sampling.seed, k, static_cast<int>(n), branch);
                (branch == 0 ? out[k].plus : out[k].minus)[n] = p;
            }
        }
    });
    return out;
}

inline TimeSeries run_time_series(const SpinModel& model, const TrotterPlan& plan, const InputOrientation& orientation,
                                  const TimeGrid& grid, const Sampling& sampling, Engine engine = Engine::Auto) {
    return run_time_series_batch(model, plan, std::span(&orientation, 1), grid, sampling, engine).front();
}

}  // namespace qge

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

// Trotter-Suzuki propagators of order 1, 2 and 4 for H = H1 + H2, the filtered
// truncation-error bound and the Trotter depth cutoff.

#pragma once

#include <bit>
#include <cmath>
#include <vector>

#include "qge/core.hpp"
#include "qge/filter.hpp"
#include "qge/model.hpp"

namespace qge {

/// kappa_4 = (4 - 4^{1/3})^{-1}
inline const double kKappa4 = 1.0 / (4.0 - std::cbrt(4.0));

struct TrotterPlan {
    int order = 1;  // p
    int depth = 1;  // M
};

inline void validate(const TrotterPlan& plan) {
    if (!is_supported_order(plan.order)) throw ParameterError("Trotter order must be 1, 2 or 4");
    if (plan.depth < 1) throw ParameterError("Trotter depth M must be >= 1");
}

enum class SplitTerm { Ising, Field };

/// One exponential e^{-i H_term * fraction * dt} of a single Trotter step.
struct StepFactor {
    SplitTerm term;
    double fraction;
};

/// Factors of U^(p)(dt) in operator-product order (leftmost acts last), with
/// adjacent Ising exponentials of the order-4 recursion merged.
inline std::vector<StepFactor> step_factors(int order) {
    using enum SplitTerm;
    const double k = kKappa4;
    switch (order) {
        case 1: return {{Ising, 1.0}, {Field, 1.0}};
        case 2: return {{Ising, 0.5}, {Field, 1.0}, {Ising, 0.5}};
        case 4:
            return {{Ising, k / 2},           {Field, k},           {Ising, k},          {Field, k},
                    {Ising, (1 - 3 * k) / 2}, {Field, 1 - 4 * k},   {Ising, (1 - 3 * k) / 2},
                    {Field, k},               {Ising, k},           {Field, k},          {Ising, k / 2}};
        default: break;
    }
    throw ParameterError("Trotter order must be 1, 2 or 4");
}

/// Gates per Trotter iteration as counted for the depth bound: N, 2N-1, 6N-1.
inline double gates_per_iteration(int order, double n_spins) {
    switch (order) {
        case 1: return n_spins;
        case 2: return 2.0 * n_spins - 1.0;
        case 4: return 6.0 * n_spins - 1.0;
        default: break;
    }
    throw ParameterError("Trotter order must be 1, 2 or 4");
}

/// Closed-form exponentials of the two commuting pieces. H1 is diagonal in the
/// computational basis; e^{-i H2 dt} is the tensor power of
/// [[cos(h dt), i sin(h dt)], [i sin(h dt), cos(h dt)]], so entry (r, c) is
/// cos^{N-k} (i sin)^k with k = popcount(r ^ c).
class SplitExponentials {
  public:
    explicit SplitExponentials(const SpinModel& model, int max_spins = kDefaultMaxSpins)
        : model_(model), ising_(ising_diagonal(model, max_spins)) {}

    const SpinModel& model() const { return model_; }
    Eigen::Index dim() const { return ising_.size(); }

    CVector ising(double dt) const {
        CVector d(ising_.size());
        for (Eigen::Index x = 0; x < ising_.size(); ++x) d(x) = std::polar(1.0, -ising_(x) * dt);
        return d;
    }

    CMatrix field(double dt) const {
        const int n = model_.n_spins;
        const double c = std::cos(model_.field * dt);
        const Complex is{0.0, std::sin(model_.field * dt)};
        std::vector<Complex> by_flips(n + 1);
        for (int k = 0; k <= n; ++k) by_flips[k] = std::pow(c, n - k) * std::pow(is, k);
        const Eigen::Index d = dim();
        CMatrix u(d, d);
        for (Eigen::Index c_idx = 0; c_idx < d; ++c_idx)
            for (Eigen::Index r = 0; r < d; ++r)
                u(r, c_idx) = by_flips[std::popcount(static_cast<BasisIndex>(r ^ c_idx))];
        return u;
    }

    /// U^(p)(dt), built from the recursive definition.
    CMatrix step(int order, double dt) const {
        switch (order) {
            case 1: return ising(dt).asDiagonal() * field(dt);
            case 2: {
                const CVector half = ising(0.5 * dt);
                return half.asDiagonal() * field(dt) * half.asDiagonal();
            }
            case 4: {
                const CMatrix outer = step(2, kKappa4 * dt);
                const CMatrix outer2 = outer * outer;
                return outer2 * step(2, (1.0 - 4.0 * kKappa4) * dt) * outer2;
            }
            default: break;
        }
        throw ParameterError("Trotter order must be 1, 2 or 4");
    }

    /// U_M^(p)(t) = [U^(p)(t/M)]^M by repeated squaring.
    CMatrix propagator(const TrotterPlan& plan, double t) const {
        validate(plan);
        CMatrix base = step(plan.order, t / plan.depth);
        CMatrix result = CMatrix::Identity(dim(), dim());
        for (int e = plan.depth; e > 0; e >>= 1) {
            if (e & 1) result = result * base;
            if (e > 1) base = base * base;
        }
        return result;
    }

  private:
    SpinModel model_;
    RVector ising_;
};

inline CMatrix single_step_unitary(const SpinModel& model, const TrotterPlan& plan, double dt) {
    validate(plan);
    return SplitExponentials(model).step(plan.order, dt);
}

inline CMatrix trotter_propagator(const SpinModel& model, const TrotterPlan& plan, double t) {
    return SplitExponentials(model).propagator(plan, t);
}

/// e^{-iHt} from a full eigendecomposition.
inline CMatrix exact_propagator(const EigenDecomposition& eig, double t) {
    CVector phases(eig.energies.size());
    for (Eigen::Index u = 0; u < phases.size(); ++u) phases(u) = std::polar(1.0, -eig.energies(u) * t);
    return eig.states * phases.asDiagonal() * eig.states.adjoint();
}

/// C^(p) |t|^{p+1} F(t) / M^p
inline double truncation_error_bound(double prefactor, const TrotterPlan& plan, const Filter& filter, double t) {
    validate(plan);
    const int p = plan.order;
    return prefactor * std::pow(std::abs(t), p + 1) * filter_value(filter, t) / std::pow(plan.depth, p);
}

inline double truncation_error_bound(const SpinModel& model, const TrotterPlan& plan, const Filter& filter, double t) {
    return truncation_error_bound(commutator_norm_bounds(model, plan.order).prefactor, plan, filter, t);
}

struct DepthCutoff {
    double trotter_depth = 0.0;   // M_c, real-valued
    double circuit_depth = 0.0;   // D_c = N_g M_c
};

/// Depth at which the truncation-error bound equals eps_c:
/// M_c = (C/eps_c)^{1/p} t^{1+1/p} F(t)^{1/p}.
inline DepthCutoff depth_cutoff(const SpinModel& model, int order, const Filter& filter, double t, double eps_c) {
    if (!(eps_c > 0.0)) throw ParameterError("error tolerance eps_c must be positive");
    const double c = commutator_norm_bounds(model, order).prefactor;
    const double inv_p = 1.0 / order;
    const double at = std::abs(t);
    DepthCutoff out;
    out.trotter_depth = std::pow(c / eps_c, inv_p) * std::pow(at, 1.0 + inv_p) * std::pow(filter_value(filter, t), inv_p);
    out.circuit_depth = gates_per_iteration(order, model.n_spins) * out.trotter_depth;
    return out;
}

}  // namespace qge

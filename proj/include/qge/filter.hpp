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

#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "qge/core.hpp"

namespace qge {

enum class FilterFamily { None, Lorentzian, Gaussian };

/// Time-series filter F(t). eta is the half width at half maximum of the
/// corresponding line shape; for the Gaussian, eta = sigma * sqrt(2 ln 2).
struct Filter {
    FilterFamily family = FilterFamily::None;
    double eta = 0.0;

    double sigma() const { return eta / std::sqrt(2.0 * std::log(2.0)); }

    static Filter none() { return {FilterFamily::None, 0.0}; }
    static Filter lorentzian(double eta) { return {FilterFamily::Lorentzian, eta}; }
    static Filter gaussian(double eta) { return {FilterFamily::Gaussian, eta}; }
};

inline void validate(const Filter& f) {
    if (!(f.eta >= 0.0)) throw ParameterError("filter broadening eta must be non-negative");
}

inline std::string to_string(FilterFamily family) {
    switch (family) {
        case FilterFamily::Lorentzian: return "lorentzian";
        case FilterFamily::Gaussian: return "gaussian";
        case FilterFamily::None: break;
    }
    return "none";
}

inline FilterFamily parse_filter_family(std::string_view name) {
    if (name == "none" || name == "None" || name == "N") return FilterFamily::None;
    if (name == "lorentzian" || name == "Lorentzian" || name == "L") return FilterFamily::Lorentzian;
    if (name == "gaussian" || name == "Gaussian" || name == "G") return FilterFamily::Gaussian;
    throw ParameterError("unknown filter family '" + std::string(name) + "'");
}

/// F(|t|): e^{-eta t} (Lorentzian), e^{-sigma^2 t^2 / 2} (Gaussian), 1 (None).
inline double filter_value(const Filter& f, double t) {
    validate(f);
    const double at = std::abs(t);
    switch (f.family) {
        case FilterFamily::Lorentzian: return std::exp(-f.eta * at);
        case FilterFamily::Gaussian: {
            const double s = f.sigma();
            return std::exp(-0.5 * s * s * at * at);
        }
        case FilterFamily::None: break;
    }
    return 1.0;
}

}  // namespace qge

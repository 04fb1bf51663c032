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

// Plot-ready CSV tables with a "# key = value" metadata preamble, and JSON
// sweep records.

#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <initializer_list>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qge/core.hpp"
#include "qge/filter.hpp"
#include "qge/gapfinder.hpp"
#include "qge/scaling.hpp"
#include "qge/simulator.hpp"
#include "qge/spectral.hpp"

namespace qge::io {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Shortest text that reads back to the same double.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    CsvWriter& metadata(const Metadata& meta) {
        for (const auto& [k, v] : meta) out_ << "# " << k << " = " << v << '\n';
        return *this;
    }

    /// Raw comment block, one "# " line per input line.
    CsvWriter& comment(const std::string& text) {
        std::size_t start = 0;
        while (start < text.size()) {
            const auto end = text.find('\n', start);
            const auto line = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
            if (!line.empty()) out_ << "# " << line << '\n';
            if (end == std::string::npos) break;
            start = end + 1;
        }
        return *this;
    }

    CsvWriter& header(std::initializer_list<std::string_view> columns) {
        bool first = true;
        for (auto c : columns) {
            out_ << (first ? "" : ",") << c;
            first = false;
        }
        out_ << '\n';
        return *this;
    }

    template <typename... Cells>
    CsvWriter& row(const Cells&... cells) {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
        out_ << '\n';
        return *this;
    }

  private:
    static std::string cell(double v) { return format_number(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(long long v) { return std::to_string(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "1" : "0"; }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }

    std::ostream& out_;
};

inline void write_time_series(std::ostream& out, const TimeSeries& s, const Metadata& meta = {}) {
    CsvWriter csv(out);
    csv.metadata(meta).header({"n", "t", "P_plus", "P_minus"});
    for (std::size_t n = 0; n < s.plus.size(); ++n)
        csv.row(n, s.grid.time(static_cast<int>(n)), s.plus[n], s.minus[n]);
}

/// Rows m in [0, L/2) (non-negative frequencies); `oracle` adds an A_exact column.
inline void write_spectrum(std::ostream& out, const Spectrum& s, const Metadata& meta = {},
                           const Spectrum* oracle = nullptr) {
    if (oracle && oracle->size() != s.size()) throw DataError("oracle spectrum is on a different grid");
    CsvWriter csv(out);
    csv.metadata(meta);
    if (oracle)
        csv.header({"m", "omega", "A", "A_exact"});
    else
        csv.header({"m", "omega", "A"});
    for (std::size_t m = 0; m < s.size() / 2; ++m) {
        if (oracle)
            csv.row(m, s.omega[m], s.values[m], oracle->values[m]);
        else
            csv.row(m, s.omega[m], s.values[m]);
    }
}

inline void write_phase_diagram(std::ostream& out, const PhaseDiagram& d, const Metadata& meta = {}) {
    CsvWriter csv(out);
    csv.metadata(meta).header({"J_over_h", "delta_inf", "band_lo", "band_hi", "exact_ref"});
    for (const auto& r : d.rows) csv.row(r.coupling, r.delta_inf, r.band_lo, r.band_hi, r.exact_ref);
}

inline nlohmann::json to_json(const SweepRecord& r) {
    auto num = [](double v) -> nlohmann::json {
        if (std::isfinite(v)) return v;
        return nullptr;
    };
    nlohmann::json j{{"theta", r.theta},
                     {"eta", r.filter.eta},
                     {"filter", to_string(r.filter.family)},
                     {"p", r.order},
                     {"M", r.depth},
                     {"D", r.circuit_depth},
                     {"gap", num(r.gap)},
                     {"eps_gap", num(r.eps_gap)},
                     {"eps_spect", num(r.eps_spect)},
                     {"eps_bound", num(r.eps_bound)},
                     {"peak_height", num(r.peak_height)}};
    if (!r.ok()) j["error"] = r.failure;
    return j;
}

inline nlohmann::json to_json(std::span<const SweepRecord> records) {
    auto arr = nlohmann::json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    return arr;
}

/// Reads the "# key = value" preamble of a CSV file.
inline std::map<std::string, std::string> read_metadata(std::istream& in) {
    std::map<std::string, std::string> meta;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind('#', 0) != 0) break;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t#");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        meta[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return meta;
}

}  // namespace qge::io

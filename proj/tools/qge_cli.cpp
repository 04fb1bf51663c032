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

// qge: gap-estimation runs from the command line.
//
//   qge depth-bound | spectrum | gap | sweep-theta | scaling | toy  [options]
//
// Every output starts with the full option set, so `--config <output>` replays
// the run that produced it. Exit codes: 0 success, 1 usage, 2 numeric or search
// failure, 3 partial sweep failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qge/io.hpp"
#include "qge/qge.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitPartial = 3;

/// Reads key = value pairs from any earlier output: "# "-prefixed CSV
/// preambles, plain config files, or the "config" object of a JSON report.
class ReplayConfig : public CLI::ConfigBase {
  public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::stringstream raw;
        raw << input.rdbuf();
        const std::string text = raw.str();
        const auto first = text.find_first_not_of(" \t\r\n");
        std::stringstream cleaned;
        if (first != std::string::npos && text[first] == '{') {
            const auto doc = nlohmann::json::parse(text);
            if (doc.contains("config"))
                for (const auto& [key, value] : doc.at("config").items())
                    cleaned << key << '=' << value.get<std::string>() << '\n';
        } else {
            std::istringstream lines(text);
            std::string line;
            while (std::getline(lines, line)) {
                const auto b = line.find_first_not_of("# \t");
                if (b == std::string::npos) continue;
                line = line.substr(b);
                const auto eq = line.find('=');
                if (eq == std::string::npos || eq == 0) continue;
                const auto key = line.substr(0, line.find_last_not_of(" \t", eq - 1) + 1);
                if (key.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789-_") != std::string::npos) continue;
                cleaned << line << '\n';
            }
        }
        return CLI::ConfigBase::from_config(cleaned);
    }
};

struct Options {
    int n = 4;
    double j_over_h = 0.4;
    int p = 1;
    int m = 35;
    std::vector<int> m_list;
    std::string filter = "gaussian";
    double eta_over_h = 0.3;
    double theta_over_pi = 0.27;
    long long shots = 1024;
    std::uint64_t seed = 1;
    bool exact = false;
    bool oracle = false;
    double eps_c = 1e-2;
    double t_max = 10.0;
    double t_step = 0.1;
    std::vector<int> n_list;
    std::vector<double> j_list = {0.2, 0.4, 0.6, 0.8};
    int theta_count = 25;
    double theta_step_over_pi = 0.02;
    bool synthetic = false;
    std::vector<double> lambdas = {0.25, 0.5, 1.0};
    double delta_over_gap = 0.6;
    double eta_max = 0.6;
    int eta_steps = 60;
    std::string out = "-";
};

qge::Filter make_filter(const Options& o) { return {qge::parse_filter_family(o.filter), o.eta_over_h}; }

qge::Sampling make_sampling(const Options& o) {
    if (o.exact) return qge::Sampling::exact_mode();
    return {o.shots, o.seed};
}

qge::TimeGrid make_grid(const qge::Filter& f) {
    if (!(f.eta > 0.0)) throw qge::ParameterError("the default time grid needs --eta-over-h > 0");
    return qge::default_grid(f.eta);
}

/// Option dump without the output and replay paths.
std::string run_config(const CLI::App& app) {
    std::istringstream in(app.config_to_str(true, false));
    std::string line, kept;
    while (std::getline(in, line)) {
        if (line.empty() || line.rfind("out=", 0) == 0 || line.rfind("config=", 0) == 0) continue;
        if (line.ends_with("=\"{}\"") || line.ends_with("={}")) continue;
        // Defaults of list options come out quoted and unspaced; explicit ones do not.
        const auto eq = line.find('=');
        if (line.compare(eq + 1, 2, "\"[") == 0 && line.ends_with("]\"")) {
            std::string items = line.substr(eq + 3, line.size() - eq - 5), spaced;
            for (char c : items) spaced += c == ',' ? std::string(", ") : std::string(1, c);
            line = line.substr(0, eq + 1) + "[" + spaced + "]";
        }
        kept += line + '\n';
    }
    return kept;
}

nlohmann::json config_json(const std::string& config) {
    nlohmann::json obj = nlohmann::json::object();
    std::istringstream in(config);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto value = line.substr(eq + 1);
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        obj[line.substr(0, eq)] = value;
    }
    return obj;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (path != "-" && !path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw qge::ParameterError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void csv_preamble(qge::io::CsvWriter& csv, const std::string& command, const std::string& config) {
    csv.comment("qge " + command);
    csv.comment(config);
}

// ---------------------------------------------------------------------------

int cmd_depth_bound(const Options& o, const std::string& config) {
    if (!(o.t_step > 0.0) || !(o.t_max >= 0.0)) throw qge::ParameterError("--t-step must be positive and --t-max >= 0");
    const std::vector<qge::Filter> filters = {qge::Filter::none(), qge::Filter::lorentzian(o.eta_over_h),
                                              qge::Filter::gaussian(o.eta_over_h)};
    const std::vector<int> sizes = o.n_list.empty() ? std::vector<int>{10, 30, 100, 300, 1000, 3000, 10000} : o.n_list;
    Output out(o.out);
    qge::io::CsvWriter csv(out.stream());
    csv_preamble(csv, "depth-bound", config);
    csv.header({"table", "N", "t", "p", "filter", "eta", "M_c", "D_c", "M_budget", "D_budget"});
    auto emit = [&](const char* table, int n, double t, int p, const qge::Filter& f) {
        const qge::SpinModel model{n, o.j_over_h, 1.0};
        const auto c = qge::depth_cutoff(model, p, f, t, o.eps_c);
        const double budget = std::ceil(c.trotter_depth);
        csv.row(table, n, t, p, qge::to_string(f.family), f.eta, c.trotter_depth, c.circuit_depth, budget,
                qge::gates_per_iteration(p, n) * budget);
    };
    const auto steps = static_cast<int>(std::floor(o.t_max / o.t_step + 1e-9));
    for (int p : {1, 2, 4})
        for (const auto& f : filters)
            for (int k = 0; k <= steps; ++k) emit("time", o.n, k * o.t_step, p, f);
    for (int p : {1, 2, 4})
        for (const auto& f : filters)
            for (int n : sizes) emit("size", n, o.t_max, p, f);
    return 0;
}

int cmd_spectrum(const Options& o, const std::string& config) {
    const qge::SpinModel model{o.n, o.j_over_h, 1.0};
    const qge::TrotterPlan plan{o.p, o.m};
    const auto filter = make_filter(o);
    const auto grid = make_grid(filter);
    const auto input = qge::InputOrientation::uniform(o.n, o.theta_over_pi * qge::kPi);
    const auto series = qge::run_time_series(model, plan, input, grid, make_sampling(o));
    const auto spectrum = qge::spectral_function(series, filter);
    std::optional<qge::Spectrum> exact;
    if (o.oracle) exact = qge::exact_spectrum_oracle(qge::exact_diagonalize(model), input, filter, grid);

    Output out(o.out);
    std::ostringstream meta;
    meta << "d_omega " << qge::io::format_number(grid.d_omega()) << ", L " << grid.length << ", dt "
         << qge::io::format_number(grid.dt);
    qge::io::CsvWriter csv(out.stream());
    csv_preamble(csv, "spectrum", config);
    csv.comment("grid " + meta.str());
    qge::io::write_spectrum(out.stream(), spectrum, {}, exact ? &*exact : nullptr);
    return 0;
}

int sweep_status(const qge::SweepResult& r) {
    const auto failed = r.failures();
    if (failed == 0) return 0;
    return failed == r.records.size() ? kExitNumeric : kExitPartial;
}

void report_failures(const qge::SweepResult& r) {
    for (const auto& rec : r.records)
        if (!rec.ok()) std::cerr << "qge: M=" << rec.depth << " theta=" << rec.theta << ": " << rec.failure << '\n';
}

int cmd_gap(const Options& o, const std::string& config) {
    const qge::SpinModel model{o.n, o.j_over_h, 1.0};
    const auto filter = make_filter(o);
    const auto grid = make_grid(filter);
    const auto input = qge::InputOrientation::uniform(o.n, o.theta_over_pi * qge::kPi);
    const std::vector<int> depths = o.m_list.empty() ? std::vector<int>{o.m} : o.m_list;
    qge::SweepOptions opt;
    opt.sampling = make_sampling(o);
    const auto result = qge::depth_sweep(model, o.p, filter, input, grid, depths, opt);

    nlohmann::json doc;
    doc["command"] = "gap";
    doc["config"] = config_json(config);
    doc["exact_gap"] = qge::exact_diagonalize(model).lowest_gap();
    doc["records"] = qge::io::to_json(result.records);
    if (depths.size() > 1 && result.failures() == 0) {
        std::vector<double> d, e;
        for (const auto& r : result.records) {
            d.push_back(r.circuit_depth);
            e.push_back(r.eps_gap);
        }
        doc["empirical_depth_cutoff"] = qge::empirical_depth_cutoff(d, e);
    }
    Output out(o.out);
    out.stream() << doc.dump(2) << '\n';
    report_failures(result);
    return sweep_status(result);
}

int cmd_sweep_theta(const Options& o, const std::string& config) {
    if (o.theta_count < 1) throw qge::ParameterError("--theta-count must be >= 1");
    const qge::SpinModel model{o.n, o.j_over_h, 1.0};
    const auto filter = make_filter(o);
    const auto grid = make_grid(filter);
    std::vector<double> thetas;
    for (int l = 0; l < o.theta_count; ++l) thetas.push_back(l * o.theta_step_over_pi * qge::kPi);
    qge::SweepOptions opt;
    opt.sampling = make_sampling(o);
    const auto result = qge::theta_sweep(model, {o.p, o.m}, filter, grid, thetas, opt);

    nlohmann::json doc;
    doc["command"] = "sweep-theta";
    doc["config"] = config_json(config);
    doc["exact_gap"] = qge::exact_diagonalize(model).lowest_gap();
    doc["records"] = qge::io::to_json(result.records);
    doc["best_theta"] = result.best ? nlohmann::json(result.records[*result.best].theta) : nlohmann::json(nullptr);
    Output out(o.out);
    out.stream() << doc.dump(2) << '\n';
    report_failures(result);
    return sweep_status(result);
}

int cmd_scaling(const Options& o, const std::string& config) {
    const std::vector<int> sizes = o.n_list.empty() ? std::vector<int>{2, 3, 4, 5} : o.n_list;
    const auto filter = make_filter(o);
    std::vector<qge::ScalingSample> samples;
    std::vector<std::string> notes;
    bool partial = false;
    for (double j : o.j_list) {
        qge::ScalingSample s;
        s.coupling = j;
        s.eta = filter.eta;
        std::string note = "J/h " + qge::io::format_number(j) + ":";
        for (int n : sizes) {
            const qge::SpinModel model{n, j, 1.0};
            double gap = qge::perturbative_gap_guess(model);
            if (!o.synthetic) {
                const auto grid = make_grid(filter);
                const auto input = qge::InputOrientation::uniform(n, o.theta_over_pi * qge::kPi);
                const auto cfg = qge::GapSearchConfig::around(gap, filter.eta);
                try {
                    gap = qge::estimate_gap(model, {o.p, o.m}, filter, input, grid, make_sampling(o), cfg).estimate.gap;
                } catch (const qge::SearchFailure& e) {
                    std::cerr << "qge: J/h=" << j << " N=" << n << ": " << e.what() << '\n';
                    partial = true;
                    note += " N" + std::to_string(n) + " failed";
                    continue;
                }
            }
            s.sizes.push_back(n);
            s.gaps.push_back(gap);
            note += " N" + std::to_string(n) + " " + qge::io::format_number(gap);
        }
        notes.push_back(note);
        if (s.sizes.size() >= 3) {
            samples.push_back(std::move(s));
        } else {
            partial = true;
        }
    }
    if (samples.empty()) throw qge::NumericError("no coupling has enough gap estimates to extrapolate");
    const auto diagram = qge::phase_diagram(samples);

    Output out(o.out);
    qge::io::CsvWriter csv(out.stream());
    csv_preamble(csv, "scaling", config);
    for (const auto& n : notes) csv.comment("gaps " + n);
    qge::io::write_phase_diagram(out.stream(), diagram);
    return partial ? kExitPartial : 0;
}

int cmd_toy(const Options& o, const std::string& config) {
    if (o.eta_steps < 1 || !(o.eta_max > 0.0)) throw qge::ParameterError("--eta-steps >= 1 and --eta-max > 0 required");
    Output out(o.out);
    qge::io::CsvWriter csv(out.stream());
    csv_preamble(csv, "toy", config);
    csv.header({"eta", "lambda", "family", "shift", "absorbed"});
    for (auto family : {qge::FilterFamily::Lorentzian, qge::FilterFamily::Gaussian})
        for (double lambda : o.lambdas) {
            const qge::TwoPeakModel model{1.0, o.delta_over_gap, lambda, family};
            for (int k = 0; k <= o.eta_steps; ++k) {
                const double eta = o.eta_max * k / o.eta_steps;
                const auto s = qge::peak_shift(model, eta);
                csv.row(eta, lambda, qge::to_string(family), s.shift, s.absorbed);
            }
        }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum gap estimation with filtered Trotter time series"};
    app.config_formatter(std::make_shared<ReplayConfig>());
    app.set_config("--config", "", "Replay options from a config file or an earlier output");
    app.allow_config_extras(CLI::config_extras_mode::ignore);
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    Options o;
    app.add_option("--n", o.n, "Number of spins N")->check(CLI::Range(2, 1 << 20));
    app.add_option("--j-over-h", o.j_over_h, "Ising coupling J/h");
    app.add_option("--p", o.p, "Trotter order")->check(CLI::IsMember({1, 2, 4}));
    app.add_option("--m", o.m, "Trotter depth M")->check(CLI::PositiveNumber);
    app.add_option("--m-list", o.m_list, "Depth sweep for `gap`")->check(CLI::PositiveNumber);
    app.add_option("--filter", o.filter, "none | lorentzian | gaussian")
        ->check(CLI::IsMember({"none", "lorentzian", "gaussian"}));
    app.add_option("--eta-over-h", o.eta_over_h, "Broadening eta/h")->check(CLI::NonNegativeNumber);
    app.add_option("--theta-over-pi", o.theta_over_pi, "Uniform input orientation theta/pi");
    app.add_option("--shots", o.shots, "Measurement shots per time point")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Sampling seed");
    app.add_flag("--exact", o.exact, "Exact probabilities instead of shots");
    app.add_flag("--oracle", o.oracle, "Add the exact spectrum column (`spectrum`)");
    app.add_option("--eps-c", o.eps_c, "Truncation error tolerance (`depth-bound`)")->check(CLI::PositiveNumber);
    app.add_option("--t-max", o.t_max, "Largest h t (`depth-bound`)");
    app.add_option("--t-step", o.t_step, "Time step in h t (`depth-bound`)");
    app.add_option("--n-list", o.n_list, "System sizes (`depth-bound`, `scaling`)")->check(CLI::Range(2, 1 << 20));
    app.add_option("--j-list", o.j_list, "Couplings J/h (`scaling`)");
    app.add_option("--theta-count", o.theta_count, "Orientations l = 0..count-1 (`sweep-theta`)");
    app.add_option("--theta-step-over-pi", o.theta_step_over_pi, "Orientation step over pi (`sweep-theta`)");
    app.add_flag("--synthetic", o.synthetic, "Feed perturbative gaps instead of simulating (`scaling`)");
    app.add_option("--lambdas", o.lambdas, "Relative peak heights (`toy`)");
    app.add_option("--delta-over-gap", o.delta_over_gap, "Peak separation delta/Delta0 (`toy`)");
    app.add_option("--eta-max", o.eta_max, "Largest broadening (`toy`)");
    app.add_option("--eta-steps", o.eta_steps, "Broadening grid intervals (`toy`)");
    app.add_option("--out", o.out, "Output path, - for stdout");

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const Options&, const std::string&);
    };
    const Command commands[] = {
        {"depth-bound", "Trotter depth cutoffs D_c(t) and D_c(N)", cmd_depth_bound},
        {"spectrum", "Filtered spectral function of one circuit run", cmd_spectrum},
        {"gap", "Gap estimate and errors, optionally over --m-list", cmd_gap},
        {"sweep-theta", "Gap estimates over input orientations", cmd_sweep_theta},
        {"scaling", "Finite-size extrapolation and phase diagram", cmd_scaling},
        {"toy", "Two-peak center shift versus broadening", cmd_toy},
    };
    std::map<const CLI::App*, const Command*> dispatch;
    for (const auto& c : commands) dispatch[app.add_subcommand(c.name, c.help)->fallthrough()] = &c;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const CLI::App* sub = app.get_subcommands().front();
    const std::string config = run_config(app);
    try {
        return dispatch.at(sub)->run(o, config);
    } catch (const qge::ParameterError& e) {
        std::cerr << "qge: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "qge: " << e.what() << '\n';
        return kExitNumeric;
    }
}

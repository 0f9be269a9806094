/*
   Copyright 2026 The mmwi Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "mmwi/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "mmwi/charfn.hpp"
#include "mmwi/inversion.hpp"
#include "mmwi/montecarlo.hpp"
#include "mmwi/service.hpp"
#include "mmwi/stable_mixture.hpp"

namespace mmwi {
namespace {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void meta(const std::string& key, const std::string& value) { meta_.push_back(key + " = " + value); }
    void row(const std::vector<std::string>& cells) { rows_.push_back(cells); }
    void row(const std::vector<double>& cells) {
        std::vector<std::string> s;
        for (double v : cells) s.push_back(num(v));
        rows_.push_back(std::move(s));
    }

    void write(std::ostream& os, const std::string& subcommand, const RunConfig& config) const {
        os << "# mmwi " << kVersion << '\n';
        os << "# subcommand = " << subcommand << '\n';
        os << "# seed = " << config.scenario.seed << '\n';
        for (const auto& [k, v] : describe(config)) os << "# " << k << " = " << v << '\n';
        for (const auto& m : meta_) os << "# " << m << '\n';
        write_cells(os, header_);
        for (const auto& r : rows_) write_cells(os, r);
    }

    const std::vector<std::string>& header() const { return header_; }

private:
    static void write_cells(std::ostream& os, const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::string> meta_;
    std::vector<std::vector<std::string>> rows_;
};

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<size_t>(n));
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
    return g;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

void need_circular(const RunConfig& c, const std::string& sub) {
    if (c.scenario.config.n_v != 1)
        throw ConfigError({"array.n_v: " + sub + " needs a circular array (n_v = 1)"});
}

bool plain_link(const Scenario& s) {
    return s.path.l_paths == 1 && s.path.p_block == 0.0 && s.path.noise_power == 0.0;
}

// Analytic service probability with the combiner / blockage model implied by the path settings.
double analytic_service(double r0, const RunConfig& c) {
    const Scenario& s = c.scenario;
    if (s.path.p_block > 0.0) return service_with_blockage(r0, s, c.service);
    if (!plain_link(s)) return service_with_noise(r0, s, c.service);
    return service_probability(r0, s, c.service);
}

struct McRow {
    Proportion served;
    Proportion sc;
};

std::vector<McRow> monte_carlo(const RunConfig& c) {
    const Scenario& s = c.scenario;
    std::vector<McRow> out;
    if (plain_link(s)) {
        for (const auto& e : empirical_service(s, c.r0_grid)) out.push_back({e.est, e.est});
        return out;
    }
    for (double r0 : c.r0_grid) {
        const CombiningEstimate e = simulate_mrc_sc(s, r0);
        out.push_back({e.mrc, e.sc});
    }
    return out;
}

// Interference CF for the configured pointing (no per-user re-steering).
CharFn scenario_cf(const RunConfig& c) {
    const Scenario& s = c.scenario;
    if (s.path.l_paths > 1) return make_nlos_cf(s.params, s.config, s.path, c.service.nlos_form);
    if (s.config.n_v > 1)
        return make_ucyla_cf(s.params, s.config, make_plan(s.params, s.config, c.service.k_wedges, c.service.m_rings),
                             c.service.ucyla_method);
    return make_uca_cf(s.params, s.config, c.service.k_wedges);
}

Table run_cf(const RunConfig& c) {
    need_circular(c, "cf");
    const NetworkParams& p = c.scenario.params;
    const ArrayConfig& a = c.scenario.config;
    const int k = c.service.k_wedges;
    Table t({"omega", "re_xi_prime", "im_xi_prime", "slope_estimate", "re_psi", "im_psi"});
    t.meta("omega_bar", num(breaking_frequency(p, a, c.break_rule)));
    t.meta("shift_coefficient", num(xi_shift_coefficient(p, a, k)));
    const auto grid = log_grid(c.omega_min, c.omega_max, c.n_omega);
    std::vector<std::vector<double>> rows(grid.size());
    parallel_for(static_cast<long>(grid.size()), [&](long i) {
        const double w = grid[i];
        const Complex xp = xi_prime(w, p, a, k);
        const Complex psi = cf_uca(w, p, a, k);
        rows[i] = {w, xp.real(), xp.imag(), xi_prime_slope(w, p, a), psi.real(), psi.imag()};
    });
    for (const auto& r : rows) t.row(r);
    return t;
}

Table run_invert(const RunConfig& c) {
    const CharFn cf = scenario_cf(c);
    InversionSettings inv = c.service.inversion;
    double x_max = c.x_max;
    if (x_max <= 0.0) x_max = quantile_from_cf(cf, 0.95, inv);
    if (!(x_max > c.x_min)) throw ConfigError({"invert.x_max: must exceed invert.x_min"});
    const auto xs = lin_grid(c.x_min, x_max, c.n_x);
    const auto cdf = cdf_grid(cf, xs, inv);
    std::vector<double> pdf(xs.size());
    parallel_for(static_cast<long>(xs.size()), [&](long i) { pdf[i] = pdf_from_cf(cf, xs[i], inv); });

    // empirical CDF of the simulated aggregate as an oracle column
    std::vector<double> samples = simulate_interference_samples(c.scenario, c.mc_mode);
    std::sort(samples.begin(), samples.end());
    Table t({"x", "cdf", "pdf", "cdf_mc"});
    t.meta("cf_kind", cf.metadata().kind);
    for (size_t i = 0; i < xs.size(); ++i) {
        const double ecdf = static_cast<double>(std::upper_bound(samples.begin(), samples.end(), xs[i]) - samples.begin()) /
                            static_cast<double>(samples.size());
        t.row(std::vector<double>{xs[i], cdf[i], pdf[i], ecdf});
    }
    return t;
}

Table run_service(const RunConfig& c) {
    Table t({"r0", "p_s"});
    std::vector<double> ps(c.r0_grid.size());
    for (size_t i = 0; i < ps.size(); ++i) ps[i] = analytic_service(c.r0_grid[i], c);
    for (size_t i = 0; i < ps.size(); ++i) t.row(std::vector<double>{c.r0_grid[i], ps[i]});
    return t;
}

Table run_sweep_table(const RunConfig& c) {
    if (c.sweep_values.empty()) throw ConfigError({"sweep.values: required for the sweep subcommand"});
    SweepSpec spec;
    spec.axis = c.sweep_axis;
    spec.values = c.sweep_values;
    spec.fixed = c.scenario;
    spec.area_side = c.area_side;
    spec.r_bar = c.r_bar;
    spec.total_antennas = c.total_antennas;
    spec.r0_ref = c.r0_ref;
    spec.fc_hz = c.fc_hz;
    spec.c_mps = c.c_mps;
    Table t({"value", "n_c", "n_v", "avg_ps", "users_served", "signal", "mean_interference", "status"});
    for (const SweepRow& r : run_sweep(spec, c.service))
        t.row(std::vector<std::string>{num(r.value), std::to_string(r.n_c), std::to_string(r.n_v), num(r.avg_ps),
                                       num(r.users), num(r.signal), num(r.mean_interference), r.status});
    return t;
}

Table run_montecarlo(const RunConfig& c) {
    const auto rows = monte_carlo(c);
    Table t({"r0", "p_service", "ci_lo", "ci_hi", "p_sc", "sc_lo", "sc_hi"});
    t.meta("estimator", plain_link(c.scenario) ? "single-link" : "mrc/sc");
    for (size_t i = 0; i < rows.size(); ++i)
        t.row(std::vector<double>{c.r0_grid[i], rows[i].served.p, rows[i].served.lo, rows[i].served.hi, rows[i].sc.p,
                                  rows[i].sc.lo, rows[i].sc.hi});
    if (!c.trials_csv.empty()) {
        std::vector<TrialResult> trials;
        simulate_mrc_sc(c.scenario, c.r0_grid.front(), &trials);
        std::ofstream f(c.trials_csv, std::ios::binary);
        if (!f) throw ConfigError({"montecarlo.trials_csv: cannot write '" + c.trials_csv + "'"});
        write_trials_csv(f, trials);
        t.meta("trials_r0", num(c.r0_grid.front()));
    }
    return t;
}

Table run_mixture(const RunConfig& c) {
    need_circular(c, "mixture");
    const NetworkParams& p = c.scenario.params;
    const ArrayConfig& a = c.scenario.config;
    const MixtureModel m = make_mixture(p, a, c.transition, c.break_rule);
    double measured = std::nan("");
    try {
        measured = measured_slope_break(p, a);
    } catch (const ConvergenceError&) {
    }
    Table t({"omega", "re_xi_prime", "slope", "abs_psi_exact", "abs_psi_mixture"});
    t.meta("omega_bar", num(m.omega_bar));
    t.meta("measured_break", num(measured));
    t.meta("stable_gamma", num(m.w2.gamma));
    const auto grid = log_grid(c.omega_min, c.omega_max, c.n_omega);
    std::vector<std::vector<double>> rows(grid.size());
    parallel_for(static_cast<long>(grid.size()), [&](long i) {
        const double w = grid[i];
        rows[i] = {w, xi_prime(w, p, a, c.service.k_wedges).real(), xi_prime_slope(w, p, a),
                   std::abs(cf_uca(w, p, a, c.service.k_wedges)), std::abs(cf_mixture(w, m, p))};
    });
    for (const auto& r : rows) t.row(r);
    return t;
}

Table run_validate(const RunConfig& c) {
    const auto mc = monte_carlo(c);
    Table t({"r0", "p_analytic", "p_mc", "ci_lo", "ci_hi", "abs_diff"});
    double worst = 0.0;
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < c.r0_grid.size(); ++i) {
        const double pa = analytic_service(c.r0_grid[i], c);
        const double d = std::fabs(pa - mc[i].served.p);
        worst = std::max(worst, d);
        rows.push_back({c.r0_grid[i], pa, mc[i].served.p, mc[i].served.lo, mc[i].served.hi, d});
    }
    t.meta("max_abs_diff", num(worst));
    t.meta("verdict", worst <= c.validate_tol ? "PASS" : "FAIL");
    for (const auto& r : rows) t.row(r);
    return t;
}

std::string plot_path(const std::string& csv) {
    const auto dot = csv.find_last_of('.');
    const auto slash = csv.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return csv + ".py";
    return csv.substr(0, dot) + ".py";
}

void write_plot_script(const std::string& path, const std::string& csv, const std::string& sub, const Table& t) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError({"output.path: cannot write '" + path + "'"});
    const bool logx = sub == "cf" || sub == "mixture";
    const auto& h = t.header();
    f << "# plot for " << csv << "\n"
      << "import csv\nimport matplotlib\nmatplotlib.use('Agg')\nimport matplotlib.pyplot as plt\n\n"
      << "rows = [r for r in csv.reader(open(" << '"' << csv << '"' << ")) if r and not r[0].startswith('#')]\n"
      << "head, data = rows[0], rows[1:]\n"
      << "def col(name):\n    i = head.index(name)\n    return [float(r[i]) for r in data]\n\n"
      << "fig, ax = plt.subplots()\n";
    for (size_t i = 1; i < h.size(); ++i) {
        if (h[i] == "status" || h[i] == "n_c" || h[i] == "n_v") continue;
        f << "ax.plot(col('" << h[0] << "'), col('" << h[i] << "'), label='" << h[i] << "')\n";
    }
    if (logx) f << "ax.set_xscale('log')\nax.set_yscale('symlog', linthresh=1e-12)\n";
    f << "ax.set_xlabel('" << h[0] << "')\nax.legend()\nfig.savefig(" << '"' << csv << ".png" << '"' << ")\n";
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> s = {"cf", "invert", "service", "sweep", "montecarlo", "mixture", "validate"};
    return s;
}

std::string usage() {
    std::string u = "usage: mmwi <subcommand> --config FILE [--seed N] [--out FILE]\nsubcommands:";
    for (const auto& s : subcommands()) u += " " + s;
    return u + "\n";
}

int run(const std::string& subcommand, const RunConfig& config, std::ostream& out, std::ostream& err) {
    static const std::vector<std::pair<std::string, std::function<Table(const RunConfig&)>>> table = {
        {"cf", run_cf},         {"invert", run_invert},         {"service", run_service},
        {"sweep", run_sweep_table}, {"montecarlo", run_montecarlo}, {"mixture", run_mixture},
        {"validate", run_validate},
    };
    const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == subcommand; });
    if (it == table.end()) {
        err << "unknown subcommand '" << subcommand << "'\n" << usage();
        return kExitInvalid;
    }
    try {
        const Table t = it->second(config);
        if (config.output.empty()) {
            t.write(out, subcommand, config);
        } else {
            std::ofstream f(config.output, std::ios::binary);
            if (!f) throw ConfigError({"output.path: cannot write '" + config.output + "'"});
            t.write(f, subcommand, config);
            if (config.plot_script) write_plot_script(plot_path(config.output), config.output, subcommand, t);
        }
        return kExitOk;
    } catch (const ConvergenceError& e) {
        err << "error: no convergence: " << e.what() << " (estimated error " << e.estimated_error() << ")\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}

}  // namespace mmwi

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

#include "mmwi/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mmwi {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double number(const std::string& s) { return parse_quantity(s, ""); }

double at_least(double v, double lo, const char* what) {
    if (!(v >= lo)) throw std::invalid_argument(std::string("must be >= ") + fmt(lo) + " (" + what + ")");
    return v;
}

double positive(double v) {
    if (!(v > 0.0)) throw std::invalid_argument("must be > 0");
    return v;
}

long integer(const std::string& s) {
    const double v = number(s);
    if (!std::isfinite(v) || v != std::floor(v)) throw std::invalid_argument("must be an integer");
    return static_cast<long>(v);
}

bool boolean(const std::string& s) {
    const std::string v = lower(s);
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw std::invalid_argument("expected true or false");
}

std::vector<double> sorted_list(const std::string& s, const std::string& unit) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(parse_quantity(item, unit));
    if (out.empty()) throw std::invalid_argument("list is empty");
    if (!std::is_sorted(out.begin(), out.end())) throw std::invalid_argument("list must be sorted");
    return out;
}

struct Key {
    std::string name;  // section.key
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

const std::vector<Key>& keys() {
    static const std::vector<Key> table = {
        {"network.lambda", [](RunConfig& c, const std::string& v) { c.scenario.params.lambda_density = at_least(number(v), 0.0, "density"); },
         [](const RunConfig& c) { return fmt(c.scenario.params.lambda_density); }},
        {"network.two_b", [](RunConfig& c, const std::string& v) { c.scenario.params.b = 0.5 * at_least(number(v), 2.0, "power path-loss exponent"); },
         [](const RunConfig& c) { return fmt(2.0 * c.scenario.params.b); }},
        {"network.h", [](RunConfig& c, const std::string& v) { c.scenario.params.h = at_least(number(v), 0.0, "height"); },
         [](const RunConfig& c) { return fmt(c.scenario.params.h); }},
        {"network.r_max", [](RunConfig& c, const std::string& v) { c.scenario.params.r_max = positive(number(v)); },
         [](const RunConfig& c) { return fmt(c.scenario.params.r_max); }},
        {"network.threshold", [](RunConfig& c, const std::string& v) { c.scenario.params.threshold_t = positive(parse_quantity(v, "dB")); },
         [](const RunConfig& c) { return fmt(c.scenario.params.threshold_t); }},
        {"network.beta0_sq", [](RunConfig& c, const std::string& v) { c.scenario.beta0_sq = positive(number(v)); },
         [](const RunConfig& c) { return fmt(c.scenario.beta0_sq); }},

        {"array.n_c", [](RunConfig& c, const std::string& v) { c.scenario.config.n_c = static_cast<int>(at_least(integer(v), 1, "elements")); },
         [](const RunConfig& c) { return std::to_string(c.scenario.config.n_c); }},
        {"array.n_v", [](RunConfig& c, const std::string& v) { c.scenario.config.n_v = static_cast<int>(at_least(integer(v), 1, "elements")); },
         [](const RunConfig& c) { return std::to_string(c.scenario.config.n_v); }},
        {"array.phi0", [](RunConfig& c, const std::string& v) { c.scenario.config.phi0 = parse_quantity(v, "deg"); },
         [](const RunConfig& c) { return fmt(c.scenario.config.phi0); }},
        {"array.theta0", [](RunConfig& c, const std::string& v) { c.scenario.config.theta0 = parse_quantity(v, "deg"); },
         [](const RunConfig& c) { return fmt(c.scenario.config.theta0); }},
        {"array.k_wedges", [](RunConfig& c, const std::string& v) { c.service.k_wedges = static_cast<int>(at_least(integer(v), 0, "0 = default")); },
         [](const RunConfig& c) {
             const ArrayConfig& a = c.scenario.config;
             if (c.service.k_wedges > 0) return std::to_string(c.service.k_wedges);
             return std::to_string(a.n_v > 1 ? a.n_c : default_uca_wedges(a));
         }},
        {"array.m_rings", [](RunConfig& c, const std::string& v) { c.service.m_rings = static_cast<int>(at_least(integer(v), 0, "0 = default")); },
         [](const RunConfig& c) {
             return std::to_string(c.service.m_rings > 0 ? c.service.m_rings : std::max(1, c.scenario.config.n_v / 2));
         }},
        {"array.ucyla_method", [](RunConfig& c, const std::string& v) {
             const std::string m = lower(v);
             if (m == "discrete") c.service.ucyla_method = UcylaMethod::Discrete;
             else if (m == "quadrature") c.service.ucyla_method = UcylaMethod::Quadrature;
             else throw std::invalid_argument("expected discrete or quadrature");
         },
         [](const RunConfig& c) { return std::string(c.service.ucyla_method == UcylaMethod::Discrete ? "discrete" : "quadrature"); }},

        {"paths.l_paths", [](RunConfig& c, const std::string& v) { c.scenario.path.l_paths = static_cast<int>(at_least(integer(v), 1, "paths")); },
         [](const RunConfig& c) { return std::to_string(c.scenario.path.l_paths); }},
        {"paths.ring_radius_d", [](RunConfig& c, const std::string& v) { c.scenario.path.ring_radius_d = at_least(number(v), 0.0, "radius"); },
         [](const RunConfig& c) { return fmt(c.scenario.path.ring_radius_d); }},
        {"paths.p_block", [](RunConfig& c, const std::string& v) {
             const double p = number(v);
             if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("must lie in [0,1]");
             c.scenario.path.p_block = p;
         },
         [](const RunConfig& c) { return fmt(c.scenario.path.p_block); }},
        {"paths.noise_power", [](RunConfig& c, const std::string& v) { c.scenario.path.noise_power = at_least(parse_quantity(v, "dB"), 0.0, "linear power"); },
         [](const RunConfig& c) { return fmt(c.scenario.path.noise_power); }},
        {"paths.nlos_form", [](RunConfig& c, const std::string& v) {
             const std::string m = lower(v);
             if (m == "renormalized") c.service.nlos_form = NlosForm::Renormalized;
             else if (m == "displaced") c.service.nlos_form = NlosForm::Displaced;
             else throw std::invalid_argument("expected renormalized or displaced");
         },
         [](const RunConfig& c) { return std::string(c.service.nlos_form == NlosForm::Renormalized ? "renormalized" : "displaced"); }},

        {"montecarlo.r_max_num", [](RunConfig& c, const std::string& v) {
             const double r = positive(number(v));
             if (std::isinf(r)) throw std::invalid_argument("must be finite");
             c.scenario.r_max_num = r;
         },
         [](const RunConfig& c) { return fmt(c.scenario.r_max_num); }},
        {"montecarlo.trials", [](RunConfig& c, const std::string& v) { c.scenario.trials = at_least(integer(v), 1, "trials"); },
         [](const RunConfig& c) { return std::to_string(c.scenario.trials); }},
        {"montecarlo.seed", [](RunConfig& c, const std::string& v) { c.scenario.seed = static_cast<std::uint64_t>(at_least(integer(v), 0, "seed")); },
         [](const RunConfig& c) { return std::to_string(c.scenario.seed); }},
        {"montecarlo.mode", [](RunConfig& c, const std::string& v) {
             const std::string m = lower(v);
             if (m == "power-sum") c.mc_mode = Aggregation::PowerSum;
             else if (m == "amplitude-sum") c.mc_mode = Aggregation::AmplitudeSum;
             else throw std::invalid_argument("expected power-sum or amplitude-sum");
         },
         [](const RunConfig& c) { return std::string(c.mc_mode == Aggregation::PowerSum ? "power-sum" : "amplitude-sum"); }},
        {"montecarlo.trials_csv", [](RunConfig& c, const std::string& v) { c.trials_csv = v; },
         [](const RunConfig& c) { return c.trials_csv; }},

        {"inversion.tol", [](RunConfig& c, const std::string& v) { c.service.inversion.tol = positive(number(v)); },
         [](const RunConfig& c) { return fmt(c.service.inversion.tol); }},
        {"inversion.n_points", [](RunConfig& c, const std::string& v) { c.service.inversion.n_points = static_cast<int>(at_least(integer(v), 64, "nodes")); },
         [](const RunConfig& c) { return std::to_string(c.service.inversion.n_points); }},
        {"inversion.omega_max", [](RunConfig& c, const std::string& v) { c.service.inversion.omega_max = at_least(number(v), 0.0, "0 = none"); },
         [](const RunConfig& c) { return fmt(c.service.inversion.omega_max); }},
        {"inversion.min_omega", [](RunConfig& c, const std::string& v) { c.service.inversion.min_omega = positive(number(v)); },
         [](const RunConfig& c) { return fmt(c.service.inversion.min_omega); }},
        {"inversion.refine", [](RunConfig& c, const std::string& v) { c.service.inversion.refine = boolean(v); },
         [](const RunConfig& c) { return std::string(c.service.inversion.refine ? "true" : "false"); }},

        {"service.r0", [](RunConfig& c, const std::string& v) {
             c.r0_grid = sorted_list(v, "");
             if (c.r0_grid.front() < 0.0) throw std::invalid_argument("radii must be >= 0");
         },
         [](const RunConfig& c) { return fmt_list(c.r0_grid); }},
        {"service.r_bar", [](RunConfig& c, const std::string& v) { c.r_bar = positive(number(v)); },
         [](const RunConfig& c) { return fmt(c.r_bar); }},
        {"service.area_side", [](RunConfig& c, const std::string& v) { c.area_side = at_least(number(v), 0.0, "0 = disk of radius r_bar"); },
         [](const RunConfig& c) { return fmt(c.area_side); }},
        {"service.exact_square", [](RunConfig& c, const std::string& v) { c.service.exact_square = boolean(v); },
         [](const RunConfig& c) { return std::string(c.service.exact_square ? "true" : "false"); }},
        {"service.avg_tol", [](RunConfig& c, const std::string& v) { c.service.avg_tol = positive(number(v)); },
         [](const RunConfig& c) { return fmt(c.service.avg_tol); }},
        {"service.fc", [](RunConfig& c, const std::string& v) { c.fc_hz = positive(number(v)); },
         [](const RunConfig& c) { return fmt(c.fc_hz); }},
        {"service.c", [](RunConfig& c, const std::string& v) {
             const std::string m = lower(v);
             if (m == "rounded") c.c_mps = kSpeedOfLightRounded;
             else if (m == "physical") c.c_mps = kSpeedOfLight;
             else c.c_mps = positive(number(v));
         },
         [](const RunConfig& c) { return fmt(c.c_mps); }},

        {"sweep.axis", [](RunConfig& c, const std::string& v) {
             try {
                 c.sweep_axis = parse_axis(lower(v));
             } catch (const DomainError& e) {
                 throw std::invalid_argument(e.what());
             }
         },
         [](const RunConfig& c) { return axis_name(c.sweep_axis); }},
        {"sweep.values", [](RunConfig& c, const std::string& v) { c.sweep_values = sorted_list(v, "dB"); },
         [](const RunConfig& c) { return fmt_list(c.sweep_values); }},
        {"sweep.total_antennas", [](RunConfig& c, const std::string& v) { c.total_antennas = static_cast<int>(at_least(integer(v), 1, "antennas")); },
         [](const RunConfig& c) { return std::to_string(c.total_antennas); }},

        {"sweep.r0_ref", [](RunConfig& c, const std::string& v) { c.r0_ref = at_least(number(v), 0.0, "0 = off"); },
         [](const RunConfig& c) { return fmt(c.r0_ref); }},
        {"validate.tolerance", [](RunConfig& c, const std::string& v) { c.validate_tol = positive(number(v)); },
         [](const RunConfig& c) { return fmt(c.validate_tol); }},

        {"cf.omega_min", [](RunConfig& c, const std::string& v) { c.omega_min = positive(number(v)); },
         [](const RunConfig& c) { return fmt(c.omega_min); }},
        {"cf.omega_max", [](RunConfig& c, const std::string& v) { c.omega_max = positive(number(v)); },
         [](const RunConfig& c) { return fmt(c.omega_max); }},
        {"cf.n_omega", [](RunConfig& c, const std::string& v) { c.n_omega = static_cast<int>(at_least(integer(v), 2, "points")); },
         [](const RunConfig& c) { return std::to_string(c.n_omega); }},
        {"cf.n_terms", [](RunConfig& c, const std::string& v) { c.n_terms = static_cast<int>(at_least(integer(v), 2, "terms")); },
         [](const RunConfig& c) { return std::to_string(c.n_terms); }},

        {"mixture.transition", [](RunConfig& c, const std::string& v) {
             const std::string m = lower(v);
             if (m == "hard") c.transition = Transition::Hard;
             else if (m == "logistic") c.transition = Transition::Logistic;
             else throw std::invalid_argument("expected hard or logistic");
         },
         [](const RunConfig& c) { return std::string(c.transition == Transition::Hard ? "hard" : "logistic"); }},
        {"mixture.break_rule", [](RunConfig& c, const std::string& v) {
             const std::string m = lower(v);
             if (m == "mean_gain") c.break_rule = BreakRule::MeanGain;
             else if (m == "moment_ratio") c.break_rule = BreakRule::MomentRatio;
             else throw std::invalid_argument("expected mean_gain or moment_ratio");
         },
         [](const RunConfig& c) { return std::string(c.break_rule == BreakRule::MeanGain ? "mean_gain" : "moment_ratio"); }},

        {"invert.x_min", [](RunConfig& c, const std::string& v) { c.x_min = number(v); },
         [](const RunConfig& c) { return fmt(c.x_min); }},
        {"invert.x_max", [](RunConfig& c, const std::string& v) { c.x_max = at_least(number(v), 0.0, "0 = automatic"); },
         [](const RunConfig& c) { return fmt(c.x_max); }},
        {"invert.n_x", [](RunConfig& c, const std::string& v) { c.n_x = static_cast<int>(at_least(integer(v), 2, "points")); },
         [](const RunConfig& c) { return std::to_string(c.n_x); }},

        {"output.path", [](RunConfig& c, const std::string& v) { c.output = v; },
         [](const RunConfig& c) { return c.output; }},
        {"output.plot_script", [](RunConfig& c, const std::string& v) { c.plot_script = boolean(v); },
         [](const RunConfig& c) { return std::string(c.plot_script ? "true" : "false"); }},
    };
    return table;
}

const Key* find_key(const std::string& name) {
    static const std::map<std::string, const Key*> index = [] {
        std::map<std::string, const Key*> m;
        for (const Key& k : keys()) m[k.name] = &k;
        return m;
    }();
    const auto it = index.find(name);
    return it == index.end() ? nullptr : it->second;
}

bool known_section(const std::string& s) {
    const std::string prefix = s + ".";
    for (const Key& k : keys())
        if (k.name.compare(0, prefix.size(), prefix) == 0) return true;
    return false;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : "\n") + s;
    return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors) : DomainError(join(errors)), errors_(std::move(errors)) {}

double parse_quantity(const std::string& text, const std::string& unit) {
    std::string s = trim(text);
    bool is_db = false, is_deg = false;
    auto strip = [&](const std::string& suffix) {
        if (s.size() >= suffix.size() && lower(s.substr(s.size() - suffix.size())) == lower(suffix)) {
            s = trim(s.substr(0, s.size() - suffix.size()));
            return true;
        }
        return false;
    };
    if (strip("dB")) {
        if (unit != "dB") throw std::invalid_argument("dB suffix not allowed here");
        is_db = true;
    } else if (strip("deg")) {
        if (unit != "deg") throw std::invalid_argument("deg suffix not allowed here");
        is_deg = true;
    }
    const std::string l = lower(s);
    double v;
    if (l == "inf" || l == "+inf") {
        v = kInf;
    } else {
        size_t pos = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a number: '" + text + "'");
        }
        if (pos != s.size()) throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (std::isnan(v)) throw std::invalid_argument("not a number: '" + text + "'");
    if (is_db) return db_to_linear(v);
    if (is_deg) return v * kPi / 180.0;
    return v;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::vector<std::string> errors;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = " (line " + std::to_string(lineno) + ")";
        if (line.front() == '[') {
            if (line.back() != ']') {
                errors.push_back("syntax" + where + ": unterminated section header");
                continue;
            }
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (!known_section(section)) errors.push_back(section + where + ": unknown section");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("syntax" + where + ": expected key = value");
            continue;
        }
        const std::string name = section + "." + lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            errors.push_back(name.substr(1) + where + ": key outside any section");
            continue;
        }
        const Key* key = find_key(name);
        if (!key) {
            if (known_section(section)) errors.push_back(name + where + ": unknown key");
            continue;
        }
        if (!seen.insert(name).second) {
            errors.push_back(name + where + ": duplicate key");
            continue;
        }
        try {
            key->set(cfg, value);
        } catch (const std::exception& e) {
            errors.push_back(name + where + ": " + e.what());
        }
    }
    if (errors.empty()) {
        auto check = [&](const char* field, auto&& fn) {
            try {
                fn();
            } catch (const DomainError& e) {
                errors.push_back(std::string(field) + ": " + e.what());
            }
        };
        check("network", [&] { cfg.scenario.params.validate(); });
        check("array", [&] { cfg.scenario.config.validate(); });
        check("paths", [&] { cfg.scenario.path.validate(); });
        if (cfg.omega_min >= cfg.omega_max) errors.push_back("cf.omega_max: must exceed cf.omega_min");
        if (cfg.x_max > 0.0 && cfg.x_min >= cfg.x_max) errors.push_back("invert.x_max: must exceed invert.x_min");
    }
    if (!errors.empty()) throw ConfigError(errors);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError({"cannot read config file '" + path + "'"});
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const Key& k : keys()) out.emplace_back(k.name, k.get(config));
    return out;
}

}  // namespace mmwi

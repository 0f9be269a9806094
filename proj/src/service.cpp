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

#include "mmwi/service.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mmwi/geometry.hpp"
#include "mmwi/quadrature.hpp"

namespace mmwi {
namespace {

double signal_threshold(double r0, const Scenario& s) {
    const NetworkParams& p = s.params;
    return s.beta0_sq / (p.threshold_t * std::pow(r0 * r0 + p.h * p.h, p.b));
}

bool plain_los(const Scenario& s) {
    return s.path.l_paths == 1 && s.path.noise_power == 0.0 && s.path.p_block == 0.0;
}

double point_service(double r0, const Scenario& s, const ServiceSettings& settings) {
    return plain_los(s) ? service_probability(r0, s, settings) : service_with_blockage(r0, s, settings);
}

// MRC over the paths flagged in `active`; all per-path interferences share one law.
double combine(double r0, const Scenario& s, const ServiceSettings& settings, const std::vector<bool>& active) {
    const NetworkParams& p = s.params;
    const double noise = s.path.noise_power;
    const CharFn cf = interference_cf_at(r0, s, settings);
    const double ref = reference_interference(cf, s, settings) + noise;
    const double g_nlos = s.path.l_paths > 1 ? nlos_mean_distance(r0, s.path.ring_radius_d) : r0;

    std::vector<CharFn> cfs;
    std::vector<double> weights;
    double num = 0.0, noise_tot = 0.0;
    for (int l = 0; l < s.path.l_paths; ++l) {
        if (!active[l]) continue;
        const double g = l == 0 ? r0 : g_nlos;
        const double sig = s.beta0_sq * std::pow(g * g + p.h * p.h, -p.b);
        const double a = sig / (ref * ref);
        num += sig / ref;
        noise_tot += a * noise;
        cfs.push_back(cf);
        weights.push_back(a);
    }
    if (cfs.empty()) return 0.0;
    const double margin = num * num / p.threshold_t - noise_tot;
    if (!(margin > 0.0)) return 0.0;
    return cdf_from_cf(cf_scale_product(cfs, weights), margin, settings.inversion);
}

}  // namespace

CharFn interference_cf_at(double r0, const Scenario& scenario, const ServiceSettings& settings) {
    ArrayConfig cfg = scenario.config;
    if (cfg.n_v > 1) cfg.theta0 = elevation(r0, scenario.params.h);
    if (scenario.path.l_paths > 1) return make_nlos_cf(scenario.params, cfg, scenario.path, settings.nlos_form);
    if (cfg.n_v > 1)
        return make_ucyla_cf(scenario.params, cfg,
                             make_plan(scenario.params, cfg, settings.k_wedges, settings.m_rings),
                             settings.ucyla_method);
    return make_uca_cf(scenario.params, cfg, settings.k_wedges);
}

double service_probability(double r0, const Scenario& scenario, const ServiceSettings& settings) {
    if (!(r0 >= 0.0)) throw DomainError("service_probability: r0 must be >= 0");
    scenario.params.validate();
    const CharFn cf = interference_cf_at(r0, scenario, settings);
    return cdf_from_cf(cf, signal_threshold(r0, scenario), settings.inversion);
}

double avg_service_probability(const std::function<double(double)>& ps, double r_bar, double tol) {
    if (!(r_bar > 0.0)) throw DomainError("avg_service_probability: r_bar must be > 0");
    auto f = [&](double r) { return ps(r) * r; };
    const double v = quad::integrate<double>(f, 0.0, r_bar, 0.5 * tol * r_bar * r_bar, 0.0).value;
    return std::clamp(2.0 * v / (r_bar * r_bar), 0.0, 1.0);
}

double avg_service_probability(double r_bar, const Scenario& scenario, const ServiceSettings& settings) {
    if (plain_los(scenario) && scenario.config.n_v == 1) {
        // the CF does not depend on r0; build it once
        const CharFn cf = interference_cf_at(0.0, scenario, settings);
        return avg_service_probability(
            [&](double r) { return cdf_from_cf(cf, signal_threshold(r, scenario), settings.inversion); }, r_bar,
            settings.avg_tol);
    }
    return avg_service_probability([&](double r) { return point_service(r, scenario, settings); }, r_bar,
                                   settings.avg_tol);
}

double square_arc_length(double r, double side) {
    const double half = 0.5 * side;
    if (r <= half) return 2.0 * kPi * r;
    if (r >= half * std::sqrt(2.0)) return 0.0;
    return 2.0 * kPi * r - 8.0 * r * std::acos(half / r);
}

double users_served(double area_side, const Scenario& scenario, const ServiceSettings& settings) {
    if (!(area_side > 0.0)) throw DomainError("users_served: area side must be > 0");
    const double lam = scenario.params.lambda_density;
    if (!settings.exact_square)
        return lam * area_side * area_side * avg_service_probability(area_side / std::sqrt(kPi), scenario, settings);

    std::function<double(double)> ps;
    CharFn shared;
    if (plain_los(scenario) && scenario.config.n_v == 1) {
        shared = interference_cf_at(0.0, scenario, settings);
        ps = [&](double r) { return cdf_from_cf(shared, signal_threshold(r, scenario), settings.inversion); };
    } else {
        ps = [&](double r) { return point_service(r, scenario, settings); };
    }
    auto f = [&](double r) { return ps(r) * square_arc_length(r, area_side); };
    const double a2 = area_side * area_side;
    const double half = 0.5 * area_side;
    const double tol = settings.avg_tol * a2;
    const double inner = quad::integrate<double>(f, 0.0, half, tol, 0.0).value;
    const double outer = quad::integrate<double>(f, half, half * std::sqrt(2.0), tol, 0.0).value;
    return lam * std::clamp(inner + outer, 0.0, a2);
}

double reference_interference(const CharFn& path_cf, const Scenario& scenario, const ServiceSettings& settings) {
    const NetworkParams& p = scenario.params;
    const int extra = scenario.path.l_paths - 1;
    const double d = scenario.path.ring_radius_d;
    if (p.lambda_density == 0.0) return 0.0;
    try {
        double m = mean_interference(p, scenario.config);
        if (extra > 0) m += extra * mean_nlos_interference(p, scenario.config, d);
        if (std::isfinite(m) && m > 0.0) return m;
    } catch (const DomainError&) {
    }
    return quantile_from_cf(path_cf, 0.5, settings.inversion);
}

double service_with_noise(double r0, const Scenario& scenario, const ServiceSettings& settings) {
    if (!(r0 >= 0.0)) throw DomainError("service_with_noise: r0 must be >= 0");
    scenario.path.validate();
    return combine(r0, scenario, settings, std::vector<bool>(static_cast<size_t>(scenario.path.l_paths), true));
}

double service_with_blockage(double r0, const Scenario& scenario, const ServiceSettings& settings) {
    const PathModel& path = scenario.path;
    path.validate();
    const int l = path.l_paths;
    if (l > 16) throw DomainError("service_with_blockage: exact enumeration needs l_paths <= 16");
    const double pb = path.p_block;
    if (pb == 0.0) return service_with_noise(r0, scenario, settings);
    if (pb == 1.0) return 0.0;

    // reflected paths are exchangeable, so a mask is fixed by (LOS clear, number of clear reflected paths)
    std::map<std::pair<bool, int>, double> cache;
    double total = 0.0;
    for (unsigned mask = 0; mask < (1u << l); ++mask) {
        std::vector<bool> active(static_cast<size_t>(l));
        int clear = 0, nlos_clear = 0;
        for (int k = 0; k < l; ++k) {
            active[k] = !((mask >> k) & 1u);
            clear += active[k];
            if (k > 0) nlos_clear += active[k];
        }
        const double w = std::pow(pb, l - clear) * std::pow(1.0 - pb, clear);
        if (clear == 0) continue;
        const auto key = std::make_pair(static_cast<bool>(active[0]), nlos_clear);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, combine(r0, scenario, settings, active)).first;
        total += w * it->second;
    }
    return std::clamp(total, 0.0, 1.0);
}

double thermal_noise_dbm(double bandwidth_hz, double noise_figure_db) {
    if (!(bandwidth_hz > 0.0)) throw DomainError("bandwidth must be > 0");
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

SweepAxis parse_axis(const std::string& name) {
    static const std::map<std::string, SweepAxis> axes{
        {"height", SweepAxis::Height},       {"density", SweepAxis::Density},
        {"threshold", SweepAxis::Threshold}, {"nc_nv_ratio", SweepAxis::NcNvRatio},
        {"blockage", SweepAxis::Blockage},   {"radius", SweepAxis::Radius}};
    const auto it = axes.find(name);
    if (it == axes.end()) throw DomainError("unknown sweep axis '" + name + "'");
    return it->second;
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Height: return "height";
        case SweepAxis::Density: return "density";
        case SweepAxis::Threshold: return "threshold";
        case SweepAxis::NcNvRatio: return "nc_nv_ratio";
        case SweepAxis::Blockage: return "blockage";
        case SweepAxis::Radius: return "radius";
    }
    return "?";
}

std::vector<std::pair<int, int>> factorizations(int total) {
    if (total < 1) throw DomainError("factorizations: total must be >= 1");
    std::vector<std::pair<int, int>> out;
    for (int nc = 1; nc <= total; ++nc)
        if (total % nc == 0) out.emplace_back(nc, total / nc);
    return out;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const ServiceSettings& settings) {
    if (spec.values.empty()) throw DomainError("sweep needs at least one value");
    if (!std::is_sorted(spec.values.begin(), spec.values.end())) throw DomainError("sweep values must be sorted");
    std::vector<SweepRow> rows(spec.values.size());
    parallel_for(static_cast<long>(rows.size()), [&](long i) {
        SweepRow& row = rows[i];
        row.value = spec.values[i];
        Scenario s = spec.fixed;
        double r_bar = spec.r_bar;
        double side = spec.area_side;
        try {
            const double v = row.value;
            switch (spec.axis) {
                case SweepAxis::Height: s.params.h = v; break;
                case SweepAxis::Density: s.params.lambda_density = v; break;
                case SweepAxis::Threshold: s.params.threshold_t = v; break;
                case SweepAxis::Blockage: s.path.p_block = v; break;
                case SweepAxis::Radius:
                    r_bar = v;
                    side = 0.0;
                    break;
                case SweepAxis::NcNvRatio: {
                    bool found = false;
                    for (const auto& [nc, nv] : factorizations(spec.total_antennas)) {
                        if (std::fabs(std::log2(static_cast<double>(nc) / nv) - v) < 1e-9) {
                            s.config.n_c = nc;
                            s.config.n_v = nv;
                            found = true;
                        }
                    }
                    if (!found) throw DomainError("no integer factorization for this ratio");
                    break;
                }
            }
            s.params.validate();
            s.config.validate();
            s.path.validate();
            row.n_c = s.config.n_c;
            row.n_v = s.config.n_v;
            if (spec.r0_ref > 0.0) {
                const double beta0 = 4.0 * kPi * spec.fc_hz / spec.c_mps;
                row.signal = received_power(spec.r0_ref, s.params, spec.fc_hz, spec.c_mps);
                row.mean_interference = beta0 * beta0 * mean_interference(s.params, s.config);
            }
            const double lam = s.params.lambda_density;
            if (side > 0.0) {
                row.users = users_served(side, s, settings);
                row.avg_ps = lam > 0.0 ? row.users / (lam * side * side)
                                       : avg_service_probability(side / std::sqrt(kPi), s, settings);
            } else {
                row.avg_ps = avg_service_probability(r_bar, s, settings);
                row.users = lam * kPi * r_bar * r_bar * row.avg_ps;
            }
        } catch (const std::exception& e) {
            row.avg_ps = std::nan("");
            row.users = std::nan("");
            row.status = std::string("error: ") + e.what();
        }
    });
    return rows;
}

}  // namespace mmwi

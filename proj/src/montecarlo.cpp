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

#include "mmwi/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "mmwi/charfn.hpp"
#include "mmwi/geometry.hpp"
#include "mmwi/simd.hpp"

namespace mmwi {
namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr std::size_t kBatch = 4096;

constexpr int kTableBits = 16;

// G_c^2 over [0, 2pi) relative to phi0, shared per element count.
const std::vector<double>& azimuth_table(int n_c) {
    static std::mutex mu;
    static std::map<int, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n_c);
    if (it != cache.end()) return it->second;
    const int n = 1 << kTableBits;
    ArrayConfig cfg;
    cfg.n_c = n_c;
    std::vector<double> t(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double g = gain_uca(2.0 * kPi * i / n, cfg);
        t[i] = g * g;
    }
    return cache.emplace(n_c, std::move(t)).first->second;
}

struct GainModel {
    const std::vector<double>* table = nullptr;
    ArrayConfig config;
    double h = 0.0;

    explicit GainModel(const Scenario& s) : config(s.config), h(s.params.h) {
        if (config.n_c > 1) table = &azimuth_table(config.n_c);
    }

    // power gain toward ground point (r, phi)
    double operator()(double r, double phi) const {
        double g2 = 1.0;
        if (table) {
            double u = (phi - config.phi0) / (2.0 * kPi);
            u -= std::floor(u);
            const double x = u * (1 << kTableBits);
            const auto i = std::min(static_cast<std::size_t>(x), table->size() - 2);
            const double f = x - static_cast<double>(i);
            g2 = (*table)[i] + f * ((*table)[i + 1] - (*table)[i]);
        }
        if (config.n_v > 1) {
            const double gv = gain_ula(elevation(r, h), config);
            g2 *= gv * gv;
        }
        return g2;
    }
};

double fading(const Scenario& s, Philox4x32& rng) { return s.fading_power ? s.fading_power(rng) : 1.0; }

// Isotropic, unit fading, LOS only: only the radii matter, so draw r^2 = R^2 U in batches.
bool fast_path(const Scenario& s, Aggregation mode) {
    return mode == Aggregation::PowerSum && s.config.isotropic() && !s.fading_power && s.path.l_paths == 1;
}

double fast_interference(const Scenario& s, Philox4x32& rng) {
    const double mean = s.params.lambda_density * kPi * s.r_max_num * s.r_max_num;
    if (mean == 0.0) return 0.0;
    std::poisson_distribution<long> count(mean);
    long n = count(rng);
    const double r2max = s.r_max_num * s.r_max_num;
    const double h2 = s.params.h * s.params.h;
    const simd::KernelTable& k = simd::kernels();
    double buf[kBatch];
    double acc = 0.0;
    while (n > 0) {
        const std::size_t m = static_cast<std::size_t>(std::min<long>(n, kBatch));
        rng.fill_uniform32(buf, m);
        for (std::size_t i = 0; i < m; ++i) buf[i] *= r2max;
        acc += k.sum_inverse_power(buf, nullptr, m, h2, s.params.b);
        n -= static_cast<long>(m);
    }
    return acc;
}


// Received power terms of one drop: one LOS term per interferer plus l_paths - 1 reflected ones.
std::vector<double> drop_terms(const std::vector<PolarPoint>& pts, const Scenario& s, Philox4x32& rng) {
    const NetworkParams& p = s.params;
    const double h2 = p.h * p.h;
    const int extra = s.path.l_paths - 1;
    const double d = s.path.ring_radius_d;
    const GainModel gain(s);
    std::vector<double> out;
    out.reserve(pts.size() * static_cast<std::size_t>(1 + extra));
    for (const PolarPoint& pt : pts) {
        out.push_back(fading(s, rng) * gain(pt.r, pt.phi) * std::pow(pt.r * pt.r + h2, -p.b));
        for (int l = 0; l < extra; ++l) {
            const double eta = 2.0 * kPi * rng.uniform();
            const double x = pt.r * std::cos(pt.phi) + d * std::cos(eta);
            const double y = pt.r * std::sin(pt.phi) + d * std::sin(eta);
            const double rho = std::hypot(x, y);
            const double len = rho + d;
            out.push_back(fading(s, rng) * gain(rho, std::atan2(y, x)) * std::pow(len * len + h2, -p.b));
        }
    }
    return out;
}

// Per-path reference interference for the MRC weights.
std::vector<double> path_means(const Scenario& s) {
    const int l = s.path.l_paths;
    if (!s.mean_path_interference.empty()) {
        if (static_cast<int>(s.mean_path_interference.size()) != l)
            throw DomainError("mean_path_interference needs one entry per path");
        return s.mean_path_interference;
    }
    NetworkParams p = s.params;
    p.r_max = s.r_max_num;
    double m = mean_interference(p, s.config);
    if (l > 1) m += (l - 1) * mean_nlos_interference(p, s.config, s.path.ring_radius_d);
    return std::vector<double>(static_cast<std::size_t>(l), m);
}

}  // namespace

void Scenario::validate() const {
    params.validate();
    config.validate();
    path.validate();
    if (!(r_max_num > 0.0) || !std::isfinite(r_max_num)) throw DomainError("r_max_num must be finite and > 0");
    if (trials < 1) throw DomainError("trials must be >= 1");
    if (!(beta0_sq > 0.0)) throw DomainError("beta0_sq must be > 0");
}

std::vector<PolarPoint> sample_ppp_disk(double lambda_density, double r_max, Philox4x32& rng) {
    if (!(lambda_density >= 0.0) || !(r_max > 0.0) || !std::isfinite(r_max))
        throw DomainError("sample_ppp_disk: need lambda >= 0 and finite r_max > 0");
    std::vector<PolarPoint> pts;
    const double mean = lambda_density * kPi * r_max * r_max;
    if (mean == 0.0) return pts;
    std::poisson_distribution<long> count(mean);
    const long n = count(rng);
    pts.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const double r = r_max * std::sqrt(rng.uniform());
        pts.push_back({r, 2.0 * kPi * rng.uniform()});
    }
    return pts;
}

double simulate_interference(const std::vector<PolarPoint>& points, const Scenario& scenario, Aggregation mode,
                             Philox4x32& rng) {
    const std::vector<double> terms = drop_terms(points, scenario, rng);
    if (mode == Aggregation::PowerSum) {
        double acc = 0.0;
        for (double t : terms) acc += t;
        return acc;
    }
    // |sum sqrt(P_i) x_i|^2 with x_i ~ CN(0,1)
    double re = 0.0, im = 0.0;
    for (double t : terms) {
        const double a = std::sqrt(0.5 * t);
        re += a * rng.normal();
        im += a * rng.normal();
    }
    return re * re + im * im;
}

double sample_stable_skewed(double alpha, double gamma, Philox4x32& rng) {
    if (!(alpha > 0.0 && alpha < 1.0) || !(gamma > 0.0))
        throw DomainError("sample_stable_skewed: need alpha in (0,1), gamma > 0");
    const double v = kPi * (rng.uniform() - 0.5);
    const double w = rng.exponential();
    const double t = std::tan(0.5 * kPi * alpha);
    const double bshift = std::atan(t) / alpha;
    const double s = std::pow(1.0 + t * t, 0.5 / alpha);
    const double x = s * std::sin(alpha * (v + bshift)) / std::pow(std::cos(v), 1.0 / alpha) *
                     std::pow(std::cos(v - alpha * (v + bshift)) / w, (1.0 - alpha) / alpha);
    return std::pow(gamma, 1.0 / alpha) * x;
}

std::vector<double> simulate_interference_samples(const Scenario& scenario, Aggregation mode) {
    scenario.validate();
    std::vector<double> out(static_cast<std::size_t>(scenario.trials));
    const bool fast = fast_path(scenario, mode);
    parallel_for(scenario.trials, [&](long i) {
        Philox4x32 rng(scenario.seed, static_cast<std::uint64_t>(i));
        if (fast) {
            out[i] = fast_interference(scenario, rng);
        } else {
            const auto pts = sample_ppp_disk(scenario.params.lambda_density, scenario.r_max_num, rng);
            out[i] = simulate_interference(pts, scenario, mode, rng);
        }
    });
    return out;
}

Proportion wilson_interval(long successes, long n) {
    if (n <= 0) throw DomainError("wilson_interval: n must be > 0");
    const double p = static_cast<double>(successes) / n;
    const double z2 = kZ95 * kZ95;
    const double den = 1.0 + z2 / n;
    const double centre = (p + 0.5 * z2 / n) / den;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + 0.25 * z2 / (double(n) * n)) / den;
    return {p, std::max(0.0, centre - half), std::min(1.0, centre + half), n};
}

std::vector<ServiceEstimate> empirical_service(const Scenario& scenario, const std::vector<double>& r0_grid) {
    scenario.validate();
    const NetworkParams& p = scenario.params;
    const bool steer = scenario.config.n_v > 1;
    const std::size_t nr = r0_grid.size();
    std::vector<double> thresholds(nr);
    for (std::size_t j = 0; j < nr; ++j)
        thresholds[j] = scenario.beta0_sq / (p.threshold_t * std::pow(r0_grid[j] * r0_grid[j] + p.h * p.h, p.b));

    // served[i * nr + j]: trial i, grid point j
    std::vector<unsigned char> served(static_cast<std::size_t>(scenario.trials) * nr, 0);
    const bool fast = !steer && fast_path(scenario, Aggregation::PowerSum);
    parallel_for(scenario.trials, [&](long i) {
        Philox4x32 rng(scenario.seed, static_cast<std::uint64_t>(i));
        if (fast) {
            const double iv = fast_interference(scenario, rng);
            for (std::size_t j = 0; j < nr; ++j) served[i * nr + j] = iv < thresholds[j];
            return;
        }
        const auto pts = sample_ppp_disk(p.lambda_density, scenario.r_max_num, rng);
        if (!steer) {
            const double iv = simulate_interference(pts, scenario, Aggregation::PowerSum, rng);
            for (std::size_t j = 0; j < nr; ++j) served[i * nr + j] = iv < thresholds[j];
            return;
        }
        // UcylA: the elevation beam follows the user, so the same drop is re-weighted per R0
        for (std::size_t j = 0; j < nr; ++j) {
            Scenario local = scenario;
            local.config.theta0 = elevation(r0_grid[j], p.h);
            Philox4x32 inner(scenario.seed ^ 0x9E3779B97F4A7C15ull, static_cast<std::uint64_t>(i));
            served[i * nr + j] = simulate_interference(pts, local, Aggregation::PowerSum, inner) < thresholds[j];
        }
    });

    std::vector<ServiceEstimate> out(nr);
    for (std::size_t j = 0; j < nr; ++j) {
        long hits = 0;
        for (long i = 0; i < scenario.trials; ++i) hits += served[i * nr + j];
        out[j] = {r0_grid[j], wilson_interval(hits, scenario.trials)};
    }
    return out;
}

CombiningEstimate simulate_mrc_sc(const Scenario& scenario, double r0, std::vector<TrialResult>* trials_out) {
    scenario.validate();
    if (!(r0 >= 0.0)) throw DomainError("simulate_mrc_sc: r0 must be >= 0");
    const NetworkParams& p = scenario.params;
    const int l_paths = scenario.path.l_paths;
    const double d = scenario.path.ring_radius_d;
    const double noise = scenario.path.noise_power;
    const double t = p.threshold_t;
    const std::vector<double> ibar = path_means(scenario);

    Scenario link = scenario;
    if (link.config.n_v > 1) link.config.theta0 = elevation(r0, p.h);

    std::vector<TrialResult> res(static_cast<std::size_t>(scenario.trials));
    std::vector<unsigned char> sc(res.size()), ideal(res.size());
    parallel_for(scenario.trials, [&](long i) {
        Philox4x32 rng(scenario.seed, static_cast<std::uint64_t>(i));
        TrialResult& tr = res[i];
        tr.interference.resize(l_paths);
        tr.blocked.resize(l_paths);
        double num = 0.0, lin = 0.0, best = 0.0, sum_sinr = 0.0, noise_tot = 0.0;
        for (int l = 0; l < l_paths; ++l) {
            const auto pts = sample_ppp_disk(p.lambda_density, scenario.r_max_num, rng);
            const double il = simulate_interference(pts, link, Aggregation::PowerSum, rng);
            tr.interference[l] = il;
            tr.blocked[l] = rng.uniform() < scenario.path.p_block;
            double ground = r0;
            if (l > 0) {
                const double eta = 2.0 * kPi * rng.uniform();
                ground = d + std::hypot(r0 + d * std::cos(eta), d * std::sin(eta));
            }
            const double s = scenario.beta0_sq * fading(scenario, rng) * std::pow(ground * ground + p.h * p.h, -p.b);
            if (tr.blocked[l]) continue;
            const double ref = ibar[l] + noise;
            const double a = s / (ref * ref);
            num += s / ref;
            lin += a * il;
            noise_tot += a * noise;
            const double sinr = s / (il + noise);
            best = std::max(best, sinr);
            sum_sinr += sinr;
        }
        tr.served = num > 0.0 && lin < num * num / t - noise_tot;
        sc[i] = best >= t;
        ideal[i] = sum_sinr >= t;
    });

    long n_mrc = 0, n_sc = 0, n_ideal = 0;
    for (std::size_t i = 0; i < res.size(); ++i) {
        n_mrc += res[i].served;
        n_sc += sc[i];
        n_ideal += ideal[i];
    }
    CombiningEstimate est{wilson_interval(n_mrc, scenario.trials), wilson_interval(n_sc, scenario.trials),
                          wilson_interval(n_ideal, scenario.trials)};
    if (trials_out) *trials_out = std::move(res);
    return est;
}

Complex empirical_cf(const std::vector<double>& samples, double omega) {
    if (samples.empty()) throw DomainError("empirical_cf: no samples");
    const simd::CisSum s = simd::kernels().sum_cis(samples.data(), samples.size(), omega);
    return Complex(s.re, s.im) / static_cast<double>(samples.size());
}

void write_trials_csv(std::ostream& os, const std::vector<TrialResult>& trials) {
    const std::size_t l = trials.empty() ? 1 : trials.front().interference.size();
    os << "trial_id";
    for (std::size_t k = 1; k <= l; ++k) os << ",I_" << k;
    for (std::size_t k = 1; k <= l; ++k) os << ",mu_" << k;
    os << ",served\n";
    os << std::setprecision(9);
    for (std::size_t i = 0; i < trials.size(); ++i) {
        os << i;
        for (double v : trials[i].interference) os << ',' << v;
        for (bool b : trials[i].blocked) os << ',' << (b ? 0 : 1);
        os << ',' << (trials[i].served ? 1 : 0) << '\n';
    }
}

int worker_threads() {
    if (const char* env = std::getenv("MMWI_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(long n, const std::function<void(long)>& fn) {
    const int threads = static_cast<int>(std::min<long>(worker_threads(), std::max(1L, n)));
    if (threads <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    const long chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                const long end = std::min(n, (t + 1) * chunk);
                for (long i = t * chunk; i < end; ++i) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace mmwi

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

#include "mmwi/stable_mixture.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mmwi/charfn.hpp"
#include "mmwi/geometry.hpp"
#include "mmwi/special_fn.hpp"

namespace mmwi {
namespace {

void require_height(const NetworkParams& p) {
    p.validate();
    if (!(p.h > 0.0)) throw DomainError("series needs h > 0");
}

// Power gains G_c^2 at the UCA sectors used by the CF.
std::vector<double> sector_gains(const ArrayConfig& config, int k_wedges) {
    if (config.n_c == 1) return {1.0};
    const int k = k_wedges > 0 ? k_wedges : default_uca_wedges(config);
    std::vector<double> g2;
    g2.reserve(static_cast<size_t>(k));
    for (double phi : wedge_angles(config, k)) {
        const double g = gain_uca(phi, config);
        g2.push_back(g * g);
    }
    return g2;
}

double moment(const std::vector<double>& g2, double z) {
    double acc = 0.0;
    for (double g : g2) acc += std::pow(g, z);
    return acc / static_cast<double>(g2.size());
}

}  // namespace

Complex xi_series(double omega, const NetworkParams& params, const ArrayConfig& config, int n_terms) {
    require_height(params);
    if (n_terms < 2) throw DomainError("xi_series: n_terms must be >= 2");
    if (omega == 0.0) return 0.0;
    if (omega < 0.0) return std::conj(xi_series(-omega, params, config, n_terms));

    const double a = params.alpha();
    const double b = params.b;
    const double beta2 = params.beta_moment(2.0);
    const auto g2 = sector_gains(config, 0);
    const double lh = std::log(params.h);
    const double lw = std::log(omega * beta2);

    static const Complex kJ[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Complex sum = 0.0;
    double last = 0.0;
    for (int i = 1; i <= n_terms; ++i) {
        const double gi = moment(g2, i);
        if (gi <= 0.0) continue;
        const double lm = -2.0 * b * (i - a) * lh - std::log(i - a) - std::lgamma(i + 1.0) + i * lw + std::log(gi);
        last = std::exp(lm);
        sum += last * kJ[i % 4];
    }
    const double gmax = *std::max_element(g2.begin(), g2.end());
    const double tau = omega * beta2 * gmax / std::pow(params.h, 2.0 * b);
    if (tau >= 1.0 && last > 1e-10 * std::abs(sum))
        throw ConvergenceError("xi_series: series not converged at this omega", last);
    return sum;
}

Complex xi_exact(double omega, const NetworkParams& params, const ArrayConfig& config, int k_wedges) {
    params.validate();
    if (omega == 0.0) return 0.0;
    const double a = params.alpha();
    if (params.h == 0.0) {
        if (!std::isinf(params.r_max)) throw DomainError("xi_exact: h = 0 closed form needs r_max = inf");
        const double ga = moment(sector_gains(config, k_wedges), a);
        const Complex v = std::tgamma(-a) * std::pow(Complex(0.0, -std::fabs(omega)), a) *
                          std::pow(params.beta_moment(2.0), a) * ga;
        return omega < 0.0 ? std::conj(v) : v;
    }
    NetworkParams unit = params;
    unit.lambda_density = 1.0;
    return uca_log_cf(omega, unit, config, k_wedges) / (kPi * a);
}

double xi_shift_coefficient(const NetworkParams& params, const ArrayConfig& config, int k_wedges) {
    require_height(params);
    const double b = params.b;
    const double g1 = moment(sector_gains(config, k_wedges), 1.0);
    const double q_lo = params.h * params.h;
    const double hi = std::isinf(params.r_max) ? 0.0 : std::pow(params.r_max * params.r_max + q_lo, 1.0 - b);
    return params.beta_moment(2.0) * g1 * (std::pow(q_lo, 1.0 - b) - hi) / (1.0 - params.alpha());
}

Complex xi_prime(double omega, const NetworkParams& params, const ArrayConfig& config, int k_wedges) {
    if (omega == 0.0) return 0.0;
    return xi_exact(omega, params, config, k_wedges) -
           Complex(0.0, xi_shift_coefficient(params, config, k_wedges) * omega);
}

double breaking_frequency(const NetworkParams& params, const ArrayConfig& config, BreakRule rule) {
    require_height(params);
    const double a = params.alpha();
    const double base = 3.0 * std::pow(params.h, 2.0 * params.b) * (3.0 - a) / ((2.0 - a) * params.beta_moment(2.0));
    if (rule == BreakRule::MeanGain) return base / wedge_gain_moment(config, 1.0, config.n_c, 0.5);
    return base * gain_moment(config, 2.0) / gain_moment(config, 3.0);
}

double xi_prime_slope(double omega, const NetworkParams& params, const ArrayConfig& config) {
    constexpr double kStep = 0.05;
    const double up = std::fabs(xi_prime(omega * std::exp(kStep), params, config).real());
    const double dn = std::fabs(xi_prime(omega * std::exp(-kStep), params, config).real());
    return (std::log(up) - std::log(dn)) / (2.0 * kStep);
}

double measured_slope_break(const NetworkParams& params, const ArrayConfig& config) {
    const double target = 0.5 * (2.0 + params.alpha());
    const double wb = breaking_frequency(params, config);
    double lo = std::log(wb / 100.0), hi = std::log(wb * 100.0);
    auto f = [&](double lw) { return xi_prime_slope(std::exp(lw), params, config) - target; };
    double flo = f(lo);
    if (flo * f(hi) > 0.0) throw ConvergenceError("measured_slope_break: no slope crossing in bracket", 0.0);
    for (int it = 0; it < 60 && hi - lo > 1e-6; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

MixtureModel make_mixture(const NetworkParams& params, const ArrayConfig& config, Transition transition,
                          BreakRule rule) {
    require_height(params);
    const double a = params.alpha();
    const double beta2 = params.beta_moment(2.0);
    const auto g2 = sector_gains(config, 0);
    MixtureModel m;
    m.omega_bar = breaking_frequency(params, config, rule);
    m.shift = xi_shift_coefficient(params, config);
    m.quadratic = std::pow(params.h, -2.0 * params.b * (2.0 - a)) * beta2 * beta2 * moment(g2, 2.0) / (2.0 * (2.0 - a));
    m.w2 = {a, kPi * params.lambda_density * std::pow(beta2, a) * moment(g2, a) / c_alpha(a)};
    m.transition = transition;
    m.alpha = a;
    return m;
}

Complex cf_mixture(double omega, const MixtureModel& model, const NetworkParams& params) {
    if (std::fabs(params.alpha() - model.alpha) > 1e-12) throw DomainError("cf_mixture: model built for other params");
    const double w = std::fabs(omega);
    const double coef = kPi * params.lambda_density * model.alpha;
    const Complex log1 = coef * Complex(-model.quadratic * w * w, model.shift * w);
    const Complex log2 = -model.w2.gamma * std::pow(w, model.alpha) * Complex(1.0, -std::tan(0.5 * kPi * model.alpha));
    Complex v;
    if (model.transition == Transition::Hard) {
        v = std::exp(w < model.omega_bar ? log1 : log2);
    } else {
        const double s = 1.0 / (1.0 + std::exp((w - model.omega_bar) / (0.1 * model.omega_bar)));
        v = std::exp(s * log1 + (1.0 - s) * log2);
    }
    return omega < 0.0 ? std::conj(v) : v;
}

}  // namespace mmwi

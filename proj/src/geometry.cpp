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

#include "mmwi/geometry.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "mmwi/special_fn.hpp"

namespace mmwi {

void NetworkParams::validate() const {
    if (!(lambda_density >= 0.0) || !std::isfinite(lambda_density))
        throw DomainError("lambda_density must be finite and >= 0");
    if (!(b >= 1.0) || !std::isfinite(b)) throw DomainError("b must be finite and >= 1");
    if (b == 1.0 && std::isinf(r_max)) throw DomainError("b = 1 needs a finite r_max");
    if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("h must be finite and >= 0");
    if (!(r_max > 0.0)) throw DomainError("r_max must be > 0");
    if (!(threshold_t > 0.0) || !std::isfinite(threshold_t)) throw DomainError("threshold_t must be > 0");
}

void ArrayConfig::validate() const {
    if (n_c < 1) throw DomainError("n_c must be >= 1");
    if (n_v < 1) throw DomainError("n_v must be >= 1");
    if (!std::isfinite(phi0) || !std::isfinite(theta0)) throw DomainError("pointing angles must be finite");
    if (theta0 < 0.0 || theta0 > 0.5 * kPi) throw DomainError("theta0 must lie in [0, pi/2]");
}

void PathModel::validate() const {
    if (l_paths < 1) throw DomainError("l_paths must be >= 1");
    if (!(ring_radius_d >= 0.0) || !std::isfinite(ring_radius_d)) throw DomainError("ring_radius_d must be >= 0");
    if (!(p_block >= 0.0 && p_block <= 1.0)) throw DomainError("p_block must lie in [0,1]");
    if (!(noise_power >= 0.0) || !std::isfinite(noise_power)) throw DomainError("noise_power must be >= 0");
}

double gain_uca(double phi, const ArrayConfig& config) {
    if (config.n_c == 1) return 1.0;
    // chord |e^{j phi} - e^{j phi0}| = 2 |sin((phi - phi0)/2)|
    const double chord = 2.0 * std::fabs(std::sin(0.5 * (phi - config.phi0)));
    return bessel_j0(0.5 * config.n_c * chord);
}

double gain_ula(double theta, const ArrayConfig& config) {
    if (config.n_v == 1) return 1.0;
    const double u = 0.5 * kPi * (std::sin(theta) - std::sin(config.theta0));
    const double den = config.n_v * std::sin(u);
    if (std::fabs(den) < 1e-300 || std::fabs(u) < 1e-12) return 1.0;
    return std::sin(config.n_v * u) / den;
}

double gain_ucyla(double r, double phi, const NetworkParams& params, const ArrayConfig& config) {
    return gain_uca(phi, config) * gain_ula(elevation(r, params.h), config);
}

double gain_moment(const ArrayConfig& config, double z, int quad_points) {
    if (!(z > 0.0)) throw DomainError("gain_moment: z must be > 0");
    if (quad_points < 1) throw DomainError("gain_moment: quad_points must be >= 1");
    if (config.n_c == 1) return 1.0;
    // nodes are relative to phi0, so the value depends on (n_c, z, nodes) only
    using Key = std::tuple<int, double, int>;
    static std::mutex mu;
    static std::map<Key, double> cache;
    const Key key{config.n_c, z, quad_points};
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const double v = wedge_gain_moment(config, z, quad_points, 0.0);
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 256) cache.clear();
    cache.emplace(key, v);
    return v;
}

std::vector<double> wedge_angles(const ArrayConfig& config, int k_wedges, double offset) {
    if (k_wedges < 1) throw DomainError("k_wedges must be >= 1");
    std::vector<double> out(static_cast<size_t>(k_wedges));
    for (int k = 0; k < k_wedges; ++k) out[k] = config.phi0 + 2.0 * kPi * (k + offset) / k_wedges;
    return out;
}

double wedge_gain_moment(const ArrayConfig& config, double z, int k_wedges, double offset) {
    if (config.n_c == 1) return 1.0;
    double acc = 0.0;
    for (double phi : wedge_angles(config, k_wedges, offset)) {
        const double g = gain_uca(phi, config);
        const double g2 = g * g;
        acc += std::pow(g2, z);
    }
    return acc / k_wedges;
}

double nlos_mean_distance(double r_direct, double d, int quad_points) {
    if (!(r_direct >= 0.0) || !(d >= 0.0)) throw DomainError("nlos_mean_distance: negative length");
    if (d == 0.0) return r_direct;
    // midpoint rule on the chord form sqrt((r-d)^2 + 4 r d sin^2(eta/2))
    double acc = 0.0;
    for (int i = 0; i < quad_points; ++i) {
        const double eta = 2.0 * kPi * (i + 0.5) / quad_points;
        const double s = std::sin(0.5 * eta);
        acc += std::sqrt((r_direct - d) * (r_direct - d) + 4.0 * r_direct * d * s * s);
    }
    return d + acc / quad_points;
}

}  // namespace mmwi

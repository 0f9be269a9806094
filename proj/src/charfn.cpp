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

#include "mmwi/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "mmwi/geometry.hpp"
#include "mmwi/quadrature.hpp"
#include "mmwi/simd.hpp"
#include "mmwi/special_fn.hpp"

namespace mmwi {
namespace {

constexpr double kTinyOmega = 1e-9;
constexpr double kCampbellRelTol = 1e-9;

Complex hermitian(double omega, Complex positive) { return omega < 0.0 ? std::conj(positive) : positive; }

// Cell of the wedge/ring partition: weight is the azimuth fraction, g the power
// gain (beta^2 folded in), [q_lo, q_hi] the range of r^2 + h^2 it covers.
struct Cell {
    double weight;
    double g;
    double q_lo_b;  // q_lo^b
    double q_hi_b;  // q_hi^b, inf allowed
    double lo_scale = 0.0;  // q_lo_b^{alpha-1}
    double hi_scale = 0.0;
};

struct RingSum {
    double coef = 0.0;  // pi lambda alpha times the fading ratio
    double alpha = 0.5;
    std::shared_ptr<const StableKernelTable> kernel;
    std::vector<Cell> cells;

    // (wg)^alpha A(wg/Q) = -j wg Q^{alpha-1} g(wg/Q) on the series range, no powers needed
    Complex end_term(double wg, double qb, double scale) const {
        if (qb == 0.0) return std::pow(wg, alpha) * (*kernel)(kInf);
        if (std::isinf(qb)) return 0.0;
        const double tau = wg / qb;
        if (tau <= StableKernelTable::switch_point()) return Complex(0.0, -wg * scale) * kernel->entire(tau);
        return std::pow(wg, alpha) * (*kernel)(tau);
    }

    // log Psi(w) for w > 0
    Complex exponent(double w) const {
        if (kernel->alpha() == 1.0) return exponent_unit(w);
        Complex acc = 0.0;
        for (const Cell& c : cells) {
            if (c.g == 0.0) continue;
            const double wg = w * c.g;
            acc += c.weight * (end_term(wg, c.q_lo_b, c.lo_scale) - end_term(wg, c.q_hi_b, c.hi_scale));
        }
        return -coef * acc;
    }

    Complex exponent_unit(double w) const {
        Complex acc = 0.0;
        for (const Cell& c : cells) {
            if (c.g == 0.0) continue;
            const double wg = w * c.g;
            const double t_hi = c.q_lo_b == 0.0 ? kInf : wg / c.q_lo_b;
            const double t_lo = std::isinf(c.q_hi_b) ? 0.0 : wg / c.q_hi_b;
            acc += c.weight * wg * kernel->ring(t_lo, t_hi);
        }
        return -coef * acc;
    }
};

struct Sector {
    double g2;
    double weight;
};

// Trapezoid sectors phi0 + 2 pi k/K; k and K-k share a gain by symmetry about phi0.
std::vector<Sector> uca_sectors(const ArrayConfig& config, int k_wedges) {
    if (config.n_c == 1) return {{1.0, 1.0}};
    std::vector<Sector> out;
    for (int k = 0; k <= k_wedges / 2; ++k) {
        const double g = gain_uca(config.phi0 + 2.0 * kPi * k / k_wedges, config);
        const bool single = k == 0 || (k_wedges % 2 == 0 && k == k_wedges / 2);
        out.push_back({g * g, (single ? 1.0 : 2.0) / k_wedges});
    }
    return out;
}

double fading_ratio(const NetworkParams& p) {
    const double a = p.alpha();
    return p.beta_moment(2.0 * a) / std::pow(p.beta_moment(2.0), a);
}

// Single annulus q in [q_lo, q_hi] with the given sectors and elevation power gain.
void add_ring(RingSum& rs, const std::vector<Sector>& sectors, double gv2, double beta2, double b, double q_lo,
              double q_hi) {
    const double lo_b = std::pow(q_lo, b);
    const double hi_b = std::isinf(q_hi) ? kInf : std::pow(q_hi, b);
    const double lo_s = lo_b > 0.0 ? std::pow(lo_b, rs.alpha - 1.0) : 0.0;
    const double hi_s = std::isinf(hi_b) ? 0.0 : std::pow(hi_b, rs.alpha - 1.0);
    for (const Sector& s : sectors) rs.cells.push_back({s.weight, s.g2 * gv2 * beta2, lo_b, hi_b, lo_s, hi_s});
}

RingSum ring_sum_base(const NetworkParams& p) {
    RingSum rs;
    rs.alpha = p.alpha();
    rs.coef = kPi * p.lambda_density * rs.alpha * fading_ratio(p);
    rs.kernel = std::make_shared<const StableKernelTable>(rs.alpha);
    return rs;
}

double q_outer(const NetworkParams& p, double extra) {
    return std::isinf(p.r_max) ? kInf : p.r_max * p.r_max + p.h * p.h + extra;
}

RingSum uca_ring_sum(const NetworkParams& p, const ArrayConfig& config, int k_wedges, double extra_q = 0.0) {
    RingSum rs = ring_sum_base(p);
    add_ring(rs, uca_sectors(config, k_wedges), 1.0, p.beta_moment(2.0), p.b, p.h * p.h + extra_q,
             q_outer(p, extra_q));
    return rs;
}

RingSum ucyla_ring_sum(const NetworkParams& p, const ArrayConfig& config, const DiscretizationPlan& plan) {
    RingSum rs = ring_sum_base(p);
    const auto sectors = uca_sectors(config, plan.k_wedges);
    for (int m = 0; m < plan.m_rings; ++m) {
        double lo = plan.ring_edges[m], hi = plan.ring_edges[m + 1];
        if (lo >= p.r_max) break;
        hi = std::min(hi, p.r_max);
        const double gv = gain_ula(elevation(plan.ring_centers[m], p.h), config);
        add_ring(rs, sectors, gv * gv, p.beta_moment(2.0), p.b, lo * lo + p.h * p.h,
                 std::isinf(hi) ? kInf : hi * hi + p.h * p.h);
    }
    return rs;
}

// Direct Campbell exponent -lambda int E_phi[1 - e^{j w xi}] dA for reflection
// points at ground range r whose path has squared length q = (r + d)^2 + h^2.
struct CampbellField {
    double lambda = 0.0, b = 1.3, h = 0.0, d = 0.0, r_max = kInf, beta2 = 1.0;
    std::vector<double> table;  // G_c^2 samples over [0, 2pi); empty = isotropic
    ArrayConfig config;
    bool elevation_gain = false;

    Complex mean_one_minus_cis(double c) const {
        if (table.empty()) return Complex(1.0 - std::cos(c), -std::sin(c));
        const simd::CisSum s = simd::kernels().sum_one_minus_cis(table.data(), table.size(), c);
        const double n = static_cast<double>(table.size());
        return Complex(s.re / n, -s.im / n);
    }

    Complex exponent(double w) const {
        const double q0 = d * d + h * h;
        if (!(q0 > 0.0)) throw DomainError("Campbell form needs h > 0 or d > 0");
        const double h2 = h * h;
        // integrand per unit q: E[1 - e^{j w xi}] r / (r + d)
        auto per_q = [&](double q) -> Complex {
            const double rd = std::sqrt(std::max(q - h2, 0.0));
            const double r = std::max(rd - d, 0.0);
            const double frac = rd > 0.0 ? r / rd : (d > 0.0 ? 0.0 : 1.0);
            double gv2 = 1.0;
            if (elevation_gain) {
                const double gv = gain_ula(elevation(r, h), config);
                gv2 = gv * gv;
            }
            return mean_one_minus_cis(w * beta2 * gv2 * std::pow(q, -b)) * frac;
        };
        const double q_r = std::isinf(r_max) ? kInf : (r_max + d) * (r_max + d) + h2;
        Complex integral;
        if (b > 1.0) {
            // v = q^{1-b}: dq = q / ((b-1) v) dv, bounded integrand at v -> 0
            const double v0 = std::pow(q0, 1.0 - b);
            const double vr = std::isinf(q_r) ? 0.0 : std::pow(q_r, 1.0 - b);
            auto f = [&](double v) -> Complex {
                if (v <= 0.0) return 0.0;
                const double q = std::pow(v, -1.0 / (b - 1.0));
                return per_q(q) * (q / ((b - 1.0) * v));
            };
            integral = quad::integrate<Complex>(f, vr, v0, 1e-300, kCampbellRelTol).value;
        } else {
            if (std::isinf(q_r)) throw DomainError("b = 1 needs a finite r_max");
            auto f = [&](double s) -> Complex {
                const double q = std::exp(s);
                return per_q(q) * q;
            };
            integral = quad::integrate<Complex>(f, std::log(q0), std::log(q_r), 1e-300, kCampbellRelTol).value;
        }
        return -kPi * lambda * integral;
    }
};

CampbellField campbell_field(const NetworkParams& p, const ArrayConfig& config, double d) {
    CampbellField f;
    f.lambda = p.lambda_density;
    f.b = p.b;
    f.h = p.h;
    f.d = d;
    f.r_max = p.r_max;
    f.beta2 = p.beta_moment(2.0);
    f.config = config;
    f.elevation_gain = config.n_v > 1;
    if (config.n_c > 1) {
        const int n = std::max(4096, 32 * config.n_c);
        f.table.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double g = gain_uca(config.phi0 + 2.0 * kPi * i / n, config);
            f.table[i] = g * g;
        }
    }
    return f;
}

// Renormalized reflected-path factor Psi_2 with its omega -> 0 constant removed.
// For a = alpha/2 the factor is exp(-(pi lambda d / C_alpha) / (Gamma(-a) cos(pi a / 2))
// * sum_k w_k (|w| g_k)^a A_a(|w| g_k / (h^2 + d^2)^b)).
struct NlosRenormFactor {
    double coef = 0.0;
    double a = 0.25;
    std::shared_ptr<const StableKernelTable> kernel;
    double mu = 0.0;  // 1 / (h^2 + d^2)^b
    std::vector<Sector> sectors;
    double beta2 = 1.0;
    double deviation = 0.0;  // log of the raw Psi_2(0+)

    Complex exponent(double w) const {
        Complex acc = 0.0;
        for (const Sector& s : sectors) {
            const double wg = w * s.g2 * beta2;
            if (wg == 0.0) continue;
            acc += s.weight * std::pow(wg, a) * (*kernel)(wg * mu);
        }
        return -coef * acc;
    }
};

NlosRenormFactor nlos_renorm_factor(const NetworkParams& p, const ArrayConfig& config, double d, int k_wedges) {
    NlosRenormFactor f;
    const double alpha = p.alpha();
    f.a = 0.5 * alpha;
    f.kernel = std::make_shared<const StableKernelTable>(f.a);
    const double q = p.h * p.h + d * d;
    f.mu = std::pow(q, -p.b);
    f.beta2 = p.beta_moment(2.0);
    f.sectors = uca_sectors(config, k_wedges);
    const double base = kPi * p.lambda_density * d / c_alpha(alpha);
    f.coef = base / (std::tgamma(-f.a) * std::cos(0.5 * kPi * f.a));
    // raw constant: base sqrt(q) / (Gamma(1-a) cos(pi a/2)) per lit sector, plus 2 pi lambda d sqrt(q)
    double gsum = 0.0;
    for (const Sector& s : f.sectors)
        if (s.g2 > 0.0) gsum += s.weight;
    f.deviation = base * std::sqrt(q) * gsum / (std::tgamma(1.0 - f.a) * std::cos(0.5 * kPi * f.a)) +
                  2.0 * kPi * p.lambda_density * d * std::sqrt(q);
    return f;
}

void check_ring_params(const NetworkParams& params) {
    params.validate();
    if (params.b == 1.0 && std::isinf(params.r_max)) throw DomainError("b = 1 needs a finite r_max");
}

double scale_hint(const NetworkParams& p, const ArrayConfig& config) {
    if (p.lambda_density == 0.0) return 1.0;
    if (p.b > 1.0 && p.h > 0.0) {
        const double m = mean_interference(p, config);
        if (m > 0.0 && std::isfinite(m)) return m;
    }
    if (p.b > 1.0 && config.n_v == 1) {
        const StableParams s = cf_stable_limit(p, config);
        if (s.gamma > 0.0) return std::pow(s.gamma, 1.0 / s.alpha);
    }
    return 1.0;
}

}  // namespace

int default_uca_wedges(const ArrayConfig& config) { return config.n_c == 1 ? 1 : 8 * config.n_c; }

DiscretizationPlan make_plan(const NetworkParams& params, const ArrayConfig& config, int k_wedges, int m_rings) {
    DiscretizationPlan plan;
    plan.k_wedges = k_wedges > 0 ? k_wedges : config.n_c;
    plan.m_rings = m_rings > 0 ? m_rings : std::max(1, config.n_v / 2);
    const int m = plan.m_rings;
    plan.ring_edges.resize(static_cast<size_t>(m + 1));
    plan.ring_centers.resize(static_cast<size_t>(m));
    for (int i = 0; i <= m; ++i) plan.ring_edges[i] = i == m ? kInf : params.h * std::tan(0.5 * kPi * i / m);
    for (int i = 0; i < m; ++i) plan.ring_centers[i] = params.h * std::tan(0.5 * kPi * (i + 0.5) / m);
    return plan;
}

Complex cf_point(double omega, const NetworkParams& params) {
    return cf_uca(omega, params, ArrayConfig{}, 1);
}

Complex cf_uca(double omega, const NetworkParams& params, const ArrayConfig& config, int k_wedges) {
    check_ring_params(params);
    if (std::fabs(omega) < kTinyOmega || params.lambda_density == 0.0) return 1.0;
    const int k = k_wedges > 0 ? k_wedges : default_uca_wedges(config);
    return hermitian(omega, std::exp(uca_ring_sum(params, config, k).exponent(std::fabs(omega))));
}

Complex uca_log_cf(double omega, const NetworkParams& params, const ArrayConfig& config, int k_wedges) {
    check_ring_params(params);
    if (omega == 0.0) return 0.0;
    const int k = k_wedges > 0 ? k_wedges : default_uca_wedges(config);
    const Complex e = uca_ring_sum(params, config, k).exponent(std::fabs(omega));
    return omega < 0.0 ? std::conj(e) : e;
}

Complex cf_ucyla(double omega, const NetworkParams& params, const ArrayConfig& config, const DiscretizationPlan& plan,
                 UcylaMethod method) {
    return make_ucyla_cf(params, config, plan, method)(omega);
}

StableParams cf_stable_limit(const NetworkParams& params, const ArrayConfig& config) {
    const double a = params.alpha();
    return {a, kPi * params.lambda_density * params.beta_moment(2.0 * a) / c_alpha(a) * gain_moment(config, a)};
}

Complex cf_nlos_augmented(double omega, const NetworkParams& params, const ArrayConfig& config, const PathModel& path,
                          NlosForm form) {
    return make_nlos_cf(params, config, path, form)(omega);
}

double mean_interference(const NetworkParams& params, const ArrayConfig& config) {
    return mean_nlos_interference(params, config, 0.0);
}

double mean_nlos_interference(const NetworkParams& params, const ArrayConfig& config, double d) {
    params.validate();
    if (!(params.b > 1.0)) throw DomainError("mean interference diverges for b <= 1");
    if (!(params.h > 0.0 || d > 0.0)) throw DomainError("mean interference diverges for h = 0");
    const double b = params.b;
    const double base = params.lambda_density * params.beta_moment(2.0) * gain_moment(config, 1.0);
    if (d == 0.0 && config.n_v == 1) {
        const double q0 = params.h * params.h;
        const double tail = std::isinf(params.r_max) ? 0.0 : std::pow(params.r_max * params.r_max + q0, 1.0 - b);
        return kPi * base * (std::pow(q0, 1.0 - b) - tail) / (b - 1.0);
    }
    // 2 pi int r G_v^2 ((r + d)^2 + h^2)^{-b} dr over v = q^{1-b}
    const double h2 = params.h * params.h;
    const double q0 = d * d + h2;
    const double qr = std::isinf(params.r_max) ? kInf : (params.r_max + d) * (params.r_max + d) + h2;
    auto f = [&](double v) -> double {
        if (v <= 0.0) return 0.0;
        const double q = std::pow(v, -1.0 / (b - 1.0));
        const double rd = std::sqrt(std::max(q - h2, 0.0));
        const double r = std::max(rd - d, 0.0);
        const double frac = rd > 0.0 ? r / rd : (d > 0.0 ? 0.0 : 1.0);
        const double gv = gain_ula(elevation(r, params.h), config);
        // q^{-b} q / ((b-1) v) = 1 / (b-1)
        return gv * gv * frac / (b - 1.0);
    };
    const double v0 = std::pow(q0, 1.0 - b), vr = std::isinf(qr) ? 0.0 : std::pow(qr, 1.0 - b);
    return kPi * base * quad::integrate<double>(f, vr, v0, 1e-300, 1e-10).value;
}

double received_power(double r0, const NetworkParams& params, double fc_hz, double c_mps) {
    const double beta0 = 4.0 * kPi * fc_hz / c_mps;
    return beta0 * beta0 / std::pow(r0 * r0 + params.h * params.h, params.b);
}

CharFn make_point_cf(const NetworkParams& params) { return make_uca_cf(params, ArrayConfig{}, 1); }

CharFn make_uca_cf(const NetworkParams& params, const ArrayConfig& config, int k_wedges) {
    check_ring_params(params);
    config.validate();
    const int k = k_wedges > 0 ? k_wedges : default_uca_wedges(config);
    RingSum rs = uca_ring_sum(params, config, k);
    const bool empty = params.lambda_density == 0.0;
    CfMetadata meta{config.n_c == 1 ? "point" : "uca", k, 1, params.r_max, 0.0};
    return CharFn(
        [rs = std::move(rs), empty](double w) -> Complex {
            if (empty || std::fabs(w) < kTinyOmega) return 1.0;
            return hermitian(w, std::exp(rs.exponent(std::fabs(w))));
        },
        meta, true, scale_hint(params, config));
}

CharFn make_ucyla_cf(const NetworkParams& params, const ArrayConfig& config, const DiscretizationPlan& plan,
                     UcylaMethod method) {
    check_ring_params(params);
    config.validate();
    if (!(params.h > 0.0)) throw DomainError("UcylA CF needs h > 0");
    if (plan.m_rings < 1 || plan.ring_edges.size() != static_cast<size_t>(plan.m_rings + 1) ||
        plan.ring_centers.size() != static_cast<size_t>(plan.m_rings))
        throw DomainError("discretization plan inconsistent");
    const bool empty = params.lambda_density == 0.0;
    CfMetadata meta{"ucyla", plan.k_wedges, plan.m_rings, params.r_max, 0.0};
    if (method == UcylaMethod::Discrete) {
        RingSum rs = ucyla_ring_sum(params, config, plan);
        return CharFn(
            [rs = std::move(rs), empty](double w) -> Complex {
                if (empty || std::fabs(w) < kTinyOmega) return 1.0;
                return hermitian(w, std::exp(rs.exponent(std::fabs(w))));
            },
            meta, true, scale_hint(params, config));
    }
    meta.kind = "ucyla-quadrature";
    CampbellField field = campbell_field(params, config, 0.0);
    return CharFn(
        [field = std::move(field), empty](double w) -> Complex {
            if (empty || std::fabs(w) < kTinyOmega) return 1.0;
            return hermitian(w, std::exp(field.exponent(std::fabs(w))));
        },
        meta, true, scale_hint(params, config));
}

CharFn make_stable_cf(const StableParams& sp) {
    return CharFn([sp](double w) { return stable_cf(w, sp); }, CfMetadata{"stable"}, true,
                  sp.gamma > 0.0 ? std::pow(sp.gamma, 1.0 / sp.alpha) : 1.0);
}

CharFn make_nlos_cf(const NetworkParams& params, const ArrayConfig& config, const PathModel& path, NlosForm form) {
    check_ring_params(params);
    config.validate();
    path.validate();
    const int extra = path.l_paths - 1;
    const double d = path.ring_radius_d;
    if (extra == 0 || params.lambda_density == 0.0) {
        if (config.n_v > 1) return make_ucyla_cf(params, config, make_plan(params, config));
        return make_uca_cf(params, config);
    }
    CharFn los = config.n_v > 1 ? make_ucyla_cf(params, config, make_plan(params, config)) : make_uca_cf(params, config);
    double scale = los.scale();
    if (params.b > 1.0) scale += extra * mean_nlos_interference(params, config, d);

    if (form == NlosForm::Displaced || config.n_v > 1) {
        CampbellField field = campbell_field(params, config, d);
        CfMetadata meta{"nlos-displaced", los.metadata().k_wedges, los.metadata().m_rings, params.r_max, 0.0};
        return CharFn(
            [los, field = std::move(field), extra](double w) -> Complex {
                if (std::fabs(w) < kTinyOmega) return 1.0;
                const double aw = std::fabs(w);
                return hermitian(w, los(aw) * std::exp(static_cast<double>(extra) * field.exponent(aw)));
            },
            meta, true, scale);
    }
    if (d == 0.0) {
        CfMetadata meta{"nlos-renormalized", los.metadata().k_wedges, 1, params.r_max, 0.0};
        return CharFn([los, extra](double w) { return std::pow(los(w), extra + 1); }, meta, true, scale);
    }
    const int k = default_uca_wedges(config);
    RingSum psi1 = uca_ring_sum(params, config, k, d * d);
    NlosRenormFactor psi2 = nlos_renorm_factor(params, config, d, k);
    CfMetadata meta{"nlos-renormalized", k, 1, params.r_max, psi2.deviation};
    return CharFn(
        [los, psi1 = std::move(psi1), psi2 = std::move(psi2), extra](double w) -> Complex {
            if (std::fabs(w) < kTinyOmega) return 1.0;
            const double aw = std::fabs(w);
            const Complex e = psi1.exponent(aw) + psi2.exponent(aw);
            return hermitian(w, los(aw) * std::exp(static_cast<double>(extra) * e));
        },
        meta, true, scale);
}

CharFn make_interference_cf(const NetworkParams& params, const ArrayConfig& config, const PathModel& path) {
    return make_nlos_cf(params, config, path, NlosForm::Renormalized);
}

CharFn make_gaussian_cf(double mu, double sigma) {
    return CharFn([mu, sigma](double w) { return std::exp(Complex(-0.5 * sigma * sigma * w * w, mu * w)); },
                  CfMetadata{"gaussian"}, false, sigma + std::fabs(mu));
}

CharFn cf_scale_product(const std::vector<CharFn>& cfs, const std::vector<double>& a_weights) {
    if (cfs.size() != a_weights.size()) throw DomainError("cf_scale_product: list sizes differ");
    bool nonneg = true;
    double scale = 0.0;
    for (size_t i = 0; i < cfs.size(); ++i) {
        if (!(a_weights[i] >= 0.0)) throw DomainError("cf_scale_product: weights must be >= 0");
        nonneg = nonneg && cfs[i].nonnegative();
        scale += a_weights[i] * cfs[i].scale();
    }
    CfMetadata meta{"scale-product"};
    return CharFn(
        [cfs, a_weights](double w) -> Complex {
            Complex acc = 1.0;
            for (size_t i = 0; i < cfs.size(); ++i)
                if (a_weights[i] != 0.0) acc *= cfs[i](a_weights[i] * w);
            return acc;
        },
        meta, nonneg, scale > 0.0 ? scale : 1.0);
}

}  // namespace mmwi

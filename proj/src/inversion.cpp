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

#include "mmwi/inversion.hpp"

#include <algorithm>
#include <cmath>

#include "mmwi/quadrature.hpp"

namespace mmwi {
namespace detail {
namespace {

constexpr double kStartStep = 0.5;
constexpr int kMaxLevels = 11;

// One trapezoid level of the Ooura-Mori transform u = M phi(t), M = pi/h,
// phi(t) = t / (1 - exp(-K(t))), K(t) = 2t + a (1 - e^{-t}) + b (e^t - 1).
double de_level(const std::function<double(double)>& g, bool cosine, double h, int budget, int* used) {
    const double m = kPi / h;
    const double beta = 0.25;
    const double alpha = beta / std::sqrt(1.0 + m * std::log1p(m) / (4.0 * kPi));
    const double shift = cosine ? -0.5 : 0.0;
    const double c0 = 2.0 + alpha + beta;
    double sum = 0.0;
    int nodes = 0;

    auto term = [&](long k, bool* negligible) -> double {
        const double t = (static_cast<double>(k) + shift) * h;
        const double kt = 2.0 * t + alpha * (-std::expm1(-t)) + beta * std::expm1(t);
        *negligible = false;
        if (kt < -700.0) {
            *negligible = true;
            return 0.0;
        }
        double phi, dphi, u, osc;
        if (t == 0.0) {
            phi = 1.0 / c0;
            dphi = 0.5 - 0.5 * (beta - alpha) / (c0 * c0);
            u = m * phi;
            osc = cosine ? std::cos(u) : std::sin(u);
        } else {
            const double em = std::exp(-kt);
            const double den = -std::expm1(-kt);
            const double dk = 2.0 + alpha * std::exp(-t) + beta * std::exp(t);
            phi = t / den;
            dphi = (den - t * em * dk) / (den * den);
            u = m * phi;
            if (t > 0.0) {
                // sin/cos(M phi) = (-1)^k sin(M t em / den): exact near the zeros
                const double s = std::sin(m * t * em / den);
                osc = (k % 2 == 0) ? s : -s;
            } else {
                osc = cosine ? std::cos(u) : std::sin(u);
            }
        }
        ++nodes;
        if (osc == 0.0 || dphi == 0.0) return 0.0;
        return g(u) * osc * dphi;
    };

    int quiet = 0;
    for (long k = cosine ? 1 : 0;; ++k) {
        bool neg;
        const double v = term(k, &neg);
        sum += v;
        quiet = (std::fabs(v) <= 1e-17 * std::fabs(sum) || v == 0.0) ? quiet + 1 : 0;
        if (quiet >= 4 && (k + shift) * h > 1.0) break;
        if (nodes > budget) throw ConvergenceError("Fourier quadrature: node budget exceeded", kInf);
    }
    quiet = 0;
    for (long k = cosine ? 0 : -1;; --k) {
        bool neg;
        const double v = term(k, &neg);
        sum += v;
        if (neg) break;
        quiet = (std::fabs(v) <= 1e-17 * std::fabs(sum) || v == 0.0) ? quiet + 1 : 0;
        if (quiet >= 4 && (k + shift) * h < -1.0) break;
        if (nodes > budget) throw ConvergenceError("Fourier quadrature: node budget exceeded", kInf);
    }
    *used = nodes;
    return kPi * sum;
}

}  // namespace

Quadrature fourier_de(const std::function<double(double)>& g, bool cosine, double abs_tol,
                      const InversionSettings& s) {
    int used = 0;
    if (!s.refine) return {de_level(g, cosine, kStartStep / 64.0, s.n_points, &used), 0.0};
    double h = kStartStep;
    double prev = de_level(g, cosine, h, s.n_points, &used);
    double err = kInf;
    for (int level = 1; level < kMaxLevels; ++level) {
        h *= 0.5;
        const double cur = de_level(g, cosine, h, s.n_points, &used);
        err = std::fabs(cur - prev);
        prev = cur;
        if (err <= abs_tol) return {cur, err};
    }
    throw ConvergenceError("Fourier quadrature: step halving did not converge", err);
}

}  // namespace detail

namespace {

double capped(const CharFn& cf, double w, const InversionSettings& s, bool real_part) {
    if (s.omega_max > 0.0 && w > s.omega_max) return 0.0;
    const Complex v = cf(w);
    return real_part ? v.real() : v.imag();
}

// int_0^inf f(w) dw for smooth decaying f, w = (t / (1 - t)) / scale
double half_line(const std::function<double(double)>& f, double scale, const InversionSettings& s, double abs_tol) {
    const double lo = s.min_omega * scale / (1.0 + s.min_omega * scale);
    auto mapped = [&](double t) -> double {
        if (t >= 1.0) return 0.0;
        const double w = t / ((1.0 - t) * scale);
        return f(w) / (scale * (1.0 - t) * (1.0 - t));
    };
    return quad::integrate<double>(mapped, lo, 1.0, abs_tol, 1e-12, 20000).value;
}

void check_settings(const InversionSettings& s) {
    if (!(s.tol > 0.0)) throw DomainError("inversion: tol must be > 0");
    if (s.n_points < 64) throw DomainError("inversion: n_points must be >= 64");
    if (!(s.min_omega > 0.0)) throw DomainError("inversion: min_omega must be > 0");
    if (s.omega_max != 0.0 && !(s.omega_max > s.min_omega)) throw DomainError("inversion: need min_omega < omega_max");
}

double raw_cdf(const CharFn& cf, double x, const InversionSettings& s) {
    const double inner = 0.1 * s.tol;
    if (cf.nonnegative()) {
        if (x <= 0.0) return 0.0;
        if (x > cf.scale()) {
            // 1 - F = (2/pi) int (1 - Re Psi(w)) sin(wx) / w dw
            auto g = [&](double u) { return (1.0 - capped(cf, u / x, s, true)) / u; };
            return 1.0 - 2.0 / kPi * detail::fourier_de(g, false, 0.5 * kPi * inner, s).value;
        }
        auto g = [&](double u) { return capped(cf, u / x, s, true) / u; };
        return 2.0 / kPi * detail::fourier_de(g, false, 0.5 * kPi * inner, s).value;
    }
    if (x == 0.0) {
        auto f = [&](double w) { return capped(cf, w, s, false) / w; };
        return 0.5 - half_line(f, cf.scale(), s, kPi * inner) / kPi;
    }
    const double ax = std::fabs(x);
    auto gs = [&](double u) { return capped(cf, u / ax, s, true) / u; };
    auto gc = [&](double u) { return capped(cf, u / ax, s, false) / u; };
    const double is = detail::fourier_de(gs, false, kPi * inner, s).value;
    const double ic = detail::fourier_de(gc, true, kPi * inner, s).value;
    return 0.5 + (x > 0.0 ? is : -is) / kPi - ic / kPi;
}

}  // namespace

double cdf_from_cf(const CharFn& cf, double x, const InversionSettings& settings) {
    check_settings(settings);
    return std::clamp(raw_cdf(cf, x, settings), 0.0, 1.0);
}

double pdf_from_cf(const CharFn& cf, double x, const InversionSettings& s) {
    check_settings(s);
    if (std::abs(cf(1e8 / cf.scale())) > 0.5)
        throw DomainError("pdf_from_cf: characteristic function does not decay (degenerate law)");
    const double inner = 0.1 * s.tol;
    if (cf.nonnegative()) {
        if (x < 0.0) return 0.0;
        if (x == 0.0) {
            auto f = [&](double w) { return capped(cf, w, s, true); };
            return std::max(0.0, 2.0 / kPi * half_line(f, cf.scale(), s, inner));
        }
        auto g = [&](double u) { return capped(cf, u / x, s, true) / x; };
        return std::max(0.0, 2.0 / kPi * detail::fourier_de(g, true, inner, s).value);
    }
    if (x == 0.0) {
        auto f = [&](double w) { return capped(cf, w, s, true); };
        return std::max(0.0, half_line(f, cf.scale(), s, inner) / kPi);
    }
    // f(x) = (1/pi) int Re Psi cos(wx) + Im Psi sin(wx) dw
    const double ax = std::fabs(x);
    auto gc = [&](double u) { return capped(cf, u / ax, s, true) / ax; };
    auto gs = [&](double u) { return capped(cf, u / ax, s, false) / ax; };
    const double ic = detail::fourier_de(gc, true, inner, s).value;
    const double is = detail::fourier_de(gs, false, inner, s).value;
    return std::max(0.0, (ic + (x > 0.0 ? is : -is)) / kPi);
}

double quantile_from_cf(const CharFn& cf, double p, const InversionSettings& s) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile_from_cf: p must lie in (0,1)");
    check_settings(s);
    const double scale = cf.scale();
    double lo = cf.nonnegative() ? 0.0 : -scale, hi = scale;
    int doublings = 0;
    while (cdf_from_cf(cf, hi, s) < p) {
        lo = hi;
        hi = hi > 0.0 ? 2.0 * hi : scale;
        if (++doublings > 200) throw ConvergenceError("quantile_from_cf: upper bracket not found", hi);
    }
    if (!cf.nonnegative()) {
        while (cdf_from_cf(cf, lo, s) > p) {
            hi = lo;
            lo = lo < 0.0 ? 2.0 * lo : -scale;
            if (++doublings > 200) throw ConvergenceError("quantile_from_cf: lower bracket not found", lo);
        }
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = cdf_from_cf(cf, mid, s);
        if (std::fabs(f - p) < 0.5 * s.tol || hi - lo <= 1e-14 * std::max(std::fabs(lo), std::fabs(hi)))
            return mid;
        (f < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> cdf_grid(const CharFn& cf, const std::vector<double>& xs, const InversionSettings& s) {
    if (!std::is_sorted(xs.begin(), xs.end())) throw DomainError("cdf_grid: grid must be sorted");
    std::vector<double> v(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) v[i] = cdf_from_cf(cf, xs[i], s);
    // pool adjacent violators
    std::vector<double> level;
    std::vector<size_t> count;
    for (double y : v) {
        level.push_back(y);
        count.push_back(1);
        while (level.size() > 1 && level[level.size() - 2] > level.back()) {
            const size_t n = count.back() + count[count.size() - 2];
            const double m = (level.back() * count.back() + level[level.size() - 2] * count[count.size() - 2]) / n;
            level.pop_back();
            count.pop_back();
            level.back() = m;
            count.back() = n;
        }
    }
    size_t k = 0;
    for (size_t b = 0; b < level.size(); ++b)
        for (size_t j = 0; j < count[b]; ++j) v[k++] = level[b];
    return v;
}

}  // namespace mmwi

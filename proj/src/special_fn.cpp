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

#include "mmwi/special_fn.hpp"

#include <cmath>
#include <limits>

namespace mmwi {
namespace {

using LComplex = std::complex<long double>;

constexpr int kMaxTerms = 500;
constexpr long double kSeriesTol = 1e-17L;
// The kernel tail is small relative to the kernel, so its asymptotic is usable earlier.
constexpr double kKernelSwitch = 20.0;

bool is_unit_alpha(double alpha) { return std::fabs(alpha - 1.0) < 1e-12; }

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("stable kernel: alpha must lie in (0,1]");
}

// -tau^{-alpha} sum_{k>=1} (j tau)^k / ((k - alpha) k!)
Complex kernel_series(double alpha, double tau) {
    const LComplex jt(0.0L, tau);
    LComplex term(1.0L, 0.0L), sum(0.0L, 0.0L);
    for (int k = 1; k <= kMaxTerms; ++k) {
        term *= jt / static_cast<long double>(k);
        const LComplex add = term / static_cast<long double>(k - alpha);
        sum += add;
        if (k > tau && std::abs(add) < kSeriesTol * std::abs(sum)) {
            const long double scale = -std::pow(static_cast<long double>(tau), -static_cast<long double>(alpha));
            return Complex(static_cast<double>(scale * sum.real()), static_cast<double>(scale * sum.imag()));
        }
    }
    throw ConvergenceError("stable kernel series did not converge", std::abs(term));
}

Complex kernel_at_infinity(double alpha) {
    return std::tgamma(1.0 - alpha) / alpha * std::polar(1.0, -0.5 * kPi * alpha);
}

// A(tau) = int_0^tau (1 - e^{jt}) t^{-alpha-1} dt, alpha < 1.
Complex kernel_a(double alpha, double tau) {
    if (tau <= 0.0) return 0.0;
    if (std::isinf(tau)) return kernel_at_infinity(alpha);
    if (tau <= kKernelSwitch) return kernel_series(alpha, tau);
    return kernel_at_infinity(alpha) - std::pow(tau, -alpha) / alpha +
           detail::oscillatory_tail(alpha + 1.0, tau);
}

// sum_{k>=2} (j tau)^k / ((k-1) k! tau)
Complex unit_series_tail(double tau) {
    const LComplex jt(0.0L, tau);
    LComplex term(-0.5L * tau * tau, 0.0L), sum(term);
    for (int k = 3; k <= kMaxTerms; ++k) {
        term *= jt / static_cast<long double>(k);
        const LComplex add = term / static_cast<long double>(k - 1);
        sum += add;
        if (k > tau && std::abs(add) < kSeriesTol * std::abs(sum)) {
            sum /= static_cast<long double>(tau);
            return Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
        }
    }
    throw ConvergenceError("unit-alpha kernel series did not converge", std::abs(term));
}

// F(tau) = int_1^tau (1 - e^{jt}) t^{-2} dt.
Complex kernel_unit(double tau) {
    const double t0 = kKernelSwitch;
    auto small = [](double t) {
        return Complex(0.0, -std::log(t)) - (unit_series_tail(t) - unit_series_tail(1.0));
    };
    if (tau <= t0) return small(tau);
    const Complex base = small(t0) + 1.0 / t0 - detail::oscillatory_tail(2.0, t0);
    if (std::isinf(tau)) return base;
    return base - 1.0 / tau + detail::oscillatory_tail(2.0, tau);
}

constexpr int kChebNodes = 56;

// g(tau) = sum_{k>=1} (j tau)^{k-1} / ((k - alpha) k!), so that A(tau) = -j tau^{1-alpha} g(tau)
Complex entire_factor(double alpha, double tau) {
    const LComplex jt(0.0L, tau);
    LComplex term(1.0L, 0.0L), sum(1.0L / (1.0L - alpha), 0.0L);
    for (int k = 2; k <= kMaxTerms; ++k) {
        term *= jt / static_cast<long double>(k);
        const LComplex add = term / static_cast<long double>(k - alpha);
        sum += add;
        if (k > tau && std::abs(add) < kSeriesTol * std::abs(sum))
            return Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    }
    throw ConvergenceError("stable kernel series did not converge", std::abs(term));
}

}  // namespace

StableKernelTable::StableKernelTable(double alpha) : alpha_(alpha) {
    check_alpha(alpha);
    if (is_unit_alpha(alpha)) return;
    at_infinity_ = kernel_at_infinity(alpha);
    const int n = kChebNodes;
    std::vector<Complex> f(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double x = std::cos(kPi * (j + 0.5) / n);
        f[j] = entire_factor(alpha, 0.5 * kKernelSwitch * (x + 1.0));
    }
    cheb_.assign(static_cast<size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        Complex acc = 0.0;
        for (int j = 0; j < n; ++j) acc += f[j] * std::cos(kPi * k * (j + 0.5) / n);
        cheb_[k] = (k == 0 ? 1.0 : 2.0) * acc / static_cast<double>(n);
    }
}

Complex StableKernelTable::operator()(double tau) const {
    if (tau <= 0.0) return 0.0;
    if (std::isinf(tau)) return at_infinity_;
    if (tau > kKernelSwitch)
        return at_infinity_ - std::pow(tau, -alpha_) / alpha_ + detail::oscillatory_tail(alpha_ + 1.0, tau);
    return Complex(0.0, -std::pow(tau, 1.0 - alpha_)) * entire(tau);
}

Complex StableKernelTable::entire(double tau) const {
    const double x = 2.0 * tau / kKernelSwitch - 1.0;
    Complex b1 = 0.0, b2 = 0.0;
    for (int k = static_cast<int>(cheb_.size()) - 1; k >= 1; --k) {
        const Complex b0 = cheb_[k] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return cheb_[0] + x * b1 - b2;
}

double StableKernelTable::switch_point() { return kKernelSwitch; }

Complex StableKernelTable::ring(double tau_lo, double tau_hi) const {
    if (cheb_.empty()) return stable_ring_integral(alpha_, tau_lo, tau_hi);
    if (tau_lo == tau_hi) return 0.0;
    return (*this)(tau_hi) - (*this)(tau_lo);
}

double detail::series_switch() {
    return std::numeric_limits<long double>::digits >= 64 ? 30.0 : 20.0;
}

double bessel_j0(double x) { return std::cyl_bessel_j(0.0, std::fabs(x)); }

double c_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("c_alpha: alpha must lie in (0,1)");
    return 1.0 / (std::tgamma(1.0 - alpha) * std::cos(0.5 * kPi * alpha));
}

Complex detail::gamma_ratio_p_series(double x, Complex z) {
    const LComplex zl(z.real(), z.imag());
    const long double xl = x;
    LComplex term(1.0L, 0.0L), sum(1.0L / xl, 0.0L);
    const double az = std::abs(z);
    for (int k = 1; k <= kMaxTerms; ++k) {
        term *= -zl / static_cast<long double>(k);
        const LComplex add = term / (xl + k);
        sum += add;
        if (k > az && std::abs(add) < kSeriesTol * std::abs(sum)) {
            const LComplex r = std::pow(zl, xl) * sum / static_cast<long double>(std::tgamma(x));
            return Complex(static_cast<double>(r.real()), static_cast<double>(r.imag()));
        }
    }
    throw ConvergenceError("gamma_ratio_p: series did not converge", std::abs(term));
}

Complex detail::gamma_ratio_p_asymptotic(double x, Complex z) {
    // Gamma(x,z) ~ z^{x-1} e^{-z} sum_n u_n, u_n = u_{n-1} (x-n)/z
    Complex u = 1.0, sum = 1.0;
    double prev = 1.0;
    for (int n = 1; n <= kMaxTerms; ++n) {
        const Complex next = u * (x - n) / z;
        const double mag = std::abs(next);
        if (mag > prev) {
            const double err = prev / std::abs(sum);
            if (err > 1e-6) throw ConvergenceError("gamma_ratio_p: asymptotic series diverged", err);
            break;
        }
        u = next;
        sum += u;
        prev = mag;
        if (mag < 1e-17 * std::abs(sum)) break;
    }
    return 1.0 - std::pow(z, x - 1.0) * std::exp(-z) * sum / std::tgamma(x);
}

Complex gamma_ratio_p(double x, Complex z) {
    if (!(x > -1.0 && x < 0.0)) throw DomainError("gamma_ratio_p: x must lie in (-1,0)");
    if (z == Complex(0.0)) return 0.0;
    if (std::abs(z) <= detail::series_switch()) return detail::gamma_ratio_p_series(x, z);
    return detail::gamma_ratio_p_asymptotic(x, z);
}

Complex detail::oscillatory_tail(double s, double tau) {
    // j e^{j tau} tau^{-s} sum_n (-j)^n (s)_n / tau^n
    Complex c = 1.0, sum = 1.0;
    double prev = 1.0;
    for (int n = 1; n <= kMaxTerms; ++n) {
        const Complex next = c * Complex(0.0, -(s + n - 1) / tau);
        const double mag = std::abs(next);
        if (mag > prev) {
            const double err = prev / std::abs(sum);
            if (err > 1e-6) throw ConvergenceError("oscillatory tail: asymptotic series diverged", err);
            break;
        }
        c = next;
        sum += c;
        prev = mag;
        if (mag < 1e-17 * std::abs(sum)) break;
    }
    return Complex(0.0, 1.0) * std::polar(std::pow(tau, -s), tau) * sum;
}

Complex stable_cf(double omega, const StableParams& p) {
    if (omega == 0.0) return 1.0;
    const double w = std::fabs(omega);
    const double sgn = omega > 0.0 ? 1.0 : -1.0;
    if (is_unit_alpha(p.alpha))
        return std::exp(-p.gamma * w * Complex(1.0, sgn * (2.0 / kPi) * std::log(w)));
    return std::exp(-p.gamma * std::pow(w, p.alpha) * Complex(1.0, -sgn * std::tan(0.5 * kPi * p.alpha)));
}

Complex stable_kernel(double alpha, double tau) { return stable_ring_integral(alpha, 0.0, tau); }

Complex stable_ring_integral(double alpha, double tau_lo, double tau_hi) {
    check_alpha(alpha);
    if (!(tau_lo >= 0.0 && tau_hi >= tau_lo)) throw DomainError("stable ring integral: need 0 <= tau_lo <= tau_hi");
    if (tau_lo == tau_hi) return 0.0;
    if (is_unit_alpha(alpha)) {
        if (tau_lo == 0.0) throw DomainError("stable ring integral: divergent at 0 for alpha = 1");
        return kernel_unit(tau_hi) - kernel_unit(tau_lo);
    }
    return kernel_a(alpha, tau_hi) - kernel_a(alpha, tau_lo);
}

}  // namespace mmwi

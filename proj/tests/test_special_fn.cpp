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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "mmwi/special_fn.hpp"

using namespace mmwi;

namespace {

// Composite Simpson on [a,b], n even.
template <class F>
auto simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    auto acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

// int_0^tau (1 - e^{jt}) t^{-alpha-1} dt with t = u^p, p = 1/(1-alpha), which removes the endpoint singularity.
Complex kernel_oracle(double alpha, double tau) {
    const double p = 1.0 / (1.0 - alpha);
    auto f = [&](double u) -> Complex {
        if (u == 0.0) return Complex(0.0, -p);
        const double t = std::pow(u, p);
        return (1.0 - std::exp(Complex(0.0, t))) * p * std::pow(u, -p);
    };
    return simpson(f, 0.0, std::pow(tau, 1.0 / p), 400000);
}

// gamma(x,z)/Gamma(x) for x in (-1,0), real z > 0, via gamma(x+1,z) by quadrature and the recurrence.
double gamma_ratio_oracle(double x, double z) {
    const double s = x + 1.0;
    auto f = [&](double u) { return std::exp(-std::pow(u, 1.0 / s)); };
    const double lower_s = simpson(f, 0.0, std::pow(z, s), 200000) / s;
    return (lower_s + std::pow(z, x) * std::exp(-z)) / x / std::tgamma(x);
}

}  // namespace

TEST_CASE("bessel_j0 against the standard library") {
    for (double x : {0.0, 0.3, 1.0, 2.404825557695773, 7.5, 20.0, 64.0, 250.0})
        CHECK(bessel_j0(x) == doctest::Approx(std::cyl_bessel_j(0.0, x)).epsilon(1e-12).scale(1.0));
}

TEST_CASE("c_alpha") {
    for (double a : {0.3, 0.5, 0.769, 0.95})
        CHECK(c_alpha(a) == doctest::Approx(1.0 / (std::tgamma(1.0 - a) * std::cos(kPi * a / 2.0))).epsilon(1e-13));
}

TEST_CASE("stable_cf at alpha 1/2 is the Levy transform") {
    // Levy(0, c = 1): exp(-sqrt(-2 j w))
    for (double w : {-3.0, -0.2, 0.01, 1.0, 40.0}) {
        const Complex ref = std::exp(-std::sqrt(Complex(0.0, -2.0 * w)));
        const Complex v = stable_cf(w, {0.5, 1.0});
        CHECK(std::abs(v - ref) < 1e-13);
    }
    CHECK(std::abs(stable_cf(0.0, {0.7, 2.0}) - 1.0) < 1e-15);
}

TEST_CASE("stable kernel against quadrature") {
    for (double a : {0.4, 0.769230769230769, 0.9}) {
        for (double tau : {0.05, 0.5, 3.0, 15.0, 19.9, 20.1, 35.0, 60.0}) {
            CAPTURE(a);
            CAPTURE(tau);
            const Complex ref = kernel_oracle(a, tau);
            CHECK(std::abs(stable_kernel(a, tau) - ref) < 1e-8 * std::abs(ref));
        }
    }
}

TEST_CASE("stable kernel limit at infinity") {
    for (double a : {0.3, 0.5, 0.769230769230769}) {
        const Complex ref = -std::tgamma(-a) * std::exp(Complex(0.0, -kPi * a / 2.0));
        CHECK(std::abs(stable_kernel(a, kInf) - ref) < 1e-12 * std::abs(ref));
        CHECK(std::abs(stable_ring_integral(a, 0.0, kInf) - ref) < 1e-12 * std::abs(ref));
    }
}

TEST_CASE("ring integral is a difference of kernels") {
    const double a = 0.6;
    for (auto [lo, hi] : {std::pair{0.1, 2.0}, {5.0, 30.0}, {25.0, 1e4}, {3.0, kInf}}) {
        const Complex ref = stable_kernel(a, hi) - stable_kernel(a, lo);
        CHECK(std::abs(stable_ring_integral(a, lo, hi) - ref) < 1e-11 * (1.0 + std::abs(ref)));
    }
    // alpha = 1 from a positive lower limit
    const Complex r1 = stable_ring_integral(1.0, 0.5, 8.0);
    auto f = [](double t) { return (1.0 - std::exp(Complex(0.0, t))) / (t * t); };
    CHECK(std::abs(r1 - simpson(f, 0.5, 8.0, 200000)) < 1e-10);
}

TEST_CASE("kernel table matches the reference kernel") {
    for (double a : {0.35, 0.769230769230769, 0.98}) {
        const StableKernelTable table(a);
        CHECK(table.alpha() == a);
        for (double tau = 1e-4; tau < 1e5; tau *= 1.37) {
            const Complex ref = stable_kernel(a, tau);
            CHECK(std::abs(table(tau) - ref) <= 1e-12 * std::abs(ref));
        }
        const Complex ring = table.ring(2.0, 40.0);
        const Complex ref = stable_ring_integral(a, 2.0, 40.0);
        CHECK(std::abs(ring - ref) <= 1e-12 * std::abs(ref));
        // A = -j tau^{1-alpha} g
        const double tau = 7.0;
        const Complex g = table.entire(tau);
        CHECK(std::abs(Complex(0.0, -1.0) * std::pow(tau, 1.0 - a) * g - stable_kernel(a, tau)) <
              1e-12 * std::abs(stable_kernel(a, tau)));
    }
    CHECK(StableKernelTable::switch_point() > 0.0);
}

TEST_CASE("incomplete gamma ratio against quadrature") {
    for (double x : {-0.2, -0.5, -0.769230769230769}) {
        for (double z : {0.05, 1.0, 6.0, 29.0, 31.0, 45.0}) {
            CAPTURE(x);
            CAPTURE(z);
            const double ref = gamma_ratio_oracle(x, z);
            const Complex v = gamma_ratio_p(x, Complex(z, 0.0));
            CHECK(std::abs(v - ref) < 1e-8 * (1.0 + std::fabs(ref)));
        }
    }
}

TEST_CASE("series and asymptotic branches agree near the switch") {
    const double x = -0.6;
    for (Complex z : {Complex(30.0, 0.0), Complex(0.0, 30.0), Complex(-5.0, 29.5), Complex(21.0, 21.0)}) {
        const Complex a = detail::gamma_ratio_p_series(x, z);
        const Complex b = detail::gamma_ratio_p_asymptotic(x, z);
        CHECK(std::abs(a - b) < 1e-8 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("oscillatory tail against quadrature") {
    // int_tau^inf e^{jt} t^{-s} dt, compared on a truncated range plus the next tail
    const double s = 1.5, tau = 40.0, cut = 400.0;
    auto f = [&](double t) { return std::exp(Complex(0.0, t)) * std::pow(t, -s); };
    const Complex ref = simpson(f, tau, cut, 400000) + detail::oscillatory_tail(s, cut);
    CHECK(std::abs(detail::oscillatory_tail(s, tau) - ref) < 1e-10);
}

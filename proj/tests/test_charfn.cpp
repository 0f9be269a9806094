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

#include "mmwi/charfn.hpp"
#include "mmwi/geometry.hpp"
#include "mmwi/special_fn.hpp"

using namespace mmwi;

namespace {

template <class F>
auto simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    auto acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

// log Psi of a single isotropic antenna: pi lambda alpha int_{x_lo}^{h^{-2b}} (e^{j w x} - 1) x^{-alpha-1} dx,
// with x = u^p, p = 1/(1-alpha).
Complex point_log_oracle(double w, double lambda, double b, double h, double r_max = kInf) {
    const double a = 1.0 / b, p = 1.0 / (1.0 - a);
    const double x_hi = std::pow(h, -2.0 * b);
    const double x_lo = std::isinf(r_max) ? 0.0 : std::pow(r_max * r_max + h * h, -b);
    auto f = [&](double u) -> Complex {
        if (u == 0.0) return Complex(0.0, w * p);
        return (std::exp(Complex(0.0, w * std::pow(u, p))) - 1.0) * p * std::pow(u, -p);
    };
    return kPi * lambda * a * simpson(f, std::pow(x_lo, 1.0 / p), std::pow(x_hi, 1.0 / p), 20000);
}

// (1/2pi) int G_c^{2z} dphi with the standard library Bessel function
double gain_moment_oracle(int n, double z) {
    const int m = 20000;
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
        const double j = std::cyl_bessel_j(0.0, n * std::fabs(std::sin(kPi * i / m)));
        acc += std::pow(j * j, z);
    }
    return acc / m;
}

NetworkParams net(double lambda, double two_b, double h) {
    NetworkParams p;
    p.lambda_density = lambda;
    p.b = two_b / 2.0;
    p.h = h;
    return p;
}

}  // namespace

TEST_CASE("point CF at zero height is the skewed stable law") {
    NetworkParams p = net(1e-2, 2.6, 0.0);
    const double a = p.alpha();
    for (double w : {1e-3, 0.1, 1.0, 30.0}) {
        const Complex ref = std::exp(kPi * p.lambda_density * a * std::tgamma(-a) * std::pow(Complex(0.0, -w), a));
        CHECK(std::abs(cf_point(w, p) - ref) < 1e-10);
    }
}

TEST_CASE("point CF against direct quadrature") {
    for (double h : {2.0, 5.0, 10.0}) {
        for (double two_b : {2.2, 2.6, 3.6}) {
            NetworkParams p = net(1e-2, two_b, h);
            for (double w : {1e-2, 1.0, 50.0, 500.0}) {
                CAPTURE(h);
                CAPTURE(two_b);
                CAPTURE(w);
                const Complex ref = std::exp(point_log_oracle(w, p.lambda_density, p.b, h));
                CHECK(std::abs(cf_point(w, p) - ref) < 1e-7);
            }
        }
    }
    NetworkParams p = net(1e-3, 2.6, 10.0);
    p.r_max = 200;
    for (double w : {10.0, 1e3, 3e4}) {
        const Complex ref = std::exp(point_log_oracle(w, p.lambda_density, p.b, p.h, p.r_max));
        CHECK(std::abs(cf_point(w, p) - ref) < 1e-7);
    }
}

TEST_CASE("UCA CF near zero height matches the stable closed form") {
    NetworkParams p = net(1e-3, 2.6, 1e-4);
    ArrayConfig c;
    c.n_c = 16;
    const double a = p.alpha();
    const double g = gain_moment_oracle(16, a);
    for (double w : {1e-2, 1.0, 100.0}) {
        const Complex lref = kPi * p.lambda_density * a * std::tgamma(-a) * std::pow(Complex(0.0, -w), a) * g;
        const Complex l = std::log(cf_uca(w, p, c));
        CHECK(std::abs(l - lref) < 1e-3 * std::abs(lref));
    }
}

TEST_CASE("UCA CF is the azimuth average of point CFs") {
    NetworkParams p = net(1e-2, 2.6, 5.0);
    ArrayConfig c;
    c.n_c = 16;
    for (double w : {1.0, 200.0, 5000.0}) {
        const int m = 256;
        Complex acc = 0.0;
        for (int i = 0; i < m; ++i) {
            const double g = gain_uca(2.0 * kPi * (i + 0.5) / m, c);
            acc += point_log_oracle(w * g * g, p.lambda_density, p.b, p.h);
        }
        acc /= m;
        CAPTURE(w);
        CHECK(std::abs(uca_log_cf(w, p, c) - acc) < 2e-3 * std::abs(acc));
    }
}

TEST_CASE("CF basics: normalization, symmetry, bound, log branch") {
    NetworkParams p = net(1e-2, 2.6, 10.0);
    ArrayConfig c;
    c.n_c = 32;
    CHECK(std::abs(cf_uca(1e-9, p, c) - 1.0) < 1e-6);
    for (double w : {0.3, 7.0, 300.0, 1e5}) {
        const Complex v = cf_uca(w, p, c);
        CHECK(std::abs(cf_uca(-w, p, c) - std::conj(v)) < 1e-14);
        CHECK(std::abs(v) <= 1.0 + 1e-14);
        CHECK(std::abs(std::exp(uca_log_cf(w, p, c)) - v) < 1e-12);
    }
    // unwrapped: a 2 pi jump would show up in the second difference along a log grid
    double pp = uca_log_cf(1.0, p, c).imag(), prev = uca_log_cf(1.05, p, c).imag();
    for (double w = 1.05 * 1.05; w < 1e6; w *= 1.05) {
        const double cur = uca_log_cf(w, p, c).imag();
        CHECK(std::fabs(cur - 2.0 * prev + pp) < 1.0);
        pp = prev;
        prev = cur;
    }
}

TEST_CASE("mean interference closed form and CF slope") {
    NetworkParams p = net(5e-3, 2.6, 10.0);
    ArrayConfig c;
    c.n_c = 128;
    const double g = gain_moment_oracle(128, 1.0);
    const double ref = kPi * p.lambda_density * g * std::pow(p.h, 2.0 - 2.0 * p.b) / (p.b - 1.0);
    CHECK(mean_interference(p, c) == doctest::Approx(ref).epsilon(1e-6));
    // -j dPsi/dw at 0
    const double dw = 1e-3 / ref;
    const Complex d = (cf_uca(dw, p, c) - cf_uca(-dw, p, c)) / (2.0 * dw);
    CHECK(d.imag() == doctest::Approx(ref).epsilon(1e-3));

    p.r_max = 2000;
    const double tail = std::pow(2000.0 * 2000.0 + 100.0, 1.0 - p.b);
    CHECK(mean_interference(p, c) ==
          doctest::Approx(kPi * p.lambda_density * g * (std::pow(100.0, 1.0 - p.b) - tail) / (p.b - 1.0)).epsilon(1e-6));
    CHECK_THROWS_AS(mean_interference(net(1e-3, 2.6, 0.0), c), DomainError);
}

TEST_CASE("UcylA with one ring element reduces to the UCA sum") {
    NetworkParams p = net(1e-2, 2.6, 10.0);
    ArrayConfig c;
    c.n_c = 16;
    const auto plan = make_plan(p, c);
    CHECK(plan.k_wedges == 16);
    CHECK(plan.m_rings == 1);
    for (double w : {0.5, 50.0, 5e3}) CHECK(std::abs(cf_ucyla(w, p, c, plan) - cf_uca(w, p, c, 16)) < 1e-12);
}

TEST_CASE("UcylA discretization refines toward the quadrature form") {
    NetworkParams p = net(1e-2, 2.6, 10.0);
    ArrayConfig c;
    c.n_c = 8;
    c.n_v = 4;
    c.theta0 = 0.4;
    const auto coarse = make_plan(p, c);
    CHECK(coarse.m_rings == 2);
    CHECK(coarse.ring_edges.front() == 0.0);
    CHECK(std::isinf(coarse.ring_edges.back()));
    const auto fine = make_plan(p, c, 64, 256);
    const CharFn q = make_ucyla_cf(p, c, fine, UcylaMethod::Quadrature);
    const CharFn f = make_ucyla_cf(p, c, fine, UcylaMethod::Discrete);
    for (double w : {1.0, 100.0, 3000.0}) {
        const Complex lq = std::log(q(w)), lf = std::log(f(w));
        CAPTURE(w);
        CHECK(std::abs(lf - lq) < 1e-2 * std::abs(lq));
    }
}

TEST_CASE("reflected paths") {
    NetworkParams p = net(1e-3, 2.6, 10.0);
    ArrayConfig c;
    c.n_c = 16;
    PathModel one;
    const CharFn los = make_uca_cf(p, c);
    const CharFn same = make_nlos_cf(p, c, one);
    for (double w : {1.0, 1e3}) CHECK(std::abs(same(w) - los(w)) < 1e-14);

    PathModel two;
    two.l_paths = 3;
    const CharFn cube = make_nlos_cf(p, c, two, NlosForm::Renormalized);
    for (double w : {1.0, 1e3}) CHECK(std::abs(cube(w) - std::pow(los(w), 3)) < 1e-12);

    // displaced form: mean = LOS mean + (L-1) reflected mean
    two.l_paths = 2;
    two.ring_radius_d = 10;
    const CharFn disp = make_nlos_cf(p, c, two, NlosForm::Displaced);
    const double m = mean_interference(p, c) + mean_nlos_interference(p, c, 10.0);
    const double dw = 1e-3 / m;
    const Complex d = (disp(dw) - disp(-dw)) / (2.0 * dw);
    CHECK(d.imag() == doctest::Approx(m).epsilon(2e-3));
    CHECK(mean_nlos_interference(p, c, 10.0) < mean_interference(p, c));
}

TEST_CASE("received power") {
    NetworkParams p = net(1e-3, 2.4, 10.0);
    const double beta0 = 4.0 * kPi * 28e9 / 1e8;
    CHECK(received_power(20.0, p, 28e9, 1e8) == doctest::Approx(beta0 * beta0 / std::pow(500.0, 1.2)));
}

TEST_CASE("helper CFs") {
    const CharFn g = make_gaussian_cf(1.0, 2.0);
    CHECK(std::abs(g(0.5) - std::exp(Complex(-0.5, 0.5))) < 1e-15);
    CHECK_FALSE(g.nonnegative());
    const CharFn s = make_stable_cf({0.5, 1.0});
    const CharFn prod = cf_scale_product({s, g}, {2.0, 0.5});
    CHECK(std::abs(prod(0.3) - s(0.6) * g(0.15)) < 1e-15);
    CHECK_THROWS_AS(cf_scale_product({s}, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(cf_scale_product({s}, {-1.0}), DomainError);
}

TEST_CASE("stable limit parameters") {
    NetworkParams p = net(1e-3, 2.6, 0.0);
    ArrayConfig c;
    c.n_c = 128;
    const StableParams sp = cf_stable_limit(p, c);
    const double a = p.alpha();
    CHECK(sp.alpha == doctest::Approx(a));
    CHECK(sp.gamma == doctest::Approx(kPi * 1e-3 * gain_moment_oracle(128, a) / c_alpha(a)).epsilon(1e-6));
}

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
#include "mmwi/stable_mixture.hpp"

using namespace mmwi;

namespace {

template <class F>
auto simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    auto acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

// Xi of one isotropic antenna: int_0^{h^{-2b}} (e^{j w x} - 1) x^{-alpha-1} dx.
Complex xi_oracle(double w, double b, double h) {
    const double a = 1.0 / b, p = 1.0 / (1.0 - a);
    auto f = [&](double u) -> Complex {
        if (u == 0.0) return Complex(0.0, w * p);
        return (std::exp(Complex(0.0, w * std::pow(u, p))) - 1.0) * p * std::pow(u, -p);
    };
    return simpson(f, 0.0, std::pow(h, -2.0 * b / p), 40000);
}

NetworkParams net(double two_b, double h) {
    NetworkParams p;
    p.lambda_density = 1.0;
    p.b = two_b / 2.0;
    p.h = h;
    return p;
}

}  // namespace

TEST_CASE("Xi of an isotropic antenna") {
    const NetworkParams p = net(2.6, 5.0);
    const ArrayConfig iso;
    for (double w : {0.01, 1.0, 100.0, 2000.0}) {
        CAPTURE(w);
        const Complex ref = xi_oracle(w, p.b, p.h);
        CHECK(std::abs(xi_exact(w, p, iso) - ref) < 1e-7 * std::abs(ref));
    }
    // series inside its disk
    for (double w : {0.01, 1.0, 30.0}) CHECK(std::abs(xi_series(w, p, iso) - xi_exact(w, p, iso)) < 1e-10 * std::abs(xi_exact(w, p, iso)));
    CHECK_THROWS_AS(xi_series(1e4, p, iso, 10), ConvergenceError);
}

TEST_CASE("series agrees with the kernel for a ring array") {
    const NetworkParams p = net(2.6, 5.0);
    ArrayConfig c;
    c.n_c = 16;
    for (double w : {0.5, 50.0, 150.0}) CHECK(std::abs(xi_series(w, p, c) - xi_exact(w, p, c)) < 1e-9 * std::abs(xi_exact(w, p, c)));
}

TEST_CASE("zero height closed form") {
    const NetworkParams p = net(2.6, 0.0);
    const double a = p.alpha();
    const Complex ref = std::tgamma(-a) * std::pow(Complex(0.0, -3.0), a);
    CHECK(std::abs(xi_exact(3.0, p, ArrayConfig{}) - ref) < 1e-12 * std::abs(ref));
}

TEST_CASE("shift and quadratic coefficients") {
    const NetworkParams p = net(2.6, 5.0);
    const double a = p.alpha(), x = std::pow(p.h, -2.0 * p.b);
    CHECK(xi_shift_coefficient(p, ArrayConfig{}) == doctest::Approx(std::pow(x, 1.0 - a) / (1.0 - a)).epsilon(1e-12));
    const MixtureModel m = make_mixture(p, ArrayConfig{});
    CHECK(m.quadratic == doctest::Approx(std::pow(x, 2.0 - a) / (2.0 * (2.0 - a))).epsilon(1e-12));
    CHECK(m.alpha == doctest::Approx(a));
    // Xi' has no linear term: small-omega behaviour is -a2 w^2
    const double w = 1e-3;
    CHECK(xi_prime(w, p, ArrayConfig{}).real() == doctest::Approx(-m.quadratic * w * w).epsilon(1e-4));
    // finite coverage radius subtracts the outer shell
    NetworkParams q = p;
    q.r_max = 100.0;
    const double xr = std::pow(100.0 * 100.0 + 25.0, -p.b);
    CHECK(xi_shift_coefficient(q, ArrayConfig{}) ==
          doctest::Approx((std::pow(x, 1.0 - a) - std::pow(xr, 1.0 - a)) / (1.0 - a)).epsilon(1e-12));
}

TEST_CASE("breaking frequency, mean-gain rule") {
    for (double h : {2.0, 5.0, 20.0}) {
        const NetworkParams p = net(2.6, h);
        const double a = p.alpha();
        const double ref = 3.0 * std::pow(h, 2.0 * p.b) * (3.0 - a) / (2.0 - a);
        CHECK(breaking_frequency(p, ArrayConfig{}) == doctest::Approx(ref).epsilon(1e-12));
    }
    ArrayConfig c;
    c.n_c = 16;
    const NetworkParams p = net(2.6, 5.0);
    const double g1 = wedge_gain_moment(c, 1.0, 16, 0.5);
    const double a = p.alpha();
    CHECK(breaking_frequency(p, c) == doctest::Approx(3.0 * std::pow(5.0, 2.6) * (3.0 - a) / ((2.0 - a) * g1)).epsilon(1e-10));
    CHECK(breaking_frequency(p, c, BreakRule::MomentRatio) > 0.0);
}

TEST_CASE("two slopes of Re Xi'") {
    const NetworkParams p = net(2.6, 5.0);
    const ArrayConfig iso;
    const double wb = breaking_frequency(p, iso);
    CHECK(xi_prime_slope(wb / 100.0, p, iso) == doctest::Approx(2.0).epsilon(0.01));
    CHECK(xi_prime_slope(wb * 1000.0, p, iso) == doctest::Approx(p.alpha()).epsilon(0.02));
    const double measured = measured_slope_break(p, iso);
    CHECK(measured > wb / 3.0);
    CHECK(measured < wb * 3.0);
}

TEST_CASE("mixture CF") {
    const NetworkParams p = net(2.6, 5.0);
    const ArrayConfig iso;
    const MixtureModel hard = make_mixture(p, iso);
    const MixtureModel soft = make_mixture(p, iso, Transition::Logistic);
    const double coef = kPi * p.alpha();
    const double w = hard.omega_bar / 10.0;
    CHECK(std::abs(cf_mixture(w, hard, p) - std::exp(coef * Complex(-hard.quadratic * w * w, hard.shift * w))) < 1e-15);
    const double w2 = hard.omega_bar * 10.0;
    CHECK(std::abs(cf_mixture(w2, hard, p) - stable_cf(w2, hard.w2)) < 1e-15);
    CHECK(std::abs(cf_mixture(-w, soft, p) - std::conj(cf_mixture(w, soft, p))) < 1e-15);
    CHECK(std::abs(cf_mixture(0.0, soft, p) - 1.0) < 1e-12);
    // stable branch carries the zero-height dispersion
    CHECK(hard.w2.gamma == doctest::Approx(kPi / c_alpha(p.alpha())).epsilon(1e-12));
    CHECK_THROWS_AS(cf_mixture(1.0, hard, net(3.6, 5.0)), DomainError);
}

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

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "mmwi/charfn.hpp"
#include "mmwi/inversion.hpp"

using namespace mmwi;

namespace {

double levy_cdf(double x) { return x <= 0.0 ? 0.0 : std::erfc(std::sqrt(0.5 / x)); }
double levy_pdf(double x) { return x <= 0.0 ? 0.0 : std::exp(-0.5 / x) / std::sqrt(2.0 * kPi * x * x * x); }

CharFn exponential_cf(double rate) {
    return CharFn([rate](double w) { return 1.0 / Complex(1.0, -w / rate); }, CfMetadata{"exponential"}, true,
                  1.0 / rate);
}

}  // namespace

TEST_CASE("Levy law from its CF") {
    const CharFn cf = make_stable_cf({0.5, 1.0});
    for (double x : {0.05, 0.2, 0.5, 1.0, 3.0, 20.0, 400.0}) {
        CAPTURE(x);
        CHECK(std::fabs(cdf_from_cf(cf, x) - levy_cdf(x)) < 2e-4);
        CHECK(std::fabs(pdf_from_cf(cf, x) - levy_pdf(x)) < 2e-4 * (1.0 + levy_pdf(x)));
    }
    CHECK(cdf_from_cf(cf, -1.0) == 0.0);
}

TEST_CASE("exponential law") {
    const CharFn cf = exponential_cf(2.0);
    for (double x : {0.01, 0.3, 1.0, 2.5})
        CHECK(std::fabs(cdf_from_cf(cf, x) - (1.0 - std::exp(-2.0 * x))) < 2e-4);
    CHECK(pdf_from_cf(cf, 0.5) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-3));
}

TEST_CASE("two-sided gaussian") {
    const CharFn cf = make_gaussian_cf(1.0, 0.5);
    for (double x : {-0.5, 0.4, 1.0, 1.7, 2.5}) {
        const double ref = 0.5 * std::erfc(-(x - 1.0) / (0.5 * std::sqrt(2.0)));
        CHECK(std::fabs(cdf_from_cf(cf, x) - ref) < 2e-4);
    }
}

TEST_CASE("tighter tolerance tightens the answer") {
    const CharFn cf = make_stable_cf({0.5, 1.0});
    InversionSettings s;
    s.tol = 1e-8;
    CHECK(std::fabs(cdf_from_cf(cf, 2.0, s) - levy_cdf(2.0)) < 1e-7);
}

TEST_CASE("quantile round trip") {
    const CharFn cf = make_stable_cf({0.5, 1.0});
    for (double p : {0.1, 0.5, 0.9}) {
        const double q = quantile_from_cf(cf, p);
        CHECK(levy_cdf(q) == doctest::Approx(p).epsilon(1e-3));
    }
    CHECK_THROWS_AS(quantile_from_cf(cf, 1.5), DomainError);
}

TEST_CASE("cdf grid is monotone and matches pointwise values") {
    const CharFn cf = exponential_cf(1.0);
    std::vector<double> xs;
    for (double x = 0.0; x <= 6.0; x += 0.25) xs.push_back(x);
    const auto v = cdf_grid(cf, xs);
    REQUIRE(v.size() == xs.size());
    CHECK(std::is_sorted(v.begin(), v.end()));
    for (size_t i = 0; i < xs.size(); ++i) CHECK(std::fabs(v[i] - (1.0 - std::exp(-xs[i]))) < 3e-4);
}

TEST_CASE("double exponential Fourier quadrature") {
    InversionSettings s;
    const auto sinc = detail::fourier_de([](double u) { return 1.0 / u; }, false, 1e-10, s);
    CHECK(sinc.value == doctest::Approx(kPi / 2).epsilon(1e-9));
    const auto damped = detail::fourier_de([](double u) { return std::exp(-u); }, true, 1e-10, s);
    CHECK(damped.value == doctest::Approx(0.5).epsilon(1e-9));
    const auto power = detail::fourier_de([](double u) { return std::pow(u, -0.5); }, false, 1e-10, s);
    CHECK(power.value == doctest::Approx(std::sqrt(kPi / 2)).epsilon(1e-8));
}

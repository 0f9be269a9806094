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

#include "mmwi/service.hpp"

using namespace mmwi;

namespace {

Scenario uca(double lambda = 1e-3) {
    Scenario s;
    s.params.lambda_density = lambda;
    s.params.b = 1.3;
    s.params.h = 10.0;
    s.config.n_c = 128;
    return s;
}

}  // namespace

TEST_CASE("service probability is monotone in range, threshold and density") {
    Scenario s = uca();
    double prev = 1.0;
    for (double r0 : {5.0, 20.0, 40.0, 60.0, 80.0, 120.0}) {
        const double p = service_probability(r0, s);
        CHECK(p <= prev + 1e-6);
        prev = p;
    }
    prev = 1.0;
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        s.params.threshold_t = t;
        const double p = service_probability(50.0, s);
        CHECK(p <= prev + 1e-6);
        prev = p;
    }
    s = uca();
    prev = 1.0;
    for (double l : {1e-4, 1e-3, 3e-3, 1e-2}) {
        s.params.lambda_density = l;
        const double p = service_probability(50.0, s);
        CHECK(p <= prev + 1e-6);
        prev = p;
    }
    CHECK_THROWS_AS(service_probability(-1.0, s), DomainError);
}

TEST_CASE("no interferers means always served") {
    Scenario s = uca(0.0);
    CHECK(service_probability(30.0, s) == doctest::Approx(1.0));
}

TEST_CASE("radial average") {
    CHECK(avg_service_probability([](double) { return 1.0; }, 50.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(avg_service_probability([](double r) { return r / 10.0; }, 10.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK_THROWS_AS(avg_service_probability([](double) { return 1.0; }, 0.0), DomainError);
}

TEST_CASE("square arc length") {
    const double a = 100.0;
    CHECK(square_arc_length(20.0, a) == doctest::Approx(2.0 * kPi * 20.0));
    CHECK(square_arc_length(80.0, a) == 0.0);
    // angular counting
    const double r = 60.0;
    const int m = 200000;
    int inside = 0;
    for (int i = 0; i < m; ++i) {
        const double t = 2.0 * kPi * (i + 0.5) / m;
        inside += std::fabs(r * std::cos(t)) <= a / 2 && std::fabs(r * std::sin(t)) <= a / 2;
    }
    CHECK(square_arc_length(r, a) == doctest::Approx(2.0 * kPi * r * inside / m).epsilon(1e-4));
}

TEST_CASE("users served on the equal-area disk") {
    Scenario s = uca();
    const double side = 100.0;
    const double ms = users_served(side, s);
    const double ref = s.params.lambda_density * side * side * avg_service_probability(side / std::sqrt(kPi), s);
    CHECK(ms == doctest::Approx(ref).epsilon(1e-3));
}

TEST_CASE("noise and blockage reduce to the plain link") {
    Scenario s = uca();
    const double base = service_probability(40.0, s);
    CHECK(service_with_noise(40.0, s) == doctest::Approx(base).epsilon(1e-9));
    CHECK(service_with_blockage(40.0, s) == doctest::Approx(base).epsilon(1e-9));
    s.path.noise_power = 1e-9;
    CHECK(service_with_noise(40.0, s) < base);
}

TEST_CASE("blockage is monotone with exact endpoints") {
    Scenario s = uca(5e-3);
    s.path.l_paths = 3;
    s.path.ring_radius_d = 10.0;
    const double p0 = service_with_noise(10.0, s);
    double prev = 1.0;
    for (double pb : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        s.path.p_block = pb;
        const double p = service_with_blockage(10.0, s);
        if (pb == 0.0) CHECK(std::fabs(p - p0) < 1e-6);
        if (pb == 1.0) CHECK(p == 0.0);
        CHECK(p <= prev + 1e-9);
        prev = p;
    }
    s.path.l_paths = 17;
    CHECK_THROWS_AS(service_with_blockage(10.0, s), DomainError);
}

TEST_CASE("reference interference falls back to the median at zero height") {
    Scenario s = uca();
    s.params.h = 0.0;
    const CharFn cf = make_uca_cf(s.params, s.config);
    const double m = reference_interference(cf, s);
    CHECK(cdf_from_cf(cf, m) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("thermal noise") {
    CHECK(thermal_noise_dbm(1e6, 0.0) == doctest::Approx(-114.0).epsilon(1e-3));
    CHECK(thermal_noise_dbm(1e8, 7.0) == doctest::Approx(-87.0).epsilon(1e-3));
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
}

TEST_CASE("factorizations of the antenna budget") {
    const auto f = factorizations(256);
    CHECK(f.size() == 9);
    for (const auto& [nc, nv] : f) CHECK(nc * nv == 256);
    CHECK(f.front().first == 1);
    CHECK(f.back().first == 256);
    CHECK(factorizations(12).size() == 6);
}

TEST_CASE("sweep axes") {
    CHECK(parse_axis("height") == SweepAxis::Height);
    CHECK(axis_name(SweepAxis::NcNvRatio) == "nc_nv_ratio");
    CHECK_THROWS_AS(parse_axis("colour"), DomainError);
}

TEST_CASE("sweep keeps going past a bad row") {
    SweepSpec spec;
    spec.axis = SweepAxis::NcNvRatio;
    spec.values = {0.5, 8.0};
    spec.fixed = uca();
    spec.fixed.config.n_c = 1;
    spec.r_bar = 30.0;
    spec.total_antennas = 256;
    spec.r0_ref = 20.0;
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].status != "ok");
    CHECK(rows[1].status == "ok");
    CHECK(rows[1].n_c == 256);
    CHECK(rows[1].n_v == 1);
    CHECK(rows[1].avg_ps > 0.0);
    CHECK(rows[1].signal > 0.0);
}

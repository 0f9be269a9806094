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
#include <set>
#include <vector>

#include "mmwi/rng.hpp"

using mmwi::Philox4x32;

// Known-answer vectors of Philox4x32-10 from the Random123 distribution.
TEST_CASE("philox known answers") {
    using B = Philox4x32::Block;
    CHECK(Philox4x32::bijection({0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::bijection({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::bijection({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams replay and differ") {
    Philox4x32 a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    std::vector<std::uint64_t> va, vb, vc, vd;
    for (int i = 0; i < 16; ++i) {
        va.push_back(a());
        vb.push_back(b());
        vc.push_back(c());
        vd.push_back(d());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != vd);
}

TEST_CASE("uniform moments and range") {
    Philox4x32 g(1, 0);
    const int n = 200000;
    double s = 0, s2 = 0, lo = 1, hi = 0;
    for (int i = 0; i < n; ++i) {
        const double u = g.uniform();
        s += u;
        s2 += u * u;
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(s / n == doctest::Approx(0.5).epsilon(0.005));
    CHECK(s2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.005));
}

TEST_CASE("fill_uniform matches scalar draws") {
    Philox4x32 a(9, 3), b(9, 3);
    std::vector<double> v(37);
    a.fill_uniform(v.data(), v.size());
    for (double x : v) CHECK(x == b.uniform());
}

TEST_CASE("fill_uniform32 resolution and moments") {
    Philox4x32 g(5, 1);
    std::vector<double> v(100003);
    g.fill_uniform32(v.data(), v.size());
    double s = 0;
    std::set<double> distinct;
    for (double x : v) {
        CHECK_UNARY(x > 0.0 && x < 1.0);
        s += x;
        distinct.insert(x);
    }
    CHECK(s / v.size() == doctest::Approx(0.5).epsilon(0.01));
    CHECK(distinct.size() > v.size() - 10);
}

TEST_CASE("normal moments") {
    Philox4x32 g(11, 2);
    const int n = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = g.normal();
        s += z;
        s2 += z * z;
    }
    CHECK(std::fabs(s / n) < 0.01);
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
}

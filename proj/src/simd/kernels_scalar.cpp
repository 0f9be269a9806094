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

#include <cmath>

#include "mmwi/simd.hpp"

namespace mmwi::simd {
namespace {

double sum_inverse_power(const double* r2, const double* g, std::size_t n, double h2, double b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = std::pow(r2[i] + h2, -b);
        acc += g ? g[i] * v : v;
    }
    return acc;
}

void inverse_power(const double* r2, double* out, std::size_t n, double h2, double b) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(r2[i] + h2, -b);
}

CisSum sum_cis(const double* x, std::size_t n, double c) {
    CisSum s;
    for (std::size_t i = 0; i < n; ++i) {
        s.re += std::cos(c * x[i]);
        s.im += std::sin(c * x[i]);
    }
    return s;
}

CisSum sum_one_minus_cis(const double* x, std::size_t n, double c) {
    CisSum s;
    for (std::size_t i = 0; i < n; ++i) {
        const double half = std::sin(0.5 * c * x[i]);
        s.re += 2.0 * half * half;
        s.im += std::sin(c * x[i]);
    }
    return s;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", sum_inverse_power, inverse_power, sum_cis, sum_one_minus_cis};
    return table;
}

}  // namespace mmwi::simd

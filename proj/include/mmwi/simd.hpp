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

#pragma once

#include <cstddef>

namespace mmwi::simd {

struct CisSum {
    double re = 0.0;
    double im = 0.0;
};

// One implementation set. Every vector table must agree with the scalar table
// to rounding (see tests/test_simd.cpp).
struct KernelTable {
    const char* name;
    // sum_i g_i (r2_i + h2)^{-b}; g == nullptr means unit weights
    double (*sum_inverse_power)(const double* r2, const double* g, std::size_t n, double h2, double b);
    // out_i = (r2_i + h2)^{-b}
    void (*inverse_power)(const double* r2, double* out, std::size_t n, double h2, double b);
    // (sum cos(c x_i), sum sin(c x_i))
    CisSum (*sum_cis)(const double* x, std::size_t n, double c);
    // (sum 1 - cos(c x_i), sum sin(c x_i)), 1 - cos taken as 2 sin^2(c x_i / 2)
    CisSum (*sum_one_minus_cis)(const double* x, std::size_t n, double c);
};

const KernelTable& scalar_kernels();

/// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

/// Best available table; MMWI_SIMD=scalar forces the reference kernels.
const KernelTable& kernels();

}  // namespace mmwi::simd

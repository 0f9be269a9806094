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

// NEON (AArch64) kernels, two lanes per vector. Same polynomials as the AVX2 set.

#include "mmwi/simd.hpp"

#if defined(MMWI_HAVE_NEON)

#include <arm_neon.h>

#include <cmath>
#include <cstdint>

namespace mmwi::simd {
namespace {

constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kLog2e = 1.44269504088896338700e+00;
constexpr double kPio2a = 1.5707963267948966;
constexpr double kPio2b = 6.123233995736766e-17;
constexpr double kPio2c = -1.4973849048591698e-33;
constexpr double kTwoOverPi = 0.63661977236758134308;
constexpr double kMaxTrigArg = 1e6;

inline float64x2_t splat(double v) { return vdupq_n_f64(v); }

// a + b c
inline float64x2_t fma(float64x2_t a, float64x2_t b, float64x2_t c) { return vfmaq_f64(a, b, c); }

inline float64x2_t log_pd(float64x2_t x) {
    const uint64x2_t bits = vreinterpretq_u64_f64(x);
    float64x2_t m = vreinterpretq_f64_u64(
        vorrq_u64(vandq_u64(bits, vdupq_n_u64(0x000FFFFFFFFFFFFFULL)), vdupq_n_u64(0x3FF0000000000000ULL)));
    float64x2_t e = vcvtq_f64_s64(vsubq_s64(vreinterpretq_s64_u64(vshrq_n_u64(bits, 52)), vdupq_n_s64(1023)));
    const uint64x2_t big = vcgtq_f64(m, splat(1.4142135623730951));
    m = vbslq_f64(big, vmulq_f64(m, splat(0.5)), m);
    e = vaddq_f64(e, vreinterpretq_f64_u64(vandq_u64(big, vreinterpretq_u64_f64(splat(1.0)))));

    const float64x2_t one = splat(1.0);
    const float64x2_t s = vdivq_f64(vsubq_f64(m, one), vaddq_f64(m, one));
    const float64x2_t z = vmulq_f64(s, s);
    static constexpr double c[] = {1.0 / 23.0, 1.0 / 21.0, 1.0 / 19.0, 1.0 / 17.0, 1.0 / 15.0, 1.0 / 13.0,
                                   1.0 / 11.0, 1.0 / 9.0,  1.0 / 7.0,  1.0 / 5.0,  1.0 / 3.0};
    float64x2_t p = splat(c[0]);
    for (int i = 1; i < 11; ++i) p = fma(splat(c[i]), p, z);
    const float64x2_t two_s = vaddq_f64(s, s);
    const float64x2_t lm = fma(two_s, vmulq_f64(two_s, z), p);
    return fma(fma(lm, e, splat(kLn2Lo)), e, splat(kLn2Hi));
}

inline float64x2_t exp_pd(float64x2_t y) {
    const float64x2_t k = vrndnq_f64(vmulq_f64(y, splat(kLog2e)));
    float64x2_t r = vfmsq_f64(y, k, splat(kLn2Hi));
    r = vfmsq_f64(r, k, splat(kLn2Lo));
    static constexpr double c[] = {1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0,
                                   1.0 / 3628800.0,    1.0 / 362880.0,    1.0 / 40320.0,
                                   1.0 / 5040.0,       1.0 / 720.0,       1.0 / 120.0,
                                   1.0 / 24.0,         1.0 / 6.0,         0.5,
                                   1.0,                1.0};
    float64x2_t p = splat(c[0]);
    for (int i = 1; i < 14; ++i) p = fma(splat(c[i]), p, r);
    const int64x2_t ki = vcvtq_s64_f64(k);
    const uint64x2_t scale = vshlq_n_u64(vreinterpretq_u64_s64(vaddq_s64(ki, vdupq_n_s64(1023))), 52);
    return vmulq_f64(p, vreinterpretq_f64_u64(scale));
}

inline bool all_within(float64x2_t x, double lo, double hi) {
    const uint64x2_t ok = vandq_u64(vcgeq_f64(x, splat(lo)), vcleq_f64(x, splat(hi)));
    return vgetq_lane_u64(ok, 0) && vgetq_lane_u64(ok, 1);
}

inline bool inverse_power_pd(float64x2_t x, double b, float64x2_t* out) {
    if (!all_within(x, 1e-300, 1e300)) return false;
    const float64x2_t y = vmulq_f64(splat(-b), log_pd(x));
    if (!all_within(y, -700.0, 700.0)) return false;
    *out = exp_pd(y);
    return true;
}

inline void sincos_pd(float64x2_t x, float64x2_t* sin_out, float64x2_t* cos_out) {
    const float64x2_t k = vrndnq_f64(vmulq_f64(x, splat(kTwoOverPi)));
    float64x2_t r = vfmsq_f64(x, k, splat(kPio2a));
    r = vfmsq_f64(r, k, splat(kPio2b));
    r = vfmsq_f64(r, k, splat(kPio2c));
    const float64x2_t r2 = vmulq_f64(r, r);

    static constexpr double sc[] = {1.0 / 355687428096000.0, -1.0 / 1307674368000.0, 1.0 / 6227020800.0,
                                    -1.0 / 39916800.0,       1.0 / 362880.0,         -1.0 / 5040.0,
                                    1.0 / 120.0,             -1.0 / 6.0};
    float64x2_t ps = splat(sc[0]);
    for (int i = 1; i < 8; ++i) ps = fma(splat(sc[i]), ps, r2);
    const float64x2_t s = fma(r, vmulq_f64(ps, r2), r);

    static constexpr double cc[] = {1.0 / 6402373705728000.0, -1.0 / 20922789888000.0, 1.0 / 87178291200.0,
                                    -1.0 / 479001600.0,       1.0 / 3628800.0,         -1.0 / 40320.0,
                                    1.0 / 720.0,              -1.0 / 24.0,             0.5};
    float64x2_t pc = splat(cc[0]);
    for (int i = 1; i < 9; ++i) pc = fma(splat(cc[i]), pc, r2);
    const float64x2_t c = vfmsq_f64(splat(1.0), r2, pc);

    const int64x2_t q = vcvtq_s64_f64(k);
    const uint64x2_t q1 = vandq_u64(vreinterpretq_u64_s64(q), vdupq_n_u64(1));
    const uint64x2_t q2 = vandq_u64(vreinterpretq_u64_s64(q), vdupq_n_u64(2));
    const uint64x2_t swap = vceqq_u64(q1, vdupq_n_u64(1));
    const uint64x2_t sign = vdupq_n_u64(0x8000000000000000ULL);
    const uint64x2_t neg_sin = vandq_u64(vceqq_u64(q2, vdupq_n_u64(2)), sign);
    const uint64x2_t neg_cos = vandq_u64(vceqq_u64(veorq_u64(q1, vshrq_n_u64(q2, 1)), vdupq_n_u64(1)), sign);
    const float64x2_t so = vbslq_f64(swap, c, s);
    const float64x2_t co = vbslq_f64(swap, s, c);
    *sin_out = vreinterpretq_f64_u64(veorq_u64(vreinterpretq_u64_f64(so), neg_sin));
    *cos_out = vreinterpretq_f64_u64(veorq_u64(vreinterpretq_u64_f64(co), neg_cos));
}

double sum_inverse_power(const double* r2, const double* g, std::size_t n, double h2, double b) {
    float64x2_t acc = splat(0.0);
    double tail = 0.0;
    const float64x2_t vh2 = splat(h2);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t x = vaddq_f64(vld1q_f64(r2 + i), vh2);
        float64x2_t v;
        if (!inverse_power_pd(x, b, &v)) {
            for (std::size_t j = i; j < i + 2; ++j) {
                const double s = std::pow(r2[j] + h2, -b);
                tail += g ? g[j] * s : s;
            }
            continue;
        }
        acc = g ? fma(acc, vld1q_f64(g + i), v) : vaddq_f64(acc, v);
    }
    for (; i < n; ++i) {
        const double s = std::pow(r2[i] + h2, -b);
        tail += g ? g[i] * s : s;
    }
    return vaddvq_f64(acc) + tail;
}

void inverse_power(const double* r2, double* out, std::size_t n, double h2, double b) {
    const float64x2_t vh2 = splat(h2);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v;
        if (inverse_power_pd(vaddq_f64(vld1q_f64(r2 + i), vh2), b, &v)) {
            vst1q_f64(out + i, v);
        } else {
            for (std::size_t j = i; j < i + 2; ++j) out[j] = std::pow(r2[j] + h2, -b);
        }
    }
    for (; i < n; ++i) out[i] = std::pow(r2[i] + h2, -b);
}

CisSum sum_cis(const double* x, std::size_t n, double c) {
    float64x2_t acc_c = splat(0.0), acc_s = splat(0.0);
    CisSum tail;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t a = vmulq_f64(vld1q_f64(x + i), splat(c));
        if (!all_within(a, -kMaxTrigArg, kMaxTrigArg)) {
            for (std::size_t j = i; j < i + 2; ++j) {
                tail.re += std::cos(c * x[j]);
                tail.im += std::sin(c * x[j]);
            }
            continue;
        }
        float64x2_t s, co;
        sincos_pd(a, &s, &co);
        acc_c = vaddq_f64(acc_c, co);
        acc_s = vaddq_f64(acc_s, s);
    }
    for (; i < n; ++i) {
        tail.re += std::cos(c * x[i]);
        tail.im += std::sin(c * x[i]);
    }
    return {vaddvq_f64(acc_c) + tail.re, vaddvq_f64(acc_s) + tail.im};
}

CisSum sum_one_minus_cis(const double* x, std::size_t n, double c) {
    float64x2_t acc_c = splat(0.0), acc_s = splat(0.0);
    CisSum tail;
    auto scalar_one = [&](std::size_t j) {
        const double half = std::sin(0.5 * c * x[j]);
        tail.re += 2.0 * half * half;
        tail.im += std::sin(c * x[j]);
    };
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t a = vmulq_f64(vld1q_f64(x + i), splat(0.5 * c));
        if (!all_within(a, -kMaxTrigArg, kMaxTrigArg)) {
            for (std::size_t j = i; j < i + 2; ++j) scalar_one(j);
            continue;
        }
        float64x2_t s, co;
        sincos_pd(a, &s, &co);
        const float64x2_t two_s = vaddq_f64(s, s);
        acc_c = fma(acc_c, two_s, s);
        acc_s = fma(acc_s, two_s, co);
    }
    for (; i < n; ++i) scalar_one(i);
    return {vaddvq_f64(acc_c) + tail.re, vaddvq_f64(acc_s) + tail.im};
}

}  // namespace

const KernelTable* neon_kernels() {
    static const KernelTable table{"neon", sum_inverse_power, inverse_power, sum_cis, sum_one_minus_cis};
    return &table;
}

}  // namespace mmwi::simd

#endif  // MMWI_HAVE_NEON

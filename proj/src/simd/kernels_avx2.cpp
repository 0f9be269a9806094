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

// AVX2 + FMA kernels. Functions carry target attributes so the translation
// unit builds without global -mavx2 and is only entered after a CPU check.

#include "mmwi/simd.hpp"

#if defined(MMWI_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

#define MMWI_AVX2 __attribute__((target("avx2,fma")))

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

MMWI_AVX2 inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// log for positive normal finite lanes
MMWI_AVX2 inline __m256d log_pd(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
    // biased exponent to double via the 2^52 trick
    const __m256i ebits = _mm256_or_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x4330000000000000LL));
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(ebits), _mm256_set1_pd(4503599627370496.0 + 1023.0));
    const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d z = _mm256_mul_pd(s, s);
    __m256d p = _mm256_set1_pd(1.0 / 23.0);
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 21.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 19.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 17.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 15.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 13.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 11.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 9.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 7.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 5.0));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 3.0));
    // log m = 2s + 2s z p
    const __m256d two_s = _mm256_add_pd(s, s);
    const __m256d lm = _mm256_fmadd_pd(_mm256_mul_pd(two_s, z), p, two_s);
    return _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Hi), _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Lo), lm));
}

// exp for lanes in [-700, 700]
MMWI_AVX2 inline __m256d exp_pd(__m256d y) {
    const __m256d k = _mm256_round_pd(_mm256_mul_pd(y, _mm256_set1_pd(kLog2e)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kLn2Hi), y);
    r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kLn2Lo), r);
    static constexpr double c[] = {1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0,
                                   1.0 / 3628800.0,    1.0 / 362880.0,    1.0 / 40320.0,
                                   1.0 / 5040.0,       1.0 / 720.0,       1.0 / 120.0,
                                   1.0 / 24.0,         1.0 / 6.0,         0.5,
                                   1.0,                1.0};
    __m256d p = _mm256_set1_pd(c[0]);
    for (int i = 1; i < 14; ++i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[i]));
    const __m256i ki = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
    const __m256i scale = _mm256_slli_epi64(_mm256_add_epi64(ki, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(scale));
}

// true when every lane of x lies in [lo, hi]
MMWI_AVX2 inline bool all_within(__m256d x, double lo, double hi) {
    const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(x, _mm256_set1_pd(lo), _CMP_GE_OQ),
                                     _mm256_cmp_pd(x, _mm256_set1_pd(hi), _CMP_LE_OQ));
    return _mm256_movemask_pd(ok) == 0xF;
}

// (x + h2)^{-b}; false if a lane needs the scalar path
MMWI_AVX2 inline bool inverse_power_pd(__m256d x, double b, __m256d* out) {
    if (!all_within(x, 1e-300, 1e300)) return false;
    const __m256d y = _mm256_mul_pd(_mm256_set1_pd(-b), log_pd(x));
    if (!all_within(y, -700.0, 700.0)) return false;
    *out = exp_pd(y);
    return true;
}

// sin and cos for |x| <= kMaxTrigArg
MMWI_AVX2 inline void sincos_pd(__m256d x, __m256d* sin_out, __m256d* cos_out) {
    const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kPio2a), x);
    r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kPio2b), r);
    r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kPio2c), r);
    const __m256d r2 = _mm256_mul_pd(r, r);

    static constexpr double sc[] = {1.0 / 355687428096000.0, -1.0 / 1307674368000.0, 1.0 / 6227020800.0,
                                    -1.0 / 39916800.0,       1.0 / 362880.0,         -1.0 / 5040.0,
                                    1.0 / 120.0,             -1.0 / 6.0};
    __m256d ps = _mm256_set1_pd(sc[0]);
    for (int i = 1; i < 8; ++i) ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(sc[i]));
    const __m256d s = _mm256_fmadd_pd(_mm256_mul_pd(ps, r2), r, r);

    static constexpr double cc[] = {1.0 / 6402373705728000.0, -1.0 / 20922789888000.0, 1.0 / 87178291200.0,
                                    -1.0 / 479001600.0,       1.0 / 3628800.0,         -1.0 / 40320.0,
                                    1.0 / 720.0,              -1.0 / 24.0,             0.5};
    __m256d pc = _mm256_set1_pd(cc[0]);
    for (int i = 1; i < 9; ++i) pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(cc[i]));
    // cos r = 1 - r2 (1/2 - r2 (...)) with the sign pattern folded into cc
    const __m256d c = _mm256_fnmadd_pd(r2, pc, _mm256_set1_pd(1.0));

    const __m256i q = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
    const __m256i q1 = _mm256_and_si256(q, _mm256_set1_epi64x(1));
    const __m256i q2 = _mm256_and_si256(q, _mm256_set1_epi64x(2));
    const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(q1, _mm256_set1_epi64x(1)));
    const __m256d neg_sin = _mm256_castsi256_pd(_mm256_cmpeq_epi64(q2, _mm256_set1_epi64x(2)));
    // cos flips sign in quadrants 1 and 2: bit0 xor bit1
    const __m256i q12 = _mm256_xor_si256(q1, _mm256_srli_epi64(q2, 1));
    const __m256d neg_cos = _mm256_castsi256_pd(_mm256_cmpeq_epi64(q12, _mm256_set1_epi64x(1)));
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d so = _mm256_blendv_pd(s, c, swap);
    __m256d co = _mm256_blendv_pd(c, s, swap);
    so = _mm256_xor_pd(so, _mm256_and_pd(neg_sin, sign));
    co = _mm256_xor_pd(co, _mm256_and_pd(neg_cos, sign));
    *sin_out = so;
    *cos_out = co;
}

MMWI_AVX2 double sum_inverse_power(const double* r2, const double* g, std::size_t n, double h2, double b) {
    __m256d acc = _mm256_setzero_pd();
    double tail = 0.0;
    const __m256d vh2 = _mm256_set1_pd(h2);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_add_pd(_mm256_loadu_pd(r2 + i), vh2);
        __m256d v;
        if (!inverse_power_pd(x, b, &v)) {
            for (std::size_t j = i; j < i + 4; ++j) {
                const double s = std::pow(r2[j] + h2, -b);
                tail += g ? g[j] * s : s;
            }
            continue;
        }
        acc = g ? _mm256_fmadd_pd(_mm256_loadu_pd(g + i), v, acc) : _mm256_add_pd(acc, v);
    }
    for (; i < n; ++i) {
        const double s = std::pow(r2[i] + h2, -b);
        tail += g ? g[i] * s : s;
    }
    return hsum(acc) + tail;
}

MMWI_AVX2 void inverse_power(const double* r2, double* out, std::size_t n, double h2, double b) {
    const __m256d vh2 = _mm256_set1_pd(h2);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_add_pd(_mm256_loadu_pd(r2 + i), vh2);
        __m256d v;
        if (inverse_power_pd(x, b, &v)) {
            _mm256_storeu_pd(out + i, v);
        } else {
            for (std::size_t j = i; j < i + 4; ++j) out[j] = std::pow(r2[j] + h2, -b);
        }
    }
    for (; i < n; ++i) out[i] = std::pow(r2[i] + h2, -b);
}

MMWI_AVX2 CisSum sum_cis(const double* x, std::size_t n, double c) {
    __m256d acc_c = _mm256_setzero_pd(), acc_s = _mm256_setzero_pd();
    CisSum tail;
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(x + i), vc);
        if (!all_within(a, -kMaxTrigArg, kMaxTrigArg)) {
            for (std::size_t j = i; j < i + 4; ++j) {
                tail.re += std::cos(c * x[j]);
                tail.im += std::sin(c * x[j]);
            }
            continue;
        }
        __m256d s, co;
        sincos_pd(a, &s, &co);
        acc_c = _mm256_add_pd(acc_c, co);
        acc_s = _mm256_add_pd(acc_s, s);
    }
    for (; i < n; ++i) {
        tail.re += std::cos(c * x[i]);
        tail.im += std::sin(c * x[i]);
    }
    return {hsum(acc_c) + tail.re, hsum(acc_s) + tail.im};
}

MMWI_AVX2 CisSum sum_one_minus_cis(const double* x, std::size_t n, double c) {
    __m256d acc_c = _mm256_setzero_pd(), acc_s = _mm256_setzero_pd();
    CisSum tail;
    const __m256d vc = _mm256_set1_pd(0.5 * c);
    const __m256d two = _mm256_set1_pd(2.0);
    auto scalar_one = [&](std::size_t j) {
        const double half = std::sin(0.5 * c * x[j]);
        tail.re += 2.0 * half * half;
        tail.im += std::sin(c * x[j]);
    };
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(x + i), vc);
        if (!all_within(a, -kMaxTrigArg, kMaxTrigArg)) {
            for (std::size_t j = i; j < i + 4; ++j) scalar_one(j);
            continue;
        }
        // half-angle: 1 - cos x = 2 s^2, sin x = 2 s c
        __m256d s, co;
        sincos_pd(a, &s, &co);
        const __m256d two_s = _mm256_mul_pd(two, s);
        acc_c = _mm256_fmadd_pd(two_s, s, acc_c);
        acc_s = _mm256_fmadd_pd(two_s, co, acc_s);
    }
    for (; i < n; ++i) scalar_one(i);
    return {hsum(acc_c) + tail.re, hsum(acc_s) + tail.im};
}

}  // namespace

const KernelTable* avx2_kernels() {
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    static const KernelTable table{"avx2", sum_inverse_power, inverse_power, sum_cis, sum_one_minus_cis};
    return ok ? &table : nullptr;
}

}  // namespace mmwi::simd

#endif  // MMWI_HAVE_AVX2

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

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace mmwi {

/// Philox4x32-10 counter-based generator. A (seed, stream) pair names an
/// independent sequence, so trial i can be replayed without touching trial i-1.
class Philox4x32 {
public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    Philox4x32(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    static Block bijection(Block ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
            key[0] += 0x9E3779B9u;
            key[1] += 0xBB67AE85u;
        }
        return ctr;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (used_ == 2) refill();
        return buffer_[used_++];
    }

    /// Uniform on the open interval (0,1), 53-bit resolution.
    double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

    /// n values of uniform(), same sequence as n scalar calls.
    void fill_uniform(double* out, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) out[i] = uniform();
    }

    /// n uniforms on (0,1) at 32-bit resolution, four per Philox block. Advances the
    /// counter independently of the 64-bit stream buffer.
    void fill_uniform32(double* out, std::size_t n) {
        std::size_t i = 0;
        while (i < n) {
            const Block b = next_block();
            for (int k = 0; k < 4 && i < n; ++k, ++i) out[i] = (b[k] + 0.5) * 0x1.0p-32;
        }
    }

    double exponential() { return -std::log(uniform()); }

    /// Standard normal (Box-Muller; both outputs used).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double t = 2.0 * 3.14159265358979323846 * uniform();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    Block next_block() {
        const Block out = bijection({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                     static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                                    key_);
        ++block_;
        return out;
    }

    void refill() {
        const Block out = next_block();
        buffer_[0] = (std::uint64_t{out[1]} << 32) | out[0];
        buffer_[1] = (std::uint64_t{out[3]} << 32) | out[2];
        used_ = 0;
    }

    Key key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int used_ = 2;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace mmwi
